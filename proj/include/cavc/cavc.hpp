// Umbrella header for the component-aware vertex cover solver.
#pragma once

#include "cavc/engine.hpp"
#include "cavc/graph.hpp"
#include "cavc/ingest.hpp"
#include "cavc/oracle.hpp"
#include "cavc/preprocess.hpp"
#include "cavc/reduce.hpp"
#include "cavc/registry.hpp"
#include "cavc/search.hpp"
#include "cavc/solver.hpp"
#include "cavc/stats.hpp"
#include "cavc/worklist.hpp"
