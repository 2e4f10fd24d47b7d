#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>

#include "cavc/graph.hpp"
#include "cavc/reduce.hpp"

namespace cavc {

/// Search counters. Exact when the search runs on one worker; with several
/// workers the node counts depend on the schedule.
struct Stats {
    std::int64_t treeNodesVisited = 0;
    std::int64_t componentBranches = 0;
    std::map<std::int64_t, std::int64_t> componentsPerBranch;  ///< components -> branches
    RuleCounts ruleCounts;
    std::int64_t rootVerticesBefore = 0;
    std::int64_t rootVerticesAfter = 0;
    DegreeWidth degreeWidth = DegreeWidth::Bits32;
    std::int64_t maxStackDepth = 0;
    std::int64_t worklistPushes = 0;
    std::int64_t worklistPops = 0;
    std::map<std::string, double> wallTimeByPhase;

    /// Folds in the counters of one worker.
    void merge(const Stats& o) {
        treeNodesVisited += o.treeNodesVisited;
        componentBranches += o.componentBranches;
        for (auto [k, v] : o.componentsPerBranch) componentsPerBranch[k] += v;
        ruleCounts += o.ruleCounts;
        maxStackDepth = std::max(maxStackDepth, o.maxStackDepth);
        worklistPushes += o.worklistPushes;
        worklistPops += o.worklistPops;
    }
};

}  // namespace cavc
