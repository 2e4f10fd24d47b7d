// JSON result document written by the vc tool.
#pragma once

#include <string>

#include <json.hpp>

#include "cavc/solver.hpp"

namespace cavc::tools {

inline nlohmann::ordered_json statsDocument(const Stats& s, bool withTiming) {
    nlohmann::ordered_json j;
    j["tree_nodes_visited"] = s.treeNodesVisited;
    j["component_branches"] = s.componentBranches;
    auto hist = nlohmann::ordered_json::object();
    for (auto [components, branches] : s.componentsPerBranch) hist[std::to_string(components)] = branches;
    j["components_per_branch"] = hist;
    j["rule_counts"] = {{"degree_one", s.ruleCounts.degreeOne},
                        {"degree_two_triangle", s.ruleCounts.degreeTwoTriangle},
                        {"high_degree", s.ruleCounts.highDegree},
                        {"clique", s.ruleCounts.clique},
                        {"chordless_cycle", s.ruleCounts.chordlessCycle},
                        {"crown", s.ruleCounts.crown}};
    j["root_vertices_before"] = s.rootVerticesBefore;
    j["root_vertices_after"] = s.rootVerticesAfter;
    j["degree_width"] = bitsOf(s.degreeWidth);
    j["max_stack_depth"] = s.maxStackDepth;
    j["worklist_pushes"] = s.worklistPushes;
    j["worklist_pops"] = s.worklistPops;
    if (withTiming) j["phase_seconds"] = s.wallTimeByPhase;
    return j;
}

/// With --deterministic the timings move out of the stats block, which then
/// depends only on the input and the flags.
inline nlohmann::ordered_json resultDocument(const SolveResult& r, const SolverConfig& cfg, bool withStats) {
    nlohmann::ordered_json j;
    j["mode"] = cfg.mode == Mode::PVC ? "pvc" : "mvc";
    if (cfg.mode == Mode::PVC) j["k"] = cfg.k;
    j["found"] = r.found;
    if (r.found) j["cover_size"] = r.coverSize;
    else j["cover_size"] = nullptr;
    j["exact"] = r.exact;
    if (r.cover) j["cover"] = *r.cover;
    if (withStats) {
        j["stats"] = statsDocument(r.stats, !cfg.deterministic);
        if (cfg.deterministic) j["phase_seconds"] = r.stats.wallTimeByPhase;
    }
    return j;
}

}  // namespace cavc::tools
