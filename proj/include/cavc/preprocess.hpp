// Root-level pipeline: exhaustive reduction (lightweight rules and crown),
// induced subgraph on the surviving vertices, and degree-width selection.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cavc/graph.hpp"
#include "cavc/oracle.hpp"
#include "cavc/reduce.hpp"

namespace cavc {

enum class Mode { MVC, PVC };

struct Preprocessed {
    StaticGraph reduced;
    std::vector<Vertex> vertexMap;       ///< reduced index -> original id
    std::int64_t forcedAtRoot = 0;
    std::vector<Vertex> forcedVertices;  ///< original ids, sorted
    std::int64_t initialUpperBound = 0;  ///< greedy cover size of `reduced`
    DegreeWidth width = DegreeWidth::Bits8;
    std::size_t maxStackDepth = 0;
    RuleCounts ruleCounts;
};

struct RootReduceOptions {
    Mode mode = Mode::MVC;
    std::int64_t k = 0;  ///< PVC only
    bool crown = true;
    std::optional<DegreeWidth> widthOverride;
};

namespace detail {

inline Preprocessed finishPreprocess(StaticGraph reduced, std::vector<Vertex> map, std::vector<Vertex> forced,
                                     RuleCounts counts, std::optional<DegreeWidth> widthOverride) {
    Preprocessed out;
    out.forcedAtRoot = static_cast<std::int64_t>(forced.size());
    out.forcedVertices = std::move(forced);
    out.width = selectWidth(reduced.maxDegree(), widthOverride);
    out.initialUpperBound = greedyCover(reduced).size;
    out.maxStackDepth = reduced.numVertices();
    out.reduced = std::move(reduced);
    out.vertexMap = std::move(map);
    out.ruleCounts = counts;
    return out;
}

}  // namespace detail

/// Alternates the lightweight rules and the crown rule until neither changes
/// the graph, then induces the subgraph on vertices that still have edges.
///
/// The high-degree rule keeps every cover of size at most the limit: the greedy
/// cover size of g for MVC (so an optimum always survives), k for PVC.
inline Preprocessed rootReduce(const StaticGraph& g, const RootReduceOptions& opt = {}) {
    auto node = makeRootNode<std::uint32_t>(g, /*recordCover=*/true);
    const std::int64_t limit = opt.mode == Mode::MVC ? greedyCover(g).size : opt.k;
    RuleCounts counts;
    std::vector<Vertex> scratch;
    while (true) {
        counts += reduceToFixpoint(node, g, limit, scratch).ruleCounts;
        if (!opt.crown || node.edgesRemaining == 0) break;
        if (opt.mode == Mode::PVC && node.solutionSize > limit) break;
        auto crown = applyCrown(node, g);
        if (crown.verticesForced == 0) break;
        counts += crown.ruleCounts;
    }
    std::vector<Vertex> keep, forced;
    for (Vertex v = 0; v < g.numVertices(); ++v) {
        if (node.degrees[v] > 0) keep.push_back(v);
        if ((*node.inclusionSet)[v]) forced.push_back(v);
    }
    auto induced = inducedSubgraph(g, keep);
    return detail::finishPreprocess(std::move(induced.graph), std::move(induced.vertexMap), std::move(forced),
                                    counts, opt.widthOverride);
}

/// No root reduction: the search runs on g itself.
inline Preprocessed identityPreprocess(const StaticGraph& g, std::optional<DegreeWidth> widthOverride = {}) {
    std::vector<Vertex> map(g.numVertices());
    for (Vertex v = 0; v < map.size(); ++v) map[v] = v;
    return detail::finishPreprocess(g, std::move(map), {}, {}, widthOverride);
}

}  // namespace cavc
