// Top-level entry point: preprocessing, the parallel search at the selected
// degree width, and optional cover reconstruction.
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cavc/engine.hpp"
#include "cavc/graph.hpp"
#include "cavc/oracle.hpp"
#include "cavc/preprocess.hpp"

namespace cavc {

struct SolverConfig {
    Mode mode = Mode::MVC;
    std::int64_t k = 0;  ///< PVC only
    unsigned workers = 1;
    bool enableComponents = true;
    bool enableRootReduce = true;
    bool enableBounds = true;
    bool enableCrown = true;
    bool loadBalance = true;  ///< false: static subtree split, private stacks only
    std::optional<DegreeWidth> degreeWidthOverride;
    std::size_t worklistThreshold = 0;  ///< 0: 2 x workers
    bool recordCover = false;
    bool deterministic = false;  ///< one worker, strict depth-first
    std::optional<double> timeLimitSeconds;
};

struct SolveResult {
    /// MVC: minimum cover size (an upper bound if !exact). PVC: size of the
    /// cover found; meaningless when !found.
    std::int64_t coverSize = 0;
    bool found = true;  ///< PVC: a cover of size <= k exists. Always true for MVC.
    bool exact = true;  ///< false when the time limit cut the search short
    std::optional<std::vector<Vertex>> cover;  ///< original ids, sorted
    Stats stats;
    RegistryAudit audit;
};

namespace detail {

inline unsigned resolveWorkers(const SolverConfig& cfg) {
    if (cfg.deterministic) return 1;
    return cfg.workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.workers;
}

template <class F>
decltype(auto) withWidth(DegreeWidth w, F&& f) {
    switch (w) {
        case DegreeWidth::Bits8: return f(std::uint8_t{});
        case DegreeWidth::Bits16: return f(std::uint16_t{});
        case DegreeWidth::Bits32: break;
    }
    return f(std::uint32_t{});
}

inline EngineResult runEngine(const Preprocessed& pre, const SearchParams& params) {
    return withWidth(pre.width, [&](auto tag) {
        SearchEngine<decltype(tag)> engine(pre.reduced, params);
        return engine.run();
    });
}

/// Finds a cover of size <= limit on the reduced graph with a single-scope,
/// single-worker search that tracks cover membership.
inline std::vector<Vertex> reconstructReducedCover(const Preprocessed& pre, std::int64_t limit) {
    auto greedy = greedyCover(pre.reduced);
    if (greedy.size <= limit) return greedy.cover;
    SearchParams params;
    params.deterministic = true;
    params.enableComponents = false;
    params.recordCover = true;
    params.rootBest = limit + 1;
    params.rootAchieved = false;
    params.pvcLimit = limit;
    auto result = runEngine(pre, params);
    if (!result.cover) throw std::logic_error("cover reconstruction found no cover within the proven bound");
    return *result.cover;
}

}  // namespace detail

/// Solves MVC or PVC on a canonical graph.
inline SolveResult solve(const StaticGraph& g, const SolverConfig& cfg = {}) {
    if (cfg.mode == Mode::PVC && cfg.k < 0) throw InputError("k must be non-negative");
    const auto t0 = Clock::now();
    SolveResult out;
    out.stats.rootVerticesBefore = static_cast<std::int64_t>(g.numVertices());

    auto finishCover = [&](std::vector<Vertex> cover) {
        std::sort(cover.begin(), cover.end());
        if (!isVertexCover(g, cover)) throw std::logic_error("reconstructed set is not a vertex cover");
        out.coverSize = static_cast<std::int64_t>(cover.size());
        out.cover = std::move(cover);
    };

    if (cfg.mode == Mode::PVC) {
        auto greedy = greedyCover(g);
        if (greedy.size <= cfg.k) {
            out.coverSize = greedy.size;
            out.stats.rootVerticesAfter = out.stats.rootVerticesBefore;
            out.stats.degreeWidth = selectWidth(g.maxDegree(), cfg.degreeWidthOverride);
            out.stats.wallTimeByPhase = {{"rootReduce", 0.0}, {"search", 0.0}};
            if (cfg.recordCover) finishCover(greedy.cover);
            return out;
        }
    }

    RootReduceOptions ro{cfg.mode, cfg.k, cfg.enableCrown, cfg.degreeWidthOverride};
    Preprocessed pre = cfg.enableRootReduce ? rootReduce(g, ro) : identityPreprocess(g, cfg.degreeWidthOverride);
    out.stats.rootVerticesAfter = static_cast<std::int64_t>(pre.reduced.numVertices());
    out.stats.degreeWidth = pre.width;
    out.stats.ruleCounts = pre.ruleCounts;
    out.stats.wallTimeByPhase["rootReduce"] = std::chrono::duration<double>(Clock::now() - t0).count();
    out.stats.wallTimeByPhase["search"] = 0.0;

    const std::int64_t budget = cfg.mode == Mode::PVC ? cfg.k - pre.forcedAtRoot : 0;
    if (cfg.mode == Mode::PVC && budget < 0) {
        out.found = false;
        return out;
    }

    std::int64_t reducedBest = 0;
    if (pre.reduced.numEdges() > 0) {
        SearchParams params;
        params.workers = detail::resolveWorkers(cfg);
        params.enableComponents = cfg.enableComponents;
        params.enableBounds = cfg.enableBounds;
        params.loadBalance = cfg.loadBalance;
        params.deterministic = cfg.deterministic;
        params.worklistThreshold = cfg.worklistThreshold;
        if (cfg.timeLimitSeconds)
            params.deadline = t0 + std::chrono::duration_cast<Clock::duration>(
                                       std::chrono::duration<double>(*cfg.timeLimitSeconds));
        if (cfg.mode == Mode::MVC) {
            params.rootBest = pre.initialUpperBound;
            params.rootAchieved = true;
        } else if (pre.initialUpperBound <= budget) {
            params.rootBest = pre.initialUpperBound;
            params.rootAchieved = true;
        } else {
            params.rootBest = budget + 1;
            params.rootAchieved = false;
            params.pvcLimit = budget;
        }

        if (params.pvcLimit || cfg.mode == Mode::MVC) {
            auto er = detail::runEngine(pre, params);
            out.stats.merge(er.stats);
            out.stats.wallTimeByPhase["search"] = er.stats.wallTimeByPhase.at("search");
            out.audit = er.audit;
            reducedBest = er.best;
            if (cfg.mode == Mode::PVC) out.found = er.achieved && er.best <= budget;
            // A found PVC cover is definitive even if the clock ran out.
            out.exact = !er.timedOut || (cfg.mode == Mode::PVC && out.found);
        } else {
            reducedBest = pre.initialUpperBound;
        }
    }

    out.coverSize = pre.forcedAtRoot + reducedBest;
    if (cfg.recordCover && out.found && out.exact) {
        auto reducedCover = detail::reconstructReducedCover(pre, reducedBest);
        std::vector<Vertex> cover = pre.forcedVertices;
        for (Vertex v : reducedCover) cover.push_back(pre.vertexMap[v]);
        finishCover(std::move(cover));
    }
    return out;
}

}  // namespace cavc
