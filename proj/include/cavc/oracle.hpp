// Exhaustive exact cover for small graphs, and the greedy upper bound.
#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "cavc/graph.hpp"

namespace cavc {

struct CoverResult {
    std::int64_t size = 0;
    std::vector<Vertex> cover;  ///< sorted ascending
};

inline constexpr std::size_t kBruteForceLimit = 26;

/// Subset enumeration by increasing size; the first hit at each size is the
/// lexicographically smallest minimum cover.
inline CoverResult bruteForceMVC(const StaticGraph& g) {
    const std::size_t n = g.numVertices();
    if (n > kBruteForceLimit)
        throw InputError("brute-force oracle refuses graphs with more than " +
                         std::to_string(kBruteForceLimit) + " vertices");
    std::vector<std::uint32_t> adj(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u : g.neighbors(v)) adj[v] |= std::uint32_t{1} << u;

    auto covers = [&](std::uint32_t set) {
        for (Vertex v = 0; v < n; ++v)
            if (!(set >> v & 1u) && (adj[v] & ~set)) return false;
        return true;
    };

    std::vector<Vertex> pick;
    for (std::size_t k = 0; k <= n; ++k) {
        pick.resize(k);
        for (std::size_t i = 0; i < k; ++i) pick[i] = static_cast<Vertex>(i);
        while (true) {
            std::uint32_t set = 0;
            for (auto v : pick) set |= std::uint32_t{1} << v;
            if (covers(set)) return {static_cast<std::int64_t>(k), pick};
            // next k-combination of {0..n-1} in lexicographic order
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return {static_cast<std::int64_t>(n), {}};  // unreachable: V is always a cover
}

/// Repeatedly takes a maximum-degree vertex (lowest index on ties) until no
/// edges remain.
inline CoverResult greedyCover(const StaticGraph& g) {
    const std::size_t n = g.numVertices();
    std::vector<std::size_t> deg(n);
    std::priority_queue<std::pair<std::size_t, std::int64_t>> heap;  // (degree, -vertex)
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        if (deg[v] > 0) heap.emplace(deg[v], -static_cast<std::int64_t>(v));
    }
    std::vector<bool> removed(n, false);
    CoverResult out;
    while (!heap.empty()) {
        auto [d, negV] = heap.top();
        heap.pop();
        auto v = static_cast<Vertex>(-negV);
        if (removed[v] || d != deg[v] || d == 0) continue;  // stale
        removed[v] = true;
        out.cover.push_back(v);
        for (Vertex u : g.neighbors(v)) {
            if (removed[u]) continue;
            if (--deg[u] > 0) heap.emplace(deg[u], -static_cast<std::int64_t>(u));
        }
        deg[v] = 0;
    }
    std::sort(out.cover.begin(), out.cover.end());
    out.size = static_cast<std::int64_t>(out.cover.size());
    return out;
}

/// True iff every edge of g has an endpoint in `cover`.
inline bool isVertexCover(const StaticGraph& g, std::span<const Vertex> cover) {
    std::vector<bool> in(g.numVertices(), false);
    for (auto v : cover) {
        if (v >= g.numVertices()) return false;
        in[v] = true;
    }
    for (auto [u, v] : g.edges())
        if (!in[u] && !in[v]) return false;
    return true;
}

}  // namespace cavc
