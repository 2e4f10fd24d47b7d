// Graph generators and an independent exact solver shared by the test suites.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "cavc/graph.hpp"
#include "cavc/oracle.hpp"

namespace cavc::testing {

using Rng = std::mt19937_64;

inline StaticGraph fromEdges(std::vector<Edge> edges, std::size_t n) {
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return buildCSR(edges, n);
}

inline StaticGraph randomGraph(std::size_t n, double p, Rng& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (coin(rng)) edges.emplace_back(u, v);
    return buildCSR(edges, n);
}

inline StaticGraph randomTree(std::size_t n, Rng& rng) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v < n; ++v) {
        std::uniform_int_distribution<Vertex> pick(0, v - 1);
        edges.emplace_back(pick(rng), v);
    }
    return fromEdges(edges, n);
}

/// Random forest: a random tree with some edges dropped.
inline StaticGraph randomForest(std::size_t n, Rng& rng) {
    auto tree = randomTree(n, rng);
    std::bernoulli_distribution keep(0.8);
    std::vector<Edge> edges;
    for (auto e : tree.edges())
        if (keep(rng)) edges.push_back(e);
    return buildCSR(edges, n);
}

/// b's vertices are shifted past a's.
inline StaticGraph disjointUnion(const StaticGraph& a, const StaticGraph& b) {
    auto edges = a.edges();
    const auto shift = static_cast<Vertex>(a.numVertices());
    for (auto [u, v] : b.edges()) edges.emplace_back(u + shift, v + shift);
    return buildCSR(edges, a.numVertices() + b.numVertices());
}

inline StaticGraph complete(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return buildCSR(edges, n);
}

inline StaticGraph cycle(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
    return fromEdges(edges, n);
}

inline StaticGraph path(std::size_t n) {
    std::vector<Edge> edges;
    for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return buildCSR(edges, n);
}

/// Center 0, leaves 1..leaves.
inline StaticGraph star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (Vertex v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
    return buildCSR(edges, leaves + 1);
}

inline StaticGraph petersen() {
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);          // outer cycle
        edges.emplace_back(i, i + 5);                // spokes
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
    }
    return fromEdges(edges, 10);
}

/// The nine-vertex walkthrough graph: a=0 b=1 c=2 d=3 e=4 f=5 g=6 h=7 i=8.
inline StaticGraph walkthroughGraph() {
    return buildCSR({{0, 1}, {1, 2}, {1, 4}, {3, 4}, {4, 5}, {4, 7}, {6, 7}, {7, 8}}, 9);
}

inline StaticGraph relabel(const StaticGraph& g, const std::vector<Vertex>& perm) {
    std::vector<Edge> edges;
    for (auto [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
    return fromEdges(edges, g.numVertices());
}

inline Vertex minDegreeVertex(const StaticGraph& g) {
    Vertex best = 0;
    for (Vertex v = 1; v < g.numVertices(); ++v)
        if (g.degree(v) < g.degree(best)) best = v;
    return best;
}

/// Ten vertices, no reduction rule applies, greedy cover 7, minimum cover 6.
inline StaticGraph greedyDecoy() {
    return buildCSR({{0, 7}, {0, 8}, {1, 4}, {1, 6}, {1, 8}, {2, 3}, {2, 5}, {2, 6}, {2, 9},
                     {3, 4}, {3, 7}, {3, 9}, {4, 7}, {4, 8}, {5, 6}, {5, 9}, {6, 9}, {8, 9}},
                    10);
}

/// Hub-and-block construction that splits at two nesting levels: a root hub
/// adjacent to every vertex of `blocks` blocks; each block is a sub-hub
/// adjacent to every vertex of `pieces` random pieces of minimum degree 3, so
/// no per-node rule dissolves a piece once its hubs are gone. A disjoint
/// greedyDecoy() with higher ids leaves the greedy bound one above the
/// optimum, so the search cannot stop at the root.
inline StaticGraph nestedSplitGraph(Rng& rng, std::size_t blocks, std::size_t pieces, std::size_t pieceSize,
                                    double p) {
    std::vector<Edge> edges;
    Vertex next = 1;  // 0 is the root hub
    for (std::size_t b = 0; b < blocks; ++b) {
        const Vertex hub = next++;
        edges.emplace_back(0, hub);
        for (std::size_t q = 0; q < pieces; ++q) {
            const Vertex base = next;
            next += static_cast<Vertex>(pieceSize);
            StaticGraph piece;
            do {
                piece = randomGraph(pieceSize, p, rng);
            } while (piece.numVertices() > 0 && piece.degree(minDegreeVertex(piece)) < 3);
            for (auto [u, v] : piece.edges()) edges.emplace_back(base + u, base + v);
            for (Vertex v = base; v < next; ++v) {
                edges.emplace_back(hub, v);
                edges.emplace_back(0, v);
            }
        }
    }
    return disjointUnion(fromEdges(edges, next), greedyDecoy());
}

/// Exact MVC on 64-bit vertex sets: branch on a maximum-degree vertex (take it
/// or take its neighbors), prune with the bound |E| / maxDegree. Shares no code
/// with the solver; practical for n <= 64 with moderate cover sizes.
inline std::int64_t edgeBranchMVC(const StaticGraph& g) {
    const std::size_t n = g.numVertices();
    if (n > 64) throw InputError("edgeBranchMVC supports at most 64 vertices");
    std::vector<std::uint64_t> adj(n, 0);
    for (Vertex v = 0; v < n; ++v)
        for (Vertex u : g.neighbors(v)) adj[v] |= std::uint64_t{1} << u;
    std::int64_t best = static_cast<std::int64_t>(greedyCover(g).size);

    auto recurse = [&](auto&& self, std::uint64_t removed, std::int64_t size) -> void {
        if (size >= best) return;
        std::int64_t edges2 = 0, maxDeg = 0;
        Vertex pick = 0;
        for (Vertex v = 0; v < n; ++v) {
            if (removed >> v & 1) continue;
            const std::int64_t d = std::popcount(adj[v] & ~removed);
            edges2 += d;
            if (d > maxDeg) {
                maxDeg = d;
                pick = v;
            }
        }
        if (edges2 == 0) {
            best = size;
            return;
        }
        const std::int64_t edges = edges2 / 2;
        if (size + (edges + maxDeg - 1) / maxDeg >= best) return;
        self(self, removed | (std::uint64_t{1} << pick), size + 1);
        const std::uint64_t nb = adj[pick] & ~removed;
        self(self, removed | nb | (std::uint64_t{1} << pick), size + std::popcount(nb));
    };
    recurse(recurse, 0, 0);
    return best;
}

}  // namespace cavc::testing
