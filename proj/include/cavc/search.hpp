// Per-node search operations: the stopping test, max-degree branching and
// connected-component discovery over the live part of a degree array.
#pragma once

#include <cassert>
#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cavc/graph.hpp"

namespace cavc {

/// Prune test for a node with cover size |S| and |E| live edges under scope
/// bound `best`. After the high-degree rule every live vertex covers at most
/// best - |S| - 1 edges, so more than (best - |S| - 1)^2 edges cannot be
/// covered by a strictly better solution.
constexpr bool shouldPrune(std::int64_t solutionSize, std::int64_t edgesRemaining, std::int64_t best) {
    if (solutionSize >= best) return true;
    const std::int64_t room = best - solutionSize - 1;
    return edgesRemaining > room * room;
}

/// Lowest-index vertex of maximum degree. Requires edgesRemaining > 0.
template <class Deg>
Vertex selectMaxDegree(const SearchNode<Deg>& node) {
    assert(node.edgesRemaining > 0);
    Vertex best = node.loBound;
    Deg bestDeg = 0;
    for (Vertex v : node.liveRange()) {
        if (node.degrees[v] > bestDeg) {
            bestDeg = node.degrees[v];
            best = v;
        }
    }
    return best;
}

/// Splits on v: the first child takes v, the second takes every live neighbor
/// of v (leaving v isolated). Both inherit the parent's scope.
template <class Deg>
std::pair<SearchNode<Deg>, SearchNode<Deg>> branchOnVertex(SearchNode<Deg> node, const StaticGraph& g, Vertex v,
                                                           bool tightenBounds = true) {
    SearchNode<Deg> include = node;
    removeVertex(include, g, v, true);
    for (Vertex u : g.neighbors(v))
        if (node.degrees[u] > 0) removeVertex(node, g, u, true);
    ++include.depth;
    ++node.depth;
    if (tightenBounds) {
        recomputeBounds(include);
        recomputeBounds(node);
    }
    return {std::move(include), std::move(node)};
}

/// Reusable BFS buffers; `mark` is epoch-stamped so successive searches of one
/// findComponents call share it without clearing.
struct ComponentScratch {
    std::vector<std::uint32_t> mark;
    std::uint32_t epoch = 0;
    std::vector<Vertex> queue;

    void begin(std::size_t n) {
        if (mark.size() != n) {
            mark.assign(n, 0);
            epoch = 0;
        }
        if (++epoch == 0) {
            std::fill(mark.begin(), mark.end(), 0);
            epoch = 1;
        }
    }
};

/// Live vertices reachable from `source`, in BFS order. Marks them visited in
/// the current epoch of `scratch`.
template <class Deg>
std::span<const Vertex> bfsComponent(const StaticGraph& g, const SearchNode<Deg>& node, Vertex source,
                                     ComponentScratch& scratch) {
    assert(node.degrees[source] > 0 && "BFS source must be live");
    auto& q = scratch.queue;
    q.clear();
    q.push_back(source);
    scratch.mark[source] = scratch.epoch;
    for (std::size_t head = 0; head < q.size(); ++head) {
        for (Vertex u : g.neighbors(q[head])) {
            if (node.degrees[u] > 0 && scratch.mark[u] != scratch.epoch) {
                scratch.mark[u] = scratch.epoch;
                q.push_back(u);
            }
        }
    }
    return q;
}

/// Discovers the connected components of the live graph one BFS at a time.
/// Returns 1 without calling `dispatch` when the first BFS reaches every live
/// vertex; otherwise every component, the first included, is handed to
/// `dispatch` as soon as it is found. Requires edgesRemaining > 0.
template <class Deg, class Dispatch>
std::size_t findComponents(const SearchNode<Deg>& node, const StaticGraph& g, ComponentScratch& scratch,
                           Dispatch&& dispatch) {
    assert(node.edgesRemaining > 0);
    scratch.begin(node.numVertices());
    std::size_t live = 0;
    Vertex first = node.loBound;
    bool haveFirst = false;
    for (Vertex v : node.liveRange()) {
        if (node.degrees[v] == 0) continue;
        if (!haveFirst) {
            first = v;
            haveFirst = true;
        }
        ++live;
    }
    auto comp = bfsComponent(g, node, first, scratch);
    if (comp.size() == live) return 1;
    std::size_t count = 1;
    std::size_t visited = comp.size();
    dispatch(comp);
    for (Vertex v : node.liveRange()) {
        if (visited == live) break;
        if (node.degrees[v] == 0 || scratch.mark[v] == scratch.epoch) continue;
        comp = bfsComponent(g, node, v, scratch);
        visited += comp.size();
        ++count;
        dispatch(comp);
    }
    return count;
}

/// Size of the max-degree greedy cover (lowest index on ties) of the live
/// vertices `component` of `node`. `heap` is reusable scratch.
template <class Deg>
std::int64_t greedyCoverSize(const SearchNode<Deg>& node, const StaticGraph& g, std::span<const Vertex> component,
                             std::vector<std::pair<Deg, Vertex>>& heap) {
    std::vector<Deg> deg(node.degrees);
    // max-heap on degree, then on the lowest vertex id
    auto before = [](const std::pair<Deg, Vertex>& a, const std::pair<Deg, Vertex>& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
    };
    heap.clear();
    for (Vertex v : component)
        if (deg[v] > 0) heap.emplace_back(deg[v], v);
    std::make_heap(heap.begin(), heap.end(), before);
    std::int64_t size = 0;
    while (!heap.empty()) {
        std::pop_heap(heap.begin(), heap.end(), before);
        auto [d, v] = heap.back();
        heap.pop_back();
        if (d == 0 || deg[v] != d) continue;  // stale
        ++size;
        deg[v] = 0;
        for (Vertex u : g.neighbors(v)) {
            if (deg[u] == 0) continue;
            if (--deg[u] > 0) {
                heap.emplace_back(deg[u], u);
                std::push_heap(heap.begin(), heap.end(), before);
            }
        }
    }
    return size;
}

}  // namespace cavc
