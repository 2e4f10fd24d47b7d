// Reduction rules: the per-node lightweight rules, the special-component
// rules, and the root-only crown rule.
#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cavc/graph.hpp"

namespace cavc {

/// Vertices forced per rule; clique and chordlessCycle count solved components.
struct RuleCounts {
    std::int64_t degreeOne = 0;
    std::int64_t degreeTwoTriangle = 0;
    std::int64_t highDegree = 0;
    std::int64_t clique = 0;
    std::int64_t chordlessCycle = 0;
    std::int64_t crown = 0;

    RuleCounts& operator+=(const RuleCounts& o) {
        degreeOne += o.degreeOne;
        degreeTwoTriangle += o.degreeTwoTriangle;
        highDegree += o.highDegree;
        clique += o.clique;
        chordlessCycle += o.chordlessCycle;
        crown += o.crown;
        return *this;
    }
    friend bool operator==(const RuleCounts&, const RuleCounts&) = default;
};

struct ReductionOutcome {
    std::int64_t verticesForced = 0;
    RuleCounts ruleCounts;

    ReductionOutcome& operator+=(const ReductionOutcome& o) {
        verticesForced += o.verticesForced;
        ruleCounts += o.ruleCounts;
        return *this;
    }
};

namespace detail {

template <class Deg>
Vertex firstLiveNeighbor(const SearchNode<Deg>& node, const StaticGraph& g, Vertex v, Vertex skip) {
    for (Vertex u : g.neighbors(v))
        if (u != skip && node.degrees[u] > 0) return u;
    assert(false && "no live neighbor");
    return v;
}

}  // namespace detail

/// Forces the neighbor of every degree-one vertex until none is left. Each
/// sweep works from the degree-one set seen at its start.
template <class Deg>
ReductionOutcome applyDegreeOne(SearchNode<Deg>& node, const StaticGraph& g,
                                std::vector<Vertex>& candidates) {
    ReductionOutcome out;
    while (true) {
        candidates.clear();
        for (Vertex v : node.liveRange())
            if (node.degrees[v] == 1) candidates.push_back(v);
        if (candidates.empty()) break;
        for (Vertex v : candidates) {
            if (node.degrees[v] != 1) continue;
            Vertex u = detail::firstLiveNeighbor(node, g, v, v);
            removeVertex(node, g, u, true);
            ++out.verticesForced;
            ++out.ruleCounts.degreeOne;
        }
    }
    return out;
}

template <class Deg>
ReductionOutcome applyDegreeOne(SearchNode<Deg>& node, const StaticGraph& g) {
    std::vector<Vertex> scratch;
    return applyDegreeOne(node, g, scratch);
}

/// A degree-two vertex whose two live neighbors are adjacent lets both
/// neighbors be forced.
template <class Deg>
ReductionOutcome applyDegreeTwoTriangle(SearchNode<Deg>& node, const StaticGraph& g) {
    ReductionOutcome out;
    bool changed = true;
    while (changed) {
        changed = false;
        for (Vertex v : node.liveRange()) {
            if (node.degrees[v] != 2) continue;
            Vertex a = detail::firstLiveNeighbor(node, g, v, v);
            Vertex b = detail::firstLiveNeighbor(node, g, v, a);
            if (!g.adjacent(a, b)) continue;
            removeVertex(node, g, a, true);
            removeVertex(node, g, b, true);
            out.verticesForced += 2;
            out.ruleCounts.degreeTwoTriangle += 2;
            changed = true;
        }
    }
    return out;
}

/// Forces every vertex whose degree exceeds `budget`, the number of vertices
/// that may still be added without reaching the bound.
template <class Deg>
ReductionOutcome applyHighDegree(SearchNode<Deg>& node, const StaticGraph& g, std::int64_t budget) {
    ReductionOutcome out;
    for (Vertex v : node.liveRange()) {
        if (static_cast<std::int64_t>(node.degrees[v]) > budget) {
            removeVertex(node, g, v, true);
            ++out.verticesForced;
            ++out.ruleCounts.highDegree;
        }
    }
    return out;
}

/// Runs degree-one, degree-two-triangle and high-degree until a full sweep is
/// quiescent. `coverLimit` is the largest solution size still worth finding;
/// the high-degree budget is coverLimit - solutionSize, re-read every sweep.
/// Without a limit the high-degree rule is skipped.
template <class Deg>
ReductionOutcome reduceToFixpoint(SearchNode<Deg>& node, const StaticGraph& g,
                                  std::optional<std::int64_t> coverLimit, std::vector<Vertex>& scratch,
                                  bool tightenBounds = true) {
    ReductionOutcome total;
    while (true) {
        std::int64_t before = total.verticesForced;
        total += applyDegreeOne(node, g, scratch);
        total += applyDegreeTwoTriangle(node, g);
        if (coverLimit) {
            std::int64_t budget = *coverLimit - node.solutionSize;
            // Nothing within the limit survives here; the caller prunes.
            if (budget < 0 || (budget == 0 && node.edgesRemaining > 0)) break;
            total += applyHighDegree(node, g, budget);
        }
        if (total.verticesForced == before) break;
    }
    if (tightenBounds) recomputeBounds(node);
    return total;
}

template <class Deg>
ReductionOutcome reduceToFixpoint(SearchNode<Deg>& node, const StaticGraph& g,
                                  std::optional<std::int64_t> coverLimit, bool tightenBounds = true) {
    std::vector<Vertex> scratch;
    return reduceToFixpoint(node, g, coverLimit, scratch, tightenBounds);
}

enum class ComponentKind { General, Clique, ChordlessCycle };

/// Degree tests on a connected set of live vertices. The clique test runs
/// first, so K3 is a clique.
template <class Deg>
ComponentKind classifySpecialComponent(const SearchNode<Deg>& node, std::span<const Vertex> component) {
    const std::size_t size = component.size();
    bool clique = size >= 2;
    bool cycle = size >= 3;
    for (Vertex v : component) {
        const std::size_t d = node.degrees[v];
        clique = clique && d == size - 1;
        cycle = cycle && d == 2;
        if (!clique && !cycle) return ComponentKind::General;
    }
    if (clique) return ComponentKind::Clique;
    return cycle ? ComponentKind::ChordlessCycle : ComponentKind::General;
}

/// Minimum cover size of a clique or chordless cycle with `size` vertices.
constexpr std::int64_t solveSpecialComponent(ComponentKind kind, std::int64_t size) {
    switch (kind) {
        case ComponentKind::Clique: return size - 1;
        case ComponentKind::ChordlessCycle: return (size + 1) / 2;
        case ComponentKind::General: break;
    }
    assert(false && "not a special component");
    return -1;
}

/// A crown (I, H): I independent, H = N(I), and `matching` pairs every vertex
/// of H with a distinct vertex of I. H can be forced into the cover.
struct CrownResult {
    std::vector<Vertex> independent;  ///< I
    std::vector<Vertex> head;         ///< H
    std::vector<Edge> matching;       ///< (h, i) pairs

    bool empty() const { return head.empty(); }

    std::vector<Vertex> removed() const {
        std::vector<Vertex> out(independent);
        out.insert(out.end(), head.begin(), head.end());
        std::sort(out.begin(), out.end());
        return out;
    }
};

/// Crown on the live part of `node`: maximal matching, Hopcroft-Karp between
/// the unmatched vertices O and N(O), then the alternating closure of the
/// O-vertices left unmatched.
template <class Deg>
CrownResult findCrown(const SearchNode<Deg>& node, const StaticGraph& g) {
    constexpr Vertex none = std::numeric_limits<Vertex>::max();
    constexpr std::uint32_t inf = std::numeric_limits<std::uint32_t>::max();
    const std::size_t n = node.numVertices();
    auto live = [&](Vertex v) { return node.degrees[v] > 0; };

    std::vector<Vertex> mate(n, none);
    for (Vertex v : node.liveRange()) {
        if (!live(v) || mate[v] != none) continue;
        for (Vertex u : g.neighbors(v)) {
            if (live(u) && mate[u] == none) {
                mate[v] = u;
                mate[u] = v;
                break;
            }
        }
    }
    std::vector<Vertex> outsiders;  // O: independent because the matching is maximal
    for (Vertex v : node.liveRange())
        if (live(v) && mate[v] == none) outsiders.push_back(v);
    if (outsiders.empty()) return {};

    // Hopcroft-Karp, left side = O, right side = N(O).
    std::vector<Vertex> matchL(n, none), matchR(n, none);
    std::vector<std::uint32_t> dist(n, inf);
    std::vector<std::size_t> iter(n, 0);
    std::vector<Vertex> queue, stack;
    auto bfs = [&] {
        queue.clear();
        for (Vertex o : outsiders) {
            if (matchL[o] == none) {
                dist[o] = 0;
                queue.push_back(o);
            } else {
                dist[o] = inf;
            }
        }
        bool found = false;
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            Vertex o = queue[qi];
            for (Vertex h : g.neighbors(o)) {
                if (!live(h)) continue;
                Vertex w = matchR[h];
                if (w == none) found = true;
                else if (dist[w] == inf) {
                    dist[w] = dist[o] + 1;
                    queue.push_back(w);
                }
            }
        }
        return found;
    };
    auto augment = [&](Vertex root) {
        stack.assign(1, root);
        while (!stack.empty()) {
            Vertex o = stack.back();
            auto adj = g.neighbors(o);
            if (iter[o] == adj.size()) {
                dist[o] = inf;
                stack.pop_back();
                if (!stack.empty()) ++iter[stack.back()];
                continue;
            }
            Vertex h = adj[iter[o]];
            if (!live(h)) {
                ++iter[o];
                continue;
            }
            Vertex w = matchR[h];
            if (w == none) {
                for (Vertex s : stack) {
                    Vertex hs = g.neighbors(s)[iter[s]];
                    matchL[s] = hs;
                    matchR[hs] = s;
                }
                return true;
            }
            if (dist[w] == dist[o] + 1) stack.push_back(w);
            else ++iter[o];
        }
        return false;
    };
    while (bfs()) {
        for (Vertex o : outsiders) iter[o] = 0;
        for (Vertex o : outsiders)
            if (matchL[o] == none) augment(o);
    }

    CrownResult crown;
    std::vector<bool> inI(n, false), inH(n, false);
    std::vector<Vertex> work;
    for (Vertex o : outsiders) {
        if (matchL[o] == none) {
            inI[o] = true;
            work.push_back(o);
        }
    }
    if (work.empty()) return {};
    for (std::size_t wi = 0; wi < work.size(); ++wi) {
        for (Vertex h : g.neighbors(work[wi])) {
            if (!live(h) || inH[h]) continue;
            inH[h] = true;
            Vertex partner = matchR[h];
            assert(partner != none && "maximum matching leaves no free vertex in N(I)");
            if (!inI[partner]) {
                inI[partner] = true;
                work.push_back(partner);
            }
        }
    }
    for (Vertex v = 0; v < n; ++v) {
        if (inI[v]) crown.independent.push_back(v);
        if (inH[v]) {
            crown.head.push_back(v);
            crown.matching.emplace_back(v, matchR[v]);
        }
    }
    return crown;
}

inline CrownResult crownReduce(const StaticGraph& g) {
    return findCrown(makeRootNode<std::uint32_t>(g), g);
}

/// Finds one crown and forces its head. Returns the vertices forced.
template <class Deg>
ReductionOutcome applyCrown(SearchNode<Deg>& node, const StaticGraph& g) {
    ReductionOutcome out;
    auto crown = findCrown(node, g);
    for (Vertex h : crown.head) removeVertex(node, g, h, true);
    out.verticesForced = static_cast<std::int64_t>(crown.head.size());
    out.ruleCounts.crown = out.verticesForced;
    return out;
}

}  // namespace cavc
