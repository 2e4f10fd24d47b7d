// Graph core: immutable CSR adjacency plus the per-search-node degree array.
#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <ranges>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cavc {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Malformed or out-of-range input (bad files, bad ids, bad options).
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A bounded resource (registry arena, work stack) was exhausted.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Undirected simple graph in CSR form. Neighbor slices are sorted ascending.
class StaticGraph {
  public:
    StaticGraph() : offsets_{0} {}

    StaticGraph(std::vector<std::size_t> offsets, std::vector<Vertex> neighbors)
        : offsets_(std::move(offsets)), neighbors_(std::move(neighbors)) {
        assert(!offsets_.empty() && offsets_.front() == 0 && offsets_.back() == neighbors_.size());
    }

    std::size_t numVertices() const { return offsets_.size() - 1; }
    std::size_t numEdges() const { return neighbors_.size() / 2; }

    std::span<const Vertex> neighbors(Vertex v) const {
        return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
    }
    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    bool adjacent(Vertex u, Vertex v) const {
        auto adj = neighbors(u);
        return std::binary_search(adj.begin(), adj.end(), v);
    }

    std::size_t maxDegree() const {
        std::size_t best = 0;
        for (Vertex v = 0; v < numVertices(); ++v) best = std::max(best, degree(v));
        return best;
    }

    /// Each edge once as (min, max), lexicographically sorted.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(numEdges());
        for (Vertex v = 0; v < numVertices(); ++v)
            for (Vertex u : neighbors(v))
                if (v < u) out.emplace_back(v, u);
        return out;
    }

    const std::vector<std::size_t>& offsets() const { return offsets_; }
    const std::vector<Vertex>& neighborArray() const { return neighbors_; }

  private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> neighbors_;
};

/// Builds CSR from canonical edges (no self-loops, no duplicates).
inline StaticGraph buildCSR(std::span<const Edge> edges, std::size_t numVertices) {
    std::vector<std::size_t> offsets(numVertices + 1, 0);
    for (auto [u, v] : edges) {
        if (u >= numVertices || v >= numVertices)
            throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                             ") has an endpoint outside [0," + std::to_string(numVertices) + ")");
        ++offsets[u + 1];
        ++offsets[v + 1];
    }
    for (std::size_t i = 0; i < numVertices; ++i) offsets[i + 1] += offsets[i];
    std::vector<Vertex> neighbors(offsets.back());
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (auto [u, v] : edges) {
        neighbors[fill[u]++] = v;
        neighbors[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < numVertices; ++v)
        std::sort(neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[v]),
                  neighbors.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]));
    return StaticGraph(std::move(offsets), std::move(neighbors));
}

inline StaticGraph buildCSR(std::initializer_list<Edge> edges, std::size_t numVertices) {
    return buildCSR(std::span<const Edge>(edges.begin(), edges.size()), numVertices);
}

struct InducedGraph {
    StaticGraph graph;
    std::vector<Vertex> vertexMap;  ///< reduced index -> original id, strictly increasing
};

/// Subgraph induced on `keep` (any order, duplicates ignored).
inline InducedGraph inducedSubgraph(const StaticGraph& g, std::span<const Vertex> keep) {
    constexpr Vertex absent = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> map(keep.begin(), keep.end());
    std::sort(map.begin(), map.end());
    map.erase(std::unique(map.begin(), map.end()), map.end());
    std::vector<Vertex> reverse(g.numVertices(), absent);
    for (Vertex i = 0; i < map.size(); ++i) {
        if (map[i] >= g.numVertices()) throw InputError("induced vertex out of range");
        reverse[map[i]] = i;
    }
    std::vector<std::size_t> offsets(map.size() + 1, 0);
    std::vector<Vertex> neighbors;
    for (Vertex i = 0; i < map.size(); ++i) {
        for (Vertex u : g.neighbors(map[i]))
            if (reverse[u] != absent) neighbors.push_back(reverse[u]);
        offsets[i + 1] = neighbors.size();
    }
    // reverse[] is monotone, so the slices stay sorted.
    return {StaticGraph(std::move(offsets), std::move(neighbors)), std::move(map)};
}

/// Bit width of degree-array entries. The all-ones value is reserved as a poison marker.
enum class DegreeWidth : std::uint8_t { Bits8 = 8, Bits16 = 16, Bits32 = 32 };

constexpr int bitsOf(DegreeWidth w) { return static_cast<int>(w); }

constexpr std::uint64_t poisonValue(DegreeWidth w) { return (std::uint64_t{1} << bitsOf(w)) - 1; }

constexpr bool widthFits(DegreeWidth w, std::uint64_t maxDegree) { return maxDegree < poisonValue(w); }

/// Smallest width whose non-poison range holds `maxDegree`, unless overridden.
inline DegreeWidth selectWidth(std::uint64_t maxDegree, std::optional<DegreeWidth> override = {}) {
    if (override) {
        if (!widthFits(*override, maxDegree))
            throw InputError("degree width " + std::to_string(bitsOf(*override)) +
                             " cannot hold maximum degree " + std::to_string(maxDegree));
        return *override;
    }
    for (auto w : {DegreeWidth::Bits8, DegreeWidth::Bits16, DegreeWidth::Bits32})
        if (widthFits(w, maxDegree)) return w;
    throw InputError("maximum degree " + std::to_string(maxDegree) + " is not supported");
}

/// Stable index of a registry entry.
struct EntryIndex {
    std::uint32_t value = 0;
    friend bool operator==(EntryIndex, EntryIndex) = default;
};

/// One search-tree node. The residual graph is encoded entirely by `degrees`:
/// an entry is zero once the vertex is removed or has lost all live neighbors,
/// and an edge is live iff both endpoints have non-zero degree.
///
/// A node is owned and mutated by one worker at a time, so degree updates are
/// plain writes.
template <class Deg>
struct SearchNode {
    std::vector<Deg> degrees;
    std::int64_t solutionSize = 0;
    std::int64_t edgesRemaining = 0;
    Vertex loBound = 0;
    Vertex hiBound = 0;
    EntryIndex scope{};
    std::uint32_t depth = 0;
    std::optional<std::vector<bool>> inclusionSet;

    std::size_t numVertices() const { return degrees.size(); }

    bool boundsEmpty() const { return loBound > hiBound || loBound >= degrees.size(); }

    /// Vertices inside the non-zero bounds (zero entries inside are possible).
    auto liveRange() const {
        if (boundsEmpty()) return std::views::iota(Vertex{0}, Vertex{0});
        return std::views::iota(loBound, hiBound + 1);
    }

    void setEmptyBounds() {
        loBound = static_cast<Vertex>(degrees.size());
        hiBound = 0;
    }

    void setFullBounds() {
        if (degrees.empty()) {
            setEmptyBounds();
            return;
        }
        loBound = 0;
        hiBound = static_cast<Vertex>(degrees.size() - 1);
    }
};

/// Root node: every vertex at its full degree.
template <class Deg>
SearchNode<Deg> makeRootNode(const StaticGraph& g, bool recordCover = false) {
    SearchNode<Deg> node;
    node.degrees.resize(g.numVertices());
    std::int64_t sum = 0;
    for (Vertex v = 0; v < g.numVertices(); ++v) {
        assert(g.degree(v) < std::numeric_limits<Deg>::max());
        node.degrees[v] = static_cast<Deg>(g.degree(v));
        sum += static_cast<std::int64_t>(g.degree(v));
    }
    node.edgesRemaining = sum / 2;
    node.setFullBounds();
    if (recordCover) node.inclusionSet.emplace(g.numVertices(), false);
    return node;
}

/// Removes v and its live incident edges; optionally counts it into the cover.
template <class Deg>
void removeVertex(SearchNode<Deg>& node, const StaticGraph& g, Vertex v, bool intoCover) {
    const Deg d = node.degrees[v];
    if (d > 0) {
        for (Vertex u : g.neighbors(v)) {
            if (node.degrees[u] > 0) --node.degrees[u];
        }
        node.degrees[v] = 0;
        node.edgesRemaining -= d;
    }
    if (intoCover) {
        ++node.solutionSize;
        if (node.inclusionSet) (*node.inclusionSet)[v] = true;
    }
}

/// Shrinks [loBound, hiBound] to the first and last non-zero entries. Degrees
/// only decrease, so the scan stays inside the previous bounds.
template <class Deg>
void recomputeBounds(SearchNode<Deg>& node) {
    if (node.boundsEmpty()) {
        node.setEmptyBounds();
        return;
    }
    Vertex lo = node.loBound;
    Vertex hi = node.hiBound;
    while (lo <= hi && node.degrees[lo] == 0) ++lo;
    if (lo > hi) {
        node.setEmptyBounds();
        return;
    }
    while (node.degrees[hi] == 0) --hi;
    node.loBound = lo;
    node.hiBound = hi;
}

/// Degree array rebuilt from scratch for the live vertex set of `node`. Used by
/// tests and debug checks.
template <class Deg>
std::vector<Deg> recountDegrees(const SearchNode<Deg>& node, const StaticGraph& g) {
    std::vector<Deg> out(node.degrees.size(), 0);
    for (Vertex v = 0; v < g.numVertices(); ++v) {
        if (node.degrees[v] == 0) continue;
        Deg count = 0;
        for (Vertex u : g.neighbors(v))
            if (node.degrees[u] > 0) ++count;
        out[v] = count;
    }
    return out;
}

}  // namespace cavc
