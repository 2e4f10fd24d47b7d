// Component branch registry: the shared arena coordinating branches on
// components whose children may be solved by any worker.
//
// A child entry tracks one component: its best cover so far and the number of
// search nodes still working on it. A parent entry tracks one split: the running
// sum of the splitting node's solution and the finished components, and the
// number of components (plus the discovering node itself) still unsolved. The
// worker whose decrement brings a counter to zero performs the post-processing.
#pragma once

#include <array>
#include <atomic>
#include <cassert>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cavc/graph.hpp"

namespace cavc {

enum class EntryKind : std::uint8_t { Child, Parent };

struct RegistryEntry {
    EntryKind kind = EntryKind::Child;
    std::atomic<std::int64_t> value{0};    ///< Child: best. Parent: sum.
    std::atomic<std::int64_t> counter{0};  ///< Child: liveNodes. Parent: liveComps.
    std::optional<EntryIndex> link;        ///< Child: parentIdx. Parent: ancestorIdx.

    // Parameterized mode. Child: whether a cover of size `value` is known to
    // exist. Parent: `total` = sum + best of every live child, and
    // `unachieved` = children without a known cover, plus one while the split
    // is still discovering components.
    std::atomic<bool> achieved{false};
    std::atomic<std::int64_t> total{0};
    std::atomic<std::int64_t> unachieved{0};

    // Audit trail for tests. Written only by the splitting worker before it
    // releases its self-count.
    std::int64_t initialValue = 0;
    std::int64_t folded = 0;
    std::vector<EntryIndex> children;
};

/// Append-only arena of entries. Chunks are allocated under a lock; all field
/// updates are lock-free atomics. Indices stay valid for the registry lifetime.
class Registry {
  public:
    static constexpr std::size_t kChunkBits = 12;
    static constexpr std::size_t kChunkSize = std::size_t{1} << kChunkBits;
    static constexpr std::size_t kMaxChunks = std::size_t{1} << 16;

    Registry() = default;
    explicit Registry(std::size_t capacity) : capacity_(std::min(capacity, kChunkSize * kMaxChunks)) {}
    Registry(const Registry&) = delete;
    Registry& operator=(const Registry&) = delete;

    ~Registry() {
        for (auto& c : chunks_) delete[] c.load(std::memory_order_relaxed);
    }

    EntryIndex newChildEntry(std::int64_t bestInit, std::optional<EntryIndex> parentIdx) {
        assert(bestInit >= 0);
        auto idx = allocate();
        auto& e = at(idx);
        e.kind = EntryKind::Child;
        e.value.store(bestInit);
        e.counter.store(1);
        e.link = parentIdx;
        e.initialValue = bestInit;
        return idx;
    }

    EntryIndex newParentEntry(std::int64_t sumInit, EntryIndex ancestorIdx) {
        assert(at(ancestorIdx).kind == EntryKind::Child);
        auto idx = allocate();
        auto& e = at(idx);
        e.kind = EntryKind::Parent;
        e.value.store(sumInit);
        e.counter.store(1);
        e.link = ancestorIdx;
        e.initialValue = sumInit;
        e.total.store(sumInit);
        e.unachieved.store(1);
        return idx;
    }

    /// best = min(best, candidate); returns the previous best.
    std::int64_t atomicMinBest(EntryIndex idx, std::int64_t candidate) {
        auto& best = child(idx).value;
        std::int64_t cur = best.load();
        while (candidate < cur && !best.compare_exchange_weak(cur, candidate)) {
        }
        return cur;
    }

    std::int64_t incLiveNodes(EntryIndex idx) {
        auto prev = child(idx).counter.fetch_add(1);
        assert(prev >= 1 && "increment from a finished scope");
        return prev + 1;
    }

    /// Returns the new count; zero hands finalization to the caller.
    std::int64_t decLiveNodes(EntryIndex idx) {
        auto prev = child(idx).counter.fetch_sub(1);
        assert(prev >= 1 && "liveNodes below zero");
        return prev - 1;
    }

    std::int64_t addToSum(EntryIndex idx, std::int64_t delta) { return parent(idx).value.fetch_add(delta) + delta; }

    std::int64_t incLiveComps(EntryIndex idx) { return parent(idx).counter.fetch_add(1) + 1; }

    std::int64_t decLiveComps(EntryIndex idx) {
        auto prev = parent(idx).counter.fetch_sub(1);
        assert(prev >= 1 && "liveComps below zero");
        return prev - 1;
    }

    std::int64_t best(EntryIndex idx) const { return child(idx).value.load(); }
    std::int64_t sum(EntryIndex idx) const { return parent(idx).value.load(); }
    std::int64_t liveNodes(EntryIndex idx) const { return child(idx).counter.load(); }
    std::int64_t liveComps(EntryIndex idx) const { return parent(idx).counter.load(); }
    std::optional<EntryIndex> parentOf(EntryIndex idx) const { return child(idx).link; }
    EntryIndex ancestorOf(EntryIndex idx) const { return *parent(idx).link; }
    EntryKind kind(EntryIndex idx) const { return at(idx).kind; }

    RegistryEntry& at(EntryIndex idx) {
        return chunks_[idx.value >> kChunkBits].load(std::memory_order_acquire)[idx.value & (kChunkSize - 1)];
    }
    const RegistryEntry& at(EntryIndex idx) const { return const_cast<Registry*>(this)->at(idx); }

    std::size_t size() const { return std::min<std::size_t>(next_.load(), capacity_); }

  private:
    RegistryEntry& child(EntryIndex idx) {
        auto& e = at(idx);
        assert(e.kind == EntryKind::Child);
        return e;
    }
    const RegistryEntry& child(EntryIndex idx) const { return const_cast<Registry*>(this)->child(idx); }
    RegistryEntry& parent(EntryIndex idx) {
        auto& e = at(idx);
        assert(e.kind == EntryKind::Parent);
        return e;
    }
    const RegistryEntry& parent(EntryIndex idx) const { return const_cast<Registry*>(this)->parent(idx); }

    EntryIndex allocate() {
        std::size_t i = next_.fetch_add(1);
        if (i >= capacity_) throw ResourceError("component branch registry is full");
        auto& slot = chunks_[i >> kChunkBits];
        if (slot.load(std::memory_order_acquire) == nullptr) {
            std::lock_guard lock(growth_);
            if (slot.load(std::memory_order_relaxed) == nullptr)
                slot.store(new RegistryEntry[kChunkSize], std::memory_order_release);
        }
        return EntryIndex{static_cast<std::uint32_t>(i)};
    }

    std::size_t capacity_ = kChunkSize * kMaxChunks;
    std::atomic<std::size_t> next_{0};
    std::mutex growth_;
    std::array<std::atomic<RegistryEntry*>, kMaxChunks> chunks_{};
};

/// Post-solve consistency report over every registry entry.
struct RegistryAudit {
    std::size_t childEntries = 0;
    std::size_t parentEntries = 0;
    bool quiescent = true;      ///< every liveNodes / liveComps is zero
    bool conserved = true;      ///< every parent: sum = initial + folded + sum of children's best
    std::size_t maxNesting = 0; ///< longest chain of nested splits
};

inline RegistryAudit auditRegistry(const Registry& reg) {
    RegistryAudit audit;
    std::vector<std::size_t> nesting(reg.size(), 0);
    for (std::uint32_t i = 0; i < reg.size(); ++i) {
        EntryIndex idx{i};
        const auto& e = reg.at(idx);
        if (e.kind == EntryKind::Child) {
            ++audit.childEntries;
            if (e.counter.load() != 0) audit.quiescent = false;
            continue;
        }
        ++audit.parentEntries;
        if (e.counter.load() != 0) audit.quiescent = false;
        std::int64_t expect = e.initialValue + e.folded;
        for (auto c : e.children) expect += reg.best(c);
        if (expect != e.value.load()) audit.conserved = false;
        // Entries are appended after their ancestors, so one forward pass suffices.
        std::size_t depth = 1;
        if (auto outer = reg.parentOf(*e.link)) depth += nesting[outer->value];
        nesting[i] = depth;
        audit.maxNesting = std::max(audit.maxNesting, depth);
    }
    return audit;
}

}  // namespace cavc
