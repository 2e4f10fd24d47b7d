#include <gtest/gtest.h>

#include <thread>

#include "cavc/registry.hpp"

using namespace cavc;

TEST(Registry, NewChildEntry) {
    Registry reg;
    auto root = reg.newChildEntry(9, std::nullopt);
    EXPECT_EQ(reg.best(root), 9);
    EXPECT_EQ(reg.liveNodes(root), 1);
    EXPECT_FALSE(reg.parentOf(root));

    auto p = reg.newParentEntry(0, root);
    auto c = reg.newChildEntry(4, p);
    EXPECT_EQ(reg.kind(c), EntryKind::Child);
    EXPECT_EQ(reg.best(c), 4);
    EXPECT_EQ(reg.liveNodes(c), 1);
    EXPECT_EQ(reg.parentOf(c), p);
}

TEST(Registry, NewParentEntry) {
    Registry reg;
    auto a = reg.newChildEntry(5, std::nullopt);
    auto p = reg.newParentEntry(2, a);
    EXPECT_EQ(reg.kind(p), EntryKind::Parent);
    EXPECT_EQ(reg.sum(p), 2);
    EXPECT_EQ(reg.liveComps(p), 1);
    EXPECT_EQ(reg.ancestorOf(p), a);
}

TEST(Registry, NestedChain) {
    Registry reg;
    auto root = reg.newChildEntry(20, std::nullopt);
    auto outer = reg.newParentEntry(1, root);
    auto comp = reg.newChildEntry(6, outer);
    auto inner = reg.newParentEntry(3, comp);
    EXPECT_EQ(reg.ancestorOf(inner), comp);
    EXPECT_EQ(reg.parentOf(comp), outer);
    EXPECT_EQ(reg.ancestorOf(outer), root);
}

TEST(Registry, AtomicMinBest) {
    Registry reg;
    auto c = reg.newChildEntry(5, std::nullopt);
    EXPECT_EQ(reg.atomicMinBest(c, 3), 5);
    EXPECT_EQ(reg.best(c), 3);
    EXPECT_EQ(reg.atomicMinBest(c, 7), 3);
    EXPECT_EQ(reg.best(c), 3);
}

TEST(Registry, CountersSignalLastDecrement) {
    Registry reg;
    auto c = reg.newChildEntry(5, std::nullopt);
    EXPECT_EQ(reg.incLiveNodes(c), 2);  // a branch: one node becomes two
    EXPECT_EQ(reg.decLiveNodes(c), 1);  // the branching node finishes
    EXPECT_EQ(reg.incLiveNodes(c), 2);
    EXPECT_EQ(reg.decLiveNodes(c), 1);  // leaf, no finalization
    EXPECT_EQ(reg.decLiveNodes(c), 0);  // last leaf

    auto p = reg.newParentEntry(2, c);
    EXPECT_EQ(reg.addToSum(p, 3), 5);
    EXPECT_EQ(reg.incLiveComps(p), 2);
    EXPECT_EQ(reg.decLiveComps(p), 1);
    EXPECT_EQ(reg.decLiveComps(p), 0);
}

TEST(Registry, GrowsAcrossChunks) {
    Registry reg;
    auto root = reg.newChildEntry(1, std::nullopt);
    for (std::size_t i = 0; i < 3 * Registry::kChunkSize; ++i) reg.newChildEntry(i % 7, std::nullopt);
    EXPECT_EQ(reg.size(), 3 * Registry::kChunkSize + 1);
    EXPECT_EQ(reg.best(root), 1);
    EXPECT_EQ(reg.best(EntryIndex{static_cast<std::uint32_t>(2 * Registry::kChunkSize + 3)}),
              static_cast<std::int64_t>((2 * Registry::kChunkSize + 2) % 7));
}

TEST(Registry, CapacityExhaustion) {
    Registry reg(4);
    for (int i = 0; i < 4; ++i) reg.newChildEntry(1, std::nullopt);
    EXPECT_THROW(reg.newChildEntry(1, std::nullopt), ResourceError);
}

TEST(Registry, ConcurrentMinAndCounters) {
    Registry reg;
    auto root = reg.newChildEntry(1'000'000, std::nullopt);
    auto p = reg.newParentEntry(0, root);
    constexpr int kThreads = 8, kIters = 20000;
    std::vector<std::thread> threads;
    for (int t = 0; t < kThreads; ++t) {
        threads.emplace_back([&, t] {
            for (int i = 0; i < kIters; ++i) {
                reg.atomicMinBest(root, 1000 + (i * 7919 + t * 104729) % 50000);
                reg.incLiveNodes(root);
                reg.decLiveNodes(root);
                reg.incLiveComps(p);
                reg.addToSum(p, 1);
                reg.decLiveComps(p);
                if (i % 1000 == 0) reg.newChildEntry(3, p);
            }
        });
    }
    for (auto& th : threads) th.join();
    EXPECT_EQ(reg.best(root), 1000);
    EXPECT_EQ(reg.liveNodes(root), 1);
    EXPECT_EQ(reg.liveComps(p), 1);
    EXPECT_EQ(reg.sum(p), kThreads * kIters);
    EXPECT_EQ(reg.size(), 2u + kThreads * (kIters / 1000));
}

TEST(Audit, ConservationAndNesting) {
    Registry reg;
    auto root = reg.newChildEntry(10, std::nullopt);
    auto p = reg.newParentEntry(1, root);
    auto c1 = reg.newChildEntry(4, p);
    auto c2 = reg.newChildEntry(4, p);
    reg.at(p).children = {c1, c2};
    reg.at(p).folded = 2;
    auto inner = reg.newParentEntry(0, c1);
    reg.atomicMinBest(c1, 3);
    reg.atomicMinBest(c2, 2);

    // sum = 1 + 2 (folded) + 3 + 2
    reg.addToSum(p, 2 + 3 + 2);
    for (auto c : {root, c1, c2}) reg.decLiveNodes(c);
    for (auto q : {p, inner}) reg.decLiveComps(q);

    auto audit = auditRegistry(reg);
    EXPECT_EQ(audit.childEntries, 3u);
    EXPECT_EQ(audit.parentEntries, 2u);
    EXPECT_TRUE(audit.quiescent);
    EXPECT_TRUE(audit.conserved);
    EXPECT_EQ(audit.maxNesting, 2u);

    reg.addToSum(p, 1);
    EXPECT_FALSE(auditRegistry(reg).conserved);
    reg.incLiveNodes(c2);
    EXPECT_FALSE(auditRegistry(reg).quiescent);
}
