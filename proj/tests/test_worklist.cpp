#include <gtest/gtest.h>

#include <atomic>
#include <memory>
#include <thread>
#include <vector>

#include "cavc/worklist.hpp"

using namespace cavc;

TEST(MpmcQueue, FifoAndBounds) {
    MpmcQueue<int> q(3);
    EXPECT_EQ(q.capacity(), 4u);
    for (int i = 0; i < 4; ++i) EXPECT_TRUE(q.try_push(i));
    int extra = 99;
    EXPECT_FALSE(q.try_push(extra));
    EXPECT_EQ(extra, 99);
    EXPECT_EQ(q.size(), 4u);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(q.try_pop(), i);
    EXPECT_FALSE(q.try_pop());
    EXPECT_EQ(q.size(), 0u);
}

TEST(MpmcQueue, MoveOnlyAndFailedPushKeepsValue) {
    MpmcQueue<std::unique_ptr<int>> q(2);
    auto a = std::make_unique<int>(1), b = std::make_unique<int>(2), c = std::make_unique<int>(3);
    EXPECT_TRUE(q.try_push(a));
    EXPECT_TRUE(q.try_push(b));
    EXPECT_FALSE(q.try_push(c));
    ASSERT_TRUE(c);
    EXPECT_EQ(*c, 3);
    EXPECT_EQ(**q.try_pop(), 1);
}

TEST(MpmcQueue, DestructorReleasesItems) {
    auto shared = std::make_shared<int>(0);
    {
        MpmcQueue<std::shared_ptr<int>> q(8);
        for (int i = 0; i < 5; ++i) {
            auto copy = shared;
            q.try_push(copy);
        }
        EXPECT_EQ(shared.use_count(), 6);
    }
    EXPECT_EQ(shared.use_count(), 1);
}

TEST(MpmcQueue, ConcurrentProducersConsumers) {
    constexpr int kProducers = 4, kConsumers = 4, kPerProducer = 50000;
    MpmcQueue<std::uint64_t> q(64);
    std::atomic<std::uint64_t> sum{0};
    std::atomic<int> consumed{0};
    std::vector<std::thread> threads;
    for (int p = 0; p < kProducers; ++p) {
        threads.emplace_back([&, p] {
            for (int i = 1; i <= kPerProducer; ++i) {
                std::uint64_t v = static_cast<std::uint64_t>(p) * kPerProducer + i;
                while (!q.try_push(v)) std::this_thread::yield();
            }
        });
    }
    for (int c = 0; c < kConsumers; ++c) {
        threads.emplace_back([&] {
            while (consumed.load() < kProducers * kPerProducer) {
                if (auto v = q.try_pop()) {
                    sum.fetch_add(*v);
                    consumed.fetch_add(1);
                } else {
                    std::this_thread::yield();
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    const std::uint64_t total = std::uint64_t{kProducers} * kPerProducer;
    EXPECT_EQ(sum.load(), total * (total + 1) / 2);
    EXPECT_FALSE(q.try_pop());
}
