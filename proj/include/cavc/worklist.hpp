// Bounded multi-producer multi-consumer queue (sequence-numbered ring, after
// Vyukov). Used as the shared worklist through which busy workers hand search
// nodes to idle ones.
#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <new>
#include <optional>
#include <utility>

namespace cavc {

template <class T>
class MpmcQueue {
  public:
    /// Capacity is rounded up to a power of two.
    explicit MpmcQueue(std::size_t capacity) {
        std::size_t cap = 2;
        while (cap < capacity) cap <<= 1;
        mask_ = cap - 1;
        cells_ = std::make_unique<Cell[]>(cap);
        for (std::size_t i = 0; i < cap; ++i) cells_[i].sequence.store(i, std::memory_order_relaxed);
    }

    MpmcQueue(const MpmcQueue&) = delete;
    MpmcQueue& operator=(const MpmcQueue&) = delete;

    ~MpmcQueue() {
        while (try_pop()) {
        }
    }

    std::size_t capacity() const { return mask_ + 1; }

    /// Leaves `value` untouched and returns false when full.
    bool try_push(T& value) {
        std::size_t pos = tail_.load(std::memory_order_relaxed);
        Cell* cell;
        while (true) {
            cell = &cells_[pos & mask_];
            std::size_t seq = cell->sequence.load(std::memory_order_acquire);
            auto diff = static_cast<std::intptr_t>(seq) - static_cast<std::intptr_t>(pos);
            if (diff == 0) {
                if (tail_.compare_exchange_weak(pos, pos + 1, std::memory_order_relaxed)) break;
            } else if (diff < 0) {
                return false;
            } else {
                pos = tail_.load(std::memory_order_relaxed);
            }
        }
        ::new (static_cast<void*>(&cell->storage)) T(std::move(value));
        cell->sequence.store(pos + 1, std::memory_order_release);
        return true;
    }

    std::optional<T> try_pop() {
        std::size_t pos = head_.load(std::memory_order_relaxed);
        Cell* cell;
        while (true) {
            cell = &cells_[pos & mask_];
            std::size_t seq = cell->sequence.load(std::memory_order_acquire);
            auto diff = static_cast<std::intptr_t>(seq) - static_cast<std::intptr_t>(pos + 1);
            if (diff == 0) {
                if (head_.compare_exchange_weak(pos, pos + 1, std::memory_order_relaxed)) break;
            } else if (diff < 0) {
                return std::nullopt;
            } else {
                pos = head_.load(std::memory_order_relaxed);
            }
        }
        T* slot = std::launder(reinterpret_cast<T*>(&cell->storage));
        std::optional<T> out(std::move(*slot));
        slot->~T();
        cell->sequence.store(pos + mask_ + 1, std::memory_order_release);
        return out;
    }

    /// Approximate under concurrency.
    std::size_t size() const {
        auto tail = tail_.load(std::memory_order_relaxed);
        auto head = head_.load(std::memory_order_relaxed);
        return tail > head ? tail - head : 0;
    }

  private:
    struct Cell {
        std::atomic<std::size_t> sequence;
        alignas(T) std::byte storage[sizeof(T)];
    };

    std::unique_ptr<Cell[]> cells_;
    std::size_t mask_ = 0;
    alignas(64) std::atomic<std::size_t> head_{0};
    alignas(64) std::atomic<std::size_t> tail_{0};
};

}  // namespace cavc
