// Parallel branch-and-reduce search with component branching.
//
// Workers pop search nodes from a private stack, falling back to a shared
// worklist. Every node belongs to a scope (a child entry of the registry) whose
// liveNodes counts the nodes still in flight under it. When a node's residual
// graph falls apart, the split is registered and each component becomes an
// independent child that any worker may solve; the post-processing of the
// split is done by whichever worker finishes the last descendant.
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "cavc/graph.hpp"
#include "cavc/reduce.hpp"
#include "cavc/registry.hpp"
#include "cavc/search.hpp"
#include "cavc/stats.hpp"
#include "cavc/worklist.hpp"

namespace cavc {

using Clock = std::chrono::steady_clock;

struct SearchParams {
    unsigned workers = 1;
    bool enableComponents = true;
    bool enableBounds = true;
    bool loadBalance = true;
    bool deterministic = false;
    std::size_t worklistThreshold = 0;  ///< 0: 2 x workers
    bool recordCover = false;
    std::int64_t rootBest = 0;          ///< initial bound of the root scope
    bool rootAchieved = true;           ///< a cover of size rootBest is known
    std::optional<std::int64_t> pvcLimit;  ///< stop once a cover of at most this size is known
    std::optional<Clock::time_point> deadline;
    bool enablePruning = true;  ///< false disables the edge-count stopping test (testing aid)
};

struct EngineResult {
    std::int64_t best = 0;  ///< root scope best when the search ended
    bool achieved = false;  ///< a cover of size `best` is known to exist
    bool timedOut = false;
    Stats stats;
    RegistryAudit audit;
    std::optional<std::vector<Vertex>> cover;  ///< recordCover only
};

template <class Deg>
class SearchEngine {
  public:
    using Node = SearchNode<Deg>;

    SearchEngine(const StaticGraph& g, SearchParams params)
        : g_(g), params_(std::move(params)), worklist_(4096) {
        if (params_.workers == 0) params_.workers = 1;
        if (params_.deterministic) params_.workers = 1;
        if (params_.worklistThreshold == 0) params_.worklistThreshold = 2 * std::size_t{params_.workers};
        assert(!(params_.recordCover && params_.enableComponents) && "cover recording needs a single scope");
    }

    EngineResult run() {
        const auto start = Clock::now();
        root_ = registry_.newChildEntry(params_.rootBest, std::nullopt);
        registry_.at(root_).achieved.store(params_.rootAchieved);

        Node root = makeRootNode<Deg>(g_, params_.recordCover);
        root.scope = root_;
        if (params_.enableBounds) recomputeBounds(root);

        std::vector<Worker> workers(params_.workers);
        const std::size_t stackCap = g_.numVertices() + 1;
        for (auto& w : workers) w.stackCap = stackCap;

        if (pvcSatisfied(root_)) {
            stop_.store(true);
        } else if (params_.workers > 1 && !params_.loadBalance) {
            seedStatically(std::move(root), workers);
        } else {
            workers[0].stack.push_back(std::move(root));
        }

        std::vector<std::thread> threads;
        for (std::size_t i = 1; i < workers.size(); ++i)
            threads.emplace_back([this, &w = workers[i]] { guardedLoop(w); });
        guardedLoop(workers[0]);
        for (auto& t : threads) t.join();
        if (error_) std::rethrow_exception(error_);

        EngineResult out;
        out.best = registry_.best(root_);
        out.achieved = registry_.at(root_).achieved.load() || !params_.pvcLimit;
        out.timedOut = timedOut_.load();
        for (auto& w : workers) out.stats.merge(w.stats);
        out.stats.wallTimeByPhase["search"] = std::chrono::duration<double>(Clock::now() - start).count();
        if (done_.load()) out.audit = auditRegistry(registry_);
        else out.audit.quiescent = false;
        if (params_.recordCover && bestCover_) {
            std::vector<Vertex> cover;
            for (Vertex v = 0; v < bestCover_->size(); ++v)
                if ((*bestCover_)[v]) cover.push_back(v);
            out.cover = std::move(cover);
        }
        return out;
    }

    const Registry& registry() const { return registry_; }

  private:
    struct Worker {
        std::vector<Node> stack;
        std::size_t stackCap = 0;
        Stats stats;
        std::vector<Vertex> reduceScratch;
        ComponentScratch components;
        std::vector<std::pair<Deg, Vertex>> greedyHeap;
        std::deque<Node>* seedSink = nullptr;
    };

    // --- scheduling -------------------------------------------------------

    void guardedLoop(Worker& w) {
        try {
            workerLoop(w);
        } catch (...) {
            std::lock_guard lock(errorMutex_);
            if (!error_) error_ = std::current_exception();
            requestStop();
        }
    }

    void workerLoop(Worker& w) {
        unsigned idle = 0;
        while (!stop_.load(std::memory_order_relaxed) && !done_.load(std::memory_order_acquire)) {
            std::optional<Node> node;
            if (!w.stack.empty()) {
                node.emplace(std::move(w.stack.back()));
                w.stack.pop_back();
            } else if ((node = worklist_.try_pop())) {
                ++w.stats.worklistPops;
            }
            if (!node) {
                waitForWork(idle++);
                continue;
            }
            idle = 0;
            if (params_.deadline && Clock::now() > *params_.deadline) {
                timedOut_.store(true);
                requestStop();
                break;
            }
            processNode(std::move(*node), w);
        }
    }

    /// Spins briefly, then sleeps until a node is shared or the search ends.
    void waitForWork(unsigned idle) {
        if (idle < 32) {
            std::this_thread::yield();
            return;
        }
        const std::uint32_t seen = signal_.load();
        if (worklist_.size() > 0 || stop_.load() || done_.load()) return;
        sleepers_.fetch_add(1);
        signal_.wait(seen);
        sleepers_.fetch_sub(1);
    }

    void signalWork() {
        signal_.fetch_add(1);
        if (sleepers_.load() > 0) signal_.notify_one();
    }

    void signalEnd() {
        signal_.fetch_add(1);
        signal_.notify_all();
    }

    void requestStop() {
        stop_.store(true);
        signalEnd();
    }

    /// Without load balancing, the root is expanded breadth-first until there
    /// is one subtree per worker; each worker then keeps to its own subtrees.
    void seedStatically(Node root, std::vector<Worker>& workers) {
        std::deque<Node> frontier;
        frontier.push_back(std::move(root));
        workers[0].seedSink = &frontier;
        while (!frontier.empty() && frontier.size() < workers.size() && !stop_.load() && !done_.load()) {
            Node n = std::move(frontier.front());
            frontier.pop_front();
            processNode(std::move(n), workers[0]);
        }
        workers[0].seedSink = nullptr;
        std::size_t i = 0;
        for (auto& n : frontier) {
            auto& w = workers[i++ % workers.size()];
            w.stack.push_back(std::move(n));
            ++w.stackCap;
        }
    }

    void pushPrivate(Node&& node, Worker& w) {
        if (w.seedSink) {
            w.seedSink->push_back(std::move(node));
            return;
        }
        if (w.stack.size() < w.stackCap) {
            w.stack.push_back(std::move(node));
            w.stats.maxStackDepth = std::max<std::int64_t>(w.stats.maxStackDepth, std::ssize(w.stack));
            return;
        }
        if (worklist_.try_push(node)) {
            ++w.stats.worklistPushes;
            signalWork();
            return;
        }
        throw ResourceError("private stack and worklist are both full");
    }

    void offloadOrPush(Node&& node, Worker& w) {
        const bool share = !w.seedSink && params_.loadBalance && !params_.deterministic;
        if (share && worklist_.size() < params_.worklistThreshold && worklist_.try_push(node)) {
            ++w.stats.worklistPushes;
            signalWork();
            return;
        }
        pushPrivate(std::move(node), w);
    }

    // --- node processing -------------------------------------------------

    void processNode(Node node, Worker& w) {
        ++w.stats.treeNodesVisited;
        const EntryIndex scope = node.scope;
        const std::int64_t best = registry_.best(scope);
        auto reduced = reduceToFixpoint(node, g_, best - 1, w.reduceScratch, params_.enableBounds);
        w.stats.ruleCounts += reduced.ruleCounts;

        if (params_.enablePruning && shouldPrune(node.solutionSize, node.edgesRemaining, best)) {
            finishNode(scope);
            return;
        }
        if (node.edgesRemaining == 0 || node.solutionSize >= best) {
            if (node.edgesRemaining == 0) submitLeaf(node);
            finishNode(scope);
            return;
        }
        if (params_.enableComponents && branchOnComponents(node, w)) return;

        // One node becomes two: the children inherit the node's own count.
        const Vertex v = selectMaxDegree(node);
        registry_.incLiveNodes(scope);
        auto [include, exclude] = branchOnVertex(std::move(node), g_, v, params_.enableBounds);
        offloadOrPush(std::move(exclude), w);
        pushPrivate(std::move(include), w);
    }

    void submitLeaf(const Node& node) {
        const std::int64_t prev = registry_.atomicMinBest(node.scope, node.solutionSize);
        if (node.solutionSize >= prev) return;
        if (params_.recordCover && node.inclusionSet) {
            std::lock_guard lock(coverMutex_);
            bestCover_ = node.inclusionSet;
        }
        if (params_.pvcLimit) {
            const bool newly = !registry_.at(node.scope).achieved.exchange(true);
            propagateImprovement(node.scope, prev - node.solutionSize, newly);
        }
    }

    /// Registers the split and dispatches each component, or returns false if
    /// the live graph is connected. Cliques and chordless cycles are solved on
    /// the spot and folded into the split's sum.
    bool branchOnComponents(Node& node, Worker& w) {
        std::optional<EntryIndex> parent;
        bool hopeless = false;
        const std::size_t count = findComponents(node, g_, w.components, [&](std::span<const Vertex> comp) {
            if (!parent) parent = registry_.newParentEntry(node.solutionSize, node.scope);
            auto& pe = registry_.at(*parent);
            const auto size = static_cast<std::int64_t>(comp.size());

            const ComponentKind kind = classifySpecialComponent(node, comp);
            if (kind != ComponentKind::General) {
                const std::int64_t c = solveSpecialComponent(kind, size);
                registry_.addToSum(*parent, c);
                pe.folded += c;
                pe.total.fetch_add(c);
                if (kind == ComponentKind::Clique) ++w.stats.ruleCounts.clique;
                else ++w.stats.ruleCounts.chordlessCycle;
                return;
            }

            Node sub;
            sub.degrees.assign(node.numVertices(), 0);
            std::int64_t degreeSum = 0;
            Vertex lo = comp.front(), hi = comp.front();
            for (Vertex v : comp) {
                sub.degrees[v] = node.degrees[v];
                degreeSum += node.degrees[v];
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            sub.edgesRemaining = degreeSum / 2;

            // Both size - 1 and the greedy cover of the component are covers
            // that exist, so either one makes the child's bound achieved.
            const std::int64_t known = std::min(size - 1, greedyCoverSize(sub, g_, comp, w.greedyHeap));
            const std::int64_t room = registry_.best(node.scope) - registry_.sum(*parent);
            const std::int64_t cap = std::min(room, known);
            if (cap <= 0) {
                // The split already matches the scope's best; it cannot improve it.
                if (!hopeless) pe.unachieved.fetch_add(1);
                hopeless = true;
                return;
            }
            const EntryIndex child = registry_.newChildEntry(cap, *parent);
            const bool achievable = cap == known;
            registry_.at(child).achieved.store(achievable);
            pe.children.push_back(child);
            pe.total.fetch_add(cap);
            if (!achievable) pe.unachieved.fetch_add(1);
            registry_.incLiveComps(*parent);

            sub.scope = child;
            sub.depth = node.depth + 1;
            if (params_.enableBounds) {
                sub.loBound = lo;
                sub.hiBound = hi;
            } else {
                sub.setFullBounds();
            }
            offloadOrPush(std::move(sub), w);
        });
        if (count < 2) return false;

        ++w.stats.componentBranches;
        ++w.stats.componentsPerBranch[static_cast<std::int64_t>(count)];
        // Discovery is over: release the splitting node's own share.
        if (params_.pvcLimit && registry_.at(*parent).unachieved.fetch_sub(1) == 1) settleParent(*parent);
        if (registry_.decLiveComps(*parent) == 0) finalizeParent(*parent);
        return true;
    }

    // --- completion cascade ---------------------------------------------

    void finishNode(EntryIndex scope) {
        if (registry_.decLiveNodes(scope) == 0) cascadeCompletion(scope);
    }

    /// The last node of `child` has finished: fold its best into the parent
    /// split, and keep climbing while counters keep reaching zero.
    void cascadeCompletion(EntryIndex child) {
        while (true) {
            auto parent = registry_.parentOf(child);
            if (!parent) {
                done_.store(true, std::memory_order_release);
                signalEnd();
                return;
            }
            registry_.addToSum(*parent, registry_.best(child));
            if (registry_.decLiveComps(*parent) != 0) return;
            auto next = finalizeParentStep(*parent);
            if (!next) return;
            child = *next;
        }
    }

    void finalizeParent(EntryIndex parent) {
        if (auto next = finalizeParentStep(parent)) cascadeCompletion(*next);
    }

    /// All components of `parent` are solved: offer the sum to the enclosing
    /// scope and retire the splitting node there. Returns that scope if it
    /// just lost its last live node.
    std::optional<EntryIndex> finalizeParentStep(EntryIndex parent) {
        const EntryIndex ancestor = registry_.ancestorOf(parent);
        if (params_.pvcLimit) settleParent(parent);
        else registry_.atomicMinBest(ancestor, registry_.sum(parent));
        if (registry_.decLiveNodes(ancestor) == 0) return ancestor;
        return std::nullopt;
    }

    // --- parameterized mode ---------------------------------------------

    bool pvcSatisfied(EntryIndex root) const {
        const auto& e = registry_.at(root);
        return params_.pvcLimit && e.achieved.load() && e.value.load() <= *params_.pvcLimit;
    }

    /// A child scope's best dropped by `delta` (and possibly became achieved).
    /// Parent totals absorb the change; whenever a split has a known cover for
    /// every component, its total is offered to the enclosing scope, up to
    /// the root, where reaching the limit stops the search.
    void propagateImprovement(EntryIndex child, std::int64_t delta, bool newlyAchieved) {
        while (true) {
            auto parent = registry_.parentOf(child);
            if (!parent) {
                if (pvcSatisfied(child)) requestStop();
                return;
            }
            auto& pe = registry_.at(*parent);
            if (delta > 0) pe.total.fetch_sub(delta);
            if (newlyAchieved) pe.unachieved.fetch_sub(1);
            auto next = settleStep(*parent, delta, newlyAchieved);
            if (!next) return;
            child = *next;
        }
    }

    void settleParent(EntryIndex parent) {
        std::int64_t delta = 0;
        bool newly = false;
        if (auto next = settleStep(parent, delta, newly)) propagateImprovement(*next, delta, newly);
    }

    std::optional<EntryIndex> settleStep(EntryIndex parent, std::int64_t& delta, bool& newlyAchieved) {
        auto& pe = registry_.at(parent);
        if (pe.unachieved.load() != 0) return std::nullopt;
        const std::int64_t candidate = pe.total.load();
        const EntryIndex ancestor = registry_.ancestorOf(parent);
        const std::int64_t prev = registry_.atomicMinBest(ancestor, candidate);
        if (candidate > prev) return std::nullopt;
        newlyAchieved = !registry_.at(ancestor).achieved.exchange(true);
        delta = prev - candidate;
        if (delta == 0 && !newlyAchieved) return std::nullopt;
        return ancestor;
    }

    const StaticGraph& g_;
    SearchParams params_;
    Registry registry_;
    MpmcQueue<Node> worklist_;
    EntryIndex root_{};
    std::atomic<bool> done_{false};
    std::atomic<bool> stop_{false};
    std::atomic<bool> timedOut_{false};
    std::atomic<std::uint32_t> signal_{0};  ///< bumped on every share and at the end
    std::atomic<unsigned> sleepers_{0};
    std::mutex errorMutex_;
    std::exception_ptr error_;
    std::mutex coverMutex_;
    std::optional<std::vector<bool>> bestCover_;
};

}  // namespace cavc
