// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_CORE_EXECUTOR_HPP
#define LARCH_CORE_EXECUTOR_HPP

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "larch/core/error.hpp"

namespace larch {


class ThreadPool;


enum class ExecutorKind { reference, parallel, sim_device };

const char* to_string(ExecutorKind kind);

inline bool is_host_kind(ExecutorKind kind)
{
    return kind != ExecutorKind::sim_device;
}


/// Identity and capabilities of an executor, in plain-data form.
struct ExecutorDescriptor {
    ExecutorKind kind = ExecutorKind::reference;
    int worker_count = 1;
    int warp_size = 0;
    std::vector<int> supported_subgroup_sizes;
    bool in_order = false;
    std::uint64_t space_id = 0;
    std::uint64_t master_space_id = 0;
    std::size_t arena_capacity = 0;
};


/// Powers of two from 1 up to and including warp_size.
std::vector<int> supported_subgroup_sizes(int warp_size);


struct SimDeviceConfig {
    int warp_size = 32;
    bool in_order = false;
    /// Device arena capacity in bytes.
    std::size_t arena_capacity = std::size_t{1} << 30;
    /// Seed of the out-of-order scheduler; same seed, same schedule.
    std::uint64_t scheduler_seed = 0;
};


using TaskId = std::uint64_t;

enum class TaskStatus { pending, running, done, failed, skipped };

struct TaskEvent {
    TaskId id = 0;
    std::string name;
    std::uint64_t submit_seq = 0;
    std::uint64_t start_seq = 0;
    std::uint64_t complete_seq = 0;
    TaskStatus status = TaskStatus::pending;
};


/// Deferred task queue of a simulated device. Tasks accumulate on submit
/// and run when the queue is drained (synchronize or a handle wait). An
/// in-order queue runs tasks in submission order; otherwise a
/// deterministic, seed-driven scheduler picks any task whose dependencies
/// have completed. Task failures are stored and re-thrown by the drain
/// that observes them; tasks depending on a failed task are skipped.
class TaskQueue {
public:
    TaskQueue(bool in_order, std::uint64_t seed);

    TaskId submit(std::string name, std::function<void()> fn,
                  std::span<const TaskId> deps = {});

    /// Runs tasks until `id` has left the pending/running states.
    void wait(TaskId id);

    /// Runs all submitted tasks, then surfaces the first stored failure.
    void drain();

    bool in_order() const { return in_order_; }
    std::size_t pending_count() const;
    std::vector<TaskEvent> event_log() const;
    /// Task ids in the order they completed (done, failed, or skipped).
    std::vector<TaskId> completion_order() const;

private:
    struct Task {
        TaskId id;
        std::function<void()> fn;
        std::vector<TaskId> deps;
    };

    // Picks and runs one ready task. Returns false if nothing is pending.
    bool step();
    bool deps_satisfied(const Task& task) const;
    void finish(TaskId id, TaskStatus status, bool record_start);

    bool in_order_;
    mutable std::mutex mutex_;
    std::mutex drain_mutex_;
    std::mt19937_64 rng_;
    TaskId next_id_ = 1;
    std::uint64_t next_seq_ = 1;
    std::vector<Task> pending_;
    std::vector<TaskEvent> events_;
    std::vector<TaskId> completion_order_;
    std::exception_ptr failure_;
};


/// A compute resource together with its memory space and synchronization
/// primitives. Every executor can allocate and free raw memory in its own
/// space; kernels reach the executor through dynamic dispatch.
class Executor : public std::enable_shared_from_this<Executor> {
public:
    virtual ~Executor() = default;

    Executor(const Executor&) = delete;
    Executor& operator=(const Executor&) = delete;

    virtual ExecutorKind kind() const = 0;

    /// The CPU-side executor paired with this one; host executors are
    /// their own master.
    virtual std::shared_ptr<Executor> master() = 0;

    /// Blocks until all outstanding work has completed and surfaces any
    /// deferred task failure. Host executors complete work eagerly, so
    /// this is a no-op for them.
    virtual void synchronize() {}

    virtual ExecutorDescriptor describe();

    std::uint64_t space_id() const { return space_id_; }
    std::size_t arena_capacity() const { return arena_capacity_; }
    std::size_t arena_used() const
    {
        return arena_used_.load(std::memory_order_relaxed);
    }

    /// Allocates `bytes` in this executor's space. Throws OutOfMemoryError
    /// when the arena capacity would be exceeded.
    void* raw_alloc(std::size_t bytes);
    void raw_free(void* ptr, std::size_t bytes) noexcept;

protected:
    explicit Executor(std::size_t arena_capacity);

private:
    std::uint64_t space_id_;
    std::size_t arena_capacity_;
    std::atomic<std::size_t> arena_used_{0};
};


/// Sequential CPU executor; the correctness baseline every other backend
/// is validated against.
class ReferenceExecutor : public Executor {
public:
    static std::shared_ptr<ReferenceExecutor> create();

    ExecutorKind kind() const override { return ExecutorKind::reference; }
    std::shared_ptr<Executor> master() override { return shared_from_this(); }

private:
    ReferenceExecutor();
};


/// Multicore CPU executor running data-parallel kernels on a worker pool
/// with a barrier at kernel end.
class ParallelExecutor : public Executor {
public:
    static std::shared_ptr<ParallelExecutor> create(int worker_count);

    ~ParallelExecutor() override;

    ExecutorKind kind() const override { return ExecutorKind::parallel; }
    std::shared_ptr<Executor> master() override { return shared_from_this(); }
    ExecutorDescriptor describe() override;

    int worker_count() const;

    /// Splits [0, n) into one chunk per worker and runs
    /// `body(chunk, begin, end)` on each; returns after all chunks have
    /// finished.
    void parallel_for(
        std::int64_t n,
        const std::function<void(int, std::int64_t, std::int64_t)>& body);

private:
    explicit ParallelExecutor(int worker_count);

    std::unique_ptr<ThreadPool> pool_;
};


/// GPU-like executor: separate bounded memory arena, a deferred task
/// queue, a warp width, and per-subgroup-size kernel specializations. Its
/// master is always a freshly created (or explicitly shared) reference
/// executor that owns host-side staging memory.
class SimDeviceExecutor : public Executor {
public:
    static std::shared_ptr<SimDeviceExecutor> create(
        const SimDeviceConfig& config = {});
    /// Variant sharing a master with other device executors.
    static std::shared_ptr<SimDeviceExecutor> create(
        const SimDeviceConfig& config,
        std::shared_ptr<ReferenceExecutor> master);

    ExecutorKind kind() const override { return ExecutorKind::sim_device; }
    std::shared_ptr<Executor> master() override { return master_; }
    void synchronize() override { queue_.drain(); }
    ExecutorDescriptor describe() override;

    int warp_size() const { return config_.warp_size; }
    bool in_order() const { return config_.in_order; }
    const SimDeviceConfig& config() const { return config_; }

    TaskQueue& queue() { return queue_; }
    const TaskQueue& queue() const { return queue_; }

    TaskId submit(std::string name, std::function<void()> fn,
                  std::span<const TaskId> deps = {})
    {
        return queue_.submit(std::move(name), std::move(fn), deps);
    }

private:
    SimDeviceExecutor(const SimDeviceConfig& config,
                      std::shared_ptr<ReferenceExecutor> master);

    SimDeviceConfig config_;
    std::shared_ptr<ReferenceExecutor> master_;
    TaskQueue queue_;
};


struct ExecutorParams {
    int worker_count = 1;
    SimDeviceConfig device{};
};

/// Runtime-selected executor construction; validates params for the kind.
std::shared_ptr<Executor> create_executor(ExecutorKind kind,
                                          const ExecutorParams& params = {});


}  // namespace larch

#endif  // LARCH_CORE_EXECUTOR_HPP
