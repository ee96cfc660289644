// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/core/executor.hpp"

#include <algorithm>
#include <new>

#include "larch/warp/subgroup.hpp"
#include "core/thread_pool.hpp"

namespace larch {

namespace {


std::uint64_t next_space_id()
{
    static std::atomic<std::uint64_t> counter{0};
    return ++counter;
}


void validate_warp_size(int warp_size)
{
    if (!is_power_of_two(warp_size) || warp_size < 4 || warp_size > 64) {
        throw ConfigurationError(
            "warp size must be a power of two in [4, 64], got " +
            std::to_string(warp_size));
    }
}


}  // namespace


const char* to_string(ExecutorKind kind)
{
    switch (kind) {
    case ExecutorKind::reference:
        return "reference";
    case ExecutorKind::parallel:
        return "parallel";
    case ExecutorKind::sim_device:
        return "simdevice";
    }
    return "unknown";
}


std::vector<int> supported_subgroup_sizes(int warp_size)
{
    validate_warp_size(warp_size);
    std::vector<int> sizes;
    for (int size = 1; size <= warp_size; size *= 2) {
        sizes.push_back(size);
    }
    return sizes;
}


// ----------------------------- TaskQueue ----------------------------------


TaskQueue::TaskQueue(bool in_order, std::uint64_t seed)
    : in_order_(in_order), rng_(seed)
{}


TaskId TaskQueue::submit(std::string name, std::function<void()> fn,
                         std::span<const TaskId> deps)
{
    std::lock_guard lock(mutex_);
    for (auto dep : deps) {
        if (dep == 0 || dep >= next_id_) {
            throw UsageError("unknown dependency task id " +
                             std::to_string(dep));
        }
    }
    auto id = next_id_++;
    pending_.push_back(
        Task{id, std::move(fn), std::vector<TaskId>(deps.begin(), deps.end())});
    events_.push_back(
        TaskEvent{id, std::move(name), next_seq_++, 0, 0, TaskStatus::pending});
    return id;
}


bool TaskQueue::deps_satisfied(const Task& task) const
{
    for (auto dep : task.deps) {
        // Events are indexed by id - 1; ids are dense from 1.
        const auto& ev = events_[dep - 1];
        if (ev.status == TaskStatus::pending ||
            ev.status == TaskStatus::running) {
            return false;
        }
    }
    return true;
}


bool TaskQueue::step()
{
    std::function<void()> fn;
    TaskId id = 0;
    bool skipped = false;
    {
        std::lock_guard lock(mutex_);
        if (pending_.empty()) {
            return false;
        }
        std::size_t pick = pending_.size();
        if (in_order_) {
            // Submission order; earlier tasks always run first, so the
            // front task's dependencies are already complete.
            pick = 0;
        } else {
            std::vector<std::size_t> ready;
            for (std::size_t i = 0; i < pending_.size(); ++i) {
                if (deps_satisfied(pending_[i])) {
                    ready.push_back(i);
                }
            }
            // Submission is the only way to add tasks and dependencies
            // must precede dependents, so some task is always ready.
            std::uniform_int_distribution<std::size_t> dist(
                0, ready.size() - 1);
            pick = ready[dist(rng_)];
        }
        auto& task = pending_[pick];
        id = task.id;
        // A task whose dependency failed (or was skipped) does not run.
        for (auto dep : task.deps) {
            const auto& ev = events_[dep - 1];
            if (ev.status == TaskStatus::failed ||
                ev.status == TaskStatus::skipped) {
                skipped = true;
                break;
            }
        }
        fn = std::move(task.fn);
        pending_.erase(pending_.begin() + static_cast<std::ptrdiff_t>(pick));
        if (!skipped) {
            events_[id - 1].start_seq = next_seq_++;
            events_[id - 1].status = TaskStatus::running;
        }
    }
    if (skipped) {
        finish(id, TaskStatus::skipped, true);
        return true;
    }
    try {
        fn();
        finish(id, TaskStatus::done, false);
    } catch (...) {
        {
            std::lock_guard lock(mutex_);
            if (!failure_) {
                failure_ = std::current_exception();
            }
        }
        finish(id, TaskStatus::failed, false);
    }
    return true;
}


void TaskQueue::finish(TaskId id, TaskStatus status, bool record_start)
{
    std::lock_guard lock(mutex_);
    auto& ev = events_[id - 1];
    if (record_start) {
        ev.start_seq = next_seq_++;
    }
    ev.complete_seq = next_seq_++;
    ev.status = status;
    completion_order_.push_back(id);
}


void TaskQueue::wait(TaskId id)
{
    std::lock_guard drain(drain_mutex_);
    for (;;) {
        {
            std::lock_guard lock(mutex_);
            if (id == 0 || id >= next_id_) {
                throw UsageError("unknown task id " + std::to_string(id));
            }
            auto status = events_[id - 1].status;
            if (status != TaskStatus::pending &&
                status != TaskStatus::running) {
                if (status != TaskStatus::done && failure_) {
                    auto err = failure_;
                    failure_ = nullptr;
                    std::rethrow_exception(err);
                }
                return;
            }
        }
        step();
    }
}


void TaskQueue::drain()
{
    std::lock_guard drain(drain_mutex_);
    while (step()) {
    }
    std::exception_ptr err;
    {
        std::lock_guard lock(mutex_);
        err = failure_;
        failure_ = nullptr;
    }
    if (err) {
        std::rethrow_exception(err);
    }
}


std::size_t TaskQueue::pending_count() const
{
    std::lock_guard lock(mutex_);
    return pending_.size();
}


std::vector<TaskEvent> TaskQueue::event_log() const
{
    std::lock_guard lock(mutex_);
    return events_;
}


std::vector<TaskId> TaskQueue::completion_order() const
{
    std::lock_guard lock(mutex_);
    return completion_order_;
}


// ----------------------------- Executor -----------------------------------


Executor::Executor(std::size_t arena_capacity)
    : space_id_(next_space_id()), arena_capacity_(arena_capacity)
{}


void* Executor::raw_alloc(std::size_t bytes)
{
    auto used = arena_used_.load(std::memory_order_relaxed);
    for (;;) {
        if (bytes > arena_capacity_ - used) {
            throw OutOfMemoryError(space_id_, bytes, arena_capacity_ - used);
        }
        if (arena_used_.compare_exchange_weak(used, used + bytes,
                                              std::memory_order_relaxed)) {
            break;
        }
    }
    if (bytes == 0) {
        return nullptr;
    }
    return ::operator new(bytes, std::align_val_t{64});
}


void Executor::raw_free(void* ptr, std::size_t bytes) noexcept
{
    if (ptr != nullptr) {
        ::operator delete(ptr, std::align_val_t{64});
    }
    arena_used_.fetch_sub(bytes, std::memory_order_relaxed);
}


ExecutorDescriptor Executor::describe()
{
    ExecutorDescriptor desc;
    desc.kind = kind();
    desc.space_id = space_id();
    desc.master_space_id = master()->space_id();
    desc.arena_capacity = arena_capacity();
    return desc;
}


// ------------------------- ReferenceExecutor -------------------------------


ReferenceExecutor::ReferenceExecutor() : Executor(~std::size_t{0}) {}


std::shared_ptr<ReferenceExecutor> ReferenceExecutor::create()
{
    return std::shared_ptr<ReferenceExecutor>(new ReferenceExecutor());
}


// ------------------------- ParallelExecutor --------------------------------


ParallelExecutor::ParallelExecutor(int worker_count)
    : Executor(~std::size_t{0}), pool_(std::make_unique<ThreadPool>(worker_count))
{}


ParallelExecutor::~ParallelExecutor() = default;


std::shared_ptr<ParallelExecutor> ParallelExecutor::create(int worker_count)
{
    if (worker_count < 1) {
        throw ConfigurationError("worker count must be at least 1, got " +
                                 std::to_string(worker_count));
    }
    return std::shared_ptr<ParallelExecutor>(
        new ParallelExecutor(worker_count));
}


int ParallelExecutor::worker_count() const { return pool_->worker_count(); }


void ParallelExecutor::parallel_for(
    std::int64_t n,
    const std::function<void(int, std::int64_t, std::int64_t)>& body)
{
    pool_->parallel_for(n, body);
}


ExecutorDescriptor ParallelExecutor::describe()
{
    auto desc = Executor::describe();
    desc.worker_count = worker_count();
    return desc;
}


// ------------------------- SimDeviceExecutor -------------------------------


SimDeviceExecutor::SimDeviceExecutor(const SimDeviceConfig& config,
                                     std::shared_ptr<ReferenceExecutor> master)
    : Executor(config.arena_capacity),
      config_(config),
      master_(std::move(master)),
      queue_(config.in_order, config.scheduler_seed)
{}


std::shared_ptr<SimDeviceExecutor> SimDeviceExecutor::create(
    const SimDeviceConfig& config)
{
    return create(config, ReferenceExecutor::create());
}


std::shared_ptr<SimDeviceExecutor> SimDeviceExecutor::create(
    const SimDeviceConfig& config, std::shared_ptr<ReferenceExecutor> master)
{
    validate_warp_size(config.warp_size);
    if (!master) {
        throw ConfigurationError("device executor requires a master");
    }
    return std::shared_ptr<SimDeviceExecutor>(
        new SimDeviceExecutor(config, std::move(master)));
}


ExecutorDescriptor SimDeviceExecutor::describe()
{
    auto desc = Executor::describe();
    desc.warp_size = warp_size();
    desc.supported_subgroup_sizes = supported_subgroup_sizes(warp_size());
    desc.in_order = in_order();
    return desc;
}


// --------------------------- create_executor -------------------------------


std::shared_ptr<Executor> create_executor(ExecutorKind kind,
                                          const ExecutorParams& params)
{
    switch (kind) {
    case ExecutorKind::reference:
        return ReferenceExecutor::create();
    case ExecutorKind::parallel:
        return ParallelExecutor::create(params.worker_count);
    case ExecutorKind::sim_device:
        return SimDeviceExecutor::create(params.device);
    }
    throw ConfigurationError("unknown executor kind");
}


}  // namespace larch
