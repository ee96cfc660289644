// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_CORE_DISPATCH_HPP
#define LARCH_CORE_DISPATCH_HPP

#include <any>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

#include "larch/core/executor.hpp"

namespace larch {


/// Backend kernel entry point. Args are an opaque, kernel-specific
/// struct; typed wrappers in the kernels layer build them.
using KernelFn = std::function<void(Executor&, std::any&)>;


/// Maps (kernel name, backend kind) to entry points. Device kernels carry
/// one registration per supported subgroup size -- the stand-in for
/// precompiled per-size specializations selected at runtime.
class KernelRegistry {
public:
    static KernelRegistry& instance();

    void register_host(std::string name, ExecutorKind kind, KernelFn fn);
    void register_sim(std::string name, int subgroup_size, KernelFn fn);

    bool has(std::string_view name, ExecutorKind kind) const;

    const KernelFn& lookup_host(std::string_view name,
                                ExecutorKind kind) const;

    /// Picks the specialization for a device of `warp_size` lanes: the
    /// forced size when nonzero, else the largest registered size that
    /// does not exceed the warp.
    const KernelFn& lookup_sim(std::string_view name, int warp_size,
                               int forced_size, int& chosen_size) const;

private:
    KernelRegistry() = default;

    mutable std::mutex mutex_;
    std::map<std::string, std::map<ExecutorKind, KernelFn>, std::less<>>
        host_kernels_;
    std::map<std::string, std::map<int, KernelFn>, std::less<>> sim_kernels_;
};


struct DispatchOptions {
    /// Nonzero pins the device subgroup specialization instead of taking
    /// the largest one fitting the warp.
    int forced_subgroup_size = 0;
};


/// Completion handle of a dispatched kernel.
class DispatchHandle {
public:
    DispatchHandle() = default;
    DispatchHandle(std::shared_ptr<Executor> exec, TaskId task,
                   int subgroup_size)
        : exec_(std::move(exec)), task_(task), subgroup_size_(subgroup_size)
    {}

    /// Blocks until the kernel has run; surfaces deferred task errors.
    void wait() const;

    /// Subgroup specialization that ran (0 on host backends).
    int subgroup_size() const { return subgroup_size_; }

private:
    std::shared_ptr<Executor> exec_;
    TaskId task_ = 0;
    int subgroup_size_ = 0;
};


/// Runs the backend implementation of `name` registered for exec's kind.
/// Host backends execute eagerly; the device backend queues a task. The
/// args object is kept alive until the kernel has run, but operands it
/// points to must outlive the returned handle's wait().
DispatchHandle dispatch(std::shared_ptr<Executor> exec, std::string_view name,
                        std::any args, const DispatchOptions& options = {});


}  // namespace larch

#endif  // LARCH_CORE_DISPATCH_HPP
