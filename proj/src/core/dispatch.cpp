// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/core/dispatch.hpp"

#include "larch/warp/subgroup.hpp"

namespace larch {


KernelRegistry& KernelRegistry::instance()
{
    static KernelRegistry registry;
    return registry;
}


void KernelRegistry::register_host(std::string name, ExecutorKind kind,
                                   KernelFn fn)
{
    if (kind == ExecutorKind::sim_device) {
        throw UsageError("device kernels register per subgroup size");
    }
    std::lock_guard lock(mutex_);
    host_kernels_[std::move(name)][kind] = std::move(fn);
}


void KernelRegistry::register_sim(std::string name, int subgroup_size,
                                  KernelFn fn)
{
    if (!is_power_of_two(subgroup_size) || subgroup_size > 64) {
        throw UsageError("subgroup specialization must be a power of two "
                         "in [1, 64], got " +
                         std::to_string(subgroup_size));
    }
    std::lock_guard lock(mutex_);
    sim_kernels_[std::move(name)][subgroup_size] = std::move(fn);
}


bool KernelRegistry::has(std::string_view name, ExecutorKind kind) const
{
    std::lock_guard lock(mutex_);
    if (kind == ExecutorKind::sim_device) {
        auto it = sim_kernels_.find(name);
        return it != sim_kernels_.end() && !it->second.empty();
    }
    auto it = host_kernels_.find(name);
    return it != host_kernels_.end() && it->second.contains(kind);
}


const KernelFn& KernelRegistry::lookup_host(std::string_view name,
                                            ExecutorKind kind) const
{
    std::lock_guard lock(mutex_);
    auto it = host_kernels_.find(name);
    if (it != host_kernels_.end()) {
        auto kind_it = it->second.find(kind);
        if (kind_it != it->second.end()) {
            return kind_it->second;
        }
    }
    throw DispatchError("kernel '" + std::string(name) +
                        "' is not registered for backend " +
                        to_string(kind));
}


const KernelFn& KernelRegistry::lookup_sim(std::string_view name,
                                           int warp_size, int forced_size,
                                           int& chosen_size) const
{
    std::lock_guard lock(mutex_);
    auto it = sim_kernels_.find(name);
    if (it == sim_kernels_.end() || it->second.empty()) {
        throw DispatchError("kernel '" + std::string(name) +
                            "' is not registered for backend simdevice");
    }
    const auto& by_size = it->second;
    if (forced_size != 0) {
        if (forced_size > warp_size) {
            throw DispatchError("forced subgroup size " +
                                std::to_string(forced_size) +
                                " exceeds warp size " +
                                std::to_string(warp_size));
        }
        auto size_it = by_size.find(forced_size);
        if (size_it == by_size.end()) {
            throw DispatchError("kernel '" + std::string(name) +
                                "' has no specialization for subgroup size " +
                                std::to_string(forced_size));
        }
        chosen_size = forced_size;
        return size_it->second;
    }
    // Largest registered specialization still fitting the warp.
    auto size_it = by_size.upper_bound(warp_size);
    if (size_it == by_size.begin()) {
        throw DispatchError("kernel '" + std::string(name) +
                            "' has no specialization fitting warp size " +
                            std::to_string(warp_size));
    }
    --size_it;
    chosen_size = size_it->first;
    return size_it->second;
}


void DispatchHandle::wait() const
{
    if (exec_ && exec_->kind() == ExecutorKind::sim_device) {
        static_cast<SimDeviceExecutor&>(*exec_).queue().wait(task_);
    }
}


DispatchHandle dispatch(std::shared_ptr<Executor> exec, std::string_view name,
                        std::any args, const DispatchOptions& options)
{
    auto& registry = KernelRegistry::instance();
    if (exec->kind() != ExecutorKind::sim_device) {
        auto& fn = registry.lookup_host(name, exec->kind());
        fn(*exec, args);
        return DispatchHandle(std::move(exec), 0, 0);
    }
    auto& device = static_cast<SimDeviceExecutor&>(*exec);
    int chosen = 0;
    auto& fn = registry.lookup_sim(name, device.warp_size(),
                                   options.forced_subgroup_size, chosen);
    auto args_box = std::make_shared<std::any>(std::move(args));
    auto* exec_ptr = exec.get();
    auto task = device.submit(std::string(name), [&fn, exec_ptr, args_box] {
        fn(*exec_ptr, *args_box);
    });
    return DispatchHandle(std::move(exec), task, chosen);
}


}  // namespace larch
