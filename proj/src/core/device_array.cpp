// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/core/device_array.hpp"

#include <cstring>

namespace larch {

namespace {


/// Raw byte move between two buffers that both live in host RAM (which,
/// on a simulated device, is every buffer).
void move_bytes(const void* src, void* dst, std::size_t bytes)
{
    if (bytes > 0) {
        std::memcpy(dst, src, bytes);
    }
}


SimDeviceExecutor* as_device(const std::shared_ptr<Executor>& exec)
{
    return exec->kind() == ExecutorKind::sim_device
               ? static_cast<SimDeviceExecutor*>(exec.get())
               : nullptr;
}


/// Runs one hop. When either endpoint is a device, the move is queued on
/// that device (source side wins for device-to-device staging) and waited
/// for, so the hop respects queue ordering.
CopyHop run_hop(const std::shared_ptr<Executor>& src_exec, const void* src,
                const std::shared_ptr<Executor>& dst_exec, void* dst,
                std::size_t bytes)
{
    auto* queue_owner = as_device(src_exec);
    if (queue_owner == nullptr) {
        queue_owner = as_device(dst_exec);
    }
    if (queue_owner != nullptr) {
        auto id = queue_owner->submit(
            "copy", [=] { move_bytes(src, dst, bytes); });
        queue_owner->queue().wait(id);
    } else {
        move_bytes(src, dst, bytes);
    }
    return CopyHop{src_exec->space_id(), dst_exec->space_id(), bytes};
}


}  // namespace


const char* to_string(ElementKind kind)
{
    switch (kind) {
    case ElementKind::float64:
        return "float64";
    case ElementKind::int32:
        return "int32";
    case ElementKind::int64:
        return "int64";
    }
    return "unknown";
}


DeviceArray::DeviceArray(std::shared_ptr<Executor> owner, ElementKind kind,
                         std::size_t length)
    : owner_(std::move(owner)), kind_(kind), length_(length)
{
    data_ = owner_->raw_alloc(size_bytes());
}


DeviceArray::~DeviceArray() { release(); }


DeviceArray::DeviceArray(DeviceArray&& other) noexcept
    : owner_(std::move(other.owner_)),
      kind_(other.kind_),
      length_(other.length_),
      data_(other.data_)
{
    other.owner_ = nullptr;
    other.length_ = 0;
    other.data_ = nullptr;
}


DeviceArray& DeviceArray::operator=(DeviceArray&& other) noexcept
{
    if (this != &other) {
        release();
        owner_ = std::move(other.owner_);
        kind_ = other.kind_;
        length_ = other.length_;
        data_ = other.data_;
        other.owner_ = nullptr;
        other.length_ = 0;
        other.data_ = nullptr;
    }
    return *this;
}


void DeviceArray::release() noexcept
{
    if (owner_) {
        owner_->raw_free(data_, size_bytes());
    }
    data_ = nullptr;
    length_ = 0;
}


void DeviceArray::check_kind(ElementKind expected) const
{
    if (expected != kind_) {
        throw TypeError(std::string("array holds ") + to_string(kind_) +
                        ", requested " + to_string(expected));
    }
}


DeviceArray DeviceArray::clone_to(std::shared_ptr<Executor> exec) const
{
    DeviceArray result(std::move(exec), kind_, length_);
    copy(*this, result);
    return result;
}


DeviceArray allocate(std::shared_ptr<Executor> exec, ElementKind kind,
                     std::size_t length)
{
    return DeviceArray(std::move(exec), kind, length);
}


CopyHandle copy(const DeviceArray& src, DeviceArray& dst)
{
    if (!src.owner() || !dst.owner()) {
        throw UsageError("copy endpoints must be allocated arrays");
    }
    if (src.size() != dst.size()) {
        throw ShapeError("copy length mismatch: " + std::to_string(src.size()) +
                         " vs " + std::to_string(dst.size()));
    }
    if (src.element_kind() != dst.element_kind()) {
        throw TypeError(std::string("copy element kind mismatch: ") +
                        to_string(src.element_kind()) + " vs " +
                        to_string(dst.element_kind()));
    }
    const auto bytes = src.size_bytes();
    auto src_exec = src.owner();
    auto dst_exec = dst.owner();
    std::vector<CopyHop> hops;

    auto* src_dev = as_device(src_exec);
    auto* dst_dev = as_device(dst_exec);

    if (src_exec->space_id() == dst_exec->space_id() ||
        (src_dev == nullptr && dst_dev == nullptr)) {
        // Same space, or two host executors sharing the address space.
        hops.push_back(
            run_hop(src_exec, src.data(), dst_exec, dst.data(), bytes));
    } else if (src_dev != nullptr && dst_dev != nullptr) {
        // Distinct device spaces: stage through both masters.
        auto src_master = src_exec->master();
        auto dst_master = dst_exec->master();
        DeviceArray src_stage(src_master, src.element_kind(), src.size());
        DeviceArray dst_stage(dst_master, dst.element_kind(), dst.size());
        hops.push_back(
            run_hop(src_exec, src.data(), src_master, src_stage.data(), bytes));
        hops.push_back(run_hop(src_master, src_stage.data(), dst_master,
                               dst_stage.data(), bytes));
        hops.push_back(
            run_hop(dst_master, dst_stage.data(), dst_exec, dst.data(), bytes));
    } else {
        // Exactly one endpoint is a device.
        auto* dev = src_dev != nullptr ? src_dev : dst_dev;
        auto host_exec = src_dev != nullptr ? dst_exec : src_exec;
        auto dev_master = dev->master();
        if (host_exec->space_id() == dev_master->space_id()) {
            hops.push_back(
                run_hop(src_exec, src.data(), dst_exec, dst.data(), bytes));
        } else {
            // Unrelated host executor: stage on the device's master.
            DeviceArray stage(dev_master, src.element_kind(), src.size());
            hops.push_back(run_hop(src_exec, src.data(), dev_master,
                                   stage.data(), bytes));
            hops.push_back(run_hop(dev_master, stage.data(), dst_exec,
                                   dst.data(), bytes));
        }
    }
    return CopyHandle(std::move(hops));
}


TaskId submit_copy(SimDeviceExecutor& device, const DeviceArray& src,
                   DeviceArray& dst, std::span<const TaskId> deps)
{
    if (!src.owner() || !dst.owner()) {
        throw UsageError("copy endpoints must be allocated arrays");
    }
    if (src.size() != dst.size()) {
        throw ShapeError("copy length mismatch: " + std::to_string(src.size()) +
                         " vs " + std::to_string(dst.size()));
    }
    if (src.element_kind() != dst.element_kind()) {
        throw TypeError("copy element kind mismatch");
    }
    auto touches_device = [&](const DeviceArray& a) {
        return a.space_id() == device.space_id() ||
               a.space_id() == device.master()->space_id();
    };
    if (!touches_device(src) || !touches_device(dst)) {
        throw UsageError(
            "queued copies must stay between a device and its master; "
            "use copy() for staged routes");
    }
    const void* src_ptr = src.data();
    void* dst_ptr = dst.data();
    auto bytes = src.size_bytes();
    return device.submit(
        "copy", [=] { move_bytes(src_ptr, dst_ptr, bytes); }, deps);
}


template <typename T>
DeviceArray array_from_host(std::shared_ptr<Executor> exec,
                            std::span<const T> values)
{
    auto kind = element_kind_of<T>::value;
    if (exec->kind() == ExecutorKind::sim_device) {
        auto staging = DeviceArray(exec->master(), kind, values.size());
        std::memcpy(staging.data(), values.data(), values.size_bytes());
        return staging.clone_to(std::move(exec));
    }
    auto result = DeviceArray(std::move(exec), kind, values.size());
    std::memcpy(result.data(), values.data(), values.size_bytes());
    return result;
}


template <typename T>
std::vector<T> array_to_host(const DeviceArray& array)
{
    if (!array.owner()) {
        return {};
    }
    if (array.owner()->kind() == ExecutorKind::sim_device) {
        auto staged = array.clone_to(array.owner()->master());
        auto view = staged.as_span<const T>();
        return {view.begin(), view.end()};
    }
    auto view = array.as_span<const T>();
    return {view.begin(), view.end()};
}


template DeviceArray array_from_host<double>(std::shared_ptr<Executor>,
                                             std::span<const double>);
template DeviceArray array_from_host<std::int32_t>(
    std::shared_ptr<Executor>, std::span<const std::int32_t>);
template DeviceArray array_from_host<std::int64_t>(
    std::shared_ptr<Executor>, std::span<const std::int64_t>);

template std::vector<double> array_to_host<double>(const DeviceArray&);
template std::vector<std::int32_t> array_to_host<std::int32_t>(
    const DeviceArray&);
template std::vector<std::int64_t> array_to_host<std::int64_t>(
    const DeviceArray&);


}  // namespace larch
