// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_CORE_DEVICE_ARRAY_HPP
#define LARCH_CORE_DEVICE_ARRAY_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "larch/core/error.hpp"
#include "larch/core/executor.hpp"

namespace larch {


enum class ElementKind { float64, int32, int64 };

const char* to_string(ElementKind kind);

inline std::size_t element_size(ElementKind kind)
{
    switch (kind) {
    case ElementKind::float64:
        return 8;
    case ElementKind::int32:
        return 4;
    case ElementKind::int64:
        return 8;
    }
    return 0;
}

template <typename T>
struct element_kind_of;

template <>
struct element_kind_of<double> {
    static constexpr ElementKind value = ElementKind::float64;
};
template <>
struct element_kind_of<std::int32_t> {
    static constexpr ElementKind value = ElementKind::int32;
};
template <>
struct element_kind_of<std::int64_t> {
    static constexpr ElementKind value = ElementKind::int64;
};


/// A typed buffer living in exactly one executor's memory space. Element
/// accesses are only meaningful from kernels dispatched on the owning
/// executor or through explicit copies; host code wanting the contents of
/// a device array stages them through the master executor.
class DeviceArray {
public:
    DeviceArray() = default;

    DeviceArray(std::shared_ptr<Executor> owner, ElementKind kind,
                std::size_t length);

    ~DeviceArray();

    DeviceArray(DeviceArray&& other) noexcept;
    DeviceArray& operator=(DeviceArray&& other) noexcept;
    DeviceArray(const DeviceArray&) = delete;
    DeviceArray& operator=(const DeviceArray&) = delete;

    const std::shared_ptr<Executor>& owner() const { return owner_; }
    ElementKind element_kind() const { return kind_; }
    std::size_t size() const { return length_; }
    std::size_t size_bytes() const { return length_ * element_size(kind_); }
    std::uint64_t space_id() const
    {
        return owner_ ? owner_->space_id() : 0;
    }
    bool empty() const { return length_ == 0; }

    void* data() { return data_; }
    const void* data() const { return data_; }

    /// Typed view; throws TypeError when T does not match element_kind().
    template <typename T>
    std::span<T> as_span()
    {
        check_kind(element_kind_of<T>::value);
        return {static_cast<T*>(data_), length_};
    }

    template <typename T>
    std::span<const T> as_span() const
    {
        check_kind(element_kind_of<T>::value);
        return {static_cast<const T*>(data_), length_};
    }

    /// Allocates a same-shape array on `exec` and copies the contents.
    DeviceArray clone_to(std::shared_ptr<Executor> exec) const;

private:
    void check_kind(ElementKind expected) const;
    void release() noexcept;

    std::shared_ptr<Executor> owner_;
    ElementKind kind_ = ElementKind::float64;
    std::size_t length_ = 0;
    void* data_ = nullptr;
};


/// Allocates an uninitialized array of `length` elements in exec's space.
DeviceArray allocate(std::shared_ptr<Executor> exec, ElementKind kind,
                     std::size_t length);


/// One stage of a routed copy.
struct CopyHop {
    std::uint64_t src_space = 0;
    std::uint64_t dst_space = 0;
    std::size_t bytes = 0;
};


/// Completion handle of a copy; also the transfer log of the hops the
/// routing rule produced.
class CopyHandle {
public:
    CopyHandle() = default;
    explicit CopyHandle(std::vector<CopyHop> hops) : hops_(std::move(hops)) {}

    /// Copies complete before the handle is returned; kept for call sites
    /// that want an explicit synchronization point.
    void wait() const {}

    std::span<const CopyHop> hops() const { return hops_; }

private:
    std::vector<CopyHop> hops_;
};


/// Copies src into dst, routing by memory space:
///  (a) same space: one direct hop;
///  (b) both endpoints host-side, or one endpoint the master of the other:
///      one direct staged hop;
///  (c) device endpoint and an unrelated host executor: staged through the
///      device's master;
///  (d) two distinct device spaces: device to its master, master to
///      master, master to device -- three hops.
/// Hops touching a device space run as tasks on that device's queue.
CopyHandle copy(const DeviceArray& src, DeviceArray& dst);


/// Queues the byte transfer of a single-hop copy as one device task with
/// dependencies. Routes requiring staging are rejected with UsageError;
/// use copy() for those.
TaskId submit_copy(SimDeviceExecutor& device, const DeviceArray& src,
                   DeviceArray& dst, std::span<const TaskId> deps = {});


// Host staging helpers: build an array from host values or fetch one into
// host memory, routing through masters as needed.

template <typename T>
DeviceArray array_from_host(std::shared_ptr<Executor> exec,
                            std::span<const T> values);

template <typename T>
std::vector<T> array_to_host(const DeviceArray& array);


}  // namespace larch

#endif  // LARCH_CORE_DEVICE_ARRAY_HPP
