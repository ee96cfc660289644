// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_WARP_WARP_CONTEXT_HPP
#define LARCH_WARP_WARP_CONTEXT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "larch/core/error.hpp"
#include "larch/warp/subgroup.hpp"

namespace larch {

namespace detail {


inline void check_collective_args(const SubgroupView& view,
                                  std::size_t value_count)
{
    if (static_cast<int>(value_count) != view.size) {
        throw CollectiveUsageError(
            "expected one value per subgroup lane (" +
            std::to_string(view.size) + "), got " +
            std::to_string(value_count));
    }
}


inline void check_warp_preds(const SubgroupView& view, std::size_t pred_count)
{
    if (static_cast<int>(pred_count) != view.warp_size) {
        throw CollectiveUsageError(
            "expected one predicate per warp lane (" +
            std::to_string(view.warp_size) + "), got " +
            std::to_string(pred_count));
    }
}


}  // namespace detail


/// Broadcast: every lane of the subgroup receives the value held by the
/// lane of rank `src_rank`. `values` is indexed by rank and must have
/// exactly `view.size` entries.
template <typename T>
std::vector<T> shfl(const SubgroupView& view, std::span<const T> values,
                    int src_rank)
{
    detail::check_collective_args(view, values.size());
    if (src_rank < 0 || src_rank >= view.size) {
        throw CollectiveUsageError("shfl source rank " +
                                   std::to_string(src_rank) +
                                   " out of range for subgroup size " +
                                   std::to_string(view.size));
    }
    return std::vector<T>(values.size(), values[src_rank]);
}


/// Butterfly exchange: the lane of rank `r` receives the value of the lane
/// of rank `r ^ bitmask`.
template <typename T>
std::vector<T> shfl_xor(const SubgroupView& view, std::span<const T> values,
                        int bitmask)
{
    detail::check_collective_args(view, values.size());
    if (bitmask < 0 || bitmask >= view.size) {
        throw CollectiveUsageError("shfl_xor bitmask " +
                                   std::to_string(bitmask) +
                                   " out of range for subgroup size " +
                                   std::to_string(view.size));
    }
    std::vector<T> result(values.size());
    for (int rank = 0; rank < view.size; ++rank) {
        result[rank] = values[rank ^ bitmask];
    }
    return result;
}


/// Warp-wide ballot word restricted to the subgroup: bit `i` of the result
/// is the predicate of the lane of rank `i`, realized as
/// `(ballot(pred) & mask) >> lane_offset`. `preds` covers the whole warp,
/// one entry per lane.
inline std::uint64_t ballot(const SubgroupView& view,
                            std::span<const std::uint8_t> preds)
{
    detail::check_warp_preds(view, preds.size());
    std::uint64_t warp_word = 0;
    for (int lane = 0; lane < view.warp_size; ++lane) {
        if (preds[lane]) {
            warp_word |= std::uint64_t{1} << lane;
        }
    }
    return (warp_word & view.mask.bits) >> view.lane_offset;
}


/// True iff at least one subgroup lane's predicate holds:
/// `(ballot(pred) & mask) != 0`.
inline bool any(const SubgroupView& view, std::span<const std::uint8_t> preds)
{
    detail::check_warp_preds(view, preds.size());
    std::uint64_t warp_word = 0;
    for (int lane = 0; lane < view.warp_size; ++lane) {
        if (preds[lane]) {
            warp_word |= std::uint64_t{1} << lane;
        }
    }
    return (warp_word & view.mask.bits) != 0;
}


/// True iff every subgroup lane's predicate holds:
/// `(ballot(pred) & mask) == mask`.
inline bool all(const SubgroupView& view, std::span<const std::uint8_t> preds)
{
    detail::check_warp_preds(view, preds.size());
    std::uint64_t warp_word = 0;
    for (int lane = 0; lane < view.warp_size; ++lane) {
        if (preds[lane]) {
            warp_word |= std::uint64_t{1} << lane;
        }
    }
    return (warp_word & view.mask.bits) == view.mask.bits;
}


/// Butterfly reduction: after log2(size) shfl_xor rounds with strides
/// size/2, size/4, ..., 1 every lane holds the sum of all subgroup lanes'
/// inputs.
template <typename T>
std::vector<T> subgroup_reduce_sum(const SubgroupView& view,
                                   std::span<const T> values)
{
    detail::check_collective_args(view, values.size());
    std::vector<T> acc(values.begin(), values.end());
    for (int stride = view.size / 2; stride > 0; stride /= 2) {
        auto partner = shfl_xor<T>(view, acc, stride);
        for (int rank = 0; rank < view.size; ++rank) {
            acc[rank] += partner[rank];
        }
    }
    return acc;
}


/// Lock-step warp state: per-lane active flags. Collectives routed through
/// a context verify that the invoking subgroup is converged, i.e. that
/// every one of its lanes is active. Hardware leaves a partially-active
/// collective undefined; here it throws ConvergenceError.
///
/// A context is confined to one execution context at a time; collectives
/// are pure given the lanes' inputs.
class WarpContext {
public:
    explicit WarpContext(int warp_size)
        : warp_size_(warp_size), active_(warp_size, 1)
    {
        if (!is_power_of_two(warp_size) || warp_size < 4 || warp_size > 64) {
            throw ConfigurationError(
                "warp size must be a power of two in [4, 64], got " +
                std::to_string(warp_size));
        }
    }

    int warp_size() const { return warp_size_; }

    void set_active(int lane, bool active) { active_.at(lane) = active; }

    bool lane_active(int lane) const { return active_.at(lane) != 0; }

    template <typename T>
    std::vector<T> shfl(const SubgroupView& view, std::span<const T> values,
                        int src_rank) const
    {
        check_converged(view);
        return larch::shfl(view, values, src_rank);
    }

    template <typename T>
    std::vector<T> shfl_xor(const SubgroupView& view,
                            std::span<const T> values, int bitmask) const
    {
        check_converged(view);
        return larch::shfl_xor(view, values, bitmask);
    }

    std::uint64_t ballot(const SubgroupView& view,
                         std::span<const std::uint8_t> preds) const
    {
        check_converged(view);
        return larch::ballot(view, preds);
    }

    bool any(const SubgroupView& view,
             std::span<const std::uint8_t> preds) const
    {
        check_converged(view);
        return larch::any(view, preds);
    }

    bool all(const SubgroupView& view,
             std::span<const std::uint8_t> preds) const
    {
        check_converged(view);
        return larch::all(view, preds);
    }

    template <typename T>
    std::vector<T> reduce_sum(const SubgroupView& view,
                              std::span<const T> values) const
    {
        check_converged(view);
        return larch::subgroup_reduce_sum(view, values);
    }

private:
    void check_converged(const SubgroupView& view) const
    {
        if (view.warp_size != warp_size_) {
            throw CollectiveUsageError("subgroup view belongs to a warp of " +
                                       std::to_string(view.warp_size) +
                                       " lanes, context has " +
                                       std::to_string(warp_size_));
        }
        for (int lane = view.lane_offset; lane < view.lane_offset + view.size;
             ++lane) {
            if (!active_[lane]) {
                throw ConvergenceError(
                    "collective invoked on a divergent subgroup: lane " +
                    std::to_string(lane) + " is inactive");
            }
        }
    }

    int warp_size_;
    std::vector<std::uint8_t> active_;
};


}  // namespace larch

#endif  // LARCH_WARP_WARP_CONTEXT_HPP
