// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_WARP_SUBGROUP_HPP
#define LARCH_WARP_SUBGROUP_HPP

#include <bit>
#include <cstdint>

#include "larch/core/error.hpp"

namespace larch {


/// One bit per warp lane. A single 64-bit word is used for every warp
/// size; for warps of 32 lanes or fewer the high bits stay zero, which
/// sidesteps the 32-vs-64-bit lane mask split between vendor
/// architectures.
struct LaneMask {
    std::uint64_t bits = 0;
    /// Warp size of the owning device; only the low `width` bits may be
    /// set.
    int width = 0;

    friend bool operator==(const LaneMask&, const LaneMask&) = default;
};


/// All `width` low bits set -- the value `~0` takes when evaluated at the
/// lane mask width.
constexpr std::uint64_t full_lane_bits(int width)
{
    return width >= 64 ? ~std::uint64_t{0}
                       : (std::uint64_t{1} << width) - std::uint64_t{1};
}


inline int popcnt(std::uint32_t word)
{
    return std::popcount(word);
}

inline int popcnt(std::uint64_t word)
{
    return std::popcount(word);
}

inline int popcnt(const LaneMask& mask)
{
    return std::popcount(mask.bits);
}


constexpr bool is_power_of_two(int value)
{
    return value > 0 && (value & (value - 1)) == 0;
}


/// A contiguous power-of-two-sized subset of a warp, as seen from one
/// thread. Captures the thread's rank inside the subgroup, the subgroup's
/// first lane, and the lane mask selecting its lanes from a warp-wide
/// word:
///
///     rank        = tid % size
///     lane_offset = floor((tid % warp_size) / size) * size
///     mask        = (~0 >> (warp_size - size)) << lane_offset
struct SubgroupView {
    int warp_size = 0;
    int size = 0;
    int tid = 0;
    int rank = 0;
    int lane_offset = 0;
    LaneMask mask{};

    /// The thread's lane within the warp.
    int lane() const { return tid % warp_size; }
};


/// Builds the subgroup view for local thread `tid` when the warp is
/// partitioned into subgroups of `size` lanes.
///
/// Throws ConfigurationError if `size` or `warp_size` is not a power of
/// two, if `size > warp_size`, or if `tid` is negative.
inline SubgroupView make_subgroup(int tid, int size, int warp_size)
{
    if (!is_power_of_two(size)) {
        throw ConfigurationError("subgroup size " + std::to_string(size) +
                                 " is not a positive power of two");
    }
    if (!is_power_of_two(warp_size)) {
        throw ConfigurationError("warp size " + std::to_string(warp_size) +
                                 " is not a positive power of two");
    }
    if (size > warp_size) {
        throw ConfigurationError("subgroup size " + std::to_string(size) +
                                 " exceeds warp size " +
                                 std::to_string(warp_size));
    }
    if (tid < 0) {
        throw ConfigurationError("negative thread id");
    }
    SubgroupView view;
    view.warp_size = warp_size;
    view.size = size;
    view.tid = tid;
    view.rank = tid % size;
    view.lane_offset = ((tid % warp_size) / size) * size;
    view.mask.width = warp_size;
    view.mask.bits = (full_lane_bits(warp_size) >> (warp_size - size))
                     << view.lane_offset;
    return view;
}


}  // namespace larch

#endif  // LARCH_WARP_SUBGROUP_HPP
