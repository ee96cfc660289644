// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

// Brute-force counterparts of the subgroup algebra, written from first
// principles (lane enumeration, no bit tricks shared with the library) so
// they stay an independent check.

#ifndef LARCH_TESTS_SUPPORT_ORACLES_HPP
#define LARCH_TESTS_SUPPORT_ORACLES_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace larch::test {


struct SubgroupOracle {
    int rank = 0;
    int lane_offset = 0;
    std::uint64_t mask = 0;
};


/// Enumerates the lanes of the subgroup containing `tid`.
inline SubgroupOracle subgroup_oracle(int tid, int size, int warp_size)
{
    SubgroupOracle oracle;
    const int lane = tid % warp_size;
    // Walk groups of `size` consecutive lanes until one contains `lane`.
    for (int first = 0; first < warp_size; first += size) {
        if (lane >= first && lane < first + size) {
            oracle.lane_offset = first;
            oracle.rank = lane - first;
            for (int l = first; l < first + size; ++l) {
                oracle.mask |= std::uint64_t{1} << l;
            }
            break;
        }
    }
    return oracle;
}


/// Ballot of the subgroup starting at `lane_offset`: bit r is the
/// predicate of lane lane_offset + r.
inline std::uint64_t ballot_oracle(std::span<const std::uint8_t> warp_preds,
                                   int lane_offset, int size)
{
    std::uint64_t word = 0;
    for (int r = 0; r < size; ++r) {
        if (warp_preds[lane_offset + r]) {
            word |= std::uint64_t{1} << r;
        }
    }
    return word;
}


inline bool any_oracle(std::span<const std::uint8_t> warp_preds,
                       int lane_offset, int size)
{
    for (int r = 0; r < size; ++r) {
        if (warp_preds[lane_offset + r]) {
            return true;
        }
    }
    return false;
}


inline bool all_oracle(std::span<const std::uint8_t> warp_preds,
                       int lane_offset, int size)
{
    for (int r = 0; r < size; ++r) {
        if (!warp_preds[lane_offset + r]) {
            return false;
        }
    }
    return true;
}


template <typename T>
std::vector<T> shfl_oracle(std::span<const T> values, int src_rank)
{
    return std::vector<T>(values.size(), values[src_rank]);
}


template <typename T>
std::vector<T> shfl_xor_oracle(std::span<const T> values, int bitmask)
{
    std::vector<T> out(values.size());
    for (std::size_t r = 0; r < values.size(); ++r) {
        out[r] = values[r ^ static_cast<std::size_t>(bitmask)];
    }
    return out;
}


template <typename T>
T sum_oracle(std::span<const T> values)
{
    T sum{};
    for (const auto& v : values) {
        sum += v;
    }
    return sum;
}


}  // namespace larch::test

#endif  // LARCH_TESTS_SUPPORT_ORACLES_HPP
