// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_SRC_KERNELS_FMA_CHAIN_HPP
#define LARCH_SRC_KERNELS_FMA_CHAIN_HPP

namespace larch {


/// Shared by every backend so the sweep kernel stays bit-identical across
/// them. The multiplier alternates 2.0 / 0.5 to keep magnitudes bounded
/// over long chains; step counts as one fused multiply-add (2 flops).
inline double fma_chain(double value, int count)
{
    for (int k = 0; k < count; ++k) {
        const double a = (k % 2 == 0) ? 2.0 : 0.5;
        value = a * value + 3.0;
    }
    return value;
}


}  // namespace larch

#endif  // LARCH_SRC_KERNELS_FMA_CHAIN_HPP
