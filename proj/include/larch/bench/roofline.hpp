// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_BENCH_ROOFLINE_HPP
#define LARCH_BENCH_ROOFLINE_HPP

namespace larch {


/// Bandwidth-induced performance ceilings. An SpMV entry costs 8 bytes of
/// value plus two 4-byte indices in COO, giving bandwidth / 16 entries/s
/// at 2 flops each, i.e. bandwidth / 8 GFLOP/s; CSR amortizes the row
/// index away for bandwidth / 6. Memory-bound solvers at arithmetic
/// intensity 1 with 8-byte values are capped by bandwidth / 8.
struct RooflineModel {
    double peak_bandwidth = 0.0;  // GB/s
    double coo_bound = 0.0;       // GFLOP/s
    double csr_bound = 0.0;       // GFLOP/s
    double solver_bound = 0.0;    // GFLOP/s
};


/// Throws ConfigurationError for nonpositive bandwidth.
RooflineModel compute_bounds(double peak_bandwidth_gbs);


}  // namespace larch

#endif  // LARCH_BENCH_ROOFLINE_HPP
