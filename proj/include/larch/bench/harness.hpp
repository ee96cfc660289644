// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_BENCH_HARNESS_HPP
#define LARCH_BENCH_HARNESS_HPP

#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "larch/bench/record.hpp"
#include "larch/bench/roofline.hpp"
#include "larch/core/executor.hpp"
#include "larch/matrix/formats.hpp"
#include "larch/solver/krylov.hpp"

namespace larch {


enum class MatrixFormat { coo, csr };

const char* to_string(MatrixFormat format);


/// Peak bandwidth estimate from the executor's own stream-copy rate at
/// `bytes` per array, median of `reps` runs.
double measure_peak_bandwidth(std::shared_ptr<Executor> exec,
                              std::size_t bytes = std::size_t{1} << 23,
                              int reps = 3);


/// BabelStream-style sweep: for every array byte size and every op in
/// {copy, mul, add, triad, dot}, one warm-up run and `reps` timed runs
/// (median reported), with the final run's output verified elementwise.
/// reps must be at least 3.
std::vector<BenchRecord> run_stream(std::shared_ptr<Executor> exec,
                                    std::span<const std::size_t> sizes,
                                    int reps, const RooflineModel& model);


/// Arithmetic-intensity sweep: one record per FMA count, verified against
/// a host recomputation of the chain.
std::vector<BenchRecord> run_flops_sweep(std::shared_ptr<Executor> exec,
                                         std::size_t size,
                                         std::span<const int> fma_list,
                                         int reps, const RooflineModel& model);


/// SpMV corpus benchmark: per matrix file and format, 2 * nnz flops per
/// apply, bytes per the storage model (16 bytes/entry COO, 12 bytes/entry
/// CSR plus row pointers, plus the in/out vector traffic), verified once
/// per matrix against the reference backend. Unreadable files yield a
/// failed record and the sweep continues.
std::vector<BenchRecord> run_spmv_bench(
    std::shared_ptr<Executor> exec,
    std::span<const std::filesystem::path> corpus,
    std::span<const MatrixFormat> formats, int reps,
    const RooflineModel& model);


/// Krylov solver benchmark on one matrix: each configured solver runs
/// exactly `fixed_iters` iterations (when positive) with b = A * ones and
/// x0 = 0; GFLOP/s comes from the solver's accumulated flop count. A
/// breakdown marks the record failed and the sweep continues. The
/// reported residual is cross-checked against a reference recomputation.
std::vector<BenchRecord> run_solver_bench(
    std::shared_ptr<Executor> exec, const CooMatrix& host_matrix,
    std::string_view matrix_name, std::span<const SolverConfig> solvers,
    int fixed_iters, MatrixFormat format, const RooflineModel& model);


}  // namespace larch

#endif  // LARCH_BENCH_HARNESS_HPP
