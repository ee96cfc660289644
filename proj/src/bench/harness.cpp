// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/bench/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "larch/kernels/kernels.hpp"
#include "larch/matrix/io.hpp"

namespace larch {

namespace {


// BabelStream's canonical initial values.
constexpr double init_a = 0.1;
constexpr double init_b = 0.2;
constexpr double init_c = 0.3;
constexpr double stream_scalar = 0.4;


template <typename F>
double time_once(F&& body)
{
    auto start = std::chrono::steady_clock::now();
    body();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}


double median(std::vector<double> samples)
{
    std::sort(samples.begin(), samples.end());
    const auto n = samples.size();
    if (n == 0) {
        return 0.0;
    }
    return n % 2 == 1 ? samples[n / 2]
                      : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}


double safe_rate(double amount, double elapsed)
{
    return amount / std::max(elapsed, 1e-9) * 1e-9;
}


void check_reps(int reps)
{
    if (reps < 3) {
        throw UsageError("benchmarks need at least 3 repetitions, got " +
                         std::to_string(reps));
    }
}


void verify_close(std::span<const double> got, double expected, double tol,
                  const char* what)
{
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (std::abs(got[i] - expected) >
            tol * std::max(1.0, std::abs(expected))) {
            throw BenchmarkIntegrityError(
                std::string(what) + " verification failed at element " +
                std::to_string(i) + ": got " + std::to_string(got[i]) +
                ", expected " + std::to_string(expected));
        }
    }
}


double relative_gap(std::span<const double> got, std::span<const double> want)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num = std::max(num, std::abs(got[i] - want[i]));
        den = std::max(den, std::abs(want[i]));
    }
    return num / std::max(den, 1e-300);
}


std::vector<double> seeded_values(std::size_t n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> values(n);
    for (auto& v : values) {
        v = dist(rng);
    }
    return values;
}


// Reference-backend SpMV of a host-resident matrix, the verification
// oracle for every backend under benchmark.
std::vector<double> reference_spmv(const CooMatrix& host_matrix,
                                   std::span<const double> x_host)
{
    auto ref = ReferenceExecutor::create();
    auto a = host_matrix.clone_to(ref);
    auto x = vector_from(ref, x_host);
    auto y = make_vector(ref, static_cast<std::size_t>(host_matrix.nrows));
    spmv_coo(a, x, y);
    return vector_to_host(y);
}


}  // namespace


const char* to_string(MatrixFormat format)
{
    return format == MatrixFormat::coo ? "coo" : "csr";
}


double measure_peak_bandwidth(std::shared_ptr<Executor> exec,
                              std::size_t bytes, int reps)
{
    const auto n = std::max<std::size_t>(bytes / sizeof(double), 1);
    auto a = vector_from(exec, std::vector<double>(n, init_a));
    auto b = vector_from(exec, std::vector<double>(n, init_b));
    auto c = vector_from(exec, std::vector<double>(n, init_c));
    stream_kernel(StreamOp::copy, a, b, c, stream_scalar);
    std::vector<double> samples;
    for (int rep = 0; rep < reps; ++rep) {
        samples.push_back(time_once(
            [&] { stream_kernel(StreamOp::copy, a, b, c, stream_scalar); }));
    }
    return safe_rate(
        static_cast<double>(stream_bytes(StreamOp::copy, n)),
        median(std::move(samples)));
}


std::vector<BenchRecord> run_stream(std::shared_ptr<Executor> exec,
                                    std::span<const std::size_t> sizes,
                                    int reps, const RooflineModel& model)
{
    check_reps(reps);
    constexpr StreamOp ops[] = {StreamOp::copy, StreamOp::mul, StreamOp::add,
                                StreamOp::triad, StreamOp::dot};
    std::vector<BenchRecord> records;
    for (auto bytes : sizes) {
        const auto n = std::max<std::size_t>(bytes / sizeof(double), 1);
        for (auto op : ops) {
            auto a = vector_from(exec, std::vector<double>(n, init_a));
            auto b = vector_from(exec, std::vector<double>(n, init_b));
            auto c = vector_from(exec, std::vector<double>(n, init_c));
            double dot_value = 0.0;
            auto run = [&] {
                dot_value = stream_kernel(op, a, b, c, stream_scalar);
            };
            run();  // warm-up
            std::vector<double> samples;
            for (int rep = 0; rep < reps; ++rep) {
                samples.push_back(time_once(run));
            }
            // Each op only writes arrays it does not read, so repetition
            // leaves the expected closed-form values in place.
            switch (op) {
            case StreamOp::copy:
                verify_close(vector_to_host(c), init_a, 1e-13, "stream copy");
                break;
            case StreamOp::mul:
                verify_close(vector_to_host(b), stream_scalar * init_c, 1e-13,
                             "stream mul");
                break;
            case StreamOp::add:
                verify_close(vector_to_host(c), init_a + init_b, 1e-13,
                             "stream add");
                break;
            case StreamOp::triad:
                verify_close(vector_to_host(a),
                             init_b + stream_scalar * init_c, 1e-13,
                             "stream triad");
                break;
            case StreamOp::dot: {
                auto expected = static_cast<double>(n) * init_a * init_b;
                if (std::abs(dot_value - expected) >
                    1e-12 * std::abs(expected)) {
                    throw BenchmarkIntegrityError(
                        "stream dot verification failed");
                }
                break;
            }
            }
            BenchRecord record;
            record.benchmark_id = std::string("stream.") + to_string(op);
            record.executor_kind = to_string(exec->kind());
            record.problem_id = std::to_string(n);
            record.bytes_moved =
                static_cast<std::int64_t>(stream_bytes(op, n));
            switch (op) {
            case StreamOp::copy:
                record.flops = 0;
                break;
            case StreamOp::mul:
            case StreamOp::add:
                record.flops = static_cast<std::int64_t>(n);
                break;
            case StreamOp::triad:
            case StreamOp::dot:
                record.flops = static_cast<std::int64_t>(2 * n);
                break;
            }
            record.elapsed = median(std::move(samples));
            record.achieved = safe_rate(
                static_cast<double>(record.bytes_moved), record.elapsed);
            record.bound = model.peak_bandwidth;
            record.fraction_of_peak =
                record.bound > 0 ? record.achieved / record.bound : 0.0;
            records.push_back(std::move(record));
        }
    }
    return records;
}


std::vector<BenchRecord> run_flops_sweep(std::shared_ptr<Executor> exec,
                                         std::size_t size,
                                         std::span<const int> fma_list,
                                         int reps, const RooflineModel& model)
{
    check_reps(reps);
    std::vector<BenchRecord> records;
    auto initial = seeded_values(size, 7);
    for (auto fma : fma_list) {
        if (fma < 0) {
            throw UsageError("fma count must be nonnegative");
        }
        auto x = vector_from(exec, initial);
        auto run = [&] { flops_sweep(x, fma); };
        run();
        std::vector<double> samples;
        for (int rep = 0; rep < reps; ++rep) {
            samples.push_back(time_once(run));
        }
        // The host recomputation applies the same chain once per run.
        std::vector<double> expected = initial;
        for (int pass = 0; pass < reps + 1; ++pass) {
            for (auto& v : expected) {
                for (int k = 0; k < fma; ++k) {
                    v = ((k % 2 == 0) ? 2.0 : 0.5) * v + 3.0;
                }
            }
        }
        auto got = vector_to_host(x);
        if (relative_gap(got, expected) > 1e-13) {
            throw BenchmarkIntegrityError("flops sweep verification failed");
        }
        BenchRecord record;
        record.benchmark_id = "flops.sweep";
        record.executor_kind = to_string(exec->kind());
        record.problem_id =
            std::to_string(size) + ":fma=" + std::to_string(fma);
        record.bytes_moved = static_cast<std::int64_t>(2 * size *
                                                       sizeof(double));
        record.flops = static_cast<std::int64_t>(2) * fma *
                       static_cast<std::int64_t>(size);
        record.elapsed = median(std::move(samples));
        record.achieved =
            safe_rate(static_cast<double>(record.flops), record.elapsed);
        // Memory roofline at this arithmetic intensity.
        auto intensity = static_cast<double>(record.flops) /
                         static_cast<double>(record.bytes_moved);
        record.bound = model.peak_bandwidth * intensity;
        record.fraction_of_peak =
            record.bound > 0 ? record.achieved / record.bound : 0.0;
        records.push_back(std::move(record));
    }
    return records;
}


std::vector<BenchRecord> run_spmv_bench(
    std::shared_ptr<Executor> exec,
    std::span<const std::filesystem::path> corpus,
    std::span<const MatrixFormat> formats, int reps,
    const RooflineModel& model)
{
    check_reps(reps);
    if (corpus.empty()) {
        throw UsageError("spmv benchmark needs a nonempty corpus");
    }
    std::vector<BenchRecord> records;
    for (const auto& path : corpus) {
        auto name = path.stem().string();
        CooMatrix host_matrix;
        try {
            host_matrix = read_matrix_market(path, ReferenceExecutor::create());
        } catch (const Error& e) {
            BenchRecord warning;
            warning.benchmark_id = "spmv.load";
            warning.executor_kind = to_string(exec->kind());
            warning.problem_id = name;
            warning.failed = true;
            records.push_back(std::move(warning));
            continue;
        }
        const auto nnz = host_matrix.nnz();
        const auto nrows = static_cast<std::size_t>(host_matrix.nrows);
        const auto ncols = static_cast<std::size_t>(host_matrix.ncols);
        auto x_host = seeded_values(ncols, 11);
        auto y_ref = reference_spmv(host_matrix, x_host);
        auto x = vector_from(exec, x_host);
        auto y = make_vector(exec, nrows);

        for (auto format : formats) {
            CooMatrix coo;
            CsrMatrix csr;
            std::function<void()> run;
            if (format == MatrixFormat::coo) {
                coo = host_matrix.clone_to(exec);
                run = [&] { spmv_coo(coo, x, y); };
            } else {
                csr = coo_to_csr(host_matrix).clone_to(exec);
                run = [&] { spmv_csr(csr, x, y); };
            }
            run();
            if (relative_gap(vector_to_host(y), y_ref) > 1e-10) {
                throw BenchmarkIntegrityError(
                    "spmv verification failed for " + name + " (" +
                    to_string(format) + ")");
            }
            std::vector<double> samples;
            for (int rep = 0; rep < reps; ++rep) {
                samples.push_back(time_once(run));
            }
            BenchRecord record;
            record.benchmark_id = std::string("spmv.") + to_string(format);
            record.executor_kind = to_string(exec->kind());
            record.problem_id = name;
            const auto vector_bytes =
                static_cast<std::int64_t>(8 * (nrows + ncols));
            if (format == MatrixFormat::coo) {
                record.bytes_moved =
                    static_cast<std::int64_t>(16 * nnz) + vector_bytes;
                record.bound = model.coo_bound;
            } else {
                record.bytes_moved = static_cast<std::int64_t>(12 * nnz) +
                                     4 * static_cast<std::int64_t>(nrows + 1) +
                                     vector_bytes;
                record.bound = model.csr_bound;
            }
            record.flops = static_cast<std::int64_t>(2 * nnz);
            record.elapsed = median(std::move(samples));
            record.achieved =
                safe_rate(static_cast<double>(record.flops), record.elapsed);
            record.fraction_of_peak =
                record.bound > 0 ? record.achieved / record.bound : 0.0;
            records.push_back(std::move(record));
        }
    }
    return records;
}


std::vector<BenchRecord> run_solver_bench(
    std::shared_ptr<Executor> exec, const CooMatrix& host_matrix,
    std::string_view matrix_name, std::span<const SolverConfig> solvers,
    int fixed_iters, MatrixFormat format, const RooflineModel& model)
{
    if (host_matrix.nrows != host_matrix.ncols) {
        throw ShapeError("solver benchmark needs a square matrix");
    }
    const auto n = static_cast<std::size_t>(host_matrix.nrows);
    // b = A * ones keeps the system consistent for every test matrix.
    std::vector<double> ones(n, 1.0);
    auto b_host = reference_spmv(host_matrix, ones);

    CooMatrix coo;
    CsrMatrix csr;
    if (format == MatrixFormat::coo) {
        coo = host_matrix.clone_to(exec);
    } else {
        csr = coo_to_csr(host_matrix).clone_to(exec);
    }

    std::vector<BenchRecord> records;
    for (const auto& base_config : solvers) {
        auto config = base_config;
        if (fixed_iters > 0) {
            config.fixed_iters = fixed_iters;
        }
        auto b = vector_from(exec, b_host);
        auto x = zeros(exec, n);
        BenchRecord record;
        record.benchmark_id =
            std::string("solve.") + to_string(config.kind);
        record.executor_kind = to_string(exec->kind());
        record.problem_id = std::string(matrix_name);
        record.bound = model.solver_bound;
        try {
            auto result = format == MatrixFormat::coo
                              ? solve(coo, b, x, config)
                              : solve(csr, b, x, config);
            if (config.fixed_iters &&
                result.iterations != *config.fixed_iters) {
                throw BenchmarkIntegrityError(
                    "solver ran " + std::to_string(result.iterations) +
                    " iterations instead of the configured " +
                    std::to_string(*config.fixed_iters));
            }
            // Independent residual recomputation through the reference
            // backend.
            auto x_host = vector_to_host(x);
            auto ax = reference_spmv(host_matrix, x_host);
            double num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                num += (b_host[i] - ax[i]) * (b_host[i] - ax[i]);
                den += b_host[i] * b_host[i];
            }
            auto recomputed =
                den > 0 ? std::sqrt(num) / std::sqrt(den) : std::sqrt(num);
            if (std::abs(recomputed - result.final_rel_residual) >
                1e-8 * (1.0 + std::abs(recomputed))) {
                throw BenchmarkIntegrityError(
                    "reported residual " +
                    std::to_string(result.final_rel_residual) +
                    " disagrees with recomputation " +
                    std::to_string(recomputed));
            }
            record.flops = result.flop_count;
            // The solver cost model assumes arithmetic intensity 1.
            record.bytes_moved = result.flop_count;
            record.elapsed = result.elapsed;
            record.achieved =
                safe_rate(static_cast<double>(record.flops), record.elapsed);
            record.fraction_of_peak =
                record.bound > 0 ? record.achieved / record.bound : 0.0;
        } catch (const BreakdownError&) {
            record.failed = true;
        }
        records.push_back(std::move(record));
    }
    return records;
}


}  // namespace larch
