// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include <any>
#include <atomic>
#include <cstring>
#include <vector>

#include "larch/kernels/kernels.hpp"
#include "kernels/backend_registration.hpp"
#include "kernels/fma_chain.hpp"

namespace larch {

namespace {


void atomic_add(double& target, double value)
{
    std::atomic_ref<double> ref(target);
    double old = ref.load(std::memory_order_relaxed);
    while (!ref.compare_exchange_weak(old, old + value,
                                      std::memory_order_relaxed)) {
    }
}


ParallelExecutor& pool(Executor& exec)
{
    return static_cast<ParallelExecutor&>(exec);
}


void par_axpy(Executor& exec, std::any& any_args)
{
    auto& args = std::any_cast<AxpyArgs&>(any_args);
    auto x = args.x->as_span<const double>();
    auto y = args.y->as_span<double>();
    pool(exec).parallel_for(
        static_cast<std::int64_t>(y.size()),
        [&](int, std::int64_t begin, std::int64_t end) {
            for (auto i = begin; i < end; ++i) {
                y[i] += args.alpha * x[i];
            }
        });
}


void par_scal(Executor& exec, std::any& any_args)
{
    auto& args = std::any_cast<ScalArgs&>(any_args);
    auto x = args.x->as_span<double>();
    pool(exec).parallel_for(static_cast<std::int64_t>(x.size()),
                            [&](int, std::int64_t begin, std::int64_t end) {
                                for (auto i = begin; i < end; ++i) {
                                    x[i] *= args.alpha;
                                }
                            });
}


void par_fill(Executor& exec, std::any& any_args)
{
    auto& args = std::any_cast<FillArgs&>(any_args);
    auto x = args.x->as_span<double>();
    pool(exec).parallel_for(static_cast<std::int64_t>(x.size()),
                            [&](int, std::int64_t begin, std::int64_t end) {
                                for (auto i = begin; i < end; ++i) {
                                    x[i] = args.value;
                                }
                            });
}


void par_dot(Executor& exec, std::any& any_args)
{
    auto& args = std::any_cast<DotArgs&>(any_args);
    auto x = args.x->as_span<const double>();
    auto y = args.y->as_span<const double>();
    std::vector<double> partial(
        static_cast<std::size_t>(pool(exec).worker_count()), 0.0);
    pool(exec).parallel_for(static_cast<std::int64_t>(x.size()),
                            [&](int chunk, std::int64_t begin,
                                std::int64_t end) {
                                double sum = 0.0;
                                for (auto i = begin; i < end; ++i) {
                                    sum += x[i] * y[i];
                                }
                                partial[chunk] = sum;
                            });
    double sum = 0.0;
    for (auto p : partial) {
        sum += p;
    }
    *args.result = sum;
}


void par_spmv_coo(Executor& exec, std::any& any_args)
{
    auto& args = std::any_cast<SpmvCooArgs&>(any_args);
    auto rows = args.matrix->row_idx.as_span<const std::int32_t>();
    auto cols = args.matrix->col_idx.as_span<const std::int32_t>();
    auto vals = args.matrix->vals.as_span<const double>();
    auto x = args.x->as_span<const double>();
    auto y = args.y->as_span<double>();
    pool(exec).parallel_for(static_cast<std::int64_t>(y.size()),
                            [&](int, std::int64_t begin, std::int64_t end) {
                                for (auto i = begin; i < end; ++i) {
                                    y[i] = 0.0;
                                }
                            });
    // Entries are partitioned, so a row may be hit from several workers.
    pool(exec).parallel_for(
        static_cast<std::int64_t>(vals.size()),
        [&](int, std::int64_t begin, std::int64_t end) {
            for (auto k = begin; k < end; ++k) {
                atomic_add(y[rows[k]], vals[k] * x[cols[k]]);
            }
        });
}


void par_spmv_csr(Executor& exec, std::any& any_args)
{
    auto& args = std::any_cast<SpmvCsrArgs&>(any_args);
    auto row_ptr = args.matrix->row_ptr.as_span<const std::int32_t>();
    auto cols = args.matrix->col_idx.as_span<const std::int32_t>();
    auto vals = args.matrix->vals.as_span<const double>();
    auto x = args.x->as_span<const double>();
    auto y = args.y->as_span<double>();
    pool(exec).parallel_for(
        args.matrix->nrows, [&](int, std::int64_t begin, std::int64_t end) {
            for (auto row = begin; row < end; ++row) {
                double sum = 0.0;
                for (auto k = row_ptr[row]; k < row_ptr[row + 1]; ++k) {
                    sum += vals[k] * x[cols[k]];
                }
                y[row] = sum;
            }
        });
}


template <StreamOp Op>
void par_stream(Executor& exec, std::any& any_args)
{
    auto& args = std::any_cast<StreamArgs&>(any_args);
    auto a = args.a->as_span<double>();
    auto b = args.b->as_span<double>();
    auto c = args.c->as_span<double>();
    const auto scalar = args.scalar;
    if constexpr (Op == StreamOp::dot) {
        std::vector<double> partial(
            static_cast<std::size_t>(pool(exec).worker_count()), 0.0);
        pool(exec).parallel_for(static_cast<std::int64_t>(a.size()),
                                [&](int chunk, std::int64_t begin,
                                    std::int64_t end) {
                                    double sum = 0.0;
                                    for (auto i = begin; i < end; ++i) {
                                        sum += a[i] * b[i];
                                    }
                                    partial[chunk] = sum;
                                });
        double sum = 0.0;
        for (auto p : partial) {
            sum += p;
        }
        *args.dot_result = sum;
        return;
    }
    pool(exec).parallel_for(
        static_cast<std::int64_t>(a.size()),
        [&](int, std::int64_t begin, std::int64_t end) {
            for (auto i = begin; i < end; ++i) {
                if constexpr (Op == StreamOp::copy) {
                    c[i] = a[i];
                } else if constexpr (Op == StreamOp::mul) {
                    b[i] = scalar * c[i];
                } else if constexpr (Op == StreamOp::add) {
                    c[i] = a[i] + b[i];
                } else if constexpr (Op == StreamOp::triad) {
                    a[i] = b[i] + scalar * c[i];
                }
            }
        });
}


void par_flops_sweep(Executor& exec, std::any& any_args)
{
    auto& args = std::any_cast<FlopsSweepArgs&>(any_args);
    auto x = args.x->as_span<double>();
    const auto count = args.fma_per_element;
    pool(exec).parallel_for(static_cast<std::int64_t>(x.size()),
                            [&](int, std::int64_t begin, std::int64_t end) {
                                for (auto i = begin; i < end; ++i) {
                                    x[i] = fma_chain(x[i], count);
                                }
                            });
}


}  // namespace


void register_parallel_kernels(KernelRegistry& registry)
{
    const auto kind = ExecutorKind::parallel;
    registry.register_host("axpy", kind, par_axpy);
    registry.register_host("scal", kind, par_scal);
    registry.register_host("fill", kind, par_fill);
    registry.register_host("dot", kind, par_dot);
    registry.register_host("spmv_coo", kind, par_spmv_coo);
    registry.register_host("spmv_csr", kind, par_spmv_csr);
    registry.register_host("stream_copy", kind, par_stream<StreamOp::copy>);
    registry.register_host("stream_mul", kind, par_stream<StreamOp::mul>);
    registry.register_host("stream_add", kind, par_stream<StreamOp::add>);
    registry.register_host("stream_triad", kind, par_stream<StreamOp::triad>);
    registry.register_host("stream_dot", kind, par_stream<StreamOp::dot>);
    registry.register_host("flops_sweep", kind, par_flops_sweep);
}


}  // namespace larch
