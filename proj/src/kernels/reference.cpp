// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include <any>
#include <cstring>

#include "larch/kernels/kernels.hpp"
#include "kernels/backend_registration.hpp"
#include "kernels/fma_chain.hpp"

namespace larch {

namespace {


void ref_axpy(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<AxpyArgs&>(any_args);
    auto x = args.x->as_span<const double>();
    auto y = args.y->as_span<double>();
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += args.alpha * x[i];
    }
}


void ref_scal(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<ScalArgs&>(any_args);
    for (auto& v : args.x->as_span<double>()) {
        v *= args.alpha;
    }
}


void ref_fill(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<FillArgs&>(any_args);
    for (auto& v : args.x->as_span<double>()) {
        v = args.value;
    }
}


void ref_dot(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<DotArgs&>(any_args);
    auto x = args.x->as_span<const double>();
    auto y = args.y->as_span<const double>();
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i] * y[i];
    }
    *args.result = sum;
}


void ref_spmv_coo(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<SpmvCooArgs&>(any_args);
    auto rows = args.matrix->row_idx.as_span<const std::int32_t>();
    auto cols = args.matrix->col_idx.as_span<const std::int32_t>();
    auto vals = args.matrix->vals.as_span<const double>();
    auto x = args.x->as_span<const double>();
    auto y = args.y->as_span<double>();
    std::memset(y.data(), 0, y.size_bytes());
    for (std::size_t k = 0; k < vals.size(); ++k) {
        y[rows[k]] += vals[k] * x[cols[k]];
    }
}


void ref_spmv_csr(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<SpmvCsrArgs&>(any_args);
    auto row_ptr = args.matrix->row_ptr.as_span<const std::int32_t>();
    auto cols = args.matrix->col_idx.as_span<const std::int32_t>();
    auto vals = args.matrix->vals.as_span<const double>();
    auto x = args.x->as_span<const double>();
    auto y = args.y->as_span<double>();
    for (std::int32_t row = 0; row < args.matrix->nrows; ++row) {
        double sum = 0.0;
        for (auto k = row_ptr[row]; k < row_ptr[row + 1]; ++k) {
            sum += vals[k] * x[cols[k]];
        }
        y[row] = sum;
    }
}


template <StreamOp Op>
void ref_stream(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<StreamArgs&>(any_args);
    auto a = args.a->as_span<double>();
    auto b = args.b->as_span<double>();
    auto c = args.c->as_span<double>();
    const auto n = a.size();
    if constexpr (Op == StreamOp::copy) {
        std::memcpy(c.data(), a.data(), a.size_bytes());
    } else if constexpr (Op == StreamOp::mul) {
        for (std::size_t i = 0; i < n; ++i) {
            b[i] = args.scalar * c[i];
        }
    } else if constexpr (Op == StreamOp::add) {
        for (std::size_t i = 0; i < n; ++i) {
            c[i] = a[i] + b[i];
        }
    } else if constexpr (Op == StreamOp::triad) {
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = b[i] + args.scalar * c[i];
        }
    } else {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += a[i] * b[i];
        }
        *args.dot_result = sum;
    }
}


void ref_flops_sweep(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<FlopsSweepArgs&>(any_args);
    for (auto& v : args.x->as_span<double>()) {
        v = fma_chain(v, args.fma_per_element);
    }
}


}  // namespace


void register_reference_kernels(KernelRegistry& registry)
{
    const auto kind = ExecutorKind::reference;
    registry.register_host("axpy", kind, ref_axpy);
    registry.register_host("scal", kind, ref_scal);
    registry.register_host("fill", kind, ref_fill);
    registry.register_host("dot", kind, ref_dot);
    registry.register_host("spmv_coo", kind, ref_spmv_coo);
    registry.register_host("spmv_csr", kind, ref_spmv_csr);
    registry.register_host("stream_copy", kind, ref_stream<StreamOp::copy>);
    registry.register_host("stream_mul", kind, ref_stream<StreamOp::mul>);
    registry.register_host("stream_add", kind, ref_stream<StreamOp::add>);
    registry.register_host("stream_triad", kind, ref_stream<StreamOp::triad>);
    registry.register_host("stream_dot", kind, ref_stream<StreamOp::dot>);
    registry.register_host("flops_sweep", kind, ref_flops_sweep);
}


}  // namespace larch
