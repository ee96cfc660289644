// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/kernels/kernels.hpp"

#include <cmath>
#include <mutex>

#include "kernels/backend_registration.hpp"

namespace larch {

namespace {


void check_same_space(const DeviceArray& a, const DeviceArray& b,
                      const char* what)
{
    if (a.space_id() != b.space_id()) {
        throw PlacementError(std::string(what) +
                             ": operands live on different executors");
    }
}


void check_same_size(std::size_t a, std::size_t b, const char* what)
{
    if (a != b) {
        throw ShapeError(std::string(what) + ": size mismatch, " +
                         std::to_string(a) + " vs " + std::to_string(b));
    }
}


}  // namespace


void register_builtin_kernels()
{
    static std::once_flag flag;
    std::call_once(flag, [] {
        auto& registry = KernelRegistry::instance();
        register_reference_kernels(registry);
        register_parallel_kernels(registry);
        register_sim_device_kernels(registry);
    });
}


const char* to_string(StreamOp op)
{
    switch (op) {
    case StreamOp::copy:
        return "copy";
    case StreamOp::mul:
        return "mul";
    case StreamOp::add:
        return "add";
    case StreamOp::triad:
        return "triad";
    case StreamOp::dot:
        return "dot";
    }
    return "unknown";
}


void axpy(double alpha, const DenseVector& x, DenseVector& y)
{
    register_builtin_kernels();
    check_same_size(x.size(), y.size(), "axpy");
    check_same_space(x.values, y.values, "axpy");
    AxpyArgs args{alpha, &x.values, &y.values};
    dispatch(y.executor(), "axpy", args).wait();
}


void scal(double alpha, DenseVector& x)
{
    register_builtin_kernels();
    ScalArgs args{alpha, &x.values};
    dispatch(x.executor(), "scal", args).wait();
}


void fill(DenseVector& x, double value)
{
    register_builtin_kernels();
    FillArgs args{&x.values, value};
    dispatch(x.executor(), "fill", args).wait();
}


double dot(const DenseVector& x, const DenseVector& y)
{
    register_builtin_kernels();
    check_same_size(x.size(), y.size(), "dot");
    check_same_space(x.values, y.values, "dot");
    double result = 0.0;
    DotArgs args{&x.values, &y.values, &result};
    dispatch(x.executor(), "dot", args).wait();
    return result;
}


double nrm2(const DenseVector& x)
{
    return std::sqrt(dot(x, x));
}


void spmv_coo(const CooMatrix& matrix, const DenseVector& x, DenseVector& y,
              const DispatchOptions& options)
{
    register_builtin_kernels();
    check_same_size(static_cast<std::size_t>(matrix.ncols), x.size(),
                    "spmv_coo columns vs x");
    check_same_size(static_cast<std::size_t>(matrix.nrows), y.size(),
                    "spmv_coo rows vs y");
    check_same_space(matrix.vals, x.values, "spmv_coo");
    check_same_space(matrix.vals, y.values, "spmv_coo");
    SpmvCooArgs args{&matrix, &x.values, &y.values};
    dispatch(matrix.executor(), "spmv_coo", args, options).wait();
}


void spmv_csr(const CsrMatrix& matrix, const DenseVector& x, DenseVector& y,
              const DispatchOptions& options)
{
    register_builtin_kernels();
    check_same_size(static_cast<std::size_t>(matrix.ncols), x.size(),
                    "spmv_csr columns vs x");
    check_same_size(static_cast<std::size_t>(matrix.nrows), y.size(),
                    "spmv_csr rows vs y");
    check_same_space(matrix.vals, x.values, "spmv_csr");
    check_same_space(matrix.vals, y.values, "spmv_csr");
    SpmvCsrArgs args{&matrix, &x.values, &y.values};
    dispatch(matrix.executor(), "spmv_csr", args, options).wait();
}


double stream_kernel(StreamOp op, DenseVector& a, DenseVector& b,
                     DenseVector& c, double scalar)
{
    register_builtin_kernels();
    check_same_size(a.size(), b.size(), "stream");
    check_same_size(a.size(), c.size(), "stream");
    check_same_space(a.values, b.values, "stream");
    check_same_space(a.values, c.values, "stream");
    double result = 0.0;
    StreamArgs args{&a.values, &b.values, &c.values, scalar, &result};
    dispatch(a.executor(), std::string("stream_") + to_string(op), args)
        .wait();
    return result;
}


void flops_sweep(DenseVector& x, int fma_per_element)
{
    register_builtin_kernels();
    if (fma_per_element < 0) {
        throw UsageError("fma_per_element must be nonnegative");
    }
    FlopsSweepArgs args{&x.values, fma_per_element};
    dispatch(x.executor(), "flops_sweep", args).wait();
}


std::size_t stream_bytes(StreamOp op, std::size_t n)
{
    switch (op) {
    case StreamOp::copy:
    case StreamOp::mul:
    case StreamOp::dot:
        return 2 * n * sizeof(double);
    case StreamOp::add:
    case StreamOp::triad:
        return 3 * n * sizeof(double);
    }
    return 0;
}


}  // namespace larch
