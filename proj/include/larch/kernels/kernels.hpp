// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_KERNELS_KERNELS_HPP
#define LARCH_KERNELS_KERNELS_HPP

#include "larch/core/dispatch.hpp"
#include "larch/matrix/formats.hpp"

namespace larch {


/// Registers every built-in kernel for all three backends, including one
/// specialization per subgroup size on the device backend. Idempotent and
/// called by all typed wrappers; only raw dispatch() users need it
/// explicitly.
void register_builtin_kernels();


// Kernel argument blocks, as handed to backend entry points through
// dispatch(). Pointed-to operands must stay alive until the kernel ran.

struct AxpyArgs {
    double alpha = 0.0;
    const DeviceArray* x = nullptr;
    DeviceArray* y = nullptr;
};

struct ScalArgs {
    double alpha = 0.0;
    DeviceArray* x = nullptr;
};

struct FillArgs {
    DeviceArray* x = nullptr;
    double value = 0.0;
};

struct DotArgs {
    const DeviceArray* x = nullptr;
    const DeviceArray* y = nullptr;
    double* result = nullptr;
};

struct SpmvCooArgs {
    const CooMatrix* matrix = nullptr;
    const DeviceArray* x = nullptr;
    DeviceArray* y = nullptr;
};

struct SpmvCsrArgs {
    const CsrMatrix* matrix = nullptr;
    const DeviceArray* x = nullptr;
    DeviceArray* y = nullptr;
};

enum class StreamOp { copy, mul, add, triad, dot };

const char* to_string(StreamOp op);

struct StreamArgs {
    DeviceArray* a = nullptr;
    DeviceArray* b = nullptr;
    DeviceArray* c = nullptr;
    double scalar = 0.0;
    double* dot_result = nullptr;
};

struct FlopsSweepArgs {
    DeviceArray* x = nullptr;
    int fma_per_element = 0;
};


// Typed wrappers: validate shapes and placement, dispatch to the backend
// of the operands' executor, and synchronize before returning.

/// y <- alpha * x + y
void axpy(double alpha, const DenseVector& x, DenseVector& y);

/// x <- alpha * x
void scal(double alpha, DenseVector& x);

/// x <- value
void fill(DenseVector& x, double value);

double dot(const DenseVector& x, const DenseVector& y);

/// sqrt(dot(x, x))
double nrm2(const DenseVector& x);

/// y <- A x; rows without entries yield zero.
void spmv_coo(const CooMatrix& matrix, const DenseVector& x, DenseVector& y,
              const DispatchOptions& options = {});
void spmv_csr(const CsrMatrix& matrix, const DenseVector& x, DenseVector& y,
              const DispatchOptions& options = {});

/// BabelStream-style kernel set: copy c<-a, mul b<-scalar*c, add c<-a+b,
/// triad a<-b+scalar*c. Returns the dot product for StreamOp::dot and 0
/// otherwise.
double stream_kernel(StreamOp op, DenseVector& a, DenseVector& b,
                     DenseVector& c, double scalar);

/// Runs `fma_per_element` fused multiply-adds per element with fixed
/// constants: step k computes x = a_k * x + 3.0 where a_k alternates
/// between 2.0 and 0.5, keeping values bounded while staying verifiable.
/// Counts as 2 * fma_per_element * size flops.
void flops_sweep(DenseVector& x, int fma_per_element);

/// Bytes touched by one run of a stream op over arrays of `n` float64
/// elements: two arrays for copy/mul/dot, three for add/triad.
std::size_t stream_bytes(StreamOp op, std::size_t n);


}  // namespace larch

#endif  // LARCH_KERNELS_KERNELS_HPP
