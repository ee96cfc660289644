// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include <any>
#include <cstring>
#include <vector>

#include "larch/kernels/kernels.hpp"
#include "larch/warp/warp_context.hpp"
#include "kernels/backend_registration.hpp"
#include "kernels/fma_chain.hpp"

namespace larch {

namespace {


SimDeviceExecutor& device(Executor& exec)
{
    return static_cast<SimDeviceExecutor&>(exec);
}


// Elementwise kernels have no subgroup structure; the same body serves
// every specialization.

void sim_axpy(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<AxpyArgs&>(any_args);
    auto x = args.x->as_span<const double>();
    auto y = args.y->as_span<double>();
    for (std::size_t i = 0; i < y.size(); ++i) {
        y[i] += args.alpha * x[i];
    }
}


void sim_scal(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<ScalArgs&>(any_args);
    for (auto& v : args.x->as_span<double>()) {
        v *= args.alpha;
    }
}


void sim_fill(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<FillArgs&>(any_args);
    for (auto& v : args.x->as_span<double>()) {
        v = args.value;
    }
}


template <StreamOp Op>
void sim_stream(Executor&, std::any& any_args)
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
        static_assert(Op != StreamOp::dot, "dot has a dedicated kernel");
    }
}


void sim_flops_sweep(Executor&, std::any& any_args)
{
    auto& args = std::any_cast<FlopsSweepArgs&>(any_args);
    const auto count = args.fma_per_element;
    for (auto& v : args.x->as_span<double>()) {
        v = fma_chain(v, count);
    }
}


/// Warp-tiled dot: each warp loads one tile of products, reduces its
/// subgroups with the shfl_xor butterfly, and the rank-0 lanes feed a
/// sequential cross-warp accumulator.
template <int SubgroupSize>
double warp_dot(Executor& exec, std::span<const double> x,
                std::span<const double> y)
{
    const int warp = device(exec).warp_size();
    WarpContext ctx(warp);
    std::vector<double> lane_vals(static_cast<std::size_t>(warp));
    const auto n = x.size();
    double total = 0.0;
    for (std::size_t base = 0; base < n; base += lane_vals.size()) {
        for (int lane = 0; lane < warp; ++lane) {
            auto i = base + static_cast<std::size_t>(lane);
            lane_vals[lane] = i < n ? x[i] * y[i] : 0.0;
        }
        for (int offset = 0; offset < warp; offset += SubgroupSize) {
            auto sg = make_subgroup(offset, SubgroupSize, warp);
            std::span<const double> slice(lane_vals.data() + offset,
                                          SubgroupSize);
            auto sums = ctx.reduce_sum(sg, slice);
            total += sums[0];
        }
    }
    return total;
}


template <int SubgroupSize>
struct SimDot {
    static void run(Executor& exec, std::any& any_args)
    {
        auto& args = std::any_cast<DotArgs&>(any_args);
        *args.result = warp_dot<SubgroupSize>(
            exec, args.x->as_span<const double>(),
            args.y->as_span<const double>());
    }
};


template <int SubgroupSize>
struct SimStreamDot {
    static void run(Executor& exec, std::any& any_args)
    {
        auto& args = std::any_cast<StreamArgs&>(any_args);
        *args.dot_result = warp_dot<SubgroupSize>(
            exec, args.a->as_span<const double>(),
            args.b->as_span<const double>());
    }
};


/// Subgroup-vector CSR kernel: one subgroup per row, lanes stride the
/// row's entries, partial products meet in a butterfly reduction and the
/// rank-0 lane writes the result.
template <int SubgroupSize>
struct SimSpmvCsr {
    static void run(Executor& exec, std::any& any_args)
    {
        auto& args = std::any_cast<SpmvCsrArgs&>(any_args);
        auto row_ptr = args.matrix->row_ptr.as_span<const std::int32_t>();
        auto cols = args.matrix->col_idx.as_span<const std::int32_t>();
        auto vals = args.matrix->vals.as_span<const double>();
        auto x = args.x->as_span<const double>();
        auto y = args.y->as_span<double>();
        const int warp = device(exec).warp_size();
        const int rows_per_warp = warp / SubgroupSize;
        WarpContext ctx(warp);
        std::vector<double> partial(SubgroupSize);
        for (std::int32_t first = 0; first < args.matrix->nrows;
             first += rows_per_warp) {
            for (int slot = 0; slot < rows_per_warp; ++slot) {
                const auto row = first + slot;
                if (row >= args.matrix->nrows) {
                    break;
                }
                auto sg = make_subgroup(slot * SubgroupSize, SubgroupSize,
                                        warp);
                for (int rank = 0; rank < SubgroupSize; ++rank) {
                    double sum = 0.0;
                    for (auto k = row_ptr[row] + rank; k < row_ptr[row + 1];
                         k += SubgroupSize) {
                        sum += vals[k] * x[cols[k]];
                    }
                    partial[rank] = sum;
                }
                auto sums = ctx.reduce_sum(
                    sg, std::span<const double>(partial));
                y[row] = sums[0];
            }
        }
    }
};


/// Segmented COO kernel: subgroups take tiles of consecutive entries,
/// mark row boundaries with a ballot, and accumulate one partial sum per
/// segment into the output row. A row crossing a tile boundary receives
/// one add per tile.
template <int SubgroupSize>
struct SimSpmvCoo {
    static void run(Executor& exec, std::any& any_args)
    {
        auto& args = std::any_cast<SpmvCooArgs&>(any_args);
        auto rows = args.matrix->row_idx.as_span<const std::int32_t>();
        auto cols = args.matrix->col_idx.as_span<const std::int32_t>();
        auto vals = args.matrix->vals.as_span<const double>();
        auto x = args.x->as_span<const double>();
        auto y = args.y->as_span<double>();
        std::memset(y.data(), 0, y.size_bytes());
        const int warp = device(exec).warp_size();
        WarpContext ctx(warp);
        auto sg = make_subgroup(0, SubgroupSize, warp);
        std::vector<double> prod(SubgroupSize);
        std::vector<std::int32_t> row_of(SubgroupSize);
        std::vector<std::uint8_t> preds(static_cast<std::size_t>(warp), 0);
        const auto nnz = vals.size();
        for (std::size_t base = 0; base < nnz; base += SubgroupSize) {
            for (int rank = 0; rank < SubgroupSize; ++rank) {
                auto k = base + static_cast<std::size_t>(rank);
                const bool valid = k < nnz;
                row_of[rank] = valid ? rows[k] : -1;
                prod[rank] = valid ? vals[k] * x[cols[k]] : 0.0;
                preds[rank] =
                    valid && (rank == 0 || row_of[rank] != row_of[rank - 1]);
            }
            const auto heads = ctx.ballot(sg, preds);
            for (int head = 0; head < SubgroupSize; ++head) {
                if (((heads >> head) & 1) == 0) {
                    continue;
                }
                int end = head + 1;
                while (end < SubgroupSize && ((heads >> end) & 1) == 0) {
                    ++end;
                }
                double sum = 0.0;
                for (int rank = head; rank < end; ++rank) {
                    sum += prod[rank];
                }
                y[row_of[head]] += sum;
            }
        }
    }
};


template <template <int> class Kernel>
void register_all_sizes(KernelRegistry& registry, const std::string& name)
{
    registry.register_sim(name, 1, &Kernel<1>::run);
    registry.register_sim(name, 2, &Kernel<2>::run);
    registry.register_sim(name, 4, &Kernel<4>::run);
    registry.register_sim(name, 8, &Kernel<8>::run);
    registry.register_sim(name, 16, &Kernel<16>::run);
    registry.register_sim(name, 32, &Kernel<32>::run);
    registry.register_sim(name, 64, &Kernel<64>::run);
}


void register_all_sizes(KernelRegistry& registry, const std::string& name,
                        KernelFn fn)
{
    for (int size = 1; size <= 64; size *= 2) {
        registry.register_sim(name, size, fn);
    }
}


}  // namespace


void register_sim_device_kernels(KernelRegistry& registry)
{
    register_all_sizes(registry, "axpy", sim_axpy);
    register_all_sizes(registry, "scal", sim_scal);
    register_all_sizes(registry, "fill", sim_fill);
    register_all_sizes<SimDot>(registry, "dot");
    register_all_sizes<SimSpmvCoo>(registry, "spmv_coo");
    register_all_sizes<SimSpmvCsr>(registry, "spmv_csr");
    register_all_sizes(registry, "stream_copy", sim_stream<StreamOp::copy>);
    register_all_sizes(registry, "stream_mul", sim_stream<StreamOp::mul>);
    register_all_sizes(registry, "stream_add", sim_stream<StreamOp::add>);
    register_all_sizes(registry, "stream_triad", sim_stream<StreamOp::triad>);
    register_all_sizes<SimStreamDot>(registry, "stream_dot");
    register_all_sizes(registry, "flops_sweep", sim_flops_sweep);
}


}  // namespace larch
