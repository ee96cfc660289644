// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/solver/krylov.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "larch/kernels/kernels.hpp"

namespace larch {

namespace {


constexpr double breakdown_eps = 1e-30;
// Below this relative residual a fixed-iteration run stops updating the
// recurrences and only counts iterations; a machine-converged system has
// no meaningful recurrence left, but the benchmark contract still wants
// the full iteration count.
constexpr double machine_floor = 1e-13;
constexpr double happy_eps = 1e-14;


struct Operator {
    std::function<void(const DenseVector&, DenseVector&)> apply_fn;
    std::int64_t apply_flops = 0;
    std::int64_t n = 0;
    std::shared_ptr<Executor> exec;
};


/// Vector-op shims that accumulate the solver's flop total.
struct Workspace {
    explicit Workspace(const Operator& op) : op(op) {}

    DenseVector make() const { return make_vector(op.exec, op.n); }

    void apply(const DenseVector& in, DenseVector& out)
    {
        op.apply_fn(in, out);
        flops += op.apply_flops;
    }

    double dot(const DenseVector& x, const DenseVector& y)
    {
        flops += 2 * op.n;
        return larch::dot(x, y);
    }

    double norm(const DenseVector& x)
    {
        flops += 2 * op.n;
        return larch::nrm2(x);
    }

    void axpy(double alpha, const DenseVector& x, DenseVector& y)
    {
        flops += 2 * op.n;
        larch::axpy(alpha, x, y);
    }

    void scal(double alpha, DenseVector& x)
    {
        flops += op.n;
        larch::scal(alpha, x);
    }

    void copy_vec(const DenseVector& src, DenseVector& dst)
    {
        copy(src.values, dst.values);
    }

    /// ||b - A x|| / norm_b, recomputed from scratch.
    double true_residual(const DenseVector& b, const DenseVector& x,
                         DenseVector& scratch, double norm_b)
    {
        apply(x, scratch);
        scal(-1.0, scratch);
        axpy(1.0, b, scratch);
        return norm(scratch) / norm_b;
    }

    const Operator& op;
    std::int64_t flops = 0;
};


void check_breakdown(double value, const char* what, int iteration)
{
    if (std::abs(value) < breakdown_eps) {
        throw BreakdownError(std::string("division by vanishing ") + what,
                             iteration);
    }
}


struct LoopControl {
    int limit = 0;
    bool fixed = false;
    double tol = 0.0;
};


// r = b - A x into a fresh vector.
DenseVector initial_residual(Workspace& ws, const DenseVector& b,
                             const DenseVector& x)
{
    auto r = ws.make();
    ws.apply(x, r);
    ws.scal(-1.0, r);
    ws.axpy(1.0, b, r);
    return r;
}


void run_cg(Workspace& ws, const DenseVector& b, DenseVector& x,
            double norm_b, const LoopControl& ctl, SolveResult& result)
{
    auto& hist = result.residual_history;
    auto r = initial_residual(ws, b, x);
    hist.push_back(ws.norm(r) / norm_b);
    if (!ctl.fixed && hist.back() <= ctl.tol) {
        return;
    }
    auto p = ws.make();
    ws.copy_vec(r, p);
    auto q = ws.make();
    auto scratch = ws.make();
    double rho = ws.dot(r, r);
    bool frozen = false;
    for (int iter = 1; iter <= ctl.limit; ++iter) {
        if (frozen) {
            hist.push_back(hist.back());
            continue;
        }
        ws.apply(p, q);
        auto pq = ws.dot(p, q);
        check_breakdown(pq, "<p, Ap>", iter);
        auto alpha = rho / pq;
        ws.axpy(alpha, p, x);
        ws.axpy(-alpha, q, r);
        auto rel = ws.true_residual(b, x, scratch, norm_b);
        hist.push_back(rel);
        if (!ctl.fixed && rel <= ctl.tol) {
            break;
        }
        if (ctl.fixed && rel <= machine_floor) {
            frozen = true;
            continue;
        }
        auto rho_next = ws.dot(r, r);
        check_breakdown(rho, "rho", iter);
        auto beta = rho_next / rho;
        rho = rho_next;
        ws.scal(beta, p);
        ws.axpy(1.0, r, p);
    }
}


void run_bicgstab(Workspace& ws, const DenseVector& b, DenseVector& x,
                  double norm_b, const LoopControl& ctl, SolveResult& result)
{
    auto& hist = result.residual_history;
    auto r = initial_residual(ws, b, x);
    hist.push_back(ws.norm(r) / norm_b);
    if (!ctl.fixed && hist.back() <= ctl.tol) {
        return;
    }
    auto rt = ws.make();
    ws.copy_vec(r, rt);
    auto p = ws.make();
    ws.copy_vec(r, p);
    auto v = ws.make();
    auto s = ws.make();
    auto t = ws.make();
    auto scratch = ws.make();
    double rho = 0.0, alpha = 1.0, omega = 1.0;
    bool frozen = false;
    for (int iter = 1; iter <= ctl.limit; ++iter) {
        if (frozen) {
            hist.push_back(hist.back());
            continue;
        }
        auto rho_next = ws.dot(rt, r);
        if (iter > 1) {
            check_breakdown(rho, "rho", iter);
            check_breakdown(omega, "omega", iter);
            auto beta = (rho_next / rho) * (alpha / omega);
            // p = r + beta * (p - omega * v)
            ws.axpy(-omega, v, p);
            ws.scal(beta, p);
            ws.axpy(1.0, r, p);
        }
        rho = rho_next;
        ws.apply(p, v);
        auto rtv = ws.dot(rt, v);
        check_breakdown(rtv, "<rt, Ap>", iter);
        alpha = rho / rtv;
        ws.copy_vec(r, s);
        ws.axpy(-alpha, v, s);
        auto s_rel = ws.norm(s) / norm_b;
        ws.apply(s, t);
        auto tt = ws.dot(t, t);
        if (std::abs(tt) < breakdown_eps) {
            if (s_rel > machine_floor) {
                throw BreakdownError("division by vanishing <t, t>", iter);
            }
            // Exact half-step convergence; skip the stabilization.
            omega = 0.0;
        } else {
            omega = ws.dot(t, s) / tt;
        }
        ws.axpy(alpha, p, x);
        ws.axpy(omega, s, x);
        ws.copy_vec(s, r);
        ws.axpy(-omega, t, r);
        auto rel = ws.true_residual(b, x, scratch, norm_b);
        hist.push_back(rel);
        if (!ctl.fixed && rel <= ctl.tol) {
            break;
        }
        if (ctl.fixed && rel <= machine_floor) {
            frozen = true;
        }
    }
}


void run_cgs(Workspace& ws, const DenseVector& b, DenseVector& x,
             double norm_b, const LoopControl& ctl, SolveResult& result)
{
    auto& hist = result.residual_history;
    auto r = initial_residual(ws, b, x);
    hist.push_back(ws.norm(r) / norm_b);
    if (!ctl.fixed && hist.back() <= ctl.tol) {
        return;
    }
    auto rt = ws.make();
    ws.copy_vec(r, rt);
    auto u = ws.make();
    auto p = ws.make();
    auto q = ws.make();
    auto v = ws.make();
    auto w = ws.make();
    auto t = ws.make();
    auto scratch = ws.make();
    double rho = 1.0;
    bool frozen = false;
    for (int iter = 1; iter <= ctl.limit; ++iter) {
        if (frozen) {
            hist.push_back(hist.back());
            continue;
        }
        auto rho_next = ws.dot(rt, r);
        if (iter == 1) {
            ws.copy_vec(r, u);
            ws.copy_vec(r, p);
        } else {
            check_breakdown(rho, "rho", iter);
            auto beta = rho_next / rho;
            // u = r + beta * q
            ws.copy_vec(q, u);
            ws.scal(beta, u);
            ws.axpy(1.0, r, u);
            // p = u + beta * (q + beta * p)
            ws.scal(beta, p);
            ws.axpy(1.0, q, p);
            ws.scal(beta, p);
            ws.axpy(1.0, u, p);
        }
        rho = rho_next;
        ws.apply(p, v);
        auto sigma = ws.dot(rt, v);
        check_breakdown(sigma, "<rt, Ap>", iter);
        auto alpha = rho_next / sigma;
        // q = u - alpha * v; w = u + q
        ws.copy_vec(u, q);
        ws.axpy(-alpha, v, q);
        ws.copy_vec(u, w);
        ws.axpy(1.0, q, w);
        ws.apply(w, t);
        ws.axpy(alpha, w, x);
        ws.axpy(-alpha, t, r);
        auto rel = ws.true_residual(b, x, scratch, norm_b);
        hist.push_back(rel);
        if (!ctl.fixed && rel <= ctl.tol) {
            break;
        }
        if (ctl.fixed && rel <= machine_floor) {
            frozen = true;
        }
    }
}


struct CycleControl {
    int max_steps = 0;
    /// Negative disables the in-cycle estimate stop (benchmark mode).
    double tol = -1.0;
    std::vector<double>* history = nullptr;
};


GmresCycleResult run_gmres_cycle(Workspace& ws, const DenseVector& b,
                                 DenseVector& x, double norm_b,
                                 const CycleControl& ctl,
                                 std::vector<DenseVector>* basis_out)
{
    GmresCycleResult result;
    const auto m = ctl.max_steps;
    auto r = initial_residual(ws, b, x);
    auto beta = ws.norm(r);
    if (beta == 0.0) {
        result.rel_residual = 0.0;
        result.happy_breakdown = true;
        if (basis_out) {
            basis_out->clear();
        }
        return result;
    }
    std::vector<DenseVector> basis;
    basis.reserve(static_cast<std::size_t>(m) + 1);
    ws.scal(1.0 / beta, r);
    basis.push_back(std::move(r));

    // Hessenberg columns, Givens rotations, and the rotated rhs live on
    // the host; they are O(restart^2) scalars.
    std::vector<std::vector<double>> h(static_cast<std::size_t>(m) + 1,
                                       std::vector<double>(m, 0.0));
    std::vector<double> gc(m, 0.0), gs(m, 0.0), g(static_cast<std::size_t>(m) + 1, 0.0);
    g[0] = beta;

    int steps = 0;
    bool happy = false;
    for (int j = 0; j < m; ++j) {
        auto w = ws.make();
        ws.apply(basis[j], w);
        for (int i = 0; i <= j; ++i) {
            auto hij = ws.dot(basis[i], w);
            h[i][j] = hij;
            ws.axpy(-hij, basis[i], w);
        }
        auto hnext = ws.norm(w);
        for (int i = 0; i < j; ++i) {
            auto upper = gc[i] * h[i][j] + gs[i] * h[i + 1][j];
            h[i + 1][j] = -gs[i] * h[i][j] + gc[i] * h[i + 1][j];
            h[i][j] = upper;
        }
        auto denom = std::hypot(h[j][j], hnext);
        check_breakdown(denom, "Givens denominator", steps + 1);
        gc[j] = h[j][j] / denom;
        gs[j] = hnext / denom;
        h[j][j] = denom;
        g[j + 1] = -gs[j] * g[j];
        g[j] = gc[j] * g[j];
        ++steps;
        auto rel_est = std::abs(g[j + 1]) / norm_b;
        if (ctl.history) {
            ctl.history->push_back(rel_est);
        }
        happy = hnext < happy_eps;
        if (happy) {
            break;
        }
        ws.scal(1.0 / hnext, w);
        basis.push_back(std::move(w));
        if (ctl.tol >= 0.0 && rel_est <= ctl.tol) {
            break;
        }
    }

    // Back-substitution of the rotated upper-triangular system, then the
    // basis combination x += V y.
    std::vector<double> y(steps, 0.0);
    for (int i = steps - 1; i >= 0; --i) {
        auto sum = g[i];
        for (int k = i + 1; k < steps; ++k) {
            sum -= h[i][k] * y[k];
        }
        check_breakdown(h[i][i], "triangular diagonal", i + 1);
        y[i] = sum / h[i][i];
    }
    ws.flops += static_cast<std::int64_t>(steps) * steps;
    for (int i = 0; i < steps; ++i) {
        ws.axpy(y[i], basis[i], x);
    }
    auto scratch = ws.make();
    result.rel_residual = ws.true_residual(b, x, scratch, norm_b);
    result.steps = steps;
    result.happy_breakdown = happy;
    if (basis_out) {
        *basis_out = std::move(basis);
    }
    return result;
}


void run_gmres(Workspace& ws, const DenseVector& b, DenseVector& x,
               double norm_b, int restart, const LoopControl& ctl,
               SolveResult& result)
{
    auto& hist = result.residual_history;
    auto scratch = ws.make();
    hist.push_back(ws.true_residual(b, x, scratch, norm_b));
    if (!ctl.fixed && hist.back() <= ctl.tol) {
        return;
    }
    int iterations = 0;
    bool frozen = false;
    while (iterations < ctl.limit) {
        if (frozen) {
            hist.push_back(hist.back());
            ++iterations;
            continue;
        }
        CycleControl cycle;
        cycle.max_steps = std::min(restart, ctl.limit - iterations);
        cycle.tol = ctl.fixed ? -1.0 : ctl.tol;
        cycle.history = &hist;
        auto cycle_result = run_gmres_cycle(ws, b, x, norm_b, cycle, nullptr);
        if (cycle_result.steps == 0) {
            // Residual was exactly zero; nothing left to iterate on.
            if (!ctl.fixed) {
                break;
            }
            frozen = true;
            continue;
        }
        iterations += cycle_result.steps;
        // Replace the last in-cycle estimate with the recomputed residual.
        hist.back() = cycle_result.rel_residual;
        if (!ctl.fixed && cycle_result.rel_residual <= ctl.tol) {
            break;
        }
        if (ctl.fixed && cycle_result.rel_residual <= machine_floor) {
            frozen = true;
        }
    }
}


SolveResult solve_impl(const Operator& op, const DenseVector& b,
                       DenseVector& x, const SolverConfig& config)
{
    if (b.size() != static_cast<std::size_t>(op.n) ||
        x.size() != static_cast<std::size_t>(op.n)) {
        throw ShapeError("solve: operand sizes do not match the matrix");
    }
    if (b.values.space_id() != op.exec->space_id() ||
        x.values.space_id() != op.exec->space_id()) {
        throw PlacementError("solve: operands on a different executor than "
                             "the matrix");
    }
    if (config.max_iters < 1) {
        throw ConfigurationError("max_iters must be positive");
    }
    if (!(config.rel_tol > 0.0)) {
        throw ConfigurationError("rel_tol must be positive");
    }
    if (config.fixed_iters && *config.fixed_iters < 1) {
        throw ConfigurationError("fixed_iters must be positive");
    }
    if (config.kind == SolverKind::gmres &&
        (config.gmres_restart < 1 ||
         config.gmres_restart > config.max_iters)) {
        throw ConfigurationError(
            "gmres_restart must lie in [1, max_iters]");
    }

    auto start = std::chrono::steady_clock::now();
    Workspace ws(op);
    SolveResult result;

    auto norm_b = ws.norm(b);
    if (norm_b == 0.0) {
        fill(x, 0.0);
        result.converged = true;
        result.residual_history.push_back(0.0);
    } else {
        LoopControl ctl;
        ctl.fixed = config.fixed_iters.has_value();
        ctl.limit = ctl.fixed ? *config.fixed_iters : config.max_iters;
        ctl.tol = config.rel_tol;
        switch (config.kind) {
        case SolverKind::cg:
            run_cg(ws, b, x, norm_b, ctl, result);
            break;
        case SolverKind::bicgstab:
            run_bicgstab(ws, b, x, norm_b, ctl, result);
            break;
        case SolverKind::cgs:
            run_cgs(ws, b, x, norm_b, ctl, result);
            break;
        case SolverKind::gmres:
            run_gmres(ws, b, x, norm_b, config.gmres_restart, ctl, result);
            break;
        }
    }
    result.iterations =
        static_cast<int>(result.residual_history.size()) - 1;
    result.final_rel_residual = result.residual_history.back();
    result.converged = result.final_rel_residual <= config.rel_tol;
    result.flop_count = ws.flops;
    result.elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}


Operator make_operator(const CooMatrix& matrix)
{
    if (matrix.nrows != matrix.ncols) {
        throw ShapeError("solve requires a square matrix, got " +
                         std::to_string(matrix.nrows) + "x" +
                         std::to_string(matrix.ncols));
    }
    Operator op;
    op.apply_fn = [&matrix](const DenseVector& in, DenseVector& out) {
        spmv_coo(matrix, in, out);
    };
    op.apply_flops = 2 * static_cast<std::int64_t>(matrix.nnz());
    op.n = matrix.nrows;
    op.exec = matrix.executor();
    return op;
}


Operator make_operator(const CsrMatrix& matrix)
{
    if (matrix.nrows != matrix.ncols) {
        throw ShapeError("solve requires a square matrix, got " +
                         std::to_string(matrix.nrows) + "x" +
                         std::to_string(matrix.ncols));
    }
    Operator op;
    op.apply_fn = [&matrix](const DenseVector& in, DenseVector& out) {
        spmv_csr(matrix, in, out);
    };
    op.apply_flops = 2 * static_cast<std::int64_t>(matrix.nnz());
    op.n = matrix.nrows;
    op.exec = matrix.executor();
    return op;
}


GmresCycleResult cycle_entry(const Operator& op, const DenseVector& b,
                             DenseVector& x, int restart,
                             std::vector<DenseVector>* basis_out)
{
    if (restart < 1) {
        throw ConfigurationError("restart must be positive");
    }
    Workspace ws(op);
    auto norm_b = ws.norm(b);
    CycleControl ctl;
    ctl.max_steps = restart;
    ctl.tol = -1.0;
    return run_gmres_cycle(ws, b, x, norm_b > 0.0 ? norm_b : 1.0, ctl,
                           basis_out);
}


}  // namespace


const char* to_string(SolverKind kind)
{
    switch (kind) {
    case SolverKind::cg:
        return "cg";
    case SolverKind::bicgstab:
        return "bicgstab";
    case SolverKind::cgs:
        return "cgs";
    case SolverKind::gmres:
        return "gmres";
    }
    return "unknown";
}


SolveResult solve(const CooMatrix& matrix, const DenseVector& b,
                  DenseVector& x, const SolverConfig& config)
{
    return solve_impl(make_operator(matrix), b, x, config);
}


SolveResult solve(const CsrMatrix& matrix, const DenseVector& b,
                  DenseVector& x, const SolverConfig& config)
{
    return solve_impl(make_operator(matrix), b, x, config);
}


DenseVector apply_operator(const CooMatrix& matrix, const DenseVector& v)
{
    auto out = make_vector(matrix.executor(),
                           static_cast<std::size_t>(matrix.nrows));
    spmv_coo(matrix, v, out);
    return out;
}


DenseVector apply_operator(const CsrMatrix& matrix, const DenseVector& v)
{
    auto out = make_vector(matrix.executor(),
                           static_cast<std::size_t>(matrix.nrows));
    spmv_csr(matrix, v, out);
    return out;
}


GmresCycleResult gmres_restart_cycle(const CooMatrix& matrix,
                                     const DenseVector& b, DenseVector& x,
                                     int restart,
                                     std::vector<DenseVector>* basis_out)
{
    return cycle_entry(make_operator(matrix), b, x, restart, basis_out);
}


GmresCycleResult gmres_restart_cycle(const CsrMatrix& matrix,
                                     const DenseVector& b, DenseVector& x,
                                     int restart,
                                     std::vector<DenseVector>* basis_out)
{
    return cycle_entry(make_operator(matrix), b, x, restart, basis_out);
}


}  // namespace larch
