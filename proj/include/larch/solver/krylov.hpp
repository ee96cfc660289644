// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_SOLVER_KRYLOV_HPP
#define LARCH_SOLVER_KRYLOV_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "larch/matrix/formats.hpp"

namespace larch {


enum class SolverKind { cg, bicgstab, cgs, gmres };

const char* to_string(SolverKind kind);


struct SolverConfig {
    SolverKind kind = SolverKind::cg;
    int max_iters = 1000;
    double rel_tol = 1e-10;
    /// Krylov basis dimension per GMRES cycle; must not exceed max_iters.
    int gmres_restart = 30;
    /// Benchmark mode: run exactly this many iterations, ignoring the
    /// convergence check.
    std::optional<int> fixed_iters{};
};


struct SolveResult {
    bool converged = false;
    int iterations = 0;
    double final_rel_residual = 0.0;
    /// One entry per iteration plus the initial residual; entries are
    /// ||b - A x_k|| / ||b|| except inside a GMRES cycle, where the
    /// Givens estimate stands in until the cycle closes.
    std::vector<double> residual_history;
    double elapsed = 0.0;
    std::int64_t flop_count = 0;
};


/// Solves A x = b, starting from the x passed in (zero it for the default
/// x0 = 0) and overwriting it with the approximation. Stops when
/// ||b - A x|| / ||b|| <= rel_tol, recomputed from scratch every
/// iteration, unless fixed_iters pins the iteration count. A zero b
/// short-circuits to x = 0. Recurrence divisions by magnitudes below
/// 1e-30 raise BreakdownError with the iteration index.
SolveResult solve(const CooMatrix& matrix, const DenseVector& b,
                  DenseVector& x, const SolverConfig& config);
SolveResult solve(const CsrMatrix& matrix, const DenseVector& b,
                  DenseVector& x, const SolverConfig& config);

/// y = A v through the registered SpMV kernel of the matrix's format.
DenseVector apply_operator(const CooMatrix& matrix, const DenseVector& v);
DenseVector apply_operator(const CsrMatrix& matrix, const DenseVector& v);


struct GmresCycleResult {
    double rel_residual = 0.0;
    int steps = 0;
    bool happy_breakdown = false;
};

/// One restarted-GMRES cycle: builds a modified-Gram-Schmidt Krylov basis
/// of dimension <= restart, solves the small least-squares problem with
/// Givens rotations, and updates x. A subdiagonal entry below 1e-14 exits
/// the cycle early with the exact-solution flag set. When `basis_out` is
/// nonnull it receives the orthonormal basis vectors generated in this
/// cycle.
GmresCycleResult gmres_restart_cycle(const CooMatrix& matrix,
                                     const DenseVector& b, DenseVector& x,
                                     int restart,
                                     std::vector<DenseVector>* basis_out =
                                         nullptr);
GmresCycleResult gmres_restart_cycle(const CsrMatrix& matrix,
                                     const DenseVector& b, DenseVector& x,
                                     int restart,
                                     std::vector<DenseVector>* basis_out =
                                         nullptr);


}  // namespace larch

#endif  // LARCH_SOLVER_KRYLOV_HPP
