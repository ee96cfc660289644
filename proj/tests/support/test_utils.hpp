// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_TESTS_SUPPORT_TEST_UTILS_HPP
#define LARCH_TESTS_SUPPORT_TEST_UTILS_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "larch/matrix/formats.hpp"

namespace larch::test {


inline std::vector<double> random_values(std::size_t n, std::uint64_t seed,
                                         double lo = -1.0, double hi = 1.0)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> values(n);
    for (auto& v : values) {
        v = dist(rng);
    }
    return values;
}


/// Random sparse entries with unique coordinates (canonical after
/// assembly).
inline std::vector<MatrixEntry> random_entries(std::int32_t nrows,
                                               std::int32_t ncols,
                                               double density,
                                               std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::int32_t> row_dist(0, nrows - 1);
    std::uniform_int_distribution<std::int32_t> col_dist(0, ncols - 1);
    std::uniform_real_distribution<double> val_dist(-1.0, 1.0);
    auto target = static_cast<std::size_t>(
        std::max(1.0, density * nrows * ncols));
    std::set<std::pair<std::int32_t, std::int32_t>> seen;
    std::vector<MatrixEntry> entries;
    while (entries.size() < target) {
        auto row = row_dist(rng);
        auto col = col_dist(rng);
        if (seen.insert({row, col}).second) {
            entries.push_back(MatrixEntry{row, col, val_dist(rng)});
        }
    }
    return entries;
}


/// Dense mat-vec oracle over an entry list.
inline std::vector<double> dense_spmv(std::int32_t nrows,
                                      std::span<const MatrixEntry> entries,
                                      std::span<const double> x)
{
    std::vector<double> y(static_cast<std::size_t>(nrows), 0.0);
    for (const auto& e : entries) {
        y[e.row] += e.value * x[e.col];
    }
    return y;
}


/// Symmetric positive definite dense matrix Q diag(d) Q^T with log-spaced
/// eigenvalues in [1, cond]; returned as a full entry list.
inline std::vector<MatrixEntry> random_spd_entries(std::int32_t n,
                                                   double cond,
                                                   std::mt19937_64& rng)
{
    const auto un = static_cast<std::size_t>(n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    // Modified Gram-Schmidt on a random Gaussian basis.
    std::vector<std::vector<double>> q(un, std::vector<double>(un));
    for (auto& column : q) {
        for (auto& v : column) {
            v = gauss(rng);
        }
    }
    for (std::size_t k = 0; k < un; ++k) {
        for (std::size_t j = 0; j < k; ++j) {
            double proj = 0.0;
            for (std::size_t i = 0; i < un; ++i) {
                proj += q[j][i] * q[k][i];
            }
            for (std::size_t i = 0; i < un; ++i) {
                q[k][i] -= proj * q[j][i];
            }
        }
        double norm = 0.0;
        for (auto v : q[k]) {
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (auto& v : q[k]) {
            v /= norm;
        }
    }
    std::vector<double> eigenvalues(un);
    for (std::size_t k = 0; k < un; ++k) {
        auto t = un == 1 ? 0.0 : static_cast<double>(k) / (un - 1);
        eigenvalues[k] = std::pow(cond, t);
    }
    std::vector<MatrixEntry> entries;
    entries.reserve(un * un);
    for (std::size_t i = 0; i < un; ++i) {
        for (std::size_t j = i; j < un; ++j) {
            double value = 0.0;
            for (std::size_t k = 0; k < un; ++k) {
                value += eigenvalues[k] * q[k][i] * q[k][j];
            }
            entries.push_back(MatrixEntry{static_cast<std::int32_t>(i),
                                          static_cast<std::int32_t>(j),
                                          value});
            if (i != j) {
                entries.push_back(MatrixEntry{static_cast<std::int32_t>(j),
                                              static_cast<std::int32_t>(i),
                                              value});
            }
        }
    }
    return entries;
}


/// Sparse, strictly diagonally dominant, nonsymmetric system.
inline std::vector<MatrixEntry> random_dd_entries(std::int32_t n,
                                                  int offdiag_per_row,
                                                  std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::int32_t> col_dist(0, n - 1);
    std::uniform_real_distribution<double> val_dist(-1.0, 1.0);
    std::vector<MatrixEntry> entries;
    for (std::int32_t row = 0; row < n; ++row) {
        double magnitude = 0.0;
        std::set<std::int32_t> cols;
        for (int k = 0; k < offdiag_per_row; ++k) {
            auto col = col_dist(rng);
            if (col == row || !cols.insert(col).second) {
                continue;
            }
            auto value = val_dist(rng);
            magnitude += std::abs(value);
            entries.push_back(MatrixEntry{row, col, value});
        }
        entries.push_back(MatrixEntry{row, row, magnitude + 1.0});
    }
    return entries;
}


inline double max_rel_diff(std::span<const double> got,
                           std::span<const double> want)
{
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num = std::max(num, std::abs(got[i] - want[i]));
        den = std::max(den, std::abs(want[i]));
    }
    return num / std::max(den, 1e-300);
}


}  // namespace larch::test

#endif  // LARCH_TESTS_SUPPORT_TEST_UTILS_HPP
