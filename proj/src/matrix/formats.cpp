// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/matrix/formats.hpp"

#include <algorithm>
#include <cstring>
#include <string>

namespace larch {

namespace {


void check_index_bounds(std::int32_t row, std::int32_t col, std::int32_t nrows,
                        std::int32_t ncols, std::size_t position)
{
    if (row < 0 || row >= nrows || col < 0 || col >= ncols) {
        throw FormatError("entry " + std::to_string(position) + " at (" +
                          std::to_string(row) + ", " + std::to_string(col) +
                          ") is outside a " + std::to_string(nrows) + "x" +
                          std::to_string(ncols) + " matrix");
    }
}


}  // namespace


DenseVector make_vector(std::shared_ptr<Executor> exec, std::size_t size)
{
    return DenseVector{
        allocate(std::move(exec), ElementKind::float64, size)};
}


DenseVector vector_from(std::shared_ptr<Executor> exec,
                        std::span<const double> values)
{
    return DenseVector{array_from_host(std::move(exec), values)};
}


DenseVector zeros(std::shared_ptr<Executor> exec, std::size_t size)
{
    std::vector<double> host(size, 0.0);
    return vector_from(std::move(exec), host);
}


std::vector<double> vector_to_host(const DenseVector& vec)
{
    return array_to_host<double>(vec.values);
}


DenseVector DenseVector::clone_to(std::shared_ptr<Executor> exec) const
{
    return DenseVector{values.clone_to(std::move(exec))};
}


CooMatrix CooMatrix::clone_to(std::shared_ptr<Executor> exec) const
{
    return CooMatrix{nrows, ncols, row_idx.clone_to(exec),
                     col_idx.clone_to(exec), vals.clone_to(exec)};
}


CsrMatrix CsrMatrix::clone_to(std::shared_ptr<Executor> exec) const
{
    return CsrMatrix{nrows, ncols, row_ptr.clone_to(exec),
                     col_idx.clone_to(exec), vals.clone_to(exec)};
}


CooMatrix coo_from_entries(std::shared_ptr<Executor> exec, std::int32_t nrows,
                           std::int32_t ncols,
                           std::span<const MatrixEntry> entries)
{
    if (nrows < 0 || ncols < 0) {
        throw FormatError("negative matrix dimension");
    }
    std::vector<MatrixEntry> sorted(entries.begin(), entries.end());
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        check_index_bounds(sorted[k].row, sorted[k].col, nrows, ncols, k);
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const MatrixEntry& a, const MatrixEntry& b) {
                         return std::tie(a.row, a.col) < std::tie(b.row, b.col);
                     });
    // Sum duplicates in place; explicit zeros stay.
    std::vector<std::int32_t> rows, cols;
    std::vector<double> vals;
    rows.reserve(sorted.size());
    cols.reserve(sorted.size());
    vals.reserve(sorted.size());
    for (const auto& entry : sorted) {
        if (!rows.empty() && rows.back() == entry.row &&
            cols.back() == entry.col) {
            vals.back() += entry.value;
        } else {
            rows.push_back(entry.row);
            cols.push_back(entry.col);
            vals.push_back(entry.value);
        }
    }
    CooMatrix result;
    result.nrows = nrows;
    result.ncols = ncols;
    result.row_idx = array_from_host<std::int32_t>(exec, rows);
    result.col_idx = array_from_host<std::int32_t>(exec, cols);
    result.vals = array_from_host<double>(exec, vals);
    return result;
}


std::vector<MatrixEntry> coo_to_entries(const CooMatrix& matrix)
{
    auto rows = array_to_host<std::int32_t>(matrix.row_idx);
    auto cols = array_to_host<std::int32_t>(matrix.col_idx);
    auto vals = array_to_host<double>(matrix.vals);
    std::vector<MatrixEntry> entries(vals.size());
    for (std::size_t k = 0; k < vals.size(); ++k) {
        entries[k] = MatrixEntry{rows[k], cols[k], vals[k]};
    }
    return entries;
}


CsrMatrix coo_to_csr(const CooMatrix& matrix)
{
    auto exec = matrix.executor();
    auto rows = array_to_host<std::int32_t>(matrix.row_idx);
    auto cols = array_to_host<std::int32_t>(matrix.col_idx);
    auto vals = array_to_host<double>(matrix.vals);

    std::vector<std::int32_t> row_ptr(
        static_cast<std::size_t>(matrix.nrows) + 1, 0);
    for (auto row : rows) {
        ++row_ptr[static_cast<std::size_t>(row) + 1];
    }
    for (std::size_t i = 1; i < row_ptr.size(); ++i) {
        row_ptr[i] += row_ptr[i - 1];
    }

    CsrMatrix result;
    result.nrows = matrix.nrows;
    result.ncols = matrix.ncols;
    result.row_ptr = array_from_host<std::int32_t>(exec, row_ptr);
    result.col_idx = array_from_host<std::int32_t>(exec, cols);
    result.vals = array_from_host<double>(exec, vals);
    return result;
}


CooMatrix csr_to_coo(const CsrMatrix& matrix)
{
    auto exec = matrix.executor();
    auto row_ptr = array_to_host<std::int32_t>(matrix.row_ptr);
    auto cols = array_to_host<std::int32_t>(matrix.col_idx);
    auto vals = array_to_host<double>(matrix.vals);

    std::vector<std::int32_t> rows(vals.size());
    for (std::int32_t row = 0; row < matrix.nrows; ++row) {
        for (auto k = row_ptr[row]; k < row_ptr[row + 1]; ++k) {
            rows[static_cast<std::size_t>(k)] = row;
        }
    }

    CooMatrix result;
    result.nrows = matrix.nrows;
    result.ncols = matrix.ncols;
    result.row_idx = array_from_host<std::int32_t>(exec, rows);
    result.col_idx = array_from_host<std::int32_t>(exec, cols);
    result.vals = array_from_host<double>(exec, vals);
    return result;
}


void validate(const CooMatrix& matrix)
{
    if (matrix.row_idx.element_kind() != ElementKind::int32 ||
        matrix.col_idx.element_kind() != ElementKind::int32 ||
        matrix.vals.element_kind() != ElementKind::float64) {
        throw FormatError("coo arrays have wrong element kinds");
    }
    if (matrix.row_idx.size() != matrix.nnz() ||
        matrix.col_idx.size() != matrix.nnz()) {
        throw FormatError("coo arrays have inconsistent lengths");
    }
    auto entries = coo_to_entries(matrix);
    for (std::size_t k = 0; k < entries.size(); ++k) {
        check_index_bounds(entries[k].row, entries[k].col, matrix.nrows,
                           matrix.ncols, k);
        if (k > 0) {
            auto prev = std::tie(entries[k - 1].row, entries[k - 1].col);
            auto cur = std::tie(entries[k].row, entries[k].col);
            if (!(prev < cur)) {
                throw FormatError("coo entries not strictly sorted at " +
                                  std::to_string(k));
            }
        }
    }
}


void validate(const CsrMatrix& matrix)
{
    if (matrix.row_ptr.element_kind() != ElementKind::int32 ||
        matrix.col_idx.element_kind() != ElementKind::int32 ||
        matrix.vals.element_kind() != ElementKind::float64) {
        throw FormatError("csr arrays have wrong element kinds");
    }
    if (matrix.row_ptr.size() != static_cast<std::size_t>(matrix.nrows) + 1 ||
        matrix.col_idx.size() != matrix.nnz()) {
        throw FormatError("csr arrays have inconsistent lengths");
    }
    auto row_ptr = array_to_host<std::int32_t>(matrix.row_ptr);
    auto cols = array_to_host<std::int32_t>(matrix.col_idx);
    if (row_ptr.front() != 0 ||
        row_ptr.back() != static_cast<std::int32_t>(matrix.nnz())) {
        throw FormatError("csr row pointers must span [0, nnz]");
    }
    for (std::int32_t row = 0; row < matrix.nrows; ++row) {
        if (row_ptr[row] > row_ptr[row + 1]) {
            throw FormatError("csr row pointers decrease at row " +
                              std::to_string(row));
        }
        for (auto k = row_ptr[row]; k < row_ptr[row + 1]; ++k) {
            if (cols[k] < 0 || cols[k] >= matrix.ncols) {
                throw FormatError("csr column index out of range");
            }
            if (k > row_ptr[row] && cols[k - 1] >= cols[k]) {
                throw FormatError(
                    "csr column indices not strictly increasing in row " +
                    std::to_string(row));
            }
        }
    }
}


}  // namespace larch
