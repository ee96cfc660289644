// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_MATRIX_FORMATS_HPP
#define LARCH_MATRIX_FORMATS_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "larch/core/device_array.hpp"
#include "larch/core/executor.hpp"

namespace larch {


/// Dense float64 vector bound to one executor.
struct DenseVector {
    DeviceArray values;

    std::size_t size() const { return values.size(); }
    std::shared_ptr<Executor> executor() const { return values.owner(); }

    DenseVector clone_to(std::shared_ptr<Executor> exec) const;
};

/// Uninitialized vector of `size` elements on `exec`.
DenseVector make_vector(std::shared_ptr<Executor> exec, std::size_t size);
DenseVector vector_from(std::shared_ptr<Executor> exec,
                        std::span<const double> values);
DenseVector zeros(std::shared_ptr<Executor> exec, std::size_t size);
std::vector<double> vector_to_host(const DenseVector& vec);


struct MatrixEntry {
    std::int32_t row = 0;
    std::int32_t col = 0;
    double value = 0.0;

    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};


/// Coordinate format: parallel row/column/value arrays, sorted
/// lexicographically by (row, col) with no duplicate coordinates.
/// Storage cost: 8 bytes per value plus two 4-byte indices per entry.
struct CooMatrix {
    std::int32_t nrows = 0;
    std::int32_t ncols = 0;
    DeviceArray row_idx;  // int32, length nnz
    DeviceArray col_idx;  // int32, length nnz
    DeviceArray vals;     // float64, length nnz

    std::size_t nnz() const { return vals.size(); }
    std::shared_ptr<Executor> executor() const { return vals.owner(); }

    CooMatrix clone_to(std::shared_ptr<Executor> exec) const;
};


/// Compressed sparse row format: row pointers, column indices, values.
/// Column indices are strictly increasing within each row.
struct CsrMatrix {
    std::int32_t nrows = 0;
    std::int32_t ncols = 0;
    DeviceArray row_ptr;  // int32, length nrows + 1
    DeviceArray col_idx;  // int32, length nnz
    DeviceArray vals;     // float64, length nnz

    std::size_t nnz() const { return vals.size(); }
    std::shared_ptr<Executor> executor() const { return vals.owner(); }

    CsrMatrix clone_to(std::shared_ptr<Executor> exec) const;
};


/// Assembles a canonical COO matrix: entries sorted by (row, col),
/// duplicate coordinates summed, explicit zeros retained. Out-of-range
/// indices raise FormatError.
CooMatrix coo_from_entries(std::shared_ptr<Executor> exec, std::int32_t nrows,
                           std::int32_t ncols,
                           std::span<const MatrixEntry> entries);

/// Entries of a matrix in canonical order, staged to host memory.
std::vector<MatrixEntry> coo_to_entries(const CooMatrix& matrix);

CsrMatrix coo_to_csr(const CooMatrix& matrix);
CooMatrix csr_to_coo(const CsrMatrix& matrix);

/// Invariant checks; throw FormatError on violation.
void validate(const CooMatrix& matrix);
void validate(const CsrMatrix& matrix);


}  // namespace larch

#endif  // LARCH_MATRIX_FORMATS_HPP
