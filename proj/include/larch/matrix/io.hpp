// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_MATRIX_IO_HPP
#define LARCH_MATRIX_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "larch/matrix/formats.hpp"

namespace larch {


/// Reads a Matrix Market "matrix coordinate" stream into canonical COO
/// form. Real, integer, and pattern fields are accepted (pattern entries
/// get value 1.0); general and symmetric symmetries are accepted, with
/// symmetric files expanded to both triangles (diagonal entries stay
/// single). File indices are 1-based and converted to 0-based; duplicates
/// are summed. Array format, complex fields, and skew-symmetric or
/// hermitian symmetry raise UnsupportedFormatError; malformed content
/// raises FormatError. Both carry the offending line number.
CooMatrix read_matrix_market(std::istream& source,
                             std::shared_ptr<Executor> exec);
CooMatrix read_matrix_market(const std::filesystem::path& path,
                             std::shared_ptr<Executor> exec);

/// Writes canonical COO as "coordinate real general" with 1-based indices
/// and shortest-roundtrip values.
void write_matrix_market(std::ostream& out, const CooMatrix& matrix);

/// Compact CSR text form: a header line "csr <nrows> <ncols> <nnz>"
/// followed by the row pointer, column index, and value arrays, one per
/// line.
void write_csr_text(std::ostream& out, const CsrMatrix& matrix);


/// Whitespace-separated float64 vector files, written with
/// shortest-roundtrip rendering so write-then-read is exact. When
/// `expected_size` is given, a different token count raises FormatError,
/// as does any token that is not a float64.
DenseVector read_dense_vector(std::istream& source,
                              std::shared_ptr<Executor> exec,
                              std::optional<std::size_t> expected_size = {});
void write_dense_vector(std::ostream& out, const DenseVector& vec);

/// Shortest decimal rendering that parses back to the same float64.
std::string format_double(double value);


}  // namespace larch

#endif  // LARCH_MATRIX_IO_HPP
