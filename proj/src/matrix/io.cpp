// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/matrix/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace larch {

namespace {


std::string lowercase(std::string text)
{
    std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return text;
}


[[noreturn]] void fail(const std::string& message, std::size_t line)
{
    throw FormatError(message + " (line " + std::to_string(line) + ")");
}

[[noreturn]] void fail_unsupported(const std::string& message,
                                   std::size_t line)
{
    throw UnsupportedFormatError(message + " (line " + std::to_string(line) +
                                 ")");
}


double parse_value(const std::string& token, std::size_t line)
{
    double value = 0;
    auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        fail("invalid numeric value '" + token + "'", line);
    }
    return value;
}


std::int64_t parse_index(const std::string& token, std::size_t line)
{
    std::int64_t value = 0;
    auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        fail("invalid index '" + token + "'", line);
    }
    return value;
}


}  // namespace


CooMatrix read_matrix_market(std::istream& source,
                             std::shared_ptr<Executor> exec)
{
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(source, line)) {
        fail("empty stream, expected MatrixMarket banner", 1);
    }
    ++line_no;
    std::istringstream banner(line);
    std::string tag, object, format, field, symmetry;
    banner >> tag >> object >> format >> field >> symmetry;
    if (lowercase(tag) != "%%matrixmarket") {
        fail("missing %%MatrixMarket banner", line_no);
    }
    object = lowercase(object);
    format = lowercase(format);
    field = lowercase(field);
    symmetry = lowercase(symmetry);
    if (object != "matrix") {
        fail_unsupported("unsupported object '" + object + "'", line_no);
    }
    if (format != "coordinate") {
        fail_unsupported("unsupported format '" + format +
                             "', only coordinate is accepted",
                         line_no);
    }
    if (field != "real" && field != "integer" && field != "pattern") {
        fail_unsupported("unsupported field '" + field + "'", line_no);
    }
    if (symmetry != "general" && symmetry != "symmetric") {
        fail_unsupported("unsupported symmetry '" + symmetry + "'", line_no);
    }
    const bool pattern = field == "pattern";
    const bool symmetric = symmetry == "symmetric";

    // Size line, after comments and blank lines.
    std::int64_t nrows = 0, ncols = 0, nnz = 0;
    for (;;) {
        if (!std::getline(source, line)) {
            fail("unexpected end of stream before size line", line_no + 1);
        }
        ++line_no;
        if (line.empty() || line[0] == '%') {
            continue;
        }
        std::istringstream size_line(line);
        std::string a, b, c, rest;
        size_line >> a >> b >> c;
        if (!size_line || (size_line >> rest && !rest.empty())) {
            fail("size line must be '<rows> <cols> <nnz>'", line_no);
        }
        nrows = parse_index(a, line_no);
        ncols = parse_index(b, line_no);
        nnz = parse_index(c, line_no);
        if (nrows < 0 || ncols < 0 || nnz < 0) {
            fail("negative size", line_no);
        }
        break;
    }

    std::vector<MatrixEntry> entries;
    entries.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
    std::int64_t seen = 0;
    while (seen < nnz) {
        if (!std::getline(source, line)) {
            fail("expected " + std::to_string(nnz) + " entries, got " +
                     std::to_string(seen),
                 line_no + 1);
        }
        ++line_no;
        if (line.empty() || line[0] == '%') {
            continue;
        }
        std::istringstream entry_line(line);
        std::string a, b, c;
        entry_line >> a >> b;
        if (a.empty() || b.empty()) {
            fail("entry line must start with '<row> <col>'", line_no);
        }
        double value = 1.0;
        if (!pattern) {
            entry_line >> c;
            if (c.empty()) {
                fail("missing value", line_no);
            }
            value = parse_value(c, line_no);
        }
        auto row = parse_index(a, line_no) - 1;
        auto col = parse_index(b, line_no) - 1;
        if (row < 0 || row >= nrows || col < 0 || col >= ncols) {
            fail("entry (" + a + ", " + b + ") outside declared " +
                     std::to_string(nrows) + "x" + std::to_string(ncols) +
                     " shape",
                 line_no);
        }
        entries.push_back(MatrixEntry{static_cast<std::int32_t>(row),
                                      static_cast<std::int32_t>(col), value});
        if (symmetric && row != col) {
            entries.push_back(MatrixEntry{static_cast<std::int32_t>(col),
                                          static_cast<std::int32_t>(row),
                                          value});
        }
        ++seen;
    }

    return coo_from_entries(std::move(exec), static_cast<std::int32_t>(nrows),
                            static_cast<std::int32_t>(ncols), entries);
}


CooMatrix read_matrix_market(const std::filesystem::path& path,
                             std::shared_ptr<Executor> exec)
{
    std::ifstream file(path);
    if (!file) {
        throw FormatError("cannot open '" + path.string() + "'");
    }
    return read_matrix_market(file, std::move(exec));
}


std::string format_double(double value)
{
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}


void write_matrix_market(std::ostream& out, const CooMatrix& matrix)
{
    auto entries = coo_to_entries(matrix);
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << matrix.nrows << " " << matrix.ncols << " " << entries.size()
        << "\n";
    for (const auto& entry : entries) {
        out << entry.row + 1 << " " << entry.col + 1 << " "
            << format_double(entry.value) << "\n";
    }
}


void write_csr_text(std::ostream& out, const CsrMatrix& matrix)
{
    auto row_ptr = array_to_host<std::int32_t>(matrix.row_ptr);
    auto cols = array_to_host<std::int32_t>(matrix.col_idx);
    auto vals = array_to_host<double>(matrix.vals);
    out << "csr " << matrix.nrows << " " << matrix.ncols << " " << vals.size()
        << "\n";
    for (std::size_t i = 0; i < row_ptr.size(); ++i) {
        out << (i ? " " : "") << row_ptr[i];
    }
    out << "\n";
    for (std::size_t i = 0; i < cols.size(); ++i) {
        out << (i ? " " : "") << cols[i];
    }
    out << "\n";
    for (std::size_t i = 0; i < vals.size(); ++i) {
        out << (i ? " " : "") << format_double(vals[i]);
    }
    out << "\n";
}


DenseVector read_dense_vector(std::istream& source,
                              std::shared_ptr<Executor> exec,
                              std::optional<std::size_t> expected_size)
{
    std::vector<double> values;
    std::string token;
    std::size_t position = 0;
    while (source >> token) {
        ++position;
        values.push_back(parse_value(token, position));
    }
    if (expected_size && values.size() != *expected_size) {
        throw FormatError("expected " + std::to_string(*expected_size) +
                          " values, got " + std::to_string(values.size()));
    }
    return vector_from(std::move(exec), values);
}


void write_dense_vector(std::ostream& out, const DenseVector& vec)
{
    auto values = vector_to_host(vec);
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << (i ? " " : "") << format_double(values[i]);
    }
    out << "\n";
}


}  // namespace larch
