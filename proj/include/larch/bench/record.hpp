// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef LARCH_BENCH_RECORD_HPP
#define LARCH_BENCH_RECORD_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace larch {


/// One measured benchmark result next to its theoretical bound. Bandwidth
/// benchmarks report achieved GB/s against the peak bandwidth; flop
/// benchmarks report GFLOP/s against the matching roofline bound. Records
/// for inputs that could not run (unreadable file, solver breakdown) are
/// kept with `failed` set so a corpus sweep stays complete.
struct BenchRecord {
    std::string benchmark_id;
    std::string executor_kind;
    std::string problem_id;
    std::int64_t bytes_moved = 0;
    std::int64_t flops = 0;
    double elapsed = 0.0;  // seconds, median of the timed repetitions
    double achieved = 0.0;
    double bound = 0.0;
    double fraction_of_peak = 0.0;
    bool failed = false;

    friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};


enum class ReportFormat { json, csv, svg_scatter };

/// Parses "json" / "csv" / "svg"; anything else raises UsageError.
ReportFormat parse_report_format(std::string_view name);

/// Renders records as a stable-schema JSON array, a CSV table with a
/// header row, or an SVG scatter of achieved rate vs bytes moved with one
/// horizontal line per distinct bound. SVG output requires at least one
/// record (UsageError otherwise).
std::string emit_report(std::span<const BenchRecord> records,
                        ReportFormat format);

/// Inverse of emit_report for the JSON format.
std::vector<BenchRecord> parse_records_json(std::string_view text);


}  // namespace larch

#endif  // LARCH_BENCH_RECORD_HPP
