// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include "larch/bench/record.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "larch/core/error.hpp"

namespace larch {

namespace {


using ordered_json = nlohmann::ordered_json;


ordered_json to_json(const BenchRecord& record)
{
    return ordered_json{{"benchmark_id", record.benchmark_id},
                        {"executor_kind", record.executor_kind},
                        {"problem_id", record.problem_id},
                        {"bytes_moved", record.bytes_moved},
                        {"flops", record.flops},
                        {"elapsed", record.elapsed},
                        {"achieved", record.achieved},
                        {"bound", record.bound},
                        {"fraction_of_peak", record.fraction_of_peak},
                        {"failed", record.failed}};
}


std::string csv_field(const std::string& value)
{
    if (value.find_first_of(",\"\n") == std::string::npos) {
        return value;
    }
    std::string quoted = "\"";
    for (char c : value) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}


std::string emit_csv(std::span<const BenchRecord> records)
{
    std::ostringstream out;
    out << "benchmark_id,executor_kind,problem_id,bytes_moved,flops,elapsed,"
           "achieved,bound,fraction_of_peak,failed\n";
    for (const auto& r : records) {
        out << csv_field(r.benchmark_id) << ',' << csv_field(r.executor_kind)
            << ',' << csv_field(r.problem_id) << ',' << r.bytes_moved << ','
            << r.flops << ',' << r.elapsed << ',' << r.achieved << ','
            << r.bound << ',' << r.fraction_of_peak << ','
            << (r.failed ? "true" : "false") << '\n';
    }
    return out.str();
}


std::string emit_svg(std::span<const BenchRecord> records)
{
    if (records.empty()) {
        throw UsageError("svg scatter needs at least one record");
    }
    constexpr double width = 840, height = 520;
    constexpr double ml = 70, mr = 30, mt = 30, mb = 50;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    double x_min = 0, x_max = 1, y_max = 1;
    bool first = true;
    std::set<double> bounds;
    for (const auto& r : records) {
        if (r.failed) {
            continue;
        }
        auto x = static_cast<double>(std::max<std::int64_t>(r.bytes_moved, 1));
        if (first) {
            x_min = x_max = x;
            y_max = r.achieved;
            first = false;
        }
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_max = std::max(y_max, r.achieved);
        if (r.bound > 0) {
            bounds.insert(r.bound);
            y_max = std::max(y_max, r.bound);
        }
    }
    if (first) {
        // Only failed records; emit an empty frame.
        x_min = 1;
        x_max = 10;
    }
    if (x_max <= x_min) {
        x_max = x_min + 1;
    }
    if (y_max <= 0) {
        y_max = 1;
    }
    y_max *= 1.08;
    const double lx0 = std::log10(x_min), lx1 = std::log10(x_max);
    auto map_x = [&](double x) {
        return ml + (std::log10(x) - lx0) / (lx1 - lx0) * plot_w;
    };
    auto map_y = [&](double y) { return mt + (1.0 - y / y_max) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 12
        << "\" text-anchor=\"middle\">bytes moved</text>\n";
    out << "<text x=\"18\" y=\"" << mt + plot_h / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << mt + plot_h / 2 << ")\">achieved rate</text>\n";
    for (auto bound : bounds) {
        out << "<line x1=\"" << ml << "\" y1=\"" << map_y(bound) << "\" x2=\""
            << ml + plot_w << "\" y2=\"" << map_y(bound)
            << "\" stroke=\"red\" stroke-dasharray=\"6 3\"/>\n";
        out << "<text x=\"" << ml + plot_w - 4 << "\" y=\""
            << map_y(bound) - 5 << "\" text-anchor=\"end\" fill=\"red\">bound "
            << bound << "</text>\n";
    }
    for (const auto& r : records) {
        if (r.failed) {
            continue;
        }
        auto x = static_cast<double>(std::max<std::int64_t>(r.bytes_moved, 1));
        out << "<circle cx=\"" << map_x(x) << "\" cy=\"" << map_y(r.achieved)
            << "\" r=\"4\" fill=\"steelblue\" fill-opacity=\"0.7\"><title>"
            << r.benchmark_id << " " << r.problem_id << "</title></circle>\n";
    }
    out << "</svg>\n";
    return out.str();
}


}  // namespace


ReportFormat parse_report_format(std::string_view name)
{
    if (name == "json") {
        return ReportFormat::json;
    }
    if (name == "csv") {
        return ReportFormat::csv;
    }
    if (name == "svg") {
        return ReportFormat::svg_scatter;
    }
    throw UsageError("unknown report format '" + std::string(name) +
                     "', expected json, csv, or svg");
}


std::string emit_report(std::span<const BenchRecord> records,
                        ReportFormat format)
{
    switch (format) {
    case ReportFormat::json: {
        auto array = ordered_json::array();
        for (const auto& r : records) {
            array.push_back(to_json(r));
        }
        return array.dump(2) + "\n";
    }
    case ReportFormat::csv:
        return emit_csv(records);
    case ReportFormat::svg_scatter:
        return emit_svg(records);
    }
    throw UsageError("unknown report format");
}


std::vector<BenchRecord> parse_records_json(std::string_view text)
{
    auto parsed = nlohmann::json::parse(text);
    std::vector<BenchRecord> records;
    records.reserve(parsed.size());
    for (const auto& item : parsed) {
        BenchRecord r;
        r.benchmark_id = item.at("benchmark_id").get<std::string>();
        r.executor_kind = item.at("executor_kind").get<std::string>();
        r.problem_id = item.at("problem_id").get<std::string>();
        r.bytes_moved = item.at("bytes_moved").get<std::int64_t>();
        r.flops = item.at("flops").get<std::int64_t>();
        r.elapsed = item.at("elapsed").get<double>();
        r.achieved = item.at("achieved").get<double>();
        r.bound = item.at("bound").get<double>();
        r.fraction_of_peak = item.at("fraction_of_peak").get<double>();
        r.failed = item.at("failed").get<bool>();
        records.push_back(std::move(r));
    }
    return records;
}


}  // namespace larch
