// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "larch/bench/harness.hpp"
#include "larch/bench/record.hpp"
#include "larch/bench/roofline.hpp"
#include "larch/core/executor.hpp"
#include "larch/kernels/kernels.hpp"
#include "larch/matrix/io.hpp"
#include "larch/solver/krylov.hpp"

namespace {

namespace fs = std::filesystem;


struct CommonOptions {
    std::string executor = "reference";
    int warp_size = 32;
    int workers = 4;
    bool in_order = false;
    std::uint64_t seed = 0;
    int reps = 5;
    double bandwidth = 0.0;
    std::string output = "json";
    std::string out_file;
};


void add_executor_flags(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--executor", opts.executor,
                    "Backend: reference, parallel, or simdevice")
        ->check(CLI::IsMember({"reference", "parallel", "simdevice"}));
    cmd->add_option("--warp-size", opts.warp_size,
                    "Warp width of the simulated device (power of two, "
                    "4-64)");
    cmd->add_option("--workers", opts.workers,
                    "Worker threads of the parallel executor");
    cmd->add_option("--in-order", opts.in_order,
                    "Run the device queue in submission order");
    cmd->add_option("--seed", opts.seed, "Device scheduler seed");
}


void add_report_flags(CLI::App* cmd, CommonOptions& opts)
{
    cmd->add_option("--reps", opts.reps, "Timed repetitions per point");
    cmd->add_option("--bandwidth", opts.bandwidth,
                    "Peak bandwidth in GB/s for the bounds (default: "
                    "measured from this machine's stream copy)");
    cmd->add_option("--output", opts.output, "Report format")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    cmd->add_option("--out", opts.out_file,
                    "Write the report here instead of stdout");
}


std::shared_ptr<larch::Executor> build_executor(const CommonOptions& opts)
{
    larch::ExecutorParams params;
    params.worker_count = opts.workers;
    params.device.warp_size = opts.warp_size;
    params.device.in_order = opts.in_order;
    params.device.scheduler_seed = opts.seed;
    if (opts.executor == "parallel") {
        return larch::create_executor(larch::ExecutorKind::parallel, params);
    }
    if (opts.executor == "simdevice") {
        return larch::create_executor(larch::ExecutorKind::sim_device,
                                      params);
    }
    return larch::create_executor(larch::ExecutorKind::reference, params);
}


larch::RooflineModel build_model(const CommonOptions& opts,
                                 const std::shared_ptr<larch::Executor>& exec)
{
    if (opts.bandwidth > 0.0) {
        return larch::compute_bounds(opts.bandwidth);
    }
    return larch::compute_bounds(larch::measure_peak_bandwidth(exec));
}


void write_output(const CommonOptions& opts, const std::string& text)
{
    if (opts.out_file.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(opts.out_file);
    if (!file) {
        throw larch::UsageError("cannot open output file '" + opts.out_file +
                                "'");
    }
    file << text;
}


void report_records(const CommonOptions& opts,
                    const std::vector<larch::BenchRecord>& records)
{
    write_output(opts,
                 larch::emit_report(records,
                                    larch::parse_report_format(opts.output)));
}


std::vector<fs::path> expand_corpus(const std::vector<std::string>& args)
{
    std::vector<fs::path> corpus;
    for (const auto& arg : args) {
        fs::path path(arg);
        if (fs::is_directory(path)) {
            for (const auto& entry : fs::directory_iterator(path)) {
                if (entry.path().extension() == ".mtx") {
                    corpus.push_back(entry.path());
                }
            }
        } else {
            corpus.push_back(path);
        }
    }
    std::sort(corpus.begin(), corpus.end());
    return corpus;
}


std::vector<larch::MatrixFormat> parse_formats(
    const std::vector<std::string>& names)
{
    std::vector<larch::MatrixFormat> formats;
    for (const auto& name : names) {
        if (name == "coo") {
            formats.push_back(larch::MatrixFormat::coo);
        } else if (name == "csr") {
            formats.push_back(larch::MatrixFormat::csr);
        } else {
            throw larch::UsageError("unknown format '" + name + "'");
        }
    }
    return formats;
}


larch::SolverKind parse_solver(const std::string& name)
{
    if (name == "cg") {
        return larch::SolverKind::cg;
    }
    if (name == "bicgstab") {
        return larch::SolverKind::bicgstab;
    }
    if (name == "cgs") {
        return larch::SolverKind::cgs;
    }
    if (name == "gmres") {
        return larch::SolverKind::gmres;
    }
    throw larch::UsageError("unknown solver '" + name + "'");
}


int run(int argc, char** argv)
{
    CLI::App app{"Platform-portable sparse linear algebra benchmark "
                 "harness"};
    app.require_subcommand(1);

    CommonOptions opts;

    // ---- info ----
    auto* info_cmd =
        app.add_subcommand("info", "Print executor capabilities");
    add_executor_flags(info_cmd, opts);
    info_cmd->add_option("--out", opts.out_file, "Output file");

    // ---- bounds ----
    double bounds_bandwidth = 0.0;
    auto* bounds_cmd = app.add_subcommand(
        "bounds", "Roofline bounds for a given peak bandwidth");
    bounds_cmd
        ->add_option("--bandwidth", bounds_bandwidth, "Peak bandwidth, GB/s")
        ->required();
    bounds_cmd->add_option("--output", opts.output, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    bounds_cmd->add_option("--out", opts.out_file, "Output file");

    // ---- convert ----
    std::string convert_in, convert_format = "coo";
    auto* convert_cmd = app.add_subcommand(
        "convert", "Convert a Matrix Market file to an internal format");
    convert_cmd->add_option("input", convert_in, "Input .mtx file")
        ->required();
    convert_cmd->add_option("--format", convert_format, "coo or csr")
        ->check(CLI::IsMember({"coo", "csr"}));
    convert_cmd->add_option("--out", opts.out_file, "Output file");

    // ---- bench ----
    auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark");
    bench_cmd->require_subcommand(1);

    std::vector<std::size_t> stream_sizes{800000, 8000000};
    auto* stream_cmd =
        bench_cmd->add_subcommand("stream", "Memory bandwidth kernel set");
    add_executor_flags(stream_cmd, opts);
    add_report_flags(stream_cmd, opts);
    stream_cmd->add_option("--size-bytes", stream_sizes,
                           "Array sizes in bytes");

    std::size_t flops_size = 100000;
    std::vector<int> fma_list{0, 1, 2, 4, 8, 16, 32, 64};
    auto* flops_cmd =
        bench_cmd->add_subcommand("flops", "Arithmetic intensity sweep");
    add_executor_flags(flops_cmd, opts);
    add_report_flags(flops_cmd, opts);
    flops_cmd->add_option("--size", flops_size, "Elements per array");
    flops_cmd->add_option("--fma", fma_list, "FMA counts to sweep");

    std::vector<std::string> spmv_inputs;
    std::vector<std::string> spmv_formats{"coo", "csr"};
    auto* spmv_cmd =
        bench_cmd->add_subcommand("spmv", "SpMV corpus benchmark");
    add_executor_flags(spmv_cmd, opts);
    add_report_flags(spmv_cmd, opts);
    spmv_cmd
        ->add_option("corpus", spmv_inputs,
                     "Matrix Market files or directories")
        ->required();
    spmv_cmd->add_option("--format", spmv_formats, "Formats: coo and/or csr");

    std::string solve_matrix;
    std::vector<std::string> solver_names{"cg"};
    int fixed_iters = 10000;
    int max_iters = 1000;
    double tol = 1e-10;
    int restart = 30;
    std::string solve_format = "coo";
    auto* solve_cmd =
        bench_cmd->add_subcommand("solve", "Krylov solver benchmark");
    add_executor_flags(solve_cmd, opts);
    add_report_flags(solve_cmd, opts);
    solve_cmd->add_option("--matrix", solve_matrix, "Matrix Market file")
        ->required();
    solve_cmd->add_option("--solver", solver_names,
                          "Solvers: cg, bicgstab, cgs, gmres");
    solve_cmd->add_option("--fixed-iters", fixed_iters,
                          "Exact iteration count (0 = run to convergence)");
    solve_cmd->add_option("--max-iters", max_iters,
                          "Iteration cap in convergence mode");
    solve_cmd->add_option("--tol", tol, "Relative residual tolerance");
    solve_cmd->add_option("--restart", restart, "GMRES restart length");
    solve_cmd->add_option("--format", solve_format, "Operator format")
        ->check(CLI::IsMember({"coo", "csr"}));

    CLI11_PARSE(app, argc, argv);

    if (info_cmd->parsed()) {
        auto exec = build_executor(opts);
        auto desc = exec->describe();
        nlohmann::ordered_json doc{
            {"kind", larch::to_string(desc.kind)},
            {"worker_count", desc.worker_count},
            {"warp_size", desc.warp_size},
            {"supported_subgroup_sizes", desc.supported_subgroup_sizes},
            {"in_order", desc.in_order},
            {"space_id", desc.space_id},
            {"master_space_id", desc.master_space_id},
            {"arena_capacity", desc.arena_capacity},
        };
        write_output(opts, doc.dump(2) + "\n");
        return 0;
    }

    if (bounds_cmd->parsed()) {
        auto model = larch::compute_bounds(bounds_bandwidth);
        if (opts.output == "csv") {
            std::string text =
                "peak_bandwidth,coo_bound,csr_bound,solver_bound\n" +
                larch::format_double(model.peak_bandwidth) + "," +
                larch::format_double(model.coo_bound) + "," +
                larch::format_double(model.csr_bound) + "," +
                larch::format_double(model.solver_bound) + "\n";
            write_output(opts, text);
        } else {
            nlohmann::ordered_json doc{
                {"peak_bandwidth", model.peak_bandwidth},
                {"coo_bound", model.coo_bound},
                {"csr_bound", model.csr_bound},
                {"solver_bound", model.solver_bound},
            };
            write_output(opts, doc.dump(2) + "\n");
        }
        return 0;
    }

    if (convert_cmd->parsed()) {
        auto exec = larch::ReferenceExecutor::create();
        auto matrix = larch::read_matrix_market(fs::path(convert_in), exec);
        std::ostringstream out;
        if (convert_format == "csr") {
            larch::write_csr_text(out, larch::coo_to_csr(matrix));
        } else {
            larch::write_matrix_market(out, matrix);
        }
        write_output(opts, out.str());
        return 0;
    }

    auto exec = build_executor(opts);
    auto model = build_model(opts, exec);

    if (stream_cmd->parsed()) {
        report_records(opts,
                       larch::run_stream(exec, stream_sizes, opts.reps,
                                         model));
        return 0;
    }
    if (flops_cmd->parsed()) {
        report_records(opts, larch::run_flops_sweep(exec, flops_size,
                                                    fma_list, opts.reps,
                                                    model));
        return 0;
    }
    if (spmv_cmd->parsed()) {
        auto corpus = expand_corpus(spmv_inputs);
        auto formats = parse_formats(spmv_formats);
        report_records(opts, larch::run_spmv_bench(exec, corpus, formats,
                                                   opts.reps, model));
        return 0;
    }
    if (solve_cmd->parsed()) {
        auto host_matrix = larch::read_matrix_market(
            fs::path(solve_matrix), larch::ReferenceExecutor::create());
        std::vector<larch::SolverConfig> configs;
        for (const auto& name : solver_names) {
            larch::SolverConfig config;
            config.kind = parse_solver(name);
            config.max_iters = max_iters;
            config.rel_tol = tol;
            config.gmres_restart = restart;
            configs.push_back(config);
        }
        auto format = solve_format == "csr" ? larch::MatrixFormat::csr
                                            : larch::MatrixFormat::coo;
        report_records(
            opts, larch::run_solver_bench(
                      exec, host_matrix,
                      fs::path(solve_matrix).stem().string(), configs,
                      fixed_iters, format, model));
        return 0;
    }
    return 0;
}


}  // namespace


int main(int argc, char** argv)
{
    try {
        return run(argc, argv);
    } catch (const larch::BenchmarkIntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << "\n";
        return 3;
    } catch (const larch::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const larch::ConfigurationError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const larch::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
