//---------------------------------------------------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/flightlab.cpp
//! Command-line front end.
//---------------------------------------------------------------------------//
#include <iostream>

#include <CLI11.hpp>

#include "flightlab/cli.hpp"

int main(int argc, char** argv)
{
    using flightlab::cli::CliOptions;

    CLI::App app{"Planar random-flight simulation and verification"};
    app.set_help_flag("-h,--help", "Print this help message and exit");

    CliOptions opt;
    std::string config, out_dir = ".", input;
    std::uint64_t seed = 0;

    app.add_option("command", opt.command, "Command to run")
        ->required()
        ->check(CLI::IsMember(flightlab::cli::commands()));
    auto* config_opt = app.add_option("--config", config, "Configuration file");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    auto* seed_opt = app.add_option("--seed", seed, "Override the configured seed");
    app.add_flag("-v", opt.verbosity, "Verbosity (-v, -vv)");
    app.add_option("--threads", opt.threads, "Ensemble threads (0: all cores)")
        ->capture_default_str();
    app.add_option("--function", opt.function, "specfun-eval: function name");
    app.add_option("--order", opt.order, "specfun-eval: order");
    app.add_option("--x", opt.x, "specfun-eval: argument");
    auto* input_opt = app.add_option("--input", input, "report: report CSV to re-check");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int status = app.exit(e);
        return status == 0 ? 0 : 2;
    }

    if (*config_opt)
        opt.config_path = config;
    if (*seed_opt)
        opt.seed = seed;
    if (*input_opt)
        opt.input = input;
    opt.output_dir = out_dir;
    opt.verbosity = std::min(opt.verbosity, 2);
    return flightlab::cli::run(opt, std::cout, std::cerr);
}
