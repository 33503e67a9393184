//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file flightlab/cli.hpp
//! Command dispatch and plot-ready table output.
//---------------------------------------------------------------------------//
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "experiments.hpp"

namespace flightlab::cli
{
namespace fs = std::filesystem;

//---------------------------------------------------------------------------//
// PLOT DATA
//---------------------------------------------------------------------------//
namespace detail
{
inline std::ofstream open_table(fs::path const& path)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    return os;
}
}  // namespace detail

//! Sample path as `step,x,y`, starting from the origin.
inline void write_trace(fs::path const& path, std::vector<Step> const& trace)
{
    require(!trace.empty(), "write_trace: empty trace");
    auto os = detail::open_table(path);
    os << "step,x,y\n";
    for (std::size_t i = 0; i < trace.size(); ++i)
        os << i << ',' << format_real(trace[i].x) << ','
           << format_real(trace[i].y) << '\n';
}

/*!
 * Real parts on the beta = 0 line as `alpha,re_empirical,re_limit`.
 *
 * The empirical grid must contain beta = 0; the limit grid must share its
 * axes.
 */
inline void write_cf_slice(fs::path const& path,
                           charfn::CFGrid const& empirical,
                           charfn::CFGrid const& limit)
{
    require(!empirical.values.empty(), "write_cf_slice: empty grid");
    require(empirical.alphas == limit.alphas && empirical.betas == limit.betas,
            "write_cf_slice: grids differ");
    std::size_t j0 = empirical.betas.size();
    for (std::size_t j = 0; j < empirical.betas.size(); ++j)
    {
        if (empirical.betas[j] == 0)
            j0 = j;
    }
    require(j0 < empirical.betas.size(), "write_cf_slice: grid lacks beta = 0");
    auto os = detail::open_table(path);
    os << "alpha,re_empirical,re_limit\n";
    for (std::size_t i = 0; i < empirical.alphas.size(); ++i)
    {
        os << format_real(empirical.alphas[i]) << ','
           << format_real(empirical.at(i, j0).real()) << ','
           << format_real(limit.at(i, j0).real()) << '\n';
    }
}

//! Convergence curve `n,distance` from the rows named \c metric.
inline void write_convergence(fs::path const& path,
                              experiments::ExperimentReport const& report,
                              std::string const& metric = "analytic_distance")
{
    std::vector<experiments::ReportRow const*> rows;
    for (auto const& r : report.rows)
    {
        if (r.metric == metric)
            rows.push_back(&r);
    }
    require(!rows.empty(), "write_convergence: report has no matching rows");
    auto os = detail::open_table(path);
    os << "n,distance\n";
    for (auto const* r : rows)
        os << r->n << ',' << format_real(r->observed) << '\n';
}

//---------------------------------------------------------------------------//
// REPORT RE-CHECK
//---------------------------------------------------------------------------//
/*!
 * Read a report CSV back and re-derive every verdict from its numbers.
 */
struct RecheckResult
{
    std::size_t rows{0};
    std::size_t failed{0};
    std::size_t mismatched{0};
};

inline RecheckResult recheck_report(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != experiments::report_csv_header())
        throw std::runtime_error("not a report CSV (unexpected header)");
    RecheckResult out;
    int lineno = 1;
    while (std::getline(is, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            f.push_back(cell);
        if (f.size() != 8)
        {
            throw std::runtime_error("line " + std::to_string(lineno)
                                     + ": expected 8 fields");
        }
        auto num = [&](std::string const& s) {
            try
            {
                std::size_t used = 0;
                double v = std::stod(s, &used);
                if (used != s.size())
                    throw std::invalid_argument(s);
                return v;
            }
            catch (std::out_of_range const&)
            {
                return s.front() == '-' ? -HUGE_VAL : HUGE_VAL;
            }
            catch (std::exception const&)
            {
                if (s == "nan" || s == "-nan")
                    return std::numeric_limits<double>::quiet_NaN();
                throw std::runtime_error("line " + std::to_string(lineno)
                                         + ": bad number '" + s + "'");
            }
        };
        auto rule = experiments::rule_from_string(f[6]);
        bool stored = f[7] == "true";
        bool derived = experiments::verdict(rule, num(f[3]), num(f[4]), num(f[5]));
        ++out.rows;
        out.failed += derived ? 0 : 1;
        out.mismatched += derived == stored ? 0 : 1;
    }
    if (out.rows == 0)
        throw std::runtime_error("report has no rows");
    return out;
}

//---------------------------------------------------------------------------//
// DISPATCH
//---------------------------------------------------------------------------//
struct CliOptions
{
    std::string command;
    std::optional<fs::path> config_path;
    fs::path output_dir{"."};
    std::optional<std::uint64_t> seed;
    int verbosity{0};
    // specfun-eval
    std::string function;
    double order{0};
    double x{0};
    // report
    std::optional<fs::path> input;
    //! Ensemble worker threads (0: hardware concurrency)
    unsigned threads{0};
};

inline std::vector<std::string> const& commands()
{
    static std::vector<std::string> const c{"simulate",     "cf-check",
                                            "identity-check", "limit-check",
                                            "specfun-eval", "report"};
    return c;
}

namespace detail
{
struct Run
{
    CliOptions const& opt;
    std::ostream& out;
    std::ostream& err;
    bool all_pass{true};

    void log(int level, std::string const& msg) const
    {
        if (opt.verbosity >= level)
            err << msg << '\n';
    }

    void finish(experiments::ExperimentReport const& r,
                std::function<void(std::ostream&)> const& custom = {})
    {
        experiments::persist_report(r, opt.output_dir, custom);
        bool ok = r.all_pass();
        all_pass = all_pass && ok;
        out << r.experiment_id << ": " << r.pass_count() << " passed, "
            << r.fail_count() << " failed -> "
            << (opt.output_dir / experiments::report_basename(r)).string()
            << ".csv\n";
        if (opt.verbosity >= 1)
        {
            for (auto const& row : r.rows)
            {
                if (!row.pass || opt.verbosity >= 2)
                    err << "  " << (row.pass ? "pass " : "FAIL ") << row.metric
                        << " n=" << row.n << " observed=" << format_real(row.observed)
                        << " expected=" << format_real(row.expected)
                        << " tolerance=" << format_real(row.tolerance) << '\n';
            }
        }
    }

    fs::path artifact(std::string const& stem, std::uint64_t seed) const
    {
        return opt.output_dir / (stem + "_" + std::to_string(seed) + ".csv");
    }
};

inline WalkConfig const& need_walk(RunConfig const& cfg)
{
    if (!cfg.walk)
        throw ConfigError("regime", 0, "missing required key");
    return *cfg.walk;
}

inline int specfun_eval(CliOptions const& opt, std::ostream& out)
{
    auto const& f = opt.function;
    double nu = opt.order, x = opt.x;
    bool integral = nu == std::floor(nu) && std::abs(nu) < 1e6;
    auto need_int = [&] {
        if (!integral)
            throw DomainError(f + ": order must be an integer");
        return static_cast<int>(nu);
    };
    specfun::SpecialValue<double> v;
    if (f == "bessel_j")
        v = integral ? specfun::bessel_j(need_int(), x) : specfun::bessel_j_real(nu, x);
    else if (f == "bessel_i")
        v = integral ? specfun::bessel_i(need_int(), x) : specfun::bessel_i_real(nu, x);
    else if (f == "macdonald_k")
        v = specfun::macdonald_k(need_int(), x);
    else if (f == "struve_l")
        v = specfun::struve_l(need_int(), x);
    else if (f == "anger_jbar")
        v = specfun::anger_jbar(nu, x);
    else
        throw DomainError("unknown function '" + f
                          + "' (bessel_j, bessel_i, macdonald_k, struve_l, "
                            "anger_jbar)");
    out << "value," << format_real(v.value) << "\nabs_error_bound,"
        << format_real(v.abs_error_bound) << '\n';
    return 0;
}

inline int report_command(CliOptions const& opt, std::ostream& out)
{
    if (!opt.input)
        throw ConfigError("input", 0, "report needs --input");
    std::ifstream is(*opt.input);
    if (!is)
        throw ConfigError("input", 0, "cannot open '" + opt.input->string() + "'");
    auto r = recheck_report(is);
    out << "rows " << r.rows << ", failed " << r.failed
        << ", verdicts differing from stored flags " << r.mismatched << '\n';
    if (r.mismatched)
        throw std::runtime_error("stored verdicts do not follow from the numbers");
    return r.failed ? 1 : 0;
}

inline void simulate(Run& run, RunConfig const& cfg)
{
    WalkConfig w = need_walk(cfg);
    bool retain = w.ensemble_size <= w.retain_limit;
    if (w.regime == Regime::folded_cauchy && !retain)
        throw ConfigError("retain_limit", 0,
                          "folded_cauchy summaries need every endpoint; raise "
                          "retain_limit to ensemble_size");
    auto t0 = std::chrono::steady_clock::now();
    auto sum = run_ensemble(w, retain, run.opt.threads);
    auto rep = experiments::simulation_report(w, sum, cfg.grid);
    rep.wall_time = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    if (retain)
    {
        std::ofstream os = open_table(run.artifact("endpoints", w.seed));
        write_endpoints_csv(os, sum.retained_endpoints);
    }
    if (w.n <= 1000000)
    {
        RngStream rng(w.seed, 0);
        write_trace(run.artifact("trace", w.seed),
                    trace_walk(resolve_scaling(w), w.n, rng));
    }
    run.finish(rep);
}

inline void cf_check(Run& run, RunConfig const& cfg)
{
    WalkConfig const& w = need_walk(cfg);
    StepParams p = resolve_scaling(w);
    auto rep = experiments::cf_oracle_check({p}, cfg.grid, cfg.tol.value_or(1e-7));
    rep.seed = w.seed;
    auto grid = charfn::evaluate_grid(cfg.grid, [&](double a, double b) {
        return charfn::step_cf(a, b, p).value;
    });
    {
        auto os = open_table(run.artifact("step_cf", w.seed));
        charfn::write_grid_csv(os, grid);
    }
    run.finish(rep);
}

inline void identity_check(Run& run, RunConfig const& cfg)
{
    auto campaign = experiments::identity_campaign(cfg.tol.value_or(1e-8), cfg.seed);
    {
        auto os = open_table(run.artifact("identity_campaign_verdicts", cfg.seed));
        experiments::write_report_csv(os, campaign.report);
    }
    run.finish(campaign.report, [&](std::ostream& os) {
        experiments::write_identity_csv(os, campaign.rows);
    });
}

inline void limit_check(Run& run, RunConfig const& cfg)
{
    WalkConfig const& w = need_walk(cfg);
    std::vector<long> n_list = cfg.n_list.empty()
                                   ? std::vector<long>{100, 1000, 10000}
                                   : cfg.n_list;
    charfn::CFGrid emp;
    experiments::ExperimentReport rep;
    charfn::CFGrid lim;
    if (w.regime == Regime::exponential)
    {
        experiments::ExponentialSetup s{*w.t, *w.mu, w.c1, w.c2};
        rep = experiments::cf_convergence_gaussian(
            s, n_list, cfg.grid, w.n, w.ensemble_size, w.seed, run.opt.threads, &emp);
        lim = charfn::evaluate_grid(cfg.grid, [&](double a, double b) {
            return charfn::limit_cf_gaussian(a, b, s.t, s.mu, s.c1, s.c2);
        });
    }
    else
    {
        experiments::CauchySetup s{*w.b, w.c1, w.c2};
        rep = experiments::cf_convergence_cauchy(s, n_list, cfg.grid, w.n,
                                                 w.ensemble_size, w.seed,
                                                 run.opt.threads, 6, &emp);
        lim = charfn::evaluate_grid(cfg.grid, [&](double a, double b) {
            return charfn::limit_cf_gauss_cauchy(a, b, s.b, s.c1, s.c2);
        });
        if (w.c1 > 0 || w.c2 > 0)
        {
            auto neg = experiments::negligible_term_check(
                s, {100, 316, 1000, 3162, 10000});
            neg.seed = w.seed;
            run.finish(neg);
        }
        auto small = experiments::small_argument_check(s, {100, 1000, 10000});
        small.seed = w.seed;
        run.finish(small);
    }
    write_convergence(run.artifact("convergence", w.seed), rep);
    bool has_zero = false;
    for (double b : emp.betas)
        has_zero = has_zero || b == 0;
    if (has_zero)
        write_cf_slice(run.artifact("cf_slice", w.seed), emp, lim);
    run.finish(rep);
}
}  // namespace detail

/*!
 * Run one command. Returns 0 when every verdict passes, 1 when any fails,
 * 2 on configuration or runtime errors (no artifacts are written when the
 * configuration is rejected).
 */
inline int run(CliOptions const& opt, std::ostream& out, std::ostream& err)
{
    try
    {
        bool known = false;
        for (auto const& c : commands())
            known = known || c == opt.command;
        if (!known)
            throw ConfigError("command", 0, "unknown command '" + opt.command + "'");
        if (opt.command == "specfun-eval")
            return detail::specfun_eval(opt, out);
        if (opt.command == "report")
            return detail::report_command(opt, out);

        if (!opt.config_path)
            throw ConfigError("config", 0, "--config is required");
        RunConfig cfg = parse_config_file(*opt.config_path);
        if (opt.seed)
        {
            cfg.seed = *opt.seed;
            if (cfg.walk)
                cfg.walk->seed = *opt.seed;
        }
        if (opt.command != "identity-check")
            detail::need_walk(cfg);

        fs::create_directories(opt.output_dir);
        detail::Run r{opt, out, err};
        r.log(1, "config " + opt.config_path->string() + " seed "
                     + std::to_string(cfg.seed));
        if (opt.command == "simulate")
            detail::simulate(r, cfg);
        else if (opt.command == "cf-check")
            detail::cf_check(r, cfg);
        else if (opt.command == "identity-check")
            detail::identity_check(r, cfg);
        else
            detail::limit_check(r, cfg);
        return r.all_pass ? 0 : 1;
    }
    catch (ConfigError const& e)
    {
        err << "configuration error: " << e.what() << '\n';
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
    }
    return 2;
}

//---------------------------------------------------------------------------//
}  // namespace flightlab::cli
