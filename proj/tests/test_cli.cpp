//---------------------------------------------------------------------------//
//! \file tests/test_cli.cpp
//---------------------------------------------------------------------------//
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "flightlab/cli.hpp"

using namespace flightlab;
namespace fs = std::filesystem;

namespace
{
std::string const exponential_text =
    "# minimal exponential walk\n"
    "regime = exponential\n"
    "n = 10\n"
    "t = 1\n"
    "mu = 1\n"
    "c1 = 1\n"
    "c2 = 2\n"
    "ensemble_size = 20000\n"
    "seed = 42\n";

std::string const cauchy_text =
    "regime = folded_cauchy\n"
    "n = 200\n"
    "b = 1\n"
    "c1 = 0\n"
    "c2 = 0\n"
    "ensemble_size = 20000\n"
    "seed = 7\n"
    "grid_points = 9\n"
    "n_list = 100 1000\n";

//! Fresh directory per test, removed on destruction.
struct ScratchDir
{
    fs::path path;
    explicit ScratchDir(std::string const& name)
        : path(fs::temp_directory_path() / ("flightlab_cli_" + name))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }

    fs::path write(std::string const& file, std::string const& text) const
    {
        std::ofstream(path / file) << text;
        return path / file;
    }
};

std::vector<std::string> read_lines(fs::path const& p)
{
    std::ifstream is(p);
    std::vector<std::string> lines;
    for (std::string line; std::getline(is, line);)
        lines.push_back(line);
    return lines;
}

int expect_config_error(std::string const& text, std::string const& key, int line)
{
    try
    {
        parse_config_text(text);
    }
    catch (ConfigError const& e)
    {
        EXPECT_EQ(e.key(), key) << e.what();
        EXPECT_EQ(e.line(), line) << e.what();
        EXPECT_NE(std::string(e.what()).find(key), std::string::npos);
        return 1;
    }
    ADD_FAILURE() << "no error for key " << key;
    return 0;
}

std::string replace_line(std::string text, std::string const& from, std::string const& to)
{
    auto pos = text.find(from);
    EXPECT_NE(pos, std::string::npos);
    return text.replace(pos, from.size(), to);
}
}  // namespace

//---------------------------------------------------------------------------//
// CONFIG
//---------------------------------------------------------------------------//
TEST(Config, MinimalExponential)
{
    auto cfg = parse_config_text(exponential_text);
    ASSERT_TRUE(cfg.walk);
    auto const& w = *cfg.walk;
    EXPECT_EQ(w.regime, Regime::exponential);
    EXPECT_EQ(w.n, 10);
    EXPECT_EQ(*w.t, 1.0);
    EXPECT_EQ(w.c2, 2.0);
    EXPECT_EQ(w.ensemble_size, 20000);
    EXPECT_EQ(w.seed, 42u);
    EXPECT_FALSE(w.b);
    EXPECT_EQ(cfg.grid.points, 21);
    EXPECT_EQ(cfg.lines.at("regime"), 2);
}

TEST(Config, CauchyAndExtras)
{
    auto cfg = parse_config_text(cauchy_text + "tol = 1e-9\nretain_limit = 2e5\n");
    ASSERT_TRUE(cfg.walk);
    EXPECT_EQ(cfg.walk->regime, Regime::folded_cauchy);
    EXPECT_EQ(cfg.grid.points, 9);
    EXPECT_EQ(cfg.n_list, (std::vector<long>{100, 1000}));
    EXPECT_EQ(*cfg.tol, 1e-9);
    EXPECT_EQ(cfg.walk->retain_limit, 200000);
    EXPECT_EQ(parse_config_text("regime = cauchy\nn=1\nb=1\nc1=0\nc2=0\nensemble_size=1\nseed=0")
                  .walk->regime,
              Regime::folded_cauchy);
}

TEST(Config, ExperimentOnly)
{
    auto cfg = parse_config_text("seed = 3\ntol = 1e-8\n");
    EXPECT_FALSE(cfg.walk);
    EXPECT_EQ(cfg.seed, 3u);
    expect_config_error("seed = 3\nn = 5\n", "n", 2);
}

TEST(Config, ErrorsNameKeyAndLine)
{
    expect_config_error(replace_line(cauchy_text, "b = 1\n", ""), "b", 0);
    expect_config_error(replace_line(exponential_text, "n = 10", "n = 0"), "n", 3);
    expect_config_error(replace_line(exponential_text, "mu = 1", "mu = -2"), "mu", 5);
    expect_config_error(replace_line(exponential_text, "t = 1", "t = one"), "t", 4);
    expect_config_error(replace_line(exponential_text, "n = 10", "n = 2.5"), "n", 3);
    expect_config_error(exponential_text + "colour = red\n", "colour", 10);
    expect_config_error(exponential_text + "n = 11\n", "n", 10);
    expect_config_error(replace_line(exponential_text, "seed = 42\n", ""), "seed", 0);
    expect_config_error(exponential_text + "b = 1\n", "b", 10);
    expect_config_error(cauchy_text + "mu = 1\n", "mu", 10);
    expect_config_error(replace_line(exponential_text, "exponential\n", "gamma\n"), "regime", 2);
    expect_config_error(exponential_text + "grid_points = 1\n", "grid_points", 10);
    expect_config_error(exponential_text + "grid_min = 3\n", "grid_min", 10);
    expect_config_error(exponential_text + "n_list = 10 0\n", "n_list", 10);
    expect_config_error(exponential_text + "tol = 0\n", "tol", 10);
    expect_config_error(exponential_text + "just words\n", "just words", 10);
    expect_config_error(replace_line(exponential_text, "c1 = 1", "c1 ="), "c1", 6);
}

TEST(Config, MissingFile)
{
    EXPECT_THROW(parse_config_file("/nonexistent/flightlab.cfg"), ConfigError);
}

//---------------------------------------------------------------------------//
// PLOT DATA
//---------------------------------------------------------------------------//
TEST(PlotData, TraceIncludesOrigin)
{
    ScratchDir dir("trace");
    WalkConfig w = *parse_config_text(exponential_text).walk;
    RngStream rng(w.seed, 0);
    cli::write_trace(dir.path / "t.csv", trace_walk(resolve_scaling(w), 10, rng));
    auto lines = read_lines(dir.path / "t.csv");
    ASSERT_EQ(lines.size(), 12u);
    EXPECT_EQ(lines[0], "step,x,y");
    EXPECT_EQ(lines[1], "0,0,0");
    EXPECT_EQ(lines.back().substr(0, 3), "10,");
}

TEST(PlotData, CauchySliceIsExponential)
{
    ScratchDir dir("slice");
    charfn::GridSpec g{-2, 2, 9};
    auto lim = charfn::evaluate_grid(g, [](double a, double b) {
        return charfn::limit_cf_gauss_cauchy(a, b, 1, 0, 0);
    });
    auto emp = charfn::empirical_cf({0.0}, {0.0}, g);
    cli::write_cf_slice(dir.path / "s.csv", emp, lim);
    auto lines = read_lines(dir.path / "s.csv");
    ASSERT_EQ(lines.size(), 10u);
    EXPECT_EQ(lines[0], "alpha,re_empirical,re_limit");
    for (std::size_t i = 1; i < lines.size(); ++i)
    {
        std::stringstream ss(lines[i]);
        double alpha, emp_re, lim_re;
        char comma;
        ss >> alpha >> comma >> emp_re >> comma >> lim_re;
        EXPECT_EQ(emp_re, 1.0);
        EXPECT_NEAR(lim_re, std::exp(-std::abs(alpha)), 1e-15);
    }
    auto odd = charfn::empirical_cf({0.0}, {0.0}, {-1, 1, 4});
    EXPECT_THROW(cli::write_cf_slice(dir.path / "bad.csv", odd, odd), DomainError);
}

TEST(PlotData, EmptyReportWritesNothing)
{
    ScratchDir dir("empty");
    experiments::ExperimentReport empty;
    EXPECT_THROW(cli::write_convergence(dir.path / "c.csv", empty), DomainError);
    EXPECT_FALSE(fs::exists(dir.path / "c.csv"));

    experiments::ExperimentReport r;
    r.add(100, 0, "analytic_distance", 0.5, 0, 0, experiments::Rule::info);
    r.add(1000, 0, "analytic_distance", 0.25, 0, 0, experiments::Rule::info);
    cli::write_convergence(dir.path / "c.csv", r);
    EXPECT_EQ(read_lines(dir.path / "c.csv"),
              (std::vector<std::string>{"n,distance", "100,0.5", "1000,0.25"}));
}

//---------------------------------------------------------------------------//
// RECHECK
//---------------------------------------------------------------------------//
TEST(Recheck, RederivesVerdicts)
{
    std::string header = "n,ensemble_size,metric,observed,expected,tolerance,rule,pass\n";
    std::istringstream good(header + "1,2,a,1,1,0,abs,true\n3,4,b,5,0,1,upper,false\n");
    auto r = cli::recheck_report(good);
    EXPECT_EQ(r.rows, 2u);
    EXPECT_EQ(r.failed, 1u);
    EXPECT_EQ(r.mismatched, 0u);
    std::istringstream tampered(header + "1,2,a,1,1,0,abs,false\n");
    EXPECT_EQ(cli::recheck_report(tampered).mismatched, 1u);
    std::istringstream nan_row(header + "1,2,a,nan,1,0,abs,false\n");
    EXPECT_EQ(cli::recheck_report(nan_row).mismatched, 0u);
    std::istringstream empty(header);
    EXPECT_THROW(cli::recheck_report(empty), std::runtime_error);
    std::istringstream wrong("a,b\n1,2\n");
    EXPECT_THROW(cli::recheck_report(wrong), std::runtime_error);
}

TEST(Recheck, RoundTripsPersistedReport)
{
    auto rep = experiments::negligible_term_check({}, {100, 300, 1000, 3000, 10000});
    std::stringstream ss;
    experiments::write_report_csv(ss, rep);
    auto r = cli::recheck_report(ss);
    EXPECT_EQ(r.rows, rep.rows.size());
    EXPECT_EQ(r.failed, rep.fail_count());
    EXPECT_EQ(r.mismatched, 0u);
}

//---------------------------------------------------------------------------//
// DISPATCH
//---------------------------------------------------------------------------//
class Dispatch : public ::testing::Test
{
  protected:
    ScratchDir dir{::testing::UnitTest::GetInstance()->current_test_info()->name()};
    std::ostringstream out, err;

    int run(cli::CliOptions opt)
    {
        if (opt.output_dir == ".")
            opt.output_dir = dir.path / "out";
        return cli::run(opt, out, err);
    }
};

TEST_F(Dispatch, MissingConfigWritesNothing)
{
    cli::CliOptions opt;
    opt.command = "simulate";
    opt.config_path = dir.path / "absent.cfg";
    EXPECT_EQ(run(opt), 2);
    EXPECT_FALSE(fs::exists(dir.path / "out"));
    EXPECT_NE(err.str().find("path"), std::string::npos);
}

TEST_F(Dispatch, BadConfigWritesNothing)
{
    cli::CliOptions opt;
    opt.command = "simulate";
    opt.config_path = dir.write("bad.cfg", replace_line(exponential_text, "n = 10", "n = 0"));
    EXPECT_EQ(run(opt), 2);
    EXPECT_FALSE(fs::exists(dir.path / "out"));
    EXPECT_NE(err.str().find("'n'"), std::string::npos);
}

TEST_F(Dispatch, UnknownCommandAndMissingFlags)
{
    cli::CliOptions opt;
    opt.command = "dance";
    EXPECT_EQ(run(opt), 2);
    opt.command = "simulate";
    EXPECT_EQ(run(opt), 2);
    opt.command = "report";
    EXPECT_EQ(run(opt), 2);
    opt.command = "cf-check";
    opt.config_path = dir.write("id.cfg", "seed = 1\n");
    EXPECT_EQ(run(opt), 2);
}

TEST_F(Dispatch, SimulateExponential)
{
    cli::CliOptions opt;
    opt.command = "simulate";
    opt.config_path = dir.write("e.cfg", exponential_text);
    EXPECT_EQ(run(opt), 0) << err.str();
    auto out_dir = dir.path / "out";
    EXPECT_EQ(read_lines(out_dir / "endpoints_42.csv").size(), 20001u);
    EXPECT_EQ(read_lines(out_dir / "trace_42.csv").size(), 12u);
    EXPECT_TRUE(fs::exists(out_dir / "simulate_42.csv"));
    EXPECT_TRUE(fs::exists(out_dir / "simulate_42.json"));

    // seed override renames every artifact
    opt.seed = 43;
    EXPECT_EQ(run(opt), 0);
    EXPECT_TRUE(fs::exists(out_dir / "simulate_43.csv"));
}

TEST_F(Dispatch, SimulateIsByteReproducible)
{
    cli::CliOptions opt;
    opt.command = "simulate";
    opt.config_path = dir.write("e.cfg", exponential_text);
    opt.output_dir = dir.path / "a";
    ASSERT_EQ(run(opt), 0);
    opt.output_dir = dir.path / "b";
    opt.threads = 3;
    ASSERT_EQ(run(opt), 0);
    for (char const* f : {"simulate_42.csv", "endpoints_42.csv", "trace_42.csv"})
        EXPECT_EQ(read_lines(dir.path / "a" / f), read_lines(dir.path / "b" / f)) << f;
}

TEST_F(Dispatch, CfCheck)
{
    cli::CliOptions opt;
    opt.command = "cf-check";
    opt.config_path = dir.write("c.cfg", cauchy_text + "retain_limit = 0\n");
    EXPECT_EQ(run(opt), 0) << err.str();
    auto lines = read_lines(dir.path / "out" / "step_cf_7.csv");
    EXPECT_EQ(lines.front(), "alpha,beta,re,im");
    EXPECT_EQ(lines.size(), 82u);
}

TEST_F(Dispatch, IdentityCheck)
{
    cli::CliOptions opt;
    opt.command = "identity-check";
    opt.config_path = dir.write("id.cfg", "seed = 5\ntol = 1e-8\n");
    EXPECT_EQ(run(opt), 0) << err.str();
    auto lines = read_lines(dir.path / "out" / "identity_campaign_5.csv");
    EXPECT_EQ(lines.front(), experiments::identity_csv_header());
    EXPECT_GT(lines.size(), 400u);
    EXPECT_TRUE(fs::exists(dir.path / "out" / "identity_campaign_verdicts_5.csv"));

    // the verdict table re-checks cleanly
    cli::CliOptions rep;
    rep.command = "report";
    rep.input = dir.path / "out" / "identity_campaign_verdicts_5.csv";
    EXPECT_EQ(run(rep), 0) << err.str();
}

TEST_F(Dispatch, LimitCheckCauchyDegenerate)
{
    cli::CliOptions opt;
    opt.command = "limit-check";
    opt.config_path = dir.write("c.cfg", cauchy_text);
    int status = run(opt);
    EXPECT_EQ(status, 0) << out.str() << err.str();
    auto out_dir = dir.path / "out";
    EXPECT_TRUE(fs::exists(out_dir / "cf_convergence_cauchy_7.csv"));
    EXPECT_TRUE(fs::exists(out_dir / "small_argument_check_7.csv"));
    // no displacement: the order-1 term is identically zero, nothing to fit
    EXPECT_FALSE(fs::exists(out_dir / "negligible_term_check_7.csv"));
    EXPECT_EQ(read_lines(out_dir / "convergence_7.csv").size(), 3u);
    auto slice = read_lines(out_dir / "cf_slice_7.csv");
    ASSERT_EQ(slice.size(), 10u);
    std::stringstream ss(slice[1]);
    double alpha, e, l;
    char comma;
    ss >> alpha >> comma >> e >> comma >> l;
    EXPECT_NEAR(l, std::exp(-std::abs(alpha)), 1e-15);
}

TEST_F(Dispatch, ReportFlagsFailures)
{
    cli::CliOptions opt;
    opt.command = "report";
    opt.input = dir.write("r.csv",
                          "n,ensemble_size,metric,observed,expected,tolerance,rule,pass\n"
                          "1,1,x,2,0,1,upper,false\n");
    EXPECT_EQ(run(opt), 1);
    opt.input = dir.write("t.csv",
                          "n,ensemble_size,metric,observed,expected,tolerance,rule,pass\n"
                          "1,1,x,2,0,1,upper,true\n");
    EXPECT_EQ(run(opt), 2);
}

TEST_F(Dispatch, SpecfunEval)
{
    cli::CliOptions opt;
    opt.command = "specfun-eval";
    opt.function = "bessel_j";
    opt.order = 0;
    opt.x = 1;
    EXPECT_EQ(run(opt), 0);
    auto text = out.str();
    ASSERT_EQ(text.rfind("value,", 0), 0u) << text;
    EXPECT_NEAR(std::stod(text.substr(6)), 0.76519768655796655, 1e-15);
    opt.function = "struve_l";
    opt.order = 0.5;
    EXPECT_EQ(run(opt), 2);
    opt.function = "gamma";
    EXPECT_EQ(run(opt), 2);
    opt.function = "anger_jbar";
    opt.order = 0.5;
    EXPECT_EQ(run(opt), 0);
}
