//---------------------------------------------------------------------------//
//! \file tests/test_charfn.cpp
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <gtest/gtest.h>

#include "flightlab/charfn.hpp"
#include "flightlab/distributions.hpp"
#include "oracles.hpp"

using namespace flightlab;
using namespace flightlab::charfn;
using Complex = std::complex<double>;

namespace
{
double const pi = std::numbers::pi;

//! E exp(i w R) for the radial law, in closed form.
Complex radial_transform(StepParams const& p, double w)
{
    double k = p.rate_or_scale;
    if (p.regime == Regime::exponential)
        return k / Complex(k, -w);
    if (w == 0)
        return 1;
    double aw = k * std::abs(w);
    double odd = (std::exp(-aw) * boost::math::expint(aw)
                  - std::exp(aw) * boost::math::expint(-aw))
                 / pi;
    return {std::exp(-aw), w < 0 ? -odd : odd};
}

//! Angle average of the closed-form radial transform.
Complex oracle_step_cf(double alpha, double beta, StepParams const& p)
{
    auto f = [&](double th, bool imag) {
        double c = std::cos(th), s = std::sin(th);
        Complex v = std::polar(1.0, alpha * p.delta1 * c + beta * p.delta2 * s)
                    * radial_transform(p, alpha * c + beta * s);
        return imag ? v.imag() : v.real();
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    double psi = std::atan2(beta, alpha);
    Complex sum = 0;
    for (double lo : {psi - pi / 2, psi + pi / 2})
    {
        double re = GK::integrate([&](double t) { return f(t, false); }, lo, lo + pi, 8, 1e-13);
        double im = GK::integrate([&](double t) { return f(t, true); }, lo, lo + pi, 8, 1e-13);
        sum += Complex(re, im);
    }
    return sum / (2 * pi);
}

std::vector<StepParams> sample_params()
{
    return {{Regime::exponential, 3.0, 0.05, 0.1},
            {Regime::exponential, 1.0, 0.0, 0.0},
            {Regime::exponential, 10.0, 0.1, 0.2},
            {Regime::folded_cauchy, 0.01, 0.02, 0.03},
            {Regime::folded_cauchy, 0.3, 0.0, 0.0},
            {Regime::folded_cauchy, pi / 200, 0.05, 0.15}};
}
}  // namespace

//---------------------------------------------------------------------------//
TEST(ClosedFormRadialTransform, MatchesDirectCauchyIntegral)
{
    // sanity check of the test-side oracle by brute-force quadrature
    double const a = 0.4;
    StepParams p{Regime::folded_cauchy, a, 0, 0};
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    for (double w : {0.3, 2.0, -1.5})
    {
        double aw = std::abs(w);
        double re = 0, im = 0;
        for (int s = 0; s < 4000; ++s)
        {
            double lo = s * pi / aw, hi = (s + 1) * pi / aw;
            auto pdf = [a](double r) { return 2 / pi * a / (r * r + a * a); };
            re += GK::integrate([&](double r) { return std::cos(aw * r) * pdf(r); }, lo, hi, 5, 1e-14);
            im += GK::integrate([&](double r) { return std::sin(aw * r) * pdf(r); }, lo, hi, 5, 1e-14);
        }
        auto v = radial_transform(p, w);
        EXPECT_NEAR(v.real(), re, 1e-6);
        EXPECT_NEAR(v.imag(), w < 0 ? -im : im, 1e-6);
    }
}

TEST(StepCf, Normalization)
{
    for (auto const& p : sample_params())
    {
        EXPECT_EQ(step_cf_quadrature(0, 0, p).value, Complex(1, 0));
        EXPECT_EQ(step_cf(0, 0, p).value, Complex(1, 0));
    }
}

TEST(StepCf, ExponentialKnownValue)
{
    StepParams p{Regime::exponential, 2.0, 0, 0};
    auto q = step_cf_quadrature(1, 0, p);
    EXPECT_NEAR(q.value.real(), 2 / std::sqrt(5.0), 1e-10);
    EXPECT_LT(std::abs(q.value.imag()), 1e-9);
    EXPECT_TRUE(q.converged);
    auto s = step_cf_exponential(1, 0, p);
    EXPECT_NEAR(s.value.real(), 2 / std::sqrt(5.0), 1e-15);
}

TEST(StepCf, ExponentialWithoutDisplacementIsRadial)
{
    StepParams p{Regime::exponential, 1.7, 0, 0};
    for (auto [a, b] : {std::pair{0.3, -1.2}, {2.0, 2.0}, {-0.5, 0.0}})
    {
        double want = 1.7 / std::sqrt(1.7 * 1.7 + a * a + b * b);
        EXPECT_NEAR(step_cf_exponential(a, b, p).value.real(), want, 1e-15);
    }
}

TEST(StepCf, CauchyWithoutDisplacement)
{
    double a = 0.3;
    StepParams p{Regime::folded_cauchy, a, 0, 0};
    for (auto [al, be] : {std::pair{1.0, 0.0}, {0.6, -0.8}, {2.0, 1.5}})
    {
        double c = std::hypot(al, be);
        double want = oracle::bessel_i(0, a * c) - oracle::struve_l(0, a * c);
        EXPECT_NEAR(step_cf_cauchy(al, be, p).value.real(), want, 1e-13);
    }
}

TEST(StepCf, SeriesMatchesIndependentOracle)
{
    for (auto const& p : sample_params())
        for (auto [a, b] : {std::pair{0.7, -0.3}, {1.0, 1.0}, {-2.0, 1.5}, {0.0, 2.0}})
        {
            Complex want = oracle_step_cf(a, b, p);
            EXPECT_LT(std::abs(want.imag()), 1e-12);
            auto series = p.regime == Regime::exponential ? step_cf_exponential(a, b, p)
                                                          : step_cf_cauchy(a, b, p);
            EXPECT_NEAR(series.value.real(), want.real(), 1e-9) << a << "," << b;
            EXPECT_LE(series.error_bound, 1e-9);
            auto quad = step_cf_quadrature(a, b, p);
            EXPECT_TRUE(quad.converged);
            EXPECT_NEAR(quad.value.real(), want.real(), 1e-9);
            EXPECT_LT(std::abs(quad.value.imag()), 1e-9);
        }
}

TEST(StepCf, SmallParameterCasesAgainstQuadrature)
{
    StepParams e{Regime::exponential, 3.0, 0.05, 0.1};
    EXPECT_NEAR(step_cf_exponential(0.7, -0.3, e, 30).value.real(),
                step_cf_quadrature(0.7, -0.3, e).value.real(), 1e-9);
    StepParams c{Regime::folded_cauchy, 0.01, 0.02, 0.03};
    EXPECT_NEAR(step_cf_cauchy(1, 1, c, 6).value.real(),
                step_cf_quadrature(1, 1, c).value.real(), 1e-7);
}

TEST(StepCf, HermitianAndBounded)
{
    for (auto const& p : sample_params())
    {
        auto g = evaluate_grid({-2, 2, 5}, [&](double a, double b) { return step_cf(a, b, p).value; });
        std::size_t n = g.alphas.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
            {
                auto v = g.at(i, j);
                EXPECT_LE(std::norm(v), 1 + 1e-12);
                EXPECT_NEAR(std::abs(v - std::conj(g.at(n - 1 - i, n - 1 - j))), 0, 1e-10);
            }
    }
}

TEST(StepCf, Domain)
{
    StepParams e{Regime::exponential, 1, 0.1, 0.1};
    StepParams c{Regime::folded_cauchy, 0.1, 0.1, 0.1};
    EXPECT_THROW(step_cf_exponential(1, 1, e, -1), DomainError);
    EXPECT_THROW(step_cf_exponential(1, 1, c), DomainError);
    EXPECT_THROW(step_cf_cauchy(1, 1, e), DomainError);
    EXPECT_THROW(step_cf_cauchy(1, 1, c, 12), DomainError);
    EXPECT_NO_THROW(step_cf_cauchy(1, 1, c, 11));
    EXPECT_EQ(step_cf_exponential(0, 0, e, 0).value, Complex(1, 0));
}

TEST(StepCf, TruncationBoundShrinks)
{
    StepParams e{Regime::exponential, 1, 0.5, 0.9};
    double prev = 1;
    for (int k : {1, 3, 6, 12})
    {
        auto v = step_cf_exponential(2, 2, e, k);
        EXPECT_LT(v.error_bound, prev);
        EXPECT_NEAR(v.value.real(), step_cf_exponential(2, 2, e, 40).value.real(),
                    v.error_bound + 1e-15);
        prev = v.error_bound;
    }
}

//---------------------------------------------------------------------------//
TEST(LimitCf, Gaussian)
{
    EXPECT_EQ(limit_cf_gaussian(0, 0, 1, 1, 1, 2), Complex(1, 0));
    EXPECT_NEAR(limit_cf_gaussian(1, 0, 1, 1, 1, 7).real(), std::exp(-1.25), 1e-15);
    auto v = limit_cf_gaussian(0.4, 1.1, 2, 3, 1, 2);
    EXPECT_EQ(v, limit_cf_gaussian(-0.4, 1.1, 2, 3, 1, 2));
    EXPECT_EQ(v, limit_cf_gaussian(0.4, -1.1, 2, 3, 1, 2));
    EXPECT_DOUBLE_EQ(limit_variance(1, 1, 1), 2.5);
    EXPECT_DOUBLE_EQ(limit_variance(1, 1, 2), 5.0);
}

TEST(LimitCf, Linearized)
{
    EXPECT_EQ(limit_cf_gaussian_linearized(0, 0, 1, 1, 1, 1), Complex(1, 0));
    EXPECT_NEAR(limit_cf_gaussian_linearized(1, 0, 1, 1, 1, 0).real(), std::exp(-1.0), 1e-15);
    EXPECT_EQ(limit_cf_gaussian_linearized(0.3, 0.8, 2, 1.5, 0, 0),
              limit_cf_gaussian(0.3, 0.8, 2, 1.5, 0, 0));
}

TEST(LimitCf, GaussCauchy)
{
    EXPECT_EQ(limit_cf_gauss_cauchy(0, 0, 1, 1, 1), Complex(1, 0));
    EXPECT_NEAR(limit_cf_gauss_cauchy(1, 0, 1, 0, 0).real(), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(limit_cf_gauss_cauchy(3, 4, 1, 0, 0).real(), std::exp(-5.0), 1e-17);
    // displacement sums have variance c^2 / 2
    EXPECT_NEAR(limit_cf_gauss_cauchy(1, 0, 1e-300, 2, 0).real(), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(limit_cf_gauss_cauchy_doubled_variance(1, 0, 1e-300, 1, 0).real(),
                std::exp(-0.5), 1e-15);
}

TEST(LimitCf, PowerConvergesExponential)
{
    WalkConfig c;
    c.t = 1;
    c.mu = 1;
    c.c1 = 1;
    c.c2 = 2;
    double prev = 1;
    for (long n : {100L, 1000L, 10000L})
    {
        c.n = n;
        auto p = resolve_scaling(c);
        double d = 0;
        for (auto [a, b] : {std::pair{1.0, 0.5}, {-2.0, 2.0}, {0.5, -1.5}})
        {
            auto v = cf_power(step_cf_exponential(a, b, p).value, n);
            d = std::max(d, std::abs(v - limit_cf_gaussian(a, b, 1, 1, 1, 2)));
        }
        EXPECT_LT(d, prev);
        prev = d;
    }
    EXPECT_LT(prev, 1e-2);
}

TEST(CfPower, Domain)
{
    EXPECT_NEAR(std::abs(cf_power({0.5, 0}, 3) - 0.125), 0, 1e-16);
    EXPECT_THROW(cf_power({-0.5, 0.1}, 3), DomainError);
    EXPECT_THROW(cf_power({0.5, 0}, 0), DomainError);
}

//---------------------------------------------------------------------------//
TEST(EmpiricalCf, SinglePoints)
{
    GridSpec spec{-2, 2, 5};
    auto g = empirical_cf({0.0}, {0.0}, spec);
    for (auto v : g.values)
        EXPECT_EQ(v, Complex(1, 0));
    EXPECT_EQ(g.error_bound, 1.0);
    auto h = empirical_cf({pi}, {0.0}, {-1, 1, 3});
    EXPECT_NEAR(std::abs(h.at(2, 1) - Complex(-1, 0)), 0, 1e-15);
    EXPECT_THROW(empirical_cf({}, {}, spec), DomainError);
    EXPECT_THROW(empirical_cf({1.0}, {}, spec), DomainError);
}

TEST(EmpiricalCf, CircularCauchySamples)
{
    int const m = 200000;
    std::vector<double> xs(m), ys(m);
    for (int k = 0; k < m; ++k)
    {
        RngStream rng(2718, static_cast<std::uint64_t>(k));
        auto pt = sample_circular_cauchy(1.0, rng);
        xs[k] = pt.x;
        ys[k] = pt.y;
    }
    GridSpec spec;
    auto emp = empirical_cf(xs, ys, spec);
    auto exact = evaluate_grid(spec, [](double a, double b) { return limit_cf_gauss_cauchy(a, b, 1, 0, 0); });
    EXPECT_LE(cf_distance(emp, exact), 4 / std::sqrt(double(m)));
}

//---------------------------------------------------------------------------//
TEST(CfDistance, MetricProperties)
{
    GridSpec spec{-1, 1, 4};
    auto ones = evaluate_grid(spec, [](double, double) { return Complex(1, 0); });
    auto zeros = evaluate_grid(spec, [](double, double) { return Complex(0, 0); });
    EXPECT_EQ(cf_distance(ones, ones), 0.0);
    EXPECT_EQ(cf_distance(ones, zeros), 1.0);

    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    auto random_grid = [&] {
        return evaluate_grid(spec, [&](double, double) { return Complex(nd(gen), nd(gen)); });
    };
    for (int trial = 0; trial < 20; ++trial)
    {
        auto f = random_grid(), g = random_grid(), h = random_grid();
        EXPECT_EQ(cf_distance(f, g), cf_distance(g, f));
        EXPECT_LE(cf_distance(f, h), cf_distance(f, g) + cf_distance(g, h) + 1e-15);
    }
    auto other = evaluate_grid({-1, 1, 5}, [](double, double) { return Complex(1, 0); });
    EXPECT_THROW(cf_distance(ones, other), DomainError);
}

TEST(CfGrid, AxisAndCsv)
{
    auto axis = grid_axis({-2, 2, 21});
    ASSERT_EQ(axis.size(), 21u);
    EXPECT_EQ(axis.front(), -2.0);
    EXPECT_EQ(axis[10], 0.0);
    EXPECT_EQ(axis.back(), 2.0);
    auto g = evaluate_grid({-1, 1, 2}, [](double a, double b) { return Complex(a, b); });
    std::ostringstream os;
    write_grid_csv(os, g);
    std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "alpha,beta,re,im");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}
