//---------------------------------------------------------------------------//
//! \file tests/test_distributions.cpp
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "flightlab/distributions.hpp"

using namespace flightlab;

namespace
{
constexpr int big = 1000000;
double const pi = std::numbers::pi;

struct Moments
{
    double mean{0};
    double se{0};
};

template<class F>
Moments sample_mean(F&& draw, int count)
{
    double s = 0, s2 = 0;
    for (int i = 0; i < count; ++i)
    {
        double v = draw();
        s += v;
        s2 += v * v;
    }
    double m = s / count;
    return {m, std::sqrt((s2 / count - m * m) / count)};
}
}  // namespace

//---------------------------------------------------------------------------//
// STREAMS
//---------------------------------------------------------------------------//
TEST(RngStream, ReproducibleAndDistinct)
{
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    for (int i = 0; i < 100; ++i)
    {
        auto x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        EXPECT_NE(x, c.next_u64());
        EXPECT_NE(x, d.next_u64());
    }
    EXPECT_EQ(a.draws(), 100u);
    EXPECT_EQ(a.seed(), 42u);
    EXPECT_EQ(a.stream_index(), 7u);
}

TEST(RngStream, DocumentedDerivation)
{
    std::uint64_t seed = 2024, k = 3;
    std::uint64_t key = mix64(mix64(seed) + golden_gamma * (k + 1));
    RngStream s(seed, k);
    EXPECT_EQ(s.next_u64(), mix64(key + golden_gamma * 1));
    EXPECT_EQ(s.next_u64(), mix64(key + golden_gamma * 2));
    // SplitMix64 reference output for state 0 after one increment
    EXPECT_EQ(mix64(golden_gamma), 0xe220a8397b1dcdafULL);
}

TEST(RngStream, UniformRange)
{
    RngStream s(1, 0);
    for (int i = 0; i < 100000; ++i)
    {
        double u = s.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(RngStream, NeighbouringStreamsUncorrelated)
{
    RngStream a(9, 0), b(9, 1);
    double sab = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
    for (int i = 0; i < big; ++i)
    {
        double x = a.uniform(), y = b.uniform();
        sa += x;
        sb += y;
        sab += x * y;
        saa += x * x;
        sbb += y * y;
    }
    double n = big;
    double cov = sab / n - sa / n * sb / n;
    double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
    EXPECT_LT(std::abs(corr), 3 / std::sqrt(n));
}

TEST(ForcedUniforms, CyclesAndValidates)
{
    ForcedUniforms f({0.1, 0.2});
    EXPECT_EQ(f.uniform(), 0.1);
    EXPECT_EQ(f.uniform(), 0.2);
    EXPECT_EQ(f.uniform(), 0.1);
    EXPECT_THROW(ForcedUniforms({1.0}), DomainError);
    EXPECT_THROW(ForcedUniforms(std::vector<double>{}), DomainError);
}

//---------------------------------------------------------------------------//
// EXPONENTIAL
//---------------------------------------------------------------------------//
TEST(Exponential, ForcedDraws)
{
    ForcedUniforms u1({1 - std::exp(-1.0)});
    EXPECT_NEAR(sample_exponential(1.0, u1), 1.0, 1e-15);
    ForcedUniforms u0({0.0});
    EXPECT_EQ(sample_exponential(2.0, u0), 0.0);
    EXPECT_THROW(sample_exponential(0.0, u0), DomainError);
    EXPECT_THROW(sample_exponential(-1.0, u0), DomainError);
}

TEST(Exponential, Moments)
{
    RngStream s(5, 0);
    double rate = 2;
    auto m1 = sample_mean([&] { return sample_exponential(rate, s); }, big);
    EXPECT_NEAR(m1.mean, 1 / rate, 4 / std::sqrt(double(big)) / rate);
    RngStream t(5, 1);
    auto m2 = sample_mean([&] {
        double r = sample_exponential(1.0, t);
        return r * r;
    }, big);
    EXPECT_NEAR(m2.mean, 2.0, 4 * m2.se);
}

//---------------------------------------------------------------------------//
// FOLDED CAUCHY
//---------------------------------------------------------------------------//
TEST(FoldedCauchy, ForcedDraws)
{
    ForcedUniforms half({0.5});
    EXPECT_NEAR(sample_folded_cauchy(1.0, half), 1.0, 1e-15);
    ForcedUniforms zero({0.0});
    EXPECT_EQ(sample_folded_cauchy(2.0, zero), 0.0);
    EXPECT_THROW(sample_folded_cauchy(0.0, zero), DomainError);
}

TEST(FoldedCauchy, TailFraction)
{
    RngStream s(11, 0);
    auto m = sample_mean([&] { return sample_folded_cauchy(1.0, s) > 10 ? 1.0 : 0.0; }, big);
    double p = 1 - 2 / pi * std::atan(10.0);
    EXPECT_NEAR(p, 0.0635, 1e-4);
    EXPECT_NEAR(m.mean, p, 4 * std::sqrt(p * (1 - p) / big));
}

TEST(FoldedCauchy, KolmogorovSmirnov)
{
    RngStream s(12, 0);
    std::vector<double> x(big);
    for (auto& v : x)
        v = sample_folded_cauchy(0.7, s);
    std::sort(x.begin(), x.end());
    double d = 0;
    for (int i = 0; i < big; ++i)
    {
        double f = folded_cauchy_cdf(x[i], 0.7);
        d = std::max({d, std::abs(f - double(i) / big), std::abs(f - double(i + 1) / big)});
    }
    // 1% critical value 1.63 / sqrt(N)
    EXPECT_LT(d, 1.63 / std::sqrt(double(big)));
}

TEST(FoldedCauchy, Density)
{
    EXPECT_NEAR(folded_cauchy_pdf(0, 1), 2 / pi, 1e-16);
    EXPECT_NEAR(folded_cauchy_pdf(1, 1), 1 / pi, 1e-16);
    boost::math::quadrature::exp_sinh<double> es;
    double mass = es.integrate([](double r) { return folded_cauchy_pdf(r, 1.3); }, 0.0,
                               std::numeric_limits<double>::infinity());
    EXPECT_NEAR(mass, 1.0, 1e-10);
    EXPECT_THROW(folded_cauchy_pdf(1, 0), DomainError);
}

TEST(FoldedCauchy, ScaleProperty)
{
    RngStream a(3, 4), b(3, 4);
    for (int i = 0; i < 1000; ++i)
        EXPECT_DOUBLE_EQ(sample_folded_cauchy(2.5, a), 2.5 * sample_folded_cauchy(1.0, b));
}

//---------------------------------------------------------------------------//
// UNIFORM ANGLE
//---------------------------------------------------------------------------//
TEST(UniformAngle, ForcedDraws)
{
    ForcedUniforms u({0.0, 0.25});
    EXPECT_EQ(sample_uniform_angle(u), 0.0);
    EXPECT_NEAR(sample_uniform_angle(u), pi / 2, 1e-16);
}

TEST(UniformAngle, Moments)
{
    RngStream s(21, 0);
    double sc = 0, ss = 0, scc = 0, scc2 = 0, scs = 0, scs2 = 0;
    for (int i = 0; i < big; ++i)
    {
        double t = sample_uniform_angle(s);
        ASSERT_GE(t, 0.0);
        ASSERT_LT(t, 2 * pi);
        double c = std::cos(t), n = std::sin(t);
        sc += c;
        ss += n;
        scc += c * c;
        scc2 += c * c * c * c;
        scs += c * n;
        scs2 += c * c * n * n;
    }
    double n = big;
    EXPECT_LT(std::abs(sc / n), 4 / std::sqrt(n));
    EXPECT_LT(std::abs(ss / n), 4 / std::sqrt(n));
    double mcc = scc / n;
    EXPECT_NEAR(mcc, 0.5, 4 * std::sqrt((scc2 / n - mcc * mcc) / n));
    double mcs = scs / n;
    EXPECT_NEAR(mcs, 0.0, 4 * std::sqrt((scs2 / n - mcs * mcs) / n));
}

//---------------------------------------------------------------------------//
// CIRCULAR CAUCHY
//---------------------------------------------------------------------------//
TEST(CircularCauchy, ForcedRadius)
{
    ForcedUniforms u({1 - 1 / std::sqrt(2.0), 0.0});
    auto p = sample_circular_cauchy(1.0, u);
    EXPECT_NEAR(std::hypot(p.x, p.y), 1.0, 1e-15);
    ForcedUniforms z({0.0, 0.3});
    auto q = sample_circular_cauchy(1.0, z);
    EXPECT_EQ(std::hypot(q.x, q.y), 0.0);
    EXPECT_THROW(sample_circular_cauchy(0.0, z), DomainError);
}

TEST(CircularCauchy, RadialCdfFromPolarIntegration)
{
    // integrate the density over a disk of radius r in polar coordinates
    for (double b : {0.5, 1.0, 3.0})
        for (double r : {0.1, 1.0, 7.0})
        {
            auto f = [&](double rho) { return 2 * pi * rho * circular_cauchy_pdf(rho, 0, b); };
            double mass = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                f, 0.0, r, 15, 1e-14);
            EXPECT_NEAR(circular_cauchy_radial_cdf(r, b), mass, 1e-13);
            double u = circular_cauchy_radial_cdf(r, b);
            EXPECT_NEAR(circular_cauchy_radius_quantile(u, b), r, 1e-11 * r);
        }
}

TEST(CircularCauchy, Density)
{
    EXPECT_NEAR(circular_cauchy_pdf(0, 0, 1), 1 / (2 * pi), 1e-16);
    EXPECT_NEAR(circular_cauchy_pdf(0, 0, 2), 1 / (8 * pi), 1e-16);
    // 2D mass inside radius 100 (Cartesian product rule restricted to the disk)
    auto inner = [](double x) {
        double h = std::sqrt(std::max(0.0, 1e4 - x * x));
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            [x](double y) { return circular_cauchy_pdf(x, y, 1.0); }, -h, h, 10, 1e-10);
    };
    double mass = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        inner, -100.0, 100.0, 10, 1e-10);
    EXPECT_NEAR(mass, 1.0, 1e-2);
    EXPECT_NEAR(mass, 1 - 1 / std::hypot(1.0, 100.0), 1e-4);
}

TEST(CircularCauchy, EmpiricalCharacteristicFunction)
{
    RngStream s(31, 0);
    std::vector<Point2> pts(big);
    for (auto& p : pts)
        p = sample_circular_cauchy(1.0, s);
    for (int ia = -1; ia <= 1; ++ia)
        for (int ib = -1; ib <= 1; ++ib)
        {
            std::complex<double> acc = 0;
            for (auto const& p : pts)
                acc += std::exp(std::complex<double>(0, ia * p.x + ib * p.y));
            acc /= double(big);
            double want = std::exp(-std::hypot(double(ia), double(ib)));
            EXPECT_LT(std::abs(acc - want), 4 / std::sqrt(double(big))) << ia << " " << ib;
        }
}
