//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file flightlab/charfn.hpp
//! Step characteristic functions, limit laws, empirical CFs and distances.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <ostream>
#include <vector>

#include "common.hpp"
#include "integrals.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"
#include "walk.hpp"

namespace flightlab::charfn
{
//---------------------------------------------------------------------------//
using Complex = std::complex<double>;

//! A CF value with an error bound (truncation or quadrature).
struct CFValue
{
    Complex value{1, 0};
    double error_bound{0};
    bool converged{true};
};

//---------------------------------------------------------------------------//
// GRIDS
//---------------------------------------------------------------------------//
struct GridSpec
{
    double min{-2};
    double max{2};
    int points{21};
};

inline std::vector<double> grid_axis(GridSpec const& g)
{
    require(g.points >= 1, "grid: need at least one point");
    require(std::isfinite(g.min) && std::isfinite(g.max),
            "grid: bounds must be finite");
    require(g.points == 1 || g.max > g.min, "grid: max must exceed min");
    std::vector<double> axis(static_cast<std::size_t>(g.points));
    if (g.points == 1)
    {
        axis[0] = g.min;
        return axis;
    }
    double h = (g.max - g.min) / (g.points - 1);
    for (int i = 0; i < g.points; ++i)
        axis[static_cast<std::size_t>(i)] = g.min + i * h;
    // make the centre of a symmetric grid exactly zero
    for (auto& v : axis)
    {
        if (std::abs(v) < 1e-12 * h)
            v = 0;
    }
    axis.back() = g.max;
    return axis;
}

/*!
 * CF values on alphas x betas, stored row-major (alpha outer, beta inner).
 */
struct CFGrid
{
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<Complex> values;
    //! Estimation error attached to every value (e.g. 1/sqrt(M))
    double error_bound{0};

    Complex& at(std::size_t i, std::size_t j)
    {
        return values[i * betas.size() + j];
    }
    Complex const& at(std::size_t i, std::size_t j) const
    {
        return values[i * betas.size() + j];
    }
};

template<class F>
CFGrid evaluate_grid(GridSpec const& spec, F&& f)
{
    CFGrid g;
    g.alphas = grid_axis(spec);
    g.betas = g.alphas;
    g.values.resize(g.alphas.size() * g.betas.size());
    for (std::size_t i = 0; i < g.alphas.size(); ++i)
        for (std::size_t j = 0; j < g.betas.size(); ++j)
            g.at(i, j) = f(g.alphas[i], g.betas[j]);
    return g;
}

inline void write_grid_csv(std::ostream& os, CFGrid const& g)
{
    os << "alpha,beta,re,im\n";
    for (std::size_t i = 0; i < g.alphas.size(); ++i)
        for (std::size_t j = 0; j < g.betas.size(); ++j)
        {
            auto v = g.at(i, j);
            os << format_real(g.alphas[i]) << ',' << format_real(g.betas[j])
               << ',' << format_real(v.real()) << ',' << format_real(v.imag())
               << '\n';
        }
}

//! Maximum modulus of the pointwise difference.
inline double cf_distance(CFGrid const& f, CFGrid const& g)
{
    require(f.alphas == g.alphas && f.betas == g.betas,
            "cf_distance: grids differ");
    double d = 0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
        d = std::max(d, std::abs(f.values[k] - g.values[k]));
    return d;
}

//---------------------------------------------------------------------------//
// ADDITION-FORMULA ARGUMENTS
//---------------------------------------------------------------------------//
/*!
 * c = |(alpha, beta)|, rho = |(alpha d1, beta d2)| and the clamped cosine of
 * the angle in the addition formula.
 */
struct AdditionArgs
{
    double c;
    double rho;
    double cos_phi;
};

inline AdditionArgs addition_args(double alpha, double beta, double d1, double d2)
{
    AdditionArgs r;
    r.c = std::hypot(alpha, beta);
    r.rho = std::hypot(alpha * d1, beta * d2);
    double denom = r.c * r.rho;
    double cp = denom > 0 ? -(alpha * alpha * d1 + beta * beta * d2) / denom
                          : 1.0;
    r.cos_phi = std::clamp(cp, -1.0, 1.0);
    return r;
}

namespace detail
{
//! cos(k phi) for k = 0..kmax from cos(phi) by the Chebyshev recurrence
inline std::vector<double> chebyshev_cosines(int kmax, double cos_phi)
{
    std::vector<double> t(static_cast<std::size_t>(kmax) + 1);
    t[0] = 1;
    if (kmax >= 1)
        t[1] = cos_phi;
    for (int k = 1; k < kmax; ++k)
        t[k + 1] = 2 * cos_phi * t[k] - t[k - 1];
    return t;
}

//! sum_{k > kmax} 2 (rho/2)^k / k!, a bound on the series remainder
inline double bessel_tail_bound(int kmax, double rho)
{
    double term = 1;
    for (int k = 1; k <= kmax + 1; ++k)
        term *= rho / 2 / k;
    double sum = 0;
    for (int k = kmax + 1; k < kmax + 200 && term > 0; ++k)
    {
        sum += term;
        term *= rho / 2 / (k + 1);
        if (term < 1e-18 * sum)
            break;
    }
    return 2 * sum;
}
}  // namespace detail

//---------------------------------------------------------------------------//
// STEP CHARACTERISTIC FUNCTIONS
//---------------------------------------------------------------------------//
/*!
 * Step CF by direct quadrature of
 *   (1/2pi) int dtheta int dr exp(i alpha (r+d1) cos + i beta (r+d2) sin) f(r).
 *
 * The inner integral is the Fourier transform of f at w = alpha cos + beta
 * sin, computed by oscillatory quadrature; the angle integral is split where
 * w changes sign (the transform has a kink there for heavy-tailed f).
 */
inline CFValue step_cf_quadrature(double alpha,
                                  double beta,
                                  StepParams const& p,
                                  double tol = 1e-11)
{
    validate(p);
    require(tol > 0, "step_cf_quadrature: tolerance must be positive");
    if (alpha == 0 && beta == 0)
        return {};

    double const pi = std::numbers::pi;
    bool const expo = p.regime == Regime::exponential;
    double const k = p.rate_or_scale;
    auto pdf = [expo, k, pi](double r) {
        return expo ? k * std::exp(-k * r) : 2 / pi * k / (r * r + k * k);
    };
    double const scale = expo ? 1 / k : k;
    std::vector<double> head;
    for (int j = -2; j <= 60; ++j)
        head.push_back(scale * std::ldexp(1.0, 2 * j));

    bool converged = true;
    double inner_error = 0;
    double const inner_tol = tol / 10;
    auto transform = [&](double w) -> Complex {
        double aw = std::abs(w);
        if (aw < 1e-300)
            return {1, 0};
        auto re = quad::integrate_oscillatory(
            [&](double r) { return std::cos(aw * r) * pdf(r); },
            [aw, pi](int s) { return (s - 0.5) * pi / aw; }, head, inner_tol,
            0.0);
        auto im = quad::integrate_oscillatory(
            [&](double r) { return std::sin(aw * r) * pdf(r); },
            [aw, pi](int s) { return s * pi / aw; }, head, inner_tol, 0.0);
        converged = converged && re.converged && im.converged;
        inner_error = std::max(inner_error,
                               re.abs_error_estimate + im.abs_error_estimate);
        return {re.value, w < 0 ? -im.value : im.value};
    };
    auto integrand = [&](double th) -> Complex {
        double c = std::cos(th), s = std::sin(th);
        double w = alpha * c + beta * s;
        double phase = alpha * p.delta1 * c + beta * p.delta2 * s;
        return std::polar(1.0, phase) * transform(w);
    };

    double psi = std::atan2(beta, alpha);
    auto lo = quad::gauss_kronrod(integrand, psi - pi / 2, psi + pi / 2, tol,
                                  0.0);
    auto hi = quad::gauss_kronrod(integrand, psi + pi / 2, psi + 3 * pi / 2,
                                  tol, 0.0);
    CFValue out;
    out.value = (lo.value + hi.value) / (2 * pi);
    out.error_bound = (lo.abs_error_estimate + hi.abs_error_estimate) / (2 * pi)
                      + inner_error;
    out.converged = converged && lo.converged && hi.converged;
    return out;
}

//---------------------------------------------------------------------------//
/*!
 * Exponential-law step CF as the addition-formula series
 *   mu sum_k eps_k J_k(rho) cos(k phi) int exp(-mu r) J_k(c r) dr,
 * eps_0 = 1, eps_k = 2, truncated after k_max.
 */
inline CFValue step_cf_exponential(double alpha,
                                   double beta,
                                   StepParams const& p,
                                   int k_max = 30)
{
    validate(p);
    require(p.regime == Regime::exponential,
            "step_cf_exponential: exponential regime required");
    require(k_max >= 0, "step_cf_exponential: k_max must be non-negative");
    if (alpha == 0 && beta == 0)
        return {};
    double const mu = p.rate_or_scale;
    auto args = addition_args(alpha, beta, p.delta1, p.delta2);
    int const kmax = args.rho > 0 ? k_max : 0;
    auto jk = specfun::bessel_j_sequence(kmax, args.rho);
    auto cosk = detail::chebyshev_cosines(kmax, args.cos_phi);

    NeumaierSum<double> sum;
    for (int k = 0; k <= kmax; ++k)
    {
        double lap = integrals::laplace_bessel(k, mu, args.c);
        double weight = k == 0 ? 1.0 : 2.0;
        sum.add(weight * jk[k] * cosk[k] * lap);
    }
    CFValue out;
    out.value = mu * sum.value();
    double s = std::hypot(mu, args.c);
    out.error_bound = args.rho > 0 ? mu / s * detail::bessel_tail_bound(kmax, args.rho)
                                   : 0.0;
    return out;
}

//---------------------------------------------------------------------------//
//! Highest order with a tabulated inverse-quadratic Bessel integral.
inline constexpr int cauchy_max_order = 11;

/*!
 * Folded-Cauchy step CF as the addition-formula series
 *   (2a/pi) sum_k eps_k J_k(rho) cos(k phi) int J_k(c r)/(r^2+a^2) dr.
 *
 * Order 0 is I_0(ac) - L_0(ac), order 1 the factored K_1 form, orders
 * 2..k_max the tabulated closed forms (order 10, which has none, by
 * quadrature).
 */
inline CFValue step_cf_cauchy(double alpha,
                              double beta,
                              StepParams const& p,
                              int k_max = 6)
{
    validate(p);
    require(p.regime == Regime::folded_cauchy,
            "step_cf_cauchy: folded_cauchy regime required");
    require(k_max >= 1 && k_max <= cauchy_max_order,
            "step_cf_cauchy: k_max must be in 1..11");
    if (alpha == 0 && beta == 0)
        return {};
    double const a = p.rate_or_scale;
    double const pi = std::numbers::pi;
    auto args = addition_args(alpha, beta, p.delta1, p.delta2);
    int const kmax = args.rho > 0 ? k_max : 0;
    auto jk = specfun::bessel_j_sequence(std::max(kmax, 1), args.rho);
    auto cosk = detail::chebyshev_cosines(std::max(kmax, 1), args.cos_phi);

    double const norm = 2 * a / pi;
    NeumaierSum<double> sum;
    sum.add(jk[0] * norm * integrals::cauchy_j_integral(0, a, args.c));
    CFValue out;
    for (int k = 1; k <= kmax; ++k)
    {
        double integral;
        if (k == 1)
        {
            integral = integrals::inverse_quadratic_j1(a, args.c);
        }
        else if (integrals::has_closed_form(k))
        {
            integral = integrals::cauchy_j_integral(k, a, args.c);
        }
        else
        {
            auto q = integrals::oscillatory_integral<double>(
                integrals::Kernel::inverse_quadratic, k, {a, args.c, 0},
                1e-14 / norm, 1e-13);
            out.converged = out.converged && q.converged;
            out.error_bound += 2 * norm * std::abs(jk[k]) * q.abs_error_estimate;
            integral = q.value;
        }
        sum.add(2 * jk[k] * cosk[k] * norm * integral);
    }
    out.value = sum.value();
    // |norm * integral| <= 1 for every order
    out.error_bound += args.rho > 0 ? detail::bessel_tail_bound(kmax, args.rho)
                                    : 0.0;
    return out;
}

//---------------------------------------------------------------------------//
//! Series CF for the regime of \c p with its default truncation.
inline CFValue step_cf(double alpha, double beta, StepParams const& p)
{
    return p.regime == Regime::exponential ? step_cf_exponential(alpha, beta, p)
                                           : step_cf_cauchy(alpha, beta, p);
}

//---------------------------------------------------------------------------//
// LIMIT LAWS
//---------------------------------------------------------------------------//
//! Limit variances t^2/mu^2 + c t/mu + c^2/2 of the scaled exponential walk.
inline double limit_variance(double t, double mu, double c)
{
    require(t > 0 && mu > 0, "limit_variance: t and mu must be positive");
    double r = t / mu;
    return r * r + c * r + c * c / 2;
}

inline Complex
limit_cf_gaussian(double alpha, double beta, double t, double mu, double c1, double c2)
{
    double vx = limit_variance(t, mu, c1);
    double vy = limit_variance(t, mu, c2);
    return {std::exp(-(alpha * alpha * vx + beta * beta * vy) / 2), 0};
}

//! Gaussian limit without the c^2/2 variance terms.
inline Complex limit_cf_gaussian_linearized(
    double alpha, double beta, double t, double mu, double c1, double c2)
{
    require(t > 0 && mu > 0, "limit_cf: t and mu must be positive");
    double r = t / mu;
    double vx = r * r + c1 * r;
    double vy = r * r + c2 * r;
    return {std::exp(-(alpha * alpha * vx + beta * beta * vy) / 2), 0};
}

/*!
 * Circular Cauchy law convolved with the Gaussian limit of the
 * displacement sums, whose variances are c1^2/2 and c2^2/2.
 */
inline Complex
limit_cf_gauss_cauchy(double alpha, double beta, double b, double c1, double c2)
{
    require(b > 0, "limit_cf: b must be positive");
    double gauss = (c1 * c1 * alpha * alpha + c2 * c2 * beta * beta) / 4;
    return {std::exp(-gauss - b * std::hypot(alpha, beta)), 0};
}

/*!
 * Same with Gaussian variances c1^2 and c2^2 (twice the displacement-sum
 * variances); kept to quantify how far that form is from the walk.
 */
inline Complex limit_cf_gauss_cauchy_doubled_variance(
    double alpha, double beta, double b, double c1, double c2)
{
    require(b > 0, "limit_cf: b must be positive");
    double gauss = (c1 * c1 * alpha * alpha + c2 * c2 * beta * beta) / 2;
    return {std::exp(-gauss - b * std::hypot(alpha, beta)), 0};
}

//---------------------------------------------------------------------------//
/*!
 * phi^n through exp(n log phi) on the principal branch.
 *
 * Requires Re(phi) > 0 so that no branch tracking is needed.
 */
inline Complex cf_power(Complex phi, long n)
{
    require(n >= 1, "cf_power: n must be positive");
    if (!(phi.real() > 0))
    {
        throw DomainError("cf_power: value left the right half-plane");
    }
    return std::exp(static_cast<double>(n) * std::log(phi));
}

//---------------------------------------------------------------------------//
// EMPIRICAL CF
//---------------------------------------------------------------------------//
/*!
 * (1/M) sum_m exp(i (alpha x_m + beta y_m)) on the grid; error bound
 * 1/sqrt(M).
 */
inline CFGrid empirical_cf(std::vector<double> const& xs,
                           std::vector<double> const& ys,
                           GridSpec const& spec)
{
    require(!xs.empty(), "empirical_cf: need at least one endpoint");
    require(xs.size() == ys.size(), "empirical_cf: coordinate count mismatch");
    CFGrid g;
    g.alphas = grid_axis(spec);
    g.betas = g.alphas;
    std::size_t na = g.alphas.size(), nb = g.betas.size();
    std::vector<Complex> acc(na * nb);
    std::vector<Complex> ex(na), ey(nb);
    for (std::size_t m = 0; m < xs.size(); ++m)
    {
        for (std::size_t i = 0; i < na; ++i)
            ex[i] = std::polar(1.0, g.alphas[i] * xs[m]);
        for (std::size_t j = 0; j < nb; ++j)
            ey[j] = std::polar(1.0, g.betas[j] * ys[m]);
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < nb; ++j)
                acc[i * nb + j] += ex[i] * ey[j];
    }
    double inv = 1.0 / static_cast<double>(xs.size());
    g.values.resize(na * nb);
    for (std::size_t k = 0; k < acc.size(); ++k)
        g.values[k] = acc[k] * inv;
    g.error_bound = std::sqrt(inv);
    return g;
}

//---------------------------------------------------------------------------//
}  // namespace flightlab::charfn
