//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file flightlab/quadrature.hpp
//! Adaptive Gauss-Kronrod quadrature and zero-to-zero integration of
//! oscillatory integrands over [0, inf).
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <type_traits>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "common.hpp"
#include "specfun.hpp"

namespace flightlab::quad
{
//---------------------------------------------------------------------------//
/*!
 * Result of a quadrature.
 *
 * \c segments_used counts the Gauss-Kronrod panels that were evaluated.
 */
template<class Value, class Real = Value>
struct QuadratureResult
{
    Value value{0};
    Real abs_error_estimate{0};
    int segments_used{0};
    bool converged{false};
};

namespace detail
{
//---------------------------------------------------------------------------//
template<class Real>
Real constant(char const* digits)
{
    if constexpr (std::is_floating_point_v<Real>)
    {
        return static_cast<Real>(std::strtold(digits, nullptr));
    }
    else
    {
        return Real(digits);
    }
}

template<class Value>
auto magnitude(Value const& v)
{
    using std::abs;
    return abs(v);
}

//! Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
template<class Real>
struct Kronrod15
{
    std::array<Real, 8> xgk;
    std::array<Real, 8> wgk;
    std::array<Real, 4> wg;

    static Kronrod15 const& get()
    {
        static Kronrod15 const rule = [] {
            Kronrod15 r;
            char const* x[8] = {"0.991455371120812639206854697526329",
                                "0.949107912342758524526189684047851",
                                "0.864864423359769072789712788640926",
                                "0.741531185599394439863864773280788",
                                "0.586087235467691130294144838258730",
                                "0.405845151377397166906606412076961",
                                "0.207784955007898467600689403773245",
                                "0"};
            char const* wk[8] = {"0.022935322010529224963732008058970",
                                 "0.063092092629978553290700663189204",
                                 "0.104790010322250183839876322541518",
                                 "0.140653259715525918745189590510238",
                                 "0.169004726639267902826583426598550",
                                 "0.190350578064785409913256402421014",
                                 "0.204432940075298892414161999234649",
                                 "0.209482141084727828012999174891714"};
            char const* w[4] = {"0.129484966168869693270611432679082",
                                "0.279705391489276667901467771423780",
                                "0.381830050505118944950369775488975",
                                "0.417959183673469387755102040816327"};
            for (int i = 0; i < 8; ++i)
            {
                r.xgk[i] = constant<Real>(x[i]);
                r.wgk[i] = constant<Real>(wk[i]);
            }
            for (int i = 0; i < 4; ++i)
            {
                r.wg[i] = constant<Real>(w[i]);
            }
            return r;
        }();
        return rule;
    }
};

template<class Value, class Real>
struct Panel
{
    Real a;
    Real b;
    Value value;
    Real error;
};

//! One 15-point panel with the QUADPACK error heuristic.
template<class Real, class F>
auto kronrod_panel(F& f, Real const& a, Real const& b)
{
    using Value = std::decay_t<decltype(f(a))>;
    using std::abs;
    using std::min;
    using std::pow;

    auto const& rule = Kronrod15<Real>::get();
    Real const center = (a + b) / 2;
    Real const half = (b - a) / 2;

    std::array<Value, 15> fv;
    fv[7] = f(center);
    for (int j = 0; j < 7; ++j)
    {
        Real dx = half * rule.xgk[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
    }

    Value kronrod = fv[7] * rule.wgk[7];
    Value gauss = fv[7] * rule.wg[3];
    Real resabs = magnitude(fv[7]) * rule.wgk[7];
    for (int j = 0; j < 7; ++j)
    {
        Value pair = fv[j] + fv[14 - j];
        kronrod += pair * rule.wgk[j];
        resabs += (magnitude(fv[j]) + magnitude(fv[14 - j])) * rule.wgk[j];
        if (j % 2 == 1)
        {
            gauss += pair * rule.wg[j / 2];
        }
    }
    Value mean = kronrod / Real(2);
    Real resasc = rule.wgk[7] * magnitude(fv[7] - mean);
    for (int j = 0; j < 7; ++j)
    {
        resasc += rule.wgk[j]
                  * (magnitude(fv[j] - mean) + magnitude(fv[14 - j] - mean));
    }

    Real const scale = abs(half);
    Real err = magnitude(kronrod - gauss) * scale;
    resasc *= scale;
    resabs *= scale;
    if (resasc != 0 && err != 0)
    {
        Real ratio = 200 * err / resasc;
        err = resasc * min(Real(1), pow(ratio, Real(3) / 2));
    }
    Real const eps = std::numeric_limits<Real>::epsilon();
    if (resabs > std::numeric_limits<Real>::min() / (50 * eps))
    {
        using std::max;
        err = max(err, 50 * eps * resabs);
    }
    return Panel<Value, Real>{a, b, Value(kronrod * half), err};
}

//---------------------------------------------------------------------------//
} // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Globally adaptive Gauss-Kronrod 7/15 quadrature on a finite interval.
 *
 * Bisects the panel with the largest error estimate until the summed error
 * satisfies max(abs_tol, rel_tol*|I|) or \c max_panels is reached. The
 * integrand may be real or complex valued.
 */
template<class Real, class F>
auto gauss_kronrod(F&& f,
                   Real a,
                   Real b,
                   Real abs_tol,
                   Real rel_tol,
                   int max_panels = 2000)
{
    using Value = std::decay_t<decltype(f(a))>;
    using std::max;

    std::vector<detail::Panel<Value, Real>> panels;
    panels.push_back(detail::kronrod_panel(f, a, b));
    int evaluated = 1;

    auto totals = [&panels] {
        NeumaierSum<Value> v;
        Real e = 0;
        for (auto const& p : panels)
        {
            v.add(p.value);
            e += p.error;
        }
        return std::pair<Value, Real>{v.value(), e};
    };

    auto [value, error] = totals();
    while (error > max(abs_tol, rel_tol * detail::magnitude(value))
           && evaluated < max_panels)
    {
        auto worst = std::max_element(
            panels.begin(), panels.end(), [](auto const& l, auto const& r) {
                return l.error < r.error;
            });
        Real mid = (worst->a + worst->b) / 2;
        if (!(mid > worst->a && mid < worst->b))
        {
            break;  // interval exhausted at working precision
        }
        auto left = detail::kronrod_panel(f, worst->a, mid);
        auto right = detail::kronrod_panel(f, mid, worst->b);
        *worst = left;
        panels.push_back(right);
        evaluated += 2;
        std::tie(value, error) = totals();
    }

    QuadratureResult<Value, Real> result;
    result.value = value;
    result.abs_error_estimate = error;
    result.segments_used = evaluated;
    result.converged = error <= max(abs_tol, rel_tol * detail::magnitude(value));
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * Repeated averaging of consecutive partial sums.
 *
 * Each level replaces the sequence by the means of neighbouring entries;
 * for alternating tails this is the Euler transform.
 */
template<class Value>
Value iterated_average(std::vector<Value> window)
{
    while (window.size() > 1)
    {
        for (std::size_t i = 0; i + 1 < window.size(); ++i)
        {
            window[i] = (window[i] + window[i + 1]) / 2;
        }
        window.pop_back();
    }
    return window.front();
}

//---------------------------------------------------------------------------//
/*!
 * Integrate f over [0, inf) by splitting at consecutive breakpoints.
 *
 * \c breakpoint(s), s = 1, 2, ..., must increase and should track the sign
 * changes of the oscillating factor so the segment integrals alternate.
 * The head segment [0, breakpoint(1)] is additionally split at
 * \c head_breaks that fall inside it (e.g. the scale of a peaked weight).
 * Partial sums are accelerated with iterated averaging; convergence is
 * declared when two successive accelerated estimates agree.
 */
template<class Real, class F, class Breakpoint>
auto integrate_oscillatory(F&& f,
                           Breakpoint&& breakpoint,
                           std::vector<Real> head_breaks,
                           Real abs_tol,
                           Real rel_tol,
                           int max_segments = 3000)
{
    using Value = std::decay_t<decltype(f(Real(0)))>;
    using std::abs;
    using std::max;

    Real const eps = std::numeric_limits<Real>::epsilon();
    // panels at working precision: the result can be far smaller than the
    // integrand when segments cancel
    Real const panel_rel = Real(50) * eps;
    int const window_max
        = std::max(24, 2 * std::numeric_limits<Real>::digits10);

    QuadratureResult<Value, Real> result;

    Real first = breakpoint(1);
    std::vector<Real> cuts{Real(0)};
    std::sort(head_breaks.begin(), head_breaks.end());
    for (auto const& h : head_breaks)
    {
        if (h > cuts.back() && h < first)
            cuts.push_back(h);
    }
    cuts.push_back(first);

    NeumaierSum<Value> running;
    Real quad_error = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    {
        auto piece = gauss_kronrod(
            f, cuts[i], cuts[i + 1], abs_tol / 100, panel_rel);
        running.add(piece.value);
        quad_error += piece.abs_error_estimate;
        result.segments_used += piece.segments_used;
    }

    std::vector<Value> partial{running.value()};
    std::vector<Value> accelerated;
    Real lo = first;
    int const min_segments = 8;
    for (int s = 1; s <= max_segments; ++s)
    {
        Real hi = breakpoint(s + 1);
        auto piece = gauss_kronrod(f, lo, hi, abs_tol / 100, panel_rel);
        running.add(piece.value);
        quad_error += piece.abs_error_estimate;
        result.segments_used += piece.segments_used;
        partial.push_back(running.value());
        lo = hi;

        std::size_t w = std::min<std::size_t>(partial.size(), window_max);
        accelerated.push_back(iterated_average(
            std::vector<Value>(partial.end() - w, partial.end())));

        if (s < min_segments || accelerated.size() < 3)
            continue;
        auto const n = accelerated.size();
        Value best = accelerated[n - 1];
        Real change = max(detail::magnitude(best - accelerated[n - 2]),
                          detail::magnitude(best - accelerated[n - 3]));
        Real target = max(abs_tol, rel_tol * detail::magnitude(best));
        if (change + quad_error <= target)
        {
            result.value = best;
            result.abs_error_estimate
                = 2 * change + quad_error + 4 * eps * detail::magnitude(best);
            result.converged = true;
            return result;
        }
    }
    auto const n = accelerated.size();
    result.value = accelerated.back();
    result.abs_error_estimate
        = detail::magnitude(accelerated[n - 1] - accelerated[n - 2])
          + quad_error;
    result.converged = false;
    return result;
}

//---------------------------------------------------------------------------//
/*!
 * s-th positive zero of J_nu: McMahon's expansion refined by one Newton
 * step (kept only when it stays near the starting estimate).
 */
template<class Real>
Real bessel_zero(Real nu, int s)
{
    using std::abs;
    Real const pi = boost::math::constants::pi<Real>();
    Real beta = (s + nu / 2 - Real(1) / 4) * pi;
    Real mu = 4 * nu * nu;
    Real b8 = 8 * beta;
    Real z = beta - (mu - 1) / b8
             - 4 * (mu - 1) * (7 * mu - 31) / (3 * b8 * b8 * b8)
             - 32 * (mu - 1) * (83 * mu * mu - 982 * mu + 3779)
                   / (15 * b8 * b8 * b8 * b8 * b8);
    if (!(z > 0))
        z = beta;
    Real j = specfun::bessel_j_real(nu, z).value;
    Real jm1 = specfun::bessel_j_real(nu - 1, z).value;
    Real deriv = jm1 - nu / z * j;
    if (deriv != 0)
    {
        Real step = j / deriv;
        if (abs(step) < pi / 4)
            z -= step;
    }
    return z;
}

//---------------------------------------------------------------------------//
} // namespace flightlab::quad
