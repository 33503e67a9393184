//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file flightlab/specfun.hpp
//! Real-argument Bessel J/I/K, modified Struve L and Anger functions.
//!
//! Every function is a template over the floating-point type so the same
//! algorithms serve plain double evaluation and the extended-precision
//! evaluation of cancellation-prone closed forms (see integrals.hpp).
//! Tolerances are derived from std::numeric_limits<Real>::epsilon().
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <type_traits>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "common.hpp"

namespace flightlab::specfun
{
//---------------------------------------------------------------------------//
//! Any non-integral arithmetic-like type (double, long double, boost mp).
template<class T>
concept RealNumber = !std::is_integral_v<T> && requires(T a, T b) {
    { a + b };
    { a * b };
    { a < b };
};

//---------------------------------------------------------------------------//
/*!
 * Function value together with an absolute error bound.
 *
 * For series evaluations the bound covers the first neglected term plus the
 * accumulated rounding of the partial sum.
 */
template<class Real>
struct SpecialValue
{
    Real value{0};
    Real abs_error_bound{0};
};

namespace detail
{
//---------------------------------------------------------------------------//
template<class Real>
Real eps()
{
    return std::numeric_limits<Real>::epsilon();
}

template<class Real>
Real pi()
{
    return boost::math::constants::pi<Real>();
}

template<class Real>
void require_finite(Real const& x, char const* message)
{
    require((boost::math::isfinite)(x), message);
}

//! Smallest argument where the large-x Hankel forms reach working precision.
template<class Real>
Real hankel_threshold()
{
    using std::log;
    Real from_precision = -log(eps<Real>()) / 2 + 5;
    return std::max(Real(30), from_precision);
}

template<class Real>
bool is_integer(Real const& nu)
{
    using std::floor;
    return floor(nu) == nu;
}

//---------------------------------------------------------------------------//
/*!
 * Power series of J_nu for real order.
 *
 * Used where the alternating terms stay modest: x <= 2, or when the order
 * dominates x so that the terms decrease from the start.
 */
template<class Real>
SpecialValue<Real> bessel_j_series(Real const& nu, Real const& x)
{
    using std::abs;
    using std::pow;

    Real half_x = x / 2;
    Real term;
    if (is_integer(nu) && nu >= 0)
    {
        term = 1;
        int const n = static_cast<int>(nu);
        for (int j = 1; j <= n; ++j)
        {
            term *= half_x / j;
        }
    }
    else
    {
        term = pow(half_x, nu) / boost::math::tgamma(nu + 1);
    }

    Real const q = half_x * half_x;
    NeumaierSum<Real> sum;
    Real abs_sum = 0;
    for (int m = 0; m < 10000; ++m)
    {
        sum.add(term);
        abs_sum += abs(term);
        Real next = -term * q / ((m + 1) * (m + 1 + nu));
        bool decreasing = q < (m + 1) * abs(m + 1 + nu);
        if (decreasing && abs(next) <= eps<Real>() * abs(sum.value()))
        {
            return {sum.value(), abs(next) + 4 * eps<Real>() * abs_sum};
        }
        if (decreasing && abs(next) == 0)
        {
            return {sum.value(), 4 * eps<Real>() * abs_sum};
        }
        term = next;
    }
    throw ConvergenceError("bessel_j series did not converge",
                           static_cast<double>(sum.value()),
                           static_cast<double>(abs(term)));
}

//---------------------------------------------------------------------------//
/*!
 * Hankel large-argument auxiliary series P and Q for J_nu / I_nu.
 *
 * Terms are a_k(nu)/x^k with a_k = prod_{j<=k}(4nu^2-(2j-1)^2) / (k! 8^k);
 * summation stops at working precision or at the smallest term.
 */
template<class Real>
struct HankelSeries
{
    Real p{1};
    Real q{0};
    Real alternating{1};  // sum (-1)^k a_k / x^k, used by I_nu
    Real error{0};
};

template<class Real>
HankelSeries<Real> hankel_series(Real const& nu, Real const& x)
{
    using std::abs;
    HankelSeries<Real> out;
    Real const mu = 4 * nu * nu;
    Real term = 1;
    for (int k = 1; k < 2000; ++k)
    {
        Real odd = 2 * k - 1;
        Real next = term * (mu - odd * odd) / (8 * k * x);
        if (abs(next) >= abs(term) && k > 1)
        {
            out.error = abs(term);
            return out;
        }
        term = next;
        int const r = k % 4;
        // P = 1 - a2/x^2 + a4/x^4 ...,  Q = a1/x - a3/x^3 + ...
        if (r == 1)
            out.q += term;
        else if (r == 2)
            out.p -= term;
        else if (r == 3)
            out.q -= term;
        else
            out.p += term;
        out.alternating += (k % 2 ? -term : term);
        if (abs(term) <= eps<Real>() / 4)
        {
            out.error = abs(term);
            return out;
        }
    }
    out.error = abs(term);
    return out;
}

template<class Real>
SpecialValue<Real> bessel_j_hankel(Real const& nu, Real const& x)
{
    using std::cos;
    using std::sin;
    using std::sqrt;
    auto h = hankel_series(nu, x);
    Real chi = x - (nu / 2 + Real(1) / 4) * pi<Real>();
    Real amp = sqrt(2 / (pi<Real>() * x));
    Real value = amp * (h.p * cos(chi) - h.q * sin(chi));
    return {value, amp * (h.error + 8 * eps<Real>() * (1 + x * eps<Real>()))};
}

//---------------------------------------------------------------------------//
/*!
 * Miller's downward recurrence for J_0..J_kmax, normalised with
 * J_0 + 2 sum_{k>=1} J_{2k} = 1.
 */
template<class Real>
std::vector<Real> bessel_j_miller(int kmax, Real const& x)
{
    using std::abs;
    using std::ceil;
    using std::sqrt;

    int const base = std::max(kmax, static_cast<int>(ceil(x)));
    int const acc = 10 * std::numeric_limits<Real>::digits10 + 20;
    int const start
        = 2 * ((base + 10 + static_cast<int>(std::sqrt(double(acc) * base)))
               / 2);

    Real const big = Real(1e100);
    std::vector<Real> out(kmax + 1, Real(0));
    Real jp1 = 0;
    Real j = 1;
    Real sum = (start % 2 == 0) ? Real(2) : Real(0);
    for (int k = start; k >= 1; --k)
    {
        Real jm1 = (2 * k) / x * j - jp1;
        jp1 = j;
        j = jm1;
        if (abs(j) > big)
        {
            j /= big;
            jp1 /= big;
            sum /= big;
            for (int i = k; i <= kmax; ++i)
            {
                out[i] /= big;
            }
        }
        int const order = k - 1;
        if (order <= kmax)
        {
            out[order] = j;
        }
        if (order > 0 && order % 2 == 0)
        {
            sum += 2 * j;
        }
    }
    sum += j;
    for (auto& v : out)
    {
        v /= sum;
    }
    return out;
}

template<class Real>
Real miller_error_bound(int kmax, Real const& x)
{
    return 16 * (kmax + x + 10) * eps<Real>();
}

//---------------------------------------------------------------------------//
//! Series of the modified Bessel function I_n, integer n >= 0.
template<class Real>
SpecialValue<Real> bessel_i_series(int order, Real const& x)
{
    Real half_x = x / 2;
    Real term = 1;
    for (int j = 1; j <= order; ++j)
    {
        term *= half_x / j;
    }
    Real const q = half_x * half_x;
    NeumaierSum<Real> sum;
    int count = 0;
    for (int m = 0; m < 100000; ++m)
    {
        sum.add(term);
        ++count;
        Real ratio = q / ((m + 1) * (m + 1 + order));
        Real next = term * ratio;
        if (ratio < Real(0.5) && next <= eps<Real>() * sum.value() / 4)
        {
            Real v = sum.value();
            return {v, next * 2 + 2 * eps<Real>() * v};
        }
        if (next == 0)
        {
            return {sum.value(), 2 * eps<Real>() * sum.value()};
        }
        term = next;
    }
    throw ConvergenceError("bessel_i series did not converge",
                           static_cast<double>(sum.value()),
                           static_cast<double>(term));
}

//---------------------------------------------------------------------------//
/*!
 * K_0 and K_1 together.
 *
 * Log-bearing ascending series for x <= 2; Steed's continued fraction
 * (Temme's CF2 form, K ~ sqrt(pi/2x) e^{-x} / s) above.
 */
template<class Real>
struct KPair
{
    Real k0;
    Real k1;
    Real rel_error;
};

template<class Real>
KPair<Real> macdonald_k01(Real const& x)
{
    using std::abs;
    using std::exp;
    using std::log;
    using std::sqrt;

    Real const gamma_e = boost::math::constants::euler<Real>();
    if (x <= 2)
    {
        Real const q = x * x / 4;
        Real const lnh = log(x / 2);
        auto i0 = bessel_i_series(0, x);
        auto i1 = bessel_i_series(1, x);

        // K0 = -(ln(x/2)+gamma) I0 + sum_{k>=1} q^k/(k!)^2 H_k
        NeumaierSum<Real> s0;
        Real t = 1;
        Real harmonic = 0;
        for (int k = 1; k < 100000; ++k)
        {
            t *= q / (Real(k) * k);
            harmonic += Real(1) / k;
            Real add = t * harmonic;
            s0.add(add);
            if (add <= eps<Real>() * abs(s0.value()) / 4)
                break;
        }
        Real k0 = -(lnh + gamma_e) * i0.value + s0.value();

        // K1 = 1/x + ln(x/2) I1 - (x/4) sum_{k>=0} (psi(k+1)+psi(k+2))
        //                                   q^k / (k!(k+1)!)
        NeumaierSum<Real> s1;
        t = 1;
        harmonic = 0;
        for (int k = 0; k < 100000; ++k)
        {
            if (k > 0)
            {
                t *= q / (Real(k) * (k + 1));
                harmonic += Real(1) / k;
            }
            Real psi_sum = 2 * (-gamma_e) + 2 * harmonic + Real(1) / (k + 1);
            Real add = psi_sum * t;
            s1.add(add);
            if (k > 2 && abs(add) <= eps<Real>() * abs(s1.value()) / 4)
                break;
        }
        Real k1 = 1 / x + lnh * i1.value - x / 4 * s1.value();
        // Cancellation grows like e^{2x} relative to K at the top of the
        // range.
        Real rel = 16 * eps<Real>() * exp(2 * x);
        return {k0, k1, rel};
    }

    Real b = 2 * (1 + x);
    Real d = 1 / b;
    Real h = d;
    Real delh = d;
    Real q1 = 0;
    Real q2 = 1;
    Real const a1 = Real(1) / 4;
    Real q = a1;
    Real c = a1;
    Real a = -a1;
    Real s = 1 + q * delh;
    int i = 1;
    for (; i < 1000000; ++i)
    {
        a -= 2 * i;
        c = -a * c / (i + 1);
        Real qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2;
        d = 1 / (b + a * d);
        delh = (b * d - 1) * delh;
        h += delh;
        Real dels = q * delh;
        s += dels;
        if (abs(dels / s) < eps<Real>() / 2)
            break;
    }
    h = a1 * h;
    Real k0 = sqrt(pi<Real>() / (2 * x)) * exp(-x) / s;
    Real k1 = k0 * (x + Real(1) / 2 - h) / x;
    return {k0, k1, (8 + Real(i) / 8) * eps<Real>()};
}

//---------------------------------------------------------------------------//
} // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Bessel function of the first kind J_n(x), integer n >= 0, x >= 0.
 *
 * Regimes: power series for x <= 2 or x^2/4 < n+1; Miller's downward
 * recurrence for moderate x; above the Hankel threshold (x = 30 in double)
 * the asymptotic forms of J_0, J_1 followed by upward recurrence while the
 * order stays below x.
 */
template<RealNumber Real>
SpecialValue<Real> bessel_j(int order, Real x)
{
    require(order >= 0, "bessel_j: order must be non-negative");
    detail::require_finite(x, "bessel_j: x must be finite");
    require(x >= 0, "bessel_j: x must be non-negative");

    if (x == 0)
    {
        return {Real(order == 0 ? 1 : 0), Real(0)};
    }
    if (x <= 2 || x * x / 4 < order + 1)
    {
        return detail::bessel_j_series(Real(order), x);
    }
    if (x > detail::hankel_threshold<Real>() && order < x)
    {
        auto j0 = detail::bessel_j_hankel(Real(0), x);
        if (order == 0)
            return j0;
        auto j1 = detail::bessel_j_hankel(Real(1), x);
        Real prev = j0.value;
        Real cur = j1.value;
        for (int k = 1; k < order; ++k)
        {
            Real next = (2 * k) / x * cur - prev;
            prev = cur;
            cur = next;
        }
        using std::max;
        Real err = max(j0.abs_error_bound, j1.abs_error_bound) * (order + 1);
        return {cur, err};
    }
    auto seq = detail::bessel_j_miller(order, x);
    return {seq[order], detail::miller_error_bound(order, x)};
}

//---------------------------------------------------------------------------//
/*!
 * J_0(x) .. J_kmax(x) in one pass.
 */
template<RealNumber Real>
std::vector<Real> bessel_j_sequence(int kmax, Real x)
{
    require(kmax >= 0, "bessel_j_sequence: kmax must be non-negative");
    detail::require_finite(x, "bessel_j_sequence: x must be finite");
    require(x >= 0, "bessel_j_sequence: x must be non-negative");

    std::vector<Real> out(kmax + 1, Real(0));
    if (x == 0)
    {
        out[0] = 1;
        return out;
    }
    if (x <= 2)
    {
        for (int k = 0; k <= kmax; ++k)
        {
            out[k] = detail::bessel_j_series(Real(k), x).value;
        }
        return out;
    }
    if (x > detail::hankel_threshold<Real>() && kmax < x)
    {
        out[0] = detail::bessel_j_hankel(Real(0), x).value;
        if (kmax >= 1)
            out[1] = detail::bessel_j_hankel(Real(1), x).value;
        for (int k = 1; k < kmax; ++k)
        {
            out[k + 1] = (2 * k) / x * out[k] - out[k - 1];
        }
        return out;
    }
    return detail::bessel_j_miller(kmax, x);
}

//---------------------------------------------------------------------------//
/*!
 * J_nu(x) for real order |nu| <= 20 and x >= 0.
 *
 * Integer orders delegate to bessel_j (with J_{-n} = (-1)^n J_n). Otherwise
 * the Gamma-function power series for x <= 12 (or when |nu| exceeds x), and
 * for larger x the Hankel forms at the fractional part of the order
 * followed by recurrence towards nu.
 */
template<RealNumber Real>
SpecialValue<Real> bessel_j_real(Real nu, Real x)
{
    using std::abs;
    using std::floor;
    detail::require_finite(nu, "bessel_j_real: order must be finite");
    detail::require_finite(x, "bessel_j_real: x must be finite");
    require(x >= 0, "bessel_j_real: x must be non-negative");
    require(abs(nu) <= 20, "bessel_j_real: |order| must not exceed 20");

    if (detail::is_integer(nu))
    {
        int n = static_cast<int>(nu);
        auto r = bessel_j(n < 0 ? -n : n, x);
        if (n < 0 && (-n) % 2 == 1)
            r.value = -r.value;
        return r;
    }
    if (x == 0)
    {
        require(nu > 0, "bessel_j_real: J_nu(0) is singular for nu < 0");
        return {Real(0), Real(0)};
    }
    if (x <= 12 || abs(nu) + 2 >= x)
    {
        return detail::bessel_j_series(nu, x);
    }

    Real base = nu - floor(nu);
    auto lo = detail::bessel_j_hankel(base, x);
    auto hi = detail::bessel_j_hankel(base + 1, x);
    Real err = (lo.abs_error_bound + hi.abs_error_bound) * (abs(nu) + 2);
    int steps = static_cast<int>(floor(nu));
    if (steps == 0)
        return {lo.value, lo.abs_error_bound};
    if (steps > 0)
    {
        // upward: J_{v+1} = (2v/x) J_v - J_{v-1}
        Real prev = lo.value;
        Real cur = hi.value;
        Real v = base + 1;
        for (int k = 1; k < steps; ++k)
        {
            Real next = 2 * v / x * cur - prev;
            prev = cur;
            cur = next;
            v += 1;
        }
        return {cur, err};
    }
    // downward: J_{v-1} = (2v/x) J_v - J_{v+1}
    Real upper = hi.value;
    Real cur = lo.value;
    Real v = base;
    for (int k = 0; k < -steps; ++k)
    {
        Real next = 2 * v / x * cur - upper;
        upper = cur;
        cur = next;
        v -= 1;
    }
    return {cur, err};
}

//---------------------------------------------------------------------------//
/*!
 * Modified Bessel function I_n(x), integer n >= 0, x >= 0.
 *
 * The series has positive terms and is used for every x below the Hankel
 * threshold and for orders with n^2 >= x; above that the exponential
 * asymptotic form.
 */
template<RealNumber Real>
SpecialValue<Real> bessel_i(int order, Real x)
{
    using std::exp;
    using std::sqrt;
    require(order >= 0, "bessel_i: order must be non-negative");
    detail::require_finite(x, "bessel_i: x must be finite");
    require(x >= 0, "bessel_i: x must be non-negative");

    if (x == 0)
    {
        return {Real(order == 0 ? 1 : 0), Real(0)};
    }
    if (x > detail::hankel_threshold<Real>() && Real(order) * order < x)
    {
        auto h = detail::hankel_series(Real(order), x);
        Real scale = exp(x) / sqrt(2 * detail::pi<Real>() * x);
        Real value = scale * h.alternating;
        return {value, scale * h.error + 4 * detail::eps<Real>() * value};
    }
    return detail::bessel_i_series(order, x);
}

//---------------------------------------------------------------------------//
/*!
 * Macdonald function K_n(x), x > 0.
 *
 * K_0 and K_1 from detail::macdonald_k01, higher orders by the upward
 * recurrence K_{v+1} = K_{v-1} + (2v/x) K_v (stable: K grows with order).
 */
template<RealNumber Real>
SpecialValue<Real> macdonald_k(int order, Real x)
{
    using std::abs;
    require(order >= 0, "macdonald_k: order must be non-negative");
    detail::require_finite(x, "macdonald_k: x must be finite");
    require(x > 0, "macdonald_k: x must be positive");

    auto pair = detail::macdonald_k01(x);
    if (order == 0)
        return {pair.k0, pair.k0 * pair.rel_error};
    Real prev = pair.k0;
    Real cur = pair.k1;
    for (int v = 1; v < order; ++v)
    {
        Real next = prev + (2 * v) / x * cur;
        prev = cur;
        cur = next;
    }
    return {cur, abs(cur) * pair.rel_error * (order + 1)};
}

//---------------------------------------------------------------------------//
/*!
 * Modified Struve function with its first two derivatives.
 *
 * L_n(x) = sum_k (x/2)^{2k+n+1} / (Gamma(k+3/2) Gamma(k+n+3/2)); every
 * term is positive so the series is usable for all finite x. Derivatives
 * come from term-wise differentiation.
 */
template<class Real>
struct StruveDerivatives
{
    Real value;
    Real first;
    Real second;
    Real abs_error_bound;
};

template<RealNumber Real>
StruveDerivatives<Real> struve_l_derivatives(int order, Real x)
{
    using std::sqrt;
    require(order >= 0, "struve_l: order must be non-negative");
    detail::require_finite(x, "struve_l: x must be finite");
    require(x >= 0, "struve_l: x must be non-negative");
    if (x == 0)
    {
        // Only the leading term can contribute to the derivatives.
        Real g32 = sqrt(detail::pi<Real>()) / 2;
        Real g = g32;
        for (int j = 1; j <= order; ++j)
            g *= Real(j) + Real(1) / 2;
        Real first = order == 0 ? Real(1) / (2 * g32 * g) : Real(0);
        Real second
            = order == 1 ? Real(2) / (4 * g32 * g) : Real(0);
        return {Real(0), first, second, Real(0)};
    }

    Real half_x = x / 2;
    Real gamma_32 = sqrt(detail::pi<Real>()) / 2;
    Real term = half_x / (gamma_32 * gamma_32);
    for (int j = 1; j <= order; ++j)
    {
        term *= half_x / (Real(j) + Real(1) / 2);
    }
    Real const q = half_x * half_x;
    NeumaierSum<Real> v, d1, d2;
    for (int k = 0; k < 100000; ++k)
    {
        Real p = 2 * k + order + 1;
        v.add(term);
        d1.add(p * term / x);
        d2.add(p * (p - 1) * term / (x * x));
        Real ratio = q / ((k + Real(3) / 2) * (k + order + Real(3) / 2));
        Real next = term * ratio;
        if ((ratio < Real(0.5) && next <= detail::eps<Real>() * v.value() / 8)
            || next == 0)
        {
            Real val = v.value();
            return {val,
                    d1.value(),
                    d2.value(),
                    2 * next + 4 * detail::eps<Real>() * val};
        }
        term = next;
    }
    throw ConvergenceError("struve_l series did not converge",
                           static_cast<double>(v.value()),
                           static_cast<double>(term));
}

template<RealNumber Real>
SpecialValue<Real> struve_l(int order, Real x)
{
    auto r = struve_l_derivatives(order, x);
    return {r.value, r.abs_error_bound};
}

//---------------------------------------------------------------------------//
/*!
 * Anger function from the two-sided Bessel sum
 *   Jbar_nu(x) = sin(pi nu)/pi * sum_l (-1)^l J_l(x) / (nu - l).
 *
 * The sum is truncated at |l| <= L where (x/2)^L / L! falls below working
 * precision. Integer orders use the defining integral
 * (1/2pi) int_0^2pi cos(nu t - x sin t) dt, whose integrand is then periodic,
 * so the trapezoid rule converges geometrically.
 */
template<RealNumber Real>
SpecialValue<Real> anger_jbar(Real nu, Real x)
{
    using std::abs;
    using std::ceil;
    using std::cos;
    using std::sin;
    detail::require_finite(nu, "anger_jbar: order must be finite");
    detail::require_finite(x, "anger_jbar: x must be finite");
    require(x >= 0, "anger_jbar: x must be non-negative");
    require(abs(nu) <= 20, "anger_jbar: |order| must not exceed 20");

    if (detail::is_integer(nu))
    {
        // aliasing error is bounded by the J_{N-|nu|} tail
        int const order = static_cast<int>(abs(nu));
        int m = 1;
        Real alias = 1;
        Real half = x / 2;
        while (m < 8 || alias >= detail::eps<Real>() / 16)
        {
            ++m;
            alias *= half / m;
        }
        int const points = 2 * (order + m + 8);
        NeumaierSum<Real> sum;
        Real abs_sum = 0;
        for (int k = 0; k < points; ++k)
        {
            Real t = 2 * detail::pi<Real>() * k / points;
            Real term = cos(nu * t - x * sin(t));
            sum.add(term);
            abs_sum += abs(term);
        }
        Real value = sum.value() / points;
        return {value, 2 * alias + 4 * detail::eps<Real>() * abs_sum / points};
    }

    // Truncation: smallest L beyond the order with (x/2)^L/L! < eps.
    Real tail = 1;
    int L = 0;
    Real half_x = x / 2;
    int const min_terms = static_cast<int>(ceil(abs(nu))) + 2;
    while (L < min_terms || tail >= detail::eps<Real>() / 16)
    {
        ++L;
        tail *= half_x / L;
        if (L > 100000)
            break;
    }

    auto j = bessel_j_sequence(L, x);
    NeumaierSum<Real> sum;
    Real abs_sum = abs(j[0] / nu);
    sum.add(j[0] / nu);
    for (int l = 1; l <= L; ++l)
    {
        Real sign = (l % 2 == 0) ? Real(1) : Real(-1);
        Real a = sign * j[l] / (nu - l);
        Real b = j[l] / (nu + l);
        sum.add(a);
        sum.add(b);
        abs_sum += abs(a) + abs(b);
    }
    Real s = boost::math::sin_pi(nu) / detail::pi<Real>();
    Real value = s * sum.value();
    Real err = abs(s) * (2 * tail + abs_sum * 8 * detail::eps<Real>()
                         + abs_sum * detail::miller_error_bound(L, x));
    return {value, err};
}

//---------------------------------------------------------------------------//
/*!
 * I_nu(x) for real order nu > -1 by the positive power series.
 */
template<RealNumber Real>
SpecialValue<Real> bessel_i_real(Real nu, Real x)
{
    using std::abs;
    using std::pow;
    detail::require_finite(nu, "bessel_i_real: order must be finite");
    detail::require_finite(x, "bessel_i_real: x must be finite");
    require(x >= 0, "bessel_i_real: x must be non-negative");
    require(nu > -1 && nu <= 20, "bessel_i_real: order must lie in (-1, 20]");

    if (x == 0)
    {
        require(nu >= 0, "bessel_i_real: I_nu(0) is singular for nu < 0");
        return {Real(nu == 0 ? 1 : 0), Real(0)};
    }
    Real half_x = x / 2;
    Real q = half_x * half_x;
    Real term = pow(half_x, nu) / boost::math::tgamma(nu + 1);
    NeumaierSum<Real> sum;
    for (int m = 0; m < 100000; ++m)
    {
        sum.add(term);
        Real next = term * q / ((m + 1) * (m + 1 + nu));
        if (next <= detail::eps<Real>() * sum.value()
            && q < (m + 1) * (m + 1 + nu))
        {
            return {sum.value(), 4 * detail::eps<Real>() * sum.value()};
        }
        term = next;
    }
    throw ConvergenceError("bessel_i_real series did not converge",
                           static_cast<double>(sum.value()),
                           static_cast<double>(term));
}

//---------------------------------------------------------------------------//
/*!
 * Imaginary part of the Anger function on the imaginary axis,
 *   Im Jbar_nu(i x) = (1/pi) int_0^pi sin(nu t) sinh(x sin t) dt
 *                   = sin(pi nu/2) sum_k (x/2)^{2k+1}
 *                       / (Gamma(k+3/2+nu/2) Gamma(k+3/2-nu/2)).
 *
 * At integer order it equals Im(i^n) I_n(x).
 */
template<RealNumber Real>
SpecialValue<Real> anger_jbar_imag_axis(Real nu, Real x)
{
    using std::abs;
    detail::require_finite(nu, "anger_jbar_imag_axis: order must be finite");
    detail::require_finite(x, "anger_jbar_imag_axis: x must be finite");
    require(x >= 0, "anger_jbar_imag_axis: x must be non-negative");
    require(abs(nu) <= 20, "anger_jbar_imag_axis: |order| must not exceed 20");

    Real half_x = x / 2;
    Real q = half_x * half_x;
    Real power = half_x;
    NeumaierSum<Real> sum;
    Real abs_sum = 0;
    Real half_nu = nu / 2;
    for (int k = 0; k < 100000; ++k)
    {
        Real term = power
                    / boost::math::tgamma(k + Real(3) / 2 + half_nu);
        // 1/Gamma has zeros at the non-positive integers
        Real arg = k + Real(3) / 2 - half_nu;
        if (!(arg <= 0 && detail::is_integer(arg)))
        {
            term /= boost::math::tgamma(arg);
        }
        else
        {
            term = 0;
        }
        sum.add(term);
        abs_sum += abs(term);
        bool past_peak = Real(k + 1) > half_x + abs(half_nu) + 2;
        if (past_peak && abs(term) <= detail::eps<Real>() * abs(sum.value()))
            break;
        if (past_peak && power == 0)
            break;
        power *= q;
    }
    Real s = boost::math::sin_pi(half_nu);
    return {s * sum.value(), abs(s) * 8 * detail::eps<Real>() * abs_sum};
}

//---------------------------------------------------------------------------//
} // namespace flightlab::specfun
