//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file flightlab/integrals.hpp
//! Closed-form Bessel integrals and the oscillatory quadrature that checks them.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "common.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace flightlab::integrals
{
//---------------------------------------------------------------------------//
using quad::QuadratureResult;
using specfun::RealNumber;

//---------------------------------------------------------------------------//
/*!
 * Integrand families handled by oscillatory_integral.
 *
 * Parameters p = {p0, p1, p2}:
 * - inverse_quadratic: J_k(p1 r) / (r^2 + p0^2)
 * - exponential:       exp(-p0 r) J_k(p1 r)
 * - algebraic:         r^{k+1} / (r^2 + p0^2)^{k+3/2} J_k(p1 r)
 * - unit:              J_k(p1 r)
 * - quadratic_ratio:   J_k(r) r^2 / (r^2 + p0^2)
 * - shifted_exponential: exp(-p0 r) J_0(p1 sqrt(r^2 + 2 p2 r))  (k = 0)
 */
enum class Kernel
{
    inverse_quadratic,
    exponential,
    algebraic,
    unit,
    quadratic_ratio,
    shifted_exponential,
};

template<class Real>
using KernelParams = std::array<Real, 3>;

namespace detail
{
//---------------------------------------------------------------------------//
template<class Real>
Real ipow(Real base, int power)
{
    Real result = 1;
    bool invert = power < 0;
    unsigned p = invert ? static_cast<unsigned>(-power)
                        : static_cast<unsigned>(power);
    while (p)
    {
        if (p & 1u)
            result *= base;
        base *= base;
        p >>= 1u;
    }
    return invert ? 1 / result : result;
}

//---------------------------------------------------------------------------//
template<class Real>
Real bessel_any(Real nu, Real x)
{
    if (specfun::detail::is_integer(nu) && nu >= 0)
        return specfun::bessel_j(static_cast<int>(nu), x).value;
    return specfun::bessel_j_real(nu, x).value;
}

}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Integrate a Bessel-weighted kernel over [0, inf).
 *
 * Segments end at the zeros of the oscillating Bessel factor; segment sums
 * are accelerated by iterated averaging. Non-convergence is reported through
 * QuadratureResult::converged together with the achieved error.
 */
template<RealNumber Real>
QuadratureResult<Real> oscillatory_integral(Kernel kernel,
                                            Real order,
                                            KernelParams<Real> p,
                                            Real abs_tol,
                                            Real rel_tol = 0)
{
    using std::exp;
    using std::pow;
    using std::sqrt;
    require(abs_tol > 0 || rel_tol > 0,
            "oscillatory_integral: a positive tolerance is required");
    require(order > -1, "oscillatory_integral: order must exceed -1");

    Real const nu = order;
    std::vector<Real> head;
    auto zeros_scaled = [nu](Real scale) {
        return [nu, scale](int s) { return quad::bessel_zero(nu, s) / scale; };
    };

    switch (kernel)
    {
        case Kernel::inverse_quadratic: {
            Real a = p[0], c = p[1];
            require(a > 0 && c > 0, "oscillatory_integral: need a, c > 0");
            auto f = [=](Real r) {
                return detail::bessel_any(nu, c * r) / (r * r + a * a);
            };
            head = {a / 4, a, 4 * a};
            return quad::integrate_oscillatory(
                f, zeros_scaled(c), head, abs_tol, rel_tol);
        }
        case Kernel::exponential: {
            Real alpha = p[0], beta = p[1];
            require(alpha > 0 && beta > 0,
                    "oscillatory_integral: need alpha, beta > 0");
            auto f = [=](Real r) {
                return exp(-alpha * r) * detail::bessel_any(nu, beta * r);
            };
            head = {1 / alpha, 4 / alpha, 16 / alpha};
            return quad::integrate_oscillatory(
                f, zeros_scaled(beta), head, abs_tol, rel_tol);
        }
        case Kernel::algebraic: {
            Real a = p[0], b = p[1];
            require(a > 0 && b > 0, "oscillatory_integral: need a, b > 0");
            auto f = [=](Real r) {
                Real s = r * r + a * a;
                return pow(r, nu + 1) / (pow(s, nu + 1) * sqrt(s))
                       * detail::bessel_any(nu, b * r);
            };
            head = {a / 4, a, 4 * a};
            return quad::integrate_oscillatory(
                f, zeros_scaled(b), head, abs_tol, rel_tol);
        }
        case Kernel::unit: {
            Real c = p[1];
            require(c > 0, "oscillatory_integral: need c > 0");
            auto f = [=](Real r) { return detail::bessel_any(nu, c * r); };
            return quad::integrate_oscillatory(
                f, zeros_scaled(c), head, abs_tol, rel_tol);
        }
        case Kernel::quadratic_ratio: {
            Real x = p[0];
            require(x > 0, "oscillatory_integral: need x > 0");
            auto f = [=](Real r) {
                return detail::bessel_any(nu, r) * r * r / (r * r + x * x);
            };
            head = {x / 4, x, 4 * x};
            return quad::integrate_oscillatory(
                f, zeros_scaled(Real(1)), head, abs_tol, rel_tol);
        }
        case Kernel::shifted_exponential: {
            Real alpha = p[0], beta = p[1], gamma = p[2];
            require(nu == 0, "oscillatory_integral: shifted kernel is order 0");
            require(alpha > 0 && beta >= 0 && gamma >= 0,
                    "oscillatory_integral: need alpha > 0, beta, gamma >= 0");
            auto f = [=](Real r) {
                return exp(-alpha * r)
                       * specfun::bessel_j(0, beta * sqrt(r * r + 2 * gamma * r))
                             .value;
            };
            head = {1 / alpha, 4 / alpha, 16 / alpha};
            if (beta == 0)
            {
                Real scale = 4 / alpha;
                return quad::integrate_oscillatory(
                    f, [scale](int s) { return scale * s; }, head, abs_tol,
                    rel_tol);
            }
            // zeros of J_0(beta sqrt(r^2 + 2 gamma r)) in r
            auto bp = [=](int s) {
                Real z = quad::bessel_zero(Real(0), s) / beta;
                return sqrt(gamma * gamma + z * z) - gamma;
            };
            return quad::integrate_oscillatory(f, bp, head, abs_tol, rel_tol);
        }
    }
    throw DomainError("oscillatory_integral: unknown kernel");
}

//---------------------------------------------------------------------------//
//! Double-precision convenience overload with a single absolute tolerance.
inline QuadratureResult<double>
oscillatory_integral(Kernel kernel, int order, KernelParams<double> p, double tol)
{
    return oscillatory_integral<double>(kernel, order, p, tol, 0.0);
}

//---------------------------------------------------------------------------//
/*!
 * Throw ConvergenceError for a non-converged quadrature, else pass through.
 */
template<class Value, class Real>
QuadratureResult<Value, Real>
require_converged(QuadratureResult<Value, Real> r, char const* what)
{
    if (!r.converged)
    {
        using std::abs;
        throw ConvergenceError(what,
                               static_cast<double>(abs(r.value)),
                               static_cast<double>(r.abs_error_estimate));
    }
    return r;
}

//---------------------------------------------------------------------------//
/*!
 * int_0^inf exp(-alpha x) J_nu(beta x) dx
 *   = (sqrt(alpha^2+beta^2) - alpha)^nu / (beta^nu sqrt(alpha^2+beta^2)).
 *
 * Evaluated as (beta / (s + alpha))^nu / s, which avoids the subtraction.
 */
template<RealNumber Real>
Real laplace_bessel(int nu, Real alpha, Real beta)
{
    using std::hypot;
    require(nu >= 0, "laplace_bessel: order must be non-negative");
    require(alpha > 0, "laplace_bessel: alpha must be positive");
    require(beta > 0, "laplace_bessel: beta must be positive");
    Real s = hypot(alpha, beta);
    return detail::ipow(beta / (s + alpha), nu) / s;
}

//---------------------------------------------------------------------------//
//! int_0^inf exp(-alpha x) J_0(beta sqrt(x^2 + 2 gamma x)) dx
template<RealNumber Real>
Real shifted_laplace_j0(Real alpha, Real beta, Real gamma)
{
    using std::exp;
    using std::hypot;
    require(alpha > 0, "shifted_laplace_j0: alpha must be positive");
    require(gamma >= 0, "shifted_laplace_j0: gamma must be non-negative");
    Real s = hypot(alpha, beta);
    // alpha - s = -beta^2 / (alpha + s)
    return exp(-gamma * beta * beta / (alpha + s)) / s;
}

//---------------------------------------------------------------------------//
/*!
 * int_0^inf x^{nu+1} (x^2+a^2)^{-nu-3/2} J_nu(b x) dx
 *   = b^nu sqrt(pi) exp(-a b) / (2^{nu+1} a Gamma(nu + 3/2)).
 */
template<RealNumber Real>
Real algebraic_bessel(int nu, Real a, Real b)
{
    using std::exp;
    using std::sqrt;
    require(nu >= 0, "algebraic_bessel: order must be non-negative");
    require(a > 0 && b > 0, "algebraic_bessel: a and b must be positive");
    Real g = boost::math::tgamma(Real(nu) + Real(3) / 2);
    Real pi = boost::math::constants::pi<Real>();
    return detail::ipow(b / 2, nu) * sqrt(pi) * exp(-a * b) / (2 * a * g);
}

//---------------------------------------------------------------------------//
//! int_0^inf J_1(u) u^2 / (u^2 + x^2) du = x K_1(x)
template<RealNumber Real>
Real quadratic_ratio_j1(Real x)
{
    require(x > 0, "quadratic_ratio_j1: x must be positive");
    return x * specfun::macdonald_k(1, x).value;
}

//---------------------------------------------------------------------------//
// INVERSE-QUADRATIC TABLE
//---------------------------------------------------------------------------//
//! Special-function factor multiplying a table coefficient.
enum class Factor
{
    one,
    bessel_i,
    struve_l,
    macdonald_k,
};

/*!
 * One term: (numerator/denominator) [pi] a^a_power c^c_power F_m(a c).
 */
struct TableTerm
{
    Factor factor;
    int factor_order;
    long long numerator;
    int denominator;
    bool with_pi;
    int a_power;
    int c_power;
};

namespace detail
{
// clang-format off
inline constexpr TableTerm order0[] = {
    {Factor::bessel_i, 0, 1, 2, true, -1, 0},
    {Factor::struve_l, 0, -1, 2, true, -1, 0},
};
inline constexpr TableTerm order1[] = {
    {Factor::one, 0, 1, 1, false, -2, -1},
    {Factor::macdonald_k, 1, -1, 1, false, -1, 0},
};
inline constexpr TableTerm order2[] = {
    {Factor::one, 0, 1, 3, false, 0, 1},
    {Factor::bessel_i, 2, -1, 2, true, -1, 0},
    {Factor::struve_l, 2, 1, 2, true, -1, 0},
};
inline constexpr TableTerm order3[] = {
    {Factor::macdonald_k, 3, 1, 1, false, -1, 0},
    {Factor::one, 0, 1, 1, false, -2, -1},
    {Factor::one, 0, -8, 1, false, -4, -3},
};
inline constexpr TableTerm order4[] = {
    {Factor::one, 0, 1, 15, false, 0, 1},
    {Factor::bessel_i, 4, 1, 2, true, -1, 0},
    {Factor::struve_l, 2, -1, 2, true, -1, 0},
    {Factor::struve_l, 3, 3, 1, true, -2, -1},
};
inline constexpr TableTerm order5[] = {
    {Factor::macdonald_k, 5, -1, 1, false, -1, 0},
    {Factor::one, 0, 1, 1, false, -2, -1},
    {Factor::one, 0, -24, 1, false, -4, -3},
    {Factor::one, 0, 384, 1, false, -6, -5},
};
inline constexpr TableTerm order6[] = {
    {Factor::one, 0, 1, 105, false, 2, 3},
    {Factor::one, 0, 1, 35, false, 0, 1},
    {Factor::bessel_i, 6, -1, 2, true, -1, 0},
    {Factor::struve_l, 4, 1, 2, true, -1, 0},
    {Factor::struve_l, 3, -5, 1, true, -2, -1},
    {Factor::struve_l, 4, 40, 1, true, -3, -2},
};
inline constexpr TableTerm order7[] = {
    {Factor::macdonald_k, 7, 1, 1, false, -1, 0},
    {Factor::one, 0, 1, 1, false, -2, -1},
    {Factor::one, 0, -48, 1, false, -4, -3},
    {Factor::one, 0, 1920, 1, false, -6, -5},
    {Factor::one, 0, -46080, 1, false, -8, -7},
};
inline constexpr TableTerm order8[] = {
    {Factor::one, 0, 1, 63, false, 2, 3},
    {Factor::one, 0, 1, 63, false, 0, 1},
    {Factor::bessel_i, 8, 1, 2, true, -1, 0},
    {Factor::struve_l, 4, -1, 2, true, -1, 0},
    {Factor::struve_l, 5, 12, 1, true, -2, -1},
    {Factor::struve_l, 4, -84, 1, true, -3, -2},
    {Factor::struve_l, 5, 840, 1, true, -4, -3},
};
inline constexpr TableTerm order9[] = {
    {Factor::macdonald_k, 9, -1, 1, false, -1, 0},
    {Factor::one, 0, 1, 1, false, -2, -1},
    {Factor::one, 0, -80, 1, false, -4, -3},
    {Factor::one, 0, 5760, 1, false, -6, -5},
    {Factor::one, 0, -322560, 1, false, -8, -7},
    {Factor::one, 0, 10321920, 1, false, -10, -9},
};
inline constexpr TableTerm order11[] = {
    {Factor::macdonald_k, 11, 1, 1, false, -1, 0},
    {Factor::one, 0, 1, 1, false, -2, -1},
    {Factor::one, 0, -120, 1, false, -4, -3},
    {Factor::one, 0, 13440, 1, false, -6, -5},
    {Factor::one, 0, -1290240, 1, false, -8, -7},
    {Factor::one, 0, 92897280, 1, false, -10, -9},
    {Factor::one, 0, -3715891200LL, 1, false, -12, -11},
};
// clang-format on
}  // namespace detail

//---------------------------------------------------------------------------//
//! Whether a closed form of int J_k(cr)/(r^2+a^2) dr is tabulated.
inline bool has_closed_form(int order)
{
    return order >= 0 && order <= 11 && order != 10;
}

//! Terms of the tabulated closed form for \c order.
inline std::span<TableTerm const> table_terms(int order)
{
    switch (order)
    {
        case 0: return detail::order0;
        case 1: return detail::order1;
        case 2: return detail::order2;
        case 3: return detail::order3;
        case 4: return detail::order4;
        case 5: return detail::order5;
        case 6: return detail::order6;
        case 7: return detail::order7;
        case 8: return detail::order8;
        case 9: return detail::order9;
        case 11: return detail::order11;
        default: break;
    }
    throw DomainError("cauchy_j_integral: no closed form for order "
                      + std::to_string(order));
}

//---------------------------------------------------------------------------//
/*!
 * Sum of a table line with the sum of absolute term values.
 *
 * The ratio magnitude/|value| measures the cancellation that the working
 * precision must absorb.
 */
template<class Real>
struct TableSum
{
    Real value;
    Real magnitude;
};

template<RealNumber Real>
TableSum<Real> evaluate_table(int order, Real a, Real c)
{
    using std::abs;
    require(a > 0 && c > 0, "cauchy_j_integral: a and c must be positive");
    Real const x = a * c;
    Real const pi = boost::math::constants::pi<Real>();
    NeumaierSum<Real> sum;
    Real magnitude = 0;
    for (TableTerm const& t : table_terms(order))
    {
        Real coef = Real(t.numerator) / Real(t.denominator);
        if (t.with_pi)
            coef *= pi;
        coef *= detail::ipow(a, t.a_power) * detail::ipow(c, t.c_power);
        Real f = 1;
        switch (t.factor)
        {
            case Factor::one: break;
            case Factor::bessel_i:
                f = specfun::bessel_i(t.factor_order, x).value;
                break;
            case Factor::struve_l:
                f = specfun::struve_l(t.factor_order, x).value;
                break;
            case Factor::macdonald_k:
                f = specfun::macdonald_k(t.factor_order, x).value;
                break;
        }
        Real term = coef * f;
        sum.add(term);
        magnitude += abs(term);
    }
    return {sum.value(), magnitude};
}

//---------------------------------------------------------------------------//
//! Closed-form value with the precision used to obtain it.
struct ClosedFormValue
{
    double value;
    double cancelled_digits;
    int working_digits;
};

namespace detail
{
using ext50 = boost::multiprecision::cpp_bin_float_50;
using ext100 = boost::multiprecision::cpp_bin_float_100;

template<class Eval>
ClosedFormValue with_enough_precision(Eval&& eval, char const* what)
{
    using std::log10;
    auto cancelled = [](auto const& s) {
        using std::abs;
        if (s.value == 0)
            return std::numeric_limits<double>::infinity();
        double d = static_cast<double>(log10(s.magnitude / abs(s.value)));
        return d > 0 ? d : 0.0;
    };
    // keep at least 18 significant digits after cancellation
    auto s50 = eval(ext50{});
    double lost = cancelled(s50);
    if (lost <= 50 - 18)
        return {static_cast<double>(s50.value), lost, 50};
    auto s100 = eval(ext100{});
    lost = cancelled(s100);
    if (lost <= 100 - 18)
        return {static_cast<double>(s100.value), lost, 100};
    throw ConvergenceError(std::string(what)
                               + ": cancellation exceeds extended precision",
                           static_cast<double>(s100.value),
                           static_cast<double>(s100.magnitude) * 1e-100);
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * int_0^inf J_order(c r) / (r^2 + a^2) dr from the tabulated closed form.
 *
 * The closed forms cancel heavily for small a c (dozens of digits at high
 * order), so they are evaluated with 50 or 100 decimal digits and rounded.
 */
inline ClosedFormValue cauchy_j_integral_detail(int order, double a, double c)
{
    require(has_closed_form(order),
            "cauchy_j_integral: order must be in 0..9 or 11");
    require(a > 0 && c > 0, "cauchy_j_integral: a and c must be positive");
    require(std::isfinite(a) && std::isfinite(c),
            "cauchy_j_integral: a and c must be finite");
    return detail::with_enough_precision(
        [&](auto tag) {
            using R = decltype(tag);
            return evaluate_table<R>(order, R(a), R(c));
        },
        "cauchy_j_integral");
}

inline double cauchy_j_integral(int order, double a, double c)
{
    return cauchy_j_integral_detail(order, a, c).value;
}

//---------------------------------------------------------------------------//
/*!
 * (1 - x K_1(x)) / (a^2 c) with x = a c, the factored order-1 form.
 */
template<RealNumber Real>
TableSum<Real> inverse_quadratic_j1_factored(Real a, Real c)
{
    using std::abs;
    require(a > 0 && c > 0, "inverse_quadratic_j1: a and c must be positive");
    Real x = a * c;
    Real xk = x * specfun::macdonald_k(1, x).value;
    Real scale = 1 / (a * a * c);
    return {(1 - xk) * scale, (1 + abs(xk)) * scale};
}

inline double inverse_quadratic_j1(double a, double c)
{
    return detail::with_enough_precision(
               [&](auto tag) {
                   using R = decltype(tag);
                   return inverse_quadratic_j1_factored<R>(R(a), R(c));
               },
               "inverse_quadratic_j1")
        .value;
}

//---------------------------------------------------------------------------//
/*!
 * Order-1 integral through the split
 *   (1/(a^2 c)) [int J_1(u) du - int J_1(u) u^2/(u^2+(ac)^2) du],
 * both pieces by quadrature.
 */
template<RealNumber Real>
QuadratureResult<Real>
inverse_quadratic_j1_split(Real a, Real c, Real abs_tol, Real rel_tol = 0)
{
    require(a > 0 && c > 0, "inverse_quadratic_j1: a and c must be positive");
    Real scale = 1 / (a * a * c);
    Real x = a * c;
    Real inner_tol = abs_tol / (2 * scale);
    auto first = oscillatory_integral<Real>(
        Kernel::unit, Real(1), {Real(0), Real(1), Real(0)}, inner_tol, rel_tol);
    auto second = oscillatory_integral<Real>(
        Kernel::quadratic_ratio, Real(1), {x, Real(0), Real(0)}, inner_tol,
        rel_tol);
    QuadratureResult<Real> r;
    r.value = scale * (first.value - second.value);
    r.abs_error_estimate
        = scale * (first.abs_error_estimate + second.abs_error_estimate);
    r.segments_used = first.segments_used + second.segments_used;
    r.converged = first.converged && second.converged;
    return r;
}

//---------------------------------------------------------------------------//
// ANGER ROUTE
//---------------------------------------------------------------------------//
/*!
 * int_0^inf J_nu(x) / (x^2 + a^2) dx for non-integer nu > -1:
 *   pi / (a sin(pi nu)) [sin(pi nu/2) I_nu(a) - Im Jbar_nu(i a)].
 */
template<RealNumber Real>
Real anger_route_integral(Real nu, Real a)
{
    using std::abs;
    require(!specfun::detail::is_integer(nu),
            "anger_route_integral: order must not be an integer");
    require(nu > -1 && nu <= 11,
            "anger_route_integral: order must lie in (-1, 11]");
    require(a > 0, "anger_route_integral: a must be positive");
    Real pi = boost::math::constants::pi<Real>();
    Real g = boost::math::sin_pi(nu / 2) * specfun::bessel_i_real(nu, a).value
             - specfun::anger_jbar_imag_axis(nu, a).value;
    return pi * g / (a * boost::math::sin_pi(nu));
}

//---------------------------------------------------------------------------//
/*!
 * The same combination with the Anger and Bessel functions taken at the
 * real argument a: pi / (a sin(pi nu)) (Jbar_nu(a) - J_nu(a)).
 *
 * This does not reproduce the integral; it is kept so reports can show the
 * size of the discrepancy.
 */
template<RealNumber Real>
Real anger_route_real_axis(Real nu, Real a)
{
    require(!specfun::detail::is_integer(nu),
            "anger_route_real_axis: order must not be an integer");
    require(a > 0, "anger_route_real_axis: a must be positive");
    Real pi = boost::math::constants::pi<Real>();
    Real g = specfun::anger_jbar(nu, a).value
             - specfun::bessel_j_real(nu, a).value;
    return pi * g / (a * boost::math::sin_pi(nu));
}

//---------------------------------------------------------------------------//
/*!
 * Integer-order limit of anger_route_integral by l'Hopital's rule.
 *
 * With g(nu) the bracket, g(k) = 0 and the limit is (-1)^k g'(k) / a;
 * g' comes from a fourth-order central difference with step h.
 */
template<RealNumber Real>
Real anger_route_limit(int k, Real a, Real h = Real(1) / 1024)
{
    require(k >= 0 && k <= 10, "anger_route_limit: order must be in 0..10");
    require(a > 0, "anger_route_limit: a must be positive");
    require(h > 0 && h < Real(1) / 4, "anger_route_limit: step out of range");
    auto g = [a](Real nu) {
        return boost::math::sin_pi(nu / 2)
                   * specfun::bessel_i_real(nu, a).value
               - specfun::anger_jbar_imag_axis(nu, a).value;
    };
    Real kk = k;
    Real d = (-g(kk + 2 * h) + 8 * g(kk + h) - 8 * g(kk - h) + g(kk - 2 * h))
             / (12 * h);
    return (k % 2 == 0 ? d : -d) / a;
}

//---------------------------------------------------------------------------//
// SMALL-ARGUMENT DIAGNOSTICS
//---------------------------------------------------------------------------//
//! Truncated small-argument expansion of I_0(x) - L_0(x) against the truth.
struct ExpansionCheck
{
    double approx;
    double exact;
};

/*!
 * Three-term expansion 1 + x^2/4 - 2x/pi of (2a/pi) int J_0(cr)/(r^2+a^2),
 * x = a c, against the closed form I_0(x) - L_0(x).
 */
inline ExpansionCheck k0_expansion_check(double a, double c)
{
    require(a > 0 && c > 0, "k0_expansion_check: a and c must be positive");
    double x = a * c;
    require(x <= 0.5, "k0_expansion_check: requires a c <= 0.5");
    double pi = boost::math::constants::pi<double>();
    double approx = 1 + x * x / 4 - 2 * x / pi;
    double exact = 2 * a / pi * cauchy_j_integral(0, a, c);
    return {approx, exact};
}

//---------------------------------------------------------------------------//
/*!
 * Small-a behaviour of int J_1(cr)/(r^2+a^2) dr.
 *
 * \c value is the exact integral; \c no_log_prediction is -(2 gamma - 1) c/4,
 * which follows from dropping the logarithm in the small-argument K_1
 * expansion; \c log_asymptote restores it: -(c/2) ln(ac/2) - (2 gamma-1) c/4.
 */
struct Order1SmallA
{
    double a;
    double c;
    double value;
    double no_log_prediction;
    double log_asymptote;
};

inline Order1SmallA order1_small_a(double a, double c)
{
    require(a > 0 && c > 0, "order1_small_a: a and c must be positive");
    double const g = boost::math::constants::euler<double>();
    Order1SmallA r;
    r.a = a;
    r.c = c;
    r.value = cauchy_j_integral(1, a, c);
    r.no_log_prediction = -(2 * g - 1) * c / 4;
    r.log_asymptote = -c / 2 * std::log(a * c / 2) + r.no_log_prediction;
    return r;
}

//---------------------------------------------------------------------------//
}  // namespace flightlab::integrals
