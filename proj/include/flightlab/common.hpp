//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file flightlab/common.hpp
//! Error types, compensated summation and small numeric helpers.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace flightlab
{
//---------------------------------------------------------------------------//
/*!
 * Argument outside an operation's documented domain.
 */
class DomainError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//---------------------------------------------------------------------------//
/*!
 * An iterative or quadrature routine failed to reach its tolerance.
 *
 * Carries the best estimate obtained and the error that was achieved so the
 * caller can decide whether the partial result is still useful.
 */
class ConvergenceError : public std::runtime_error
{
  public:
    ConvergenceError(std::string const& what,
                     double best_estimate,
                     double achieved_error)
        : std::runtime_error(what)
        , best_estimate_(best_estimate)
        , achieved_error_(achieved_error)
    {
    }

    double best_estimate() const noexcept { return best_estimate_; }
    double achieved_error() const noexcept { return achieved_error_; }

  private:
    double best_estimate_;
    double achieved_error_;
};

//---------------------------------------------------------------------------//
inline void require(bool condition, char const* message)
{
    if (!condition)
    {
        throw DomainError(message);
    }
}

//---------------------------------------------------------------------------//
/*!
 * Neumaier (improved Kahan) summation.
 *
 * Works for any type with the usual arithmetic operators, including
 * std::complex and multiprecision reals.
 */
template<class T>
class NeumaierSum
{
  public:
    NeumaierSum() = default;

    void add(T const& term)
    {
        using std::abs;
        T t = sum_ + term;
        if (abs(sum_) >= abs(term))
        {
            comp_ += (sum_ - t) + term;
        }
        else
        {
            comp_ += (term - t) + sum_;
        }
        sum_ = t;
    }

    //! Fold another partial sum into this one (order-dependent, deterministic)
    void merge(NeumaierSum const& other)
    {
        this->add(other.sum_);
        comp_ += other.comp_;
    }

    NeumaierSum& operator+=(T const& term)
    {
        this->add(term);
        return *this;
    }

    T value() const { return sum_ + comp_; }

  private:
    T sum_{0};
    T comp_{0};
};

//---------------------------------------------------------------------------//
//! Shortest round-trip decimal representation used in every CSV/JSON file.
inline std::string format_real(double value)
{
    if (std::isnan(value))
    {
        return "nan";
    }
    if (std::isinf(value))
    {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

//---------------------------------------------------------------------------//
} // namespace flightlab
