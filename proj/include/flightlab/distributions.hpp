//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file flightlab/distributions.hpp
//! Counter-based random streams, inverse-CDF samplers and densities.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstddef>
#include <numbers>
#include <vector>

#include "common.hpp"

namespace flightlab
{
//---------------------------------------------------------------------------//
//! SplitMix64 output function (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

//---------------------------------------------------------------------------//
/*!
 * Counter-based stream of uniforms.
 *
 * Stream k of seed s has key = mix64(mix64(s) + golden * (k + 1)); draw i is
 * mix64(key + golden * (i + 1)). Uniforms keep the top 53 bits, so they lie
 * in [0, 1).
 */
class RngStream
{
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_index) noexcept
        : seed_(seed)
        , stream_index_(stream_index)
        , key_(mix64(mix64(seed) + golden_gamma * (stream_index + 1)))
    {
    }

    std::uint64_t next_u64() noexcept
    {
        ++counter_;
        return mix64(key_ + golden_gamma * counter_);
    }

    double uniform() noexcept
    {
        return static_cast<double>(this->next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_index() const noexcept { return stream_index_; }
    std::uint64_t draws() const noexcept { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_index_;
    std::uint64_t key_;
    std::uint64_t counter_{0};
};

//---------------------------------------------------------------------------//
//! Anything that hands out uniforms on [0, 1).
template<class S>
concept UniformSource = requires(S& s) {
    { s.uniform() } -> std::convertible_to<double>;
};

//---------------------------------------------------------------------------//
/*!
 * Replays a fixed list of uniforms (cycling), for exact sampler tests.
 */
class ForcedUniforms
{
  public:
    explicit ForcedUniforms(std::vector<double> values)
        : values_(std::move(values))
    {
        require(!values_.empty(), "ForcedUniforms: need at least one value");
        for (double u : values_)
            require(u >= 0 && u < 1, "ForcedUniforms: values must be in [0,1)");
    }

    double uniform() noexcept
    {
        double u = values_[next_ % values_.size()];
        ++next_;
        return u;
    }

  private:
    std::vector<double> values_;
    std::size_t next_{0};
};

//---------------------------------------------------------------------------//
// QUANTILES AND CDFS
//---------------------------------------------------------------------------//
inline double exponential_quantile(double u, double rate)
{
    require(rate > 0, "exponential: rate must be positive");
    return -std::log1p(-u) / rate;
}

inline double folded_cauchy_cdf(double r, double scale_a)
{
    require(scale_a > 0, "folded_cauchy: scale must be positive");
    if (r <= 0)
        return 0;
    return 2 / std::numbers::pi * std::atan(r / scale_a);
}

inline double folded_cauchy_quantile(double u, double scale_a)
{
    require(scale_a > 0, "folded_cauchy: scale must be positive");
    return scale_a * std::tan(std::numbers::pi / 2 * u);
}

//! P(radius <= r) for the circular Cauchy law with shape b.
inline double circular_cauchy_radial_cdf(double r, double shape_b)
{
    require(shape_b > 0, "circular_cauchy: shape must be positive");
    if (r <= 0)
        return 0;
    return 1 - shape_b / std::hypot(shape_b, r);
}

inline double circular_cauchy_radius_quantile(double u, double shape_b)
{
    require(shape_b > 0, "circular_cauchy: shape must be positive");
    // (1-u)^-2 - 1 = u (2 - u) / (1 - u)^2
    double v = 1 - u;
    return shape_b * std::sqrt(u * (2 - u)) / v;
}

//---------------------------------------------------------------------------//
// SAMPLERS
//---------------------------------------------------------------------------//
template<UniformSource S>
double sample_exponential(double rate, S& rng)
{
    require(rate > 0, "sample_exponential: rate must be positive");
    return exponential_quantile(rng.uniform(), rate);
}

template<UniformSource S>
double sample_folded_cauchy(double scale_a, S& rng)
{
    require(scale_a > 0, "sample_folded_cauchy: scale must be positive");
    return folded_cauchy_quantile(rng.uniform(), scale_a);
}

template<UniformSource S>
double sample_uniform_angle(S& rng)
{
    return 2 * std::numbers::pi * rng.uniform();
}

struct Point2
{
    double x;
    double y;
};

//! Radius from the first uniform, angle from the second.
template<UniformSource S>
Point2 sample_circular_cauchy(double shape_b, S& rng)
{
    require(shape_b > 0, "sample_circular_cauchy: shape must be positive");
    double r = circular_cauchy_radius_quantile(rng.uniform(), shape_b);
    double theta = sample_uniform_angle(rng);
    return {r * std::cos(theta), r * std::sin(theta)};
}

//---------------------------------------------------------------------------//
// DENSITIES
//---------------------------------------------------------------------------//
inline double folded_cauchy_pdf(double r, double scale_a)
{
    require(scale_a > 0, "folded_cauchy_pdf: scale must be positive");
    require(r >= 0, "folded_cauchy_pdf: r must be non-negative");
    return 2 / std::numbers::pi * scale_a / (r * r + scale_a * scale_a);
}

inline double circular_cauchy_pdf(double x1, double x2, double shape_b)
{
    require(shape_b > 0, "circular_cauchy_pdf: shape must be positive");
    double s = shape_b * shape_b + x1 * x1 + x2 * x2;
    return shape_b / (2 * std::numbers::pi * s * std::sqrt(s));
}

//---------------------------------------------------------------------------//
}  // namespace flightlab
