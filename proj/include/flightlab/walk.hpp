//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file flightlab/walk.hpp
//! Step scaling, single walks and deterministic parallel ensembles.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "common.hpp"
#include "distributions.hpp"

namespace flightlab
{
//---------------------------------------------------------------------------//
enum class Regime
{
    exponential,
    folded_cauchy,
};

inline char const* to_string(Regime r)
{
    return r == Regime::exponential ? "exponential" : "folded_cauchy";
}

//---------------------------------------------------------------------------//
/*!
 * Walk configuration.
 *
 * The exponential regime needs t and mu, the folded-Cauchy regime needs b;
 * both use the asymmetry constants c1, c2.
 */
struct WalkConfig
{
    Regime regime{Regime::exponential};
    long n{1};
    std::optional<double> t;
    std::optional<double> mu;
    double c1{0};
    double c2{0};
    std::optional<double> b;
    long ensemble_size{1};
    std::uint64_t seed{0};
    //! Maximum number of endpoints an ensemble may keep in memory
    long retain_limit{1000000};
};

inline void validate(WalkConfig const& c)
{
    require(c.n >= 1, "config: n must be at least 1");
    require(c.ensemble_size >= 1, "config: ensemble_size must be at least 1");
    require(std::isfinite(c.c1) && c.c1 >= 0,
            "config: c1 must be finite and non-negative");
    require(std::isfinite(c.c2) && c.c2 >= 0,
            "config: c2 must be finite and non-negative");
    require(c.retain_limit >= 0, "config: retain_limit must be non-negative");
    if (c.regime == Regime::exponential)
    {
        require(c.t.has_value(), "config: exponential regime requires t");
        require(c.mu.has_value(), "config: exponential regime requires mu");
        require(std::isfinite(*c.t) && *c.t > 0, "config: t must be positive");
        require(std::isfinite(*c.mu) && *c.mu > 0,
                "config: mu must be positive");
    }
    else
    {
        require(c.b.has_value(), "config: folded_cauchy regime requires b");
        require(std::isfinite(*c.b) && *c.b > 0, "config: b must be positive");
    }
}

//---------------------------------------------------------------------------//
//! Per-step law at a given n.
struct StepParams
{
    Regime regime{Regime::exponential};
    //! Exponential rate mu_n, or folded-Cauchy scale a_n
    double rate_or_scale{1};
    double delta1{0};
    double delta2{0};
};

inline void validate(StepParams const& p)
{
    require(std::isfinite(p.rate_or_scale) && p.rate_or_scale > 0,
            "step params: rate or scale must be positive");
    require(std::isfinite(p.delta1) && p.delta1 >= 0,
            "step params: delta1 must be non-negative");
    require(std::isfinite(p.delta2) && p.delta2 >= 0,
            "step params: delta2 must be non-negative");
}

/*!
 * Scale the step law with n.
 *
 * Exponential: mu_n = (mu/t) sqrt(n), so that n E X^2 stays fixed.
 * Folded Cauchy: a_n = pi b / (2n). Displacements: delta_i = c_i / sqrt(n).
 */
inline StepParams resolve_scaling(WalkConfig const& c)
{
    validate(c);
    StepParams p;
    p.regime = c.regime;
    double root_n = std::sqrt(static_cast<double>(c.n));
    if (c.regime == Regime::exponential)
    {
        p.rate_or_scale = *c.mu / *c.t * root_n;
    }
    else
    {
        p.rate_or_scale = std::numbers::pi * *c.b / (2 * static_cast<double>(c.n));
    }
    p.delta1 = c.c1 / root_n;
    p.delta2 = c.c2 / root_n;
    return p;
}

//---------------------------------------------------------------------------//
struct Step
{
    double x;
    double y;
    double length;
    double theta;
};

inline Step step_from_draws(StepParams const& p, double length, double theta)
{
    double c = std::cos(theta);
    double s = std::sin(theta);
    return {(length + p.delta1) * c, (length + p.delta2) * s, length, theta};
}

inline double step_length_quantile(StepParams const& p, double u)
{
    return p.regime == Regime::exponential
               ? exponential_quantile(u, p.rate_or_scale)
               : folded_cauchy_quantile(u, p.rate_or_scale);
}

//! Two uniforms per step: length first, then angle.
template<UniformSource S>
Step sample_step(StepParams const& p, S& rng)
{
    double length = step_length_quantile(p, rng.uniform());
    double theta = sample_uniform_angle(rng);
    return step_from_draws(p, length, theta);
}

//---------------------------------------------------------------------------//
/*!
 * Endpoint of one walk with its flight/displacement split:
 * u = sum R cos, t_comp = delta1 sum cos, v = sum R sin, s_comp = delta2 sum
 * sin. The position is defined as x = u + t_comp, y = v + s_comp.
 */
struct WalkEndpoint
{
    double x{0};
    double y{0};
    double u{0};
    double t_comp{0};
    double v{0};
    double s_comp{0};
};

template<UniformSource S>
WalkEndpoint run_walk(StepParams const& p, long n, S& rng)
{
    require(n >= 1, "run_walk: n must be at least 1");
    NeumaierSum<double> u, v, cos_sum, sin_sum;
    for (long j = 0; j < n; ++j)
    {
        double length = step_length_quantile(p, rng.uniform());
        double theta = sample_uniform_angle(rng);
        double c = std::cos(theta);
        double s = std::sin(theta);
        u.add(length * c);
        v.add(length * s);
        cos_sum.add(c);
        sin_sum.add(s);
    }
    WalkEndpoint e;
    e.u = u.value();
    e.v = v.value();
    e.t_comp = p.delta1 * cos_sum.value();
    e.s_comp = p.delta2 * sin_sum.value();
    e.x = e.u + e.t_comp;
    e.y = e.v + e.s_comp;
    return e;
}

//! Positions after each step (step 0 is the origin), for plotting.
template<UniformSource S>
std::vector<Step> trace_walk(StepParams const& p, long n, S& rng)
{
    require(n >= 1, "trace_walk: n must be at least 1");
    std::vector<Step> path;
    path.reserve(static_cast<std::size_t>(n) + 1);
    path.push_back({0, 0, 0, 0});
    double x = 0, y = 0;
    for (long j = 0; j < n; ++j)
    {
        Step s = sample_step(p, rng);
        x += s.x;
        y += s.y;
        path.push_back({x, y, s.length, s.theta});
    }
    return path;
}

//---------------------------------------------------------------------------//
// ENSEMBLES
//---------------------------------------------------------------------------//
/*!
 * Compensated power sums of (x, y) up to total degree four.
 */
class PowerSums
{
  public:
    void add(double x, double y)
    {
        double x2 = x * x, y2 = y * y;
        ++count_;
        s_[0].add(x);
        s_[1].add(y);
        s_[2].add(x2);
        s_[3].add(y2);
        s_[4].add(x * y);
        s_[5].add(x2 * x);
        s_[6].add(y2 * y);
        s_[7].add(x2 * x2);
        s_[8].add(y2 * y2);
        s_[9].add(x2 * y2);
        s_[10].add(x2 * y);
        s_[11].add(x * y2);
    }

    void merge(PowerSums const& other)
    {
        count_ += other.count_;
        for (std::size_t i = 0; i < s_.size(); ++i)
            s_[i].merge(other.s_[i]);
    }

    long count() const { return count_; }

    //! Raw sample moment E[x^i y^j] for i + j <= 4
    double raw(int i, int j) const
    {
        static constexpr int index[5][5] = {{-1, 1, 3, 6, 8},
                                            {0, 4, 11, -1, -1},
                                            {2, 10, 9, -1, -1},
                                            {5, -1, -1, -1, -1},
                                            {7, -1, -1, -1, -1}};
        int k = index[i][j];
        require(k >= 0, "PowerSums: moment not tracked");
        return s_[k].value() / static_cast<double>(count_);
    }

  private:
    long count_{0};
    std::array<NeumaierSum<double>, 12> s_{};
};

//---------------------------------------------------------------------------//
/*!
 * Sample statistics of an ensemble of endpoints.
 *
 * Variances and covariance are unbiased. Standard errors of the variances
 * and the covariance use the sample fourth moments.
 */
struct EnsembleSummary
{
    long count{0};
    double mean_x{0};
    double mean_y{0};
    double var_x{std::numeric_limits<double>::quiet_NaN()};
    double var_y{std::numeric_limits<double>::quiet_NaN()};
    double cov_xy{std::numeric_limits<double>::quiet_NaN()};
    double se_mean_x{std::numeric_limits<double>::quiet_NaN()};
    double se_mean_y{std::numeric_limits<double>::quiet_NaN()};
    double se_var_x{std::numeric_limits<double>::quiet_NaN()};
    double se_var_y{std::numeric_limits<double>::quiet_NaN()};
    double se_cov_xy{std::numeric_limits<double>::quiet_NaN()};
    std::vector<WalkEndpoint> retained_endpoints;

    //! Sample variances need at least two walks
    bool variance_defined() const { return count >= 2; }
};

inline EnsembleSummary summarize(PowerSums const& s)
{
    EnsembleSummary out;
    out.count = s.count();
    if (out.count == 0)
        return out;
    double m = static_cast<double>(out.count);
    double mx = s.raw(1, 0), my = s.raw(0, 1);
    out.mean_x = mx;
    out.mean_y = my;
    if (out.count < 2)
        return out;

    // central moments
    double cxx = s.raw(2, 0) - mx * mx;
    double cyy = s.raw(0, 2) - my * my;
    double cxy = s.raw(1, 1) - mx * my;
    double c4x = s.raw(4, 0) - 4 * mx * s.raw(3, 0) + 6 * mx * mx * s.raw(2, 0)
                 - 3 * mx * mx * mx * mx;
    double c4y = s.raw(0, 4) - 4 * my * s.raw(0, 3) + 6 * my * my * s.raw(0, 2)
                 - 3 * my * my * my * my;
    double c22 = s.raw(2, 2) - 2 * my * s.raw(2, 1) - 2 * mx * s.raw(1, 2)
                 + my * my * s.raw(2, 0) + mx * mx * s.raw(0, 2)
                 + 4 * mx * my * s.raw(1, 1) - 3 * mx * mx * my * my;

    double bessel = m / (m - 1);
    out.var_x = std::max(0.0, cxx * bessel);
    out.var_y = std::max(0.0, cyy * bessel);
    out.cov_xy = cxy * bessel;
    out.se_mean_x = std::sqrt(out.var_x / m);
    out.se_mean_y = std::sqrt(out.var_y / m);
    auto se_var = [m](double c4, double var) {
        double q = c4 - var * var * (m - 3) / (m - 1);
        return std::sqrt(std::max(0.0, q) / m);
    };
    out.se_var_x = se_var(c4x, out.var_x);
    out.se_var_y = se_var(c4y, out.var_y);
    out.se_cov_xy = std::sqrt(std::max(0.0, c22 - cxy * cxy) / m);
    return out;
}

//---------------------------------------------------------------------------//
//! Walks per reduction chunk; fixed so results do not depend on threading.
inline constexpr long ensemble_chunk = 4096;

/*!
 * Run config.ensemble_size walks; walk m draws from stream m of config.seed.
 *
 * Chunks of walks are reduced independently and merged in chunk order, so
 * the summary is bit-identical for any thread count.
 */
inline EnsembleSummary
run_ensemble(WalkConfig const& config, bool retain, unsigned threads = 0)
{
    StepParams p = resolve_scaling(config);
    long const m = config.ensemble_size;
    if (retain)
    {
        require(m <= config.retain_limit,
                "run_ensemble: ensemble_size exceeds retain_limit");
    }
    long const chunks = (m + ensemble_chunk - 1) / ensemble_chunk;
    std::vector<PowerSums> partial(static_cast<std::size_t>(chunks));
    std::vector<WalkEndpoint> kept(retain ? static_cast<std::size_t>(m) : 0);

    std::atomic<long> next{0};
    auto worker = [&] {
        for (long ch = next++; ch < chunks; ch = next++)
        {
            long lo = ch * ensemble_chunk;
            long hi = std::min(m, lo + ensemble_chunk);
            PowerSums& sums = partial[static_cast<std::size_t>(ch)];
            for (long w = lo; w < hi; ++w)
            {
                RngStream rng(config.seed, static_cast<std::uint64_t>(w));
                WalkEndpoint e = run_walk(p, config.n, rng);
                sums.add(e.x, e.y);
                if (retain)
                    kept[static_cast<std::size_t>(w)] = e;
            }
        }
    };

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(
        std::min<long>(static_cast<long>(threads), chunks));
    if (threads <= 1)
    {
        worker();
    }
    else
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(worker);
    }

    PowerSums total;
    for (auto const& s : partial)
        total.merge(s);
    EnsembleSummary out = summarize(total);
    out.retained_endpoints = std::move(kept);
    return out;
}

//---------------------------------------------------------------------------//
inline void write_endpoints_csv(std::ostream& os,
                                std::vector<WalkEndpoint> const& endpoints)
{
    os << "walk_index,x,y,u,t_comp,v,s_comp\n";
    for (std::size_t i = 0; i < endpoints.size(); ++i)
    {
        auto const& e = endpoints[i];
        os << i << ',' << format_real(e.x) << ',' << format_real(e.y) << ','
           << format_real(e.u) << ',' << format_real(e.t_comp) << ','
           << format_real(e.v) << ',' << format_real(e.s_comp) << '\n';
    }
}

//---------------------------------------------------------------------------//
}  // namespace flightlab
