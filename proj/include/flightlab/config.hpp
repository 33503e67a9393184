//----------------------------------*-C++-*----------------------------------//
// Copyright 2026 flightlab developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file flightlab/config.hpp
//! Flat `key = value` run configuration.
//---------------------------------------------------------------------------//
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "charfn.hpp"
#include "walk.hpp"

namespace flightlab
{
//---------------------------------------------------------------------------//
/*!
 * Configuration problem tied to a key (and a line, when the key was
 * present; line 0 means the key is missing).
 */
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string const& key, int line, std::string const& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line)
                                            + ": key '" + key + "': " + message
                                      : "key '" + key + "': " + message)
        , key_(key)
        , line_(line)
    {
    }

    std::string const& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

  private:
    std::string key_;
    int line_;
};

//---------------------------------------------------------------------------//
/*!
 * Parsed configuration.
 *
 * A file with a \c regime key describes a walk and must carry every key
 * that regime needs; a file without one is an experiment-only configuration (for
 * example the identity campaign) and needs only \c seed.
 */
struct RunConfig
{
    std::optional<WalkConfig> walk;
    charfn::GridSpec grid;
    std::optional<double> tol;
    std::vector<long> n_list;
    std::uint64_t seed{0};
    //! Line of each key that was present
    std::map<std::string, int> lines;

    bool has(std::string const& key) const { return lines.count(key) != 0; }
};

inline std::vector<std::string> const& config_keys()
{
    static std::vector<std::string> const keys{
        "regime", "n",           "t",        "mu",       "c1",
        "c2",     "b",           "ensemble_size", "seed", "grid_min",
        "grid_max", "grid_points", "tol",    "n_list",   "retain_limit"};
    return keys;
}

namespace detail
{
inline std::string trim(std::string const& s)
{
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline double parse_real(std::string const& key, int line, std::string const& v)
{
    double out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError(key, line, "expected a finite real, got '" + v + "'");
    return out;
}

template<class Int>
Int parse_integer(std::string const& key, int line, std::string const& v)
{
    Int out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec == std::errc::result_out_of_range)
        throw ConfigError(key, line, "integer out of range: '" + v + "'");
    if (ec != std::errc{} || p != v.data() + v.size())
    {
        // accept integral reals such as 2e5
        double d = 0;
        auto [q, ed] = std::from_chars(v.data(), v.data() + v.size(), d);
        if (ed != std::errc{} || q != v.data() + v.size() || d != std::floor(d)
            || std::abs(d) > 9.0e15)
        {
            throw ConfigError(key, line, "expected an integer, got '" + v + "'");
        }
        if (std::is_unsigned_v<Int> && d < 0)
            throw ConfigError(key, line, "expected a non-negative integer");
        out = static_cast<Int>(d);
    }
    return out;
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Parse `key = value` lines; `#` starts a comment. Unknown and duplicate
 * keys, malformed values and out-of-range values are errors.
 */
inline RunConfig parse_config(std::istream& is)
{
    using detail::parse_integer;
    using detail::parse_real;

    std::map<std::string, std::pair<std::string, int>> raw;
    std::string text;
    int line = 0;
    while (std::getline(is, text))
    {
        ++line;
        if (auto hash = text.find('#'); hash != std::string::npos)
            text.erase(hash);
        text = detail::trim(text);
        if (text.empty())
            continue;
        auto eq = text.find('=');
        if (eq == std::string::npos)
            throw ConfigError(detail::trim(text), line, "expected 'key = value'");
        std::string key = detail::trim(text.substr(0, eq));
        std::string value = detail::trim(text.substr(eq + 1));
        bool known = false;
        for (auto const& k : config_keys())
            known = known || k == key;
        if (!known)
            throw ConfigError(key, line, "unknown key");
        if (value.empty())
            throw ConfigError(key, line, "missing value");
        if (raw.count(key))
            throw ConfigError(key, line, "duplicate key");
        raw[key] = {value, line};
    }

    RunConfig cfg;
    for (auto const& [k, v] : raw)
        cfg.lines[k] = v.second;

    auto real = [&](std::string const& key) -> std::optional<double> {
        auto it = raw.find(key);
        if (it == raw.end())
            return std::nullopt;
        return parse_real(key, it->second.second, it->second.first);
    };
    auto positive = [&](std::string const& key) -> std::optional<double> {
        auto v = real(key);
        if (v && !(*v > 0))
            throw ConfigError(key, raw[key].second, "must be positive");
        return v;
    };
    auto non_negative = [&](std::string const& key) -> std::optional<double> {
        auto v = real(key);
        if (v && !(*v >= 0))
            throw ConfigError(key, raw[key].second, "must be non-negative");
        return v;
    };
    auto count = [&](std::string const& key) -> std::optional<long> {
        auto it = raw.find(key);
        if (it == raw.end())
            return std::nullopt;
        long v = parse_integer<long>(key, it->second.second, it->second.first);
        if (v < 1)
            throw ConfigError(key, it->second.second, "must be positive");
        return v;
    };
    auto missing = [](std::string const& key) {
        return ConfigError(key, 0, "missing required key");
    };

    // seed is mandatory so every output is reproducible
    if (!raw.count("seed"))
        throw missing("seed");
    cfg.seed = parse_integer<std::uint64_t>("seed", raw["seed"].second,
                                            raw["seed"].first);

    if (auto v = positive("tol"))
        cfg.tol = *v;
    if (auto it = raw.find("n_list"); it != raw.end())
    {
        std::string s = it->second.first;
        for (char& ch : s)
            ch = (ch == ',') ? ' ' : ch;
        std::istringstream items(s);
        std::string item;
        while (items >> item)
        {
            long v = parse_integer<long>("n_list", it->second.second, item);
            if (v < 1)
                throw ConfigError("n_list", it->second.second,
                                  "entries must be positive");
            cfg.n_list.push_back(v);
        }
        if (cfg.n_list.empty())
            throw ConfigError("n_list", it->second.second, "empty list");
    }
    if (auto v = real("grid_min"))
        cfg.grid.min = *v;
    if (auto v = real("grid_max"))
        cfg.grid.max = *v;
    if (auto v = count("grid_points"))
    {
        if (*v < 2 || *v > 1001)
            throw ConfigError("grid_points", raw["grid_points"].second,
                              "must lie in [2, 1001]");
        cfg.grid.points = static_cast<int>(*v);
    }
    if (!(cfg.grid.max > cfg.grid.min))
    {
        std::string key = raw.count("grid_max") ? "grid_max" : "grid_min";
        throw ConfigError(key, raw.count(key) ? raw[key].second : 0,
                          "grid_max must exceed grid_min");
    }

    auto regime_it = raw.find("regime");
    if (regime_it == raw.end())
    {
        for (char const* k : {"n", "t", "mu", "c1", "c2", "b", "ensemble_size",
                              "retain_limit"})
        {
            if (raw.count(k))
                throw ConfigError(k, raw[k].second,
                                  "walk parameter given without 'regime'");
        }
        return cfg;
    }

    WalkConfig w;
    std::string const& rname = regime_it->second.first;
    if (rname == "exponential")
        w.regime = Regime::exponential;
    else if (rname == "folded_cauchy" || rname == "cauchy")
        w.regime = Regime::folded_cauchy;
    else
        throw ConfigError("regime", regime_it->second.second,
                          "expected 'exponential' or 'folded_cauchy', got '"
                              + rname + "'");

    std::vector<std::string> needed{"n", "c1", "c2", "ensemble_size"};
    if (w.regime == Regime::exponential)
    {
        needed.insert(needed.end(), {"t", "mu"});
        if (raw.count("b"))
            throw ConfigError("b", raw["b"].second,
                              "not used by the exponential regime");
    }
    else
    {
        needed.push_back("b");
        for (char const* k : {"t", "mu"})
        {
            if (raw.count(k))
                throw ConfigError(k, raw[k].second,
                                  "not used by the folded_cauchy regime");
        }
    }
    for (auto const& k : needed)
    {
        if (!raw.count(k))
            throw missing(k);
    }

    w.n = *count("n");
    w.ensemble_size = *count("ensemble_size");
    w.c1 = *non_negative("c1");
    w.c2 = *non_negative("c2");
    w.t = positive("t");
    w.mu = positive("mu");
    w.b = positive("b");
    w.seed = cfg.seed;
    if (auto it = raw.find("retain_limit"); it != raw.end())
    {
        long v = parse_integer<long>("retain_limit", it->second.second,
                                     it->second.first);
        if (v < 0)
            throw ConfigError("retain_limit", it->second.second,
                              "must be non-negative");
        w.retain_limit = v;
    }
    validate(w);
    cfg.walk = w;
    return cfg;
}

inline RunConfig parse_config_text(std::string const& text)
{
    std::istringstream is(text);
    return parse_config(is);
}

//! Parse a configuration file; a missing file is a ConfigError on "path".
inline RunConfig parse_config_file(std::filesystem::path const& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("path", 0, "cannot open '" + path.string() + "'");
    return parse_config(is);
}

//---------------------------------------------------------------------------//
}  // namespace flightlab
