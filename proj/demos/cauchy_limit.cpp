//---------------------------------------------------------------------------//
//! \file demos/cauchy_limit.cpp
//! Distance of the n-fold folded-Cauchy step CF from its limit.
//---------------------------------------------------------------------------//
#include <algorithm>
#include <cstdio>

#include "flightlab/charfn.hpp"

int main()
{
    using namespace flightlab;
    using namespace flightlab::charfn;

    double const b = 1, c1 = 0.5, c2 = 1.5;
    std::printf("%8s %12s %12s\n", "n", "|phi^n - L|", "doubled var");
    for (long n : {100L, 300L, 1000L, 3000L, 10000L})
    {
        WalkConfig cfg;
        cfg.regime = Regime::folded_cauchy;
        cfg.n = n;
        cfg.b = b;
        cfg.c1 = c1;
        cfg.c2 = c2;
        auto p = resolve_scaling(cfg);
        double d = 0, dd = 0;
        for (double a : grid_axis({}))
            for (double be : grid_axis({}))
            {
                auto v = cf_power(step_cf_cauchy(a, be, p).value, n);
                d = std::max(d, std::abs(v - limit_cf_gauss_cauchy(a, be, b, c1, c2)));
                dd = std::max(dd, std::abs(v - limit_cf_gauss_cauchy_doubled_variance(
                                                   a, be, b, c1, c2)));
            }
        std::printf("%8ld %12.5f %12.5f\n", n, d, dd);
    }
    return 0;
}
