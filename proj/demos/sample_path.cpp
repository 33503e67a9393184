//---------------------------------------------------------------------------//
//! \file demos/sample_path.cpp
//! Print one exponential-regime sample path and the ensemble variances.
//---------------------------------------------------------------------------//
#include <iostream>

#include "flightlab/walk.hpp"

int main()
{
    using namespace flightlab;

    WalkConfig cfg;
    cfg.regime = Regime::exponential;
    cfg.n = 200;
    cfg.t = 1;
    cfg.mu = 1;
    cfg.c1 = 1;
    cfg.c2 = 2;
    cfg.ensemble_size = 50000;
    cfg.seed = 11;

    RngStream rng(cfg.seed, 0);
    auto path = trace_walk(resolve_scaling(cfg), cfg.n, rng);
    std::cout << "step,x,y\n";
    for (std::size_t i = 0; i < path.size(); i += 20)
        std::cout << i << ',' << format_real(path[i].x) << ','
                  << format_real(path[i].y) << '\n';

    auto sum = run_ensemble(cfg, false);
    std::cout << "var_x " << sum.var_x << " +- " << sum.se_var_x << '\n'
              << "var_y " << sum.var_y << " +- " << sum.se_var_y << '\n';
    return 0;
}
