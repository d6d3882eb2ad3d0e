#pragma once

#include <cmath>
#include <vector>

#include "frontlab/speed.hpp"
#include "frontlab/twprofile.hpp"

namespace frontlab::testing {

// Quarter-size domain and short horizon; keeps a unit-test run under a
// second while leaving enough room for fronts at speeds up to ~1.5.
inline LabConfig small_lab(double t_end = 60.0) {
    LabConfig lab;
    lab.grid = make_grid(-100.0, 100.0, 0.25);
    lab.t_end = t_end;
    return lab;
}

// Wave-shaped profile with pure exponential tails:
//   U = 1 - 0.5 e^{1.1 xi} (left),  0.5 e^{-1.3 xi} (right)
//   V = 0.5 e^{0.9 xi}     (left),  1 - 0.5 e^{-0.7 xi} (right)
// Monotone, continuous at 0 with U(0) = V(0) = 0.5, and every decay band
// [1e-6, 1e-2] lies inside the window, so all four tail fits are exact
// log-linear problems with known rates 1.3, 0.7, 0.9, 1.1.
inline WaveProfile synthetic_profile(double c = 0.0, double x_lo = -25.0,
                                     double x_hi = 25.0, double dx = 0.25) {
    WaveProfile w;
    w.c = c;
    const int n = static_cast<int>(std::lround((x_hi - x_lo) / dx)) + 1;
    for (int i = 0; i < n; ++i) {
        const double x = x_lo + i * dx;
        w.xi.push_back(x);
        w.U.push_back(x < 0.0 ? 1.0 - 0.5 * std::exp(1.1 * x)
                              : 0.5 * std::exp(-1.3 * x));
        w.V.push_back(x < 0.0 ? 0.5 * std::exp(0.9 * x)
                              : 1.0 - 0.5 * std::exp(-0.7 * x));
    }
    return w;
}

} // namespace frontlab::testing
