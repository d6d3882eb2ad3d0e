#pragma once

#include <cmath>
#include <sstream>

#include "frontlab/errors.hpp"

namespace frontlab {

/// Uniform node-centered 1-D grid on [x_min, x_max] with n nodes.
/// Node i sits at x_min + i * dx() with dx() = (x_max - x_min) / (n - 1).
struct Grid1D {
    double x_min = -200.0;
    double x_max = 200.0;
    int n = 1601;

    double dx() const { return (x_max - x_min) / static_cast<double>(n - 1); }
    double node(int i) const { return x_min + static_cast<double>(i) * dx(); }
    double span() const { return x_max - x_min; }

    /// Throws DomainError unless x_min < x_max and n >= 8.
    void validate() const {
        if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max) ||
            n < 8) {
            std::ostringstream msg;
            msg << "grid requires x_min < x_max and n >= 8, got [" << x_min
                << ", " << x_max << "] n=" << n;
            throw DomainError(msg.str());
        }
    }
};

/// Builds a grid from a target spacing; n is rounded so the span divides evenly.
inline Grid1D make_grid(double x_min, double x_max, double dx) {
    if (!(std::isfinite(dx) && dx > 0.0)) {
        throw DomainError("make_grid: dx must be positive");
    }
    Grid1D g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n = static_cast<int>(std::lround((x_max - x_min) / dx)) + 1;
    g.validate();
    return g;
}

} // namespace frontlab
