#pragma once

#include <vector>

namespace frontlab {

/// Ordinary least-squares line y = intercept + slope * x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0; ///< standard error of the slope (0 when n = 2)
    double r_squared = 1.0;
    int n = 0;
};

/// Fits a line through the points. Throws DomainError when fewer than two
/// points are given or the abscissae are all equal.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace frontlab
