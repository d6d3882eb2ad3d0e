#include "frontlab/linefit.hpp"

#include <cmath>
#include <cstddef>

#include "frontlab/errors.hpp"

namespace frontlab {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("fit_line: size mismatch");
    const size_t n = x.size();
    if (n < 2) throw DomainError("fit_line: need at least two points");

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx <= 0.0) throw DomainError("fit_line: abscissae are all equal");

    LineFit fit;
    fit.n = static_cast<int>(n);
    fit.slope = sxy / sxx;
    fit.intercept = mean_y - fit.slope * mean_x;

    double ss_res = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    ss_res = std::max(ss_res, 0.0);
    fit.r_squared = (syy > 0.0) ? std::max(0.0, 1.0 - ss_res / syy) : 1.0;
    fit.stderr_slope =
        (n > 2) ? std::sqrt(ss_res / (static_cast<double>(n - 2) * sxx)) : 0.0;
    return fit;
}

} // namespace frontlab
