#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "frontlab/errors.hpp"
#include "frontlab/linefit.hpp"

using namespace frontlab;

TEST_CASE("exact line is recovered with zero residual error") {
    std::vector<double> x, y;
    for (int i = 0; i < 10; ++i) {
        x.push_back(0.5 * i);
        y.push_back(3.0 - 2.0 * (0.5 * i));
    }
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(f.intercept == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(f.stderr_slope <= 1e-12);
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.n == 10);
}

TEST_CASE("noisy line: slope within error bars, stderr calibrated") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> x, y;
    for (int i = 0; i < 200; ++i) {
        x.push_back(0.1 * i);
        y.push_back(1.0 + 0.7 * (0.1 * i) + noise(rng));
    }
    const auto f = fit_line(x, y);
    CHECK(std::abs(f.slope - 0.7) <= 4.0 * f.stderr_slope);
    CHECK(f.stderr_slope > 0.0);
    CHECK(f.stderr_slope < 0.01);
    CHECK(f.r_squared > 0.99);
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(fit_line({1.0}, {2.0}), DomainError);
    CHECK_THROWS_AS(fit_line({1.0, 2.0}, {2.0}), DomainError);
    CHECK_THROWS_AS(fit_line({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}), DomainError);
}
