#include <doctest.h>

#include <cmath>

#include "frontlab/speed.hpp"
#include "test_helpers.hpp"

using namespace frontlab;
using frontlab::testing::small_lab;

TEST_CASE("effective dt clamps to the stability bound") {
    LabConfig lab = small_lab();
    const ModelParams stiff{1.5, 2.0, 1.0, 4.0};
    CHECK(lab.effective_dt(stiff) <
          lab.scheme.dt); // diffusion-limited below the requested 0.01
    CHECK(lab.effective_dt(stiff) <=
          max_stable_dt(stiff, lab.grid, lab.scheme.scheme));
    const ModelParams mild{2.0, 2.0, 1.0, 1.0};
    CHECK(lab.effective_dt(mild) == lab.scheme.dt);
}

TEST_CASE("symmetric competition drifts at numerically zero speed") {
    const auto est = estimate_wave_speed_signed({2.0, 2.0, 1.0, 1.0}, small_lab());
    CHECK(std::abs(est.value) <= 0.02);
    CHECK(est.method == Method::InterfaceDrift);
    CHECK(est.samples_used >= 8);
    CHECK(est.std_err >= 0.0);
    CHECK(est.t_start >= 0.0);
    CHECK(est.t_end <= 60.0 + 1e-9);
    CHECK_FALSE(est.flagged);
}

TEST_CASE("interface drift signs follow the competition asymmetry") {
    const auto plus = estimate_wave_speed_signed({2.0, 3.0, 1.0, 1.0}, small_lab());
    CHECK(plus.value > 2.0 * plus.std_err);
    const auto minus = estimate_wave_speed_signed({3.0, 2.0, 1.0, 1.0}, small_lab());
    CHECK(minus.value < -2.0 * minus.std_err);
    CHECK_THROWS_AS(estimate_wave_speed_signed({0.5, 2.0, 1.0, 1.0}, small_lab()),
                    RegimeError);
}

TEST_CASE("doubling the horizon leaves the zero-case estimate within error") {
    const auto e1 = estimate_wave_speed_signed({2.0, 2.0, 1.0, 1.0}, small_lab(50.0));
    const auto e2 = estimate_wave_speed_signed({2.0, 2.0, 1.0, 1.0}, small_lab(100.0));
    CHECK(std::abs(e1.value - e2.value) <= e1.std_err + e2.std_err + 1e-12);
}

TEST_CASE("weak-competition invasion runs at the linear speed") {
    LabConfig lab;
    lab.grid = make_grid(-150.0, 150.0, 0.25);
    lab.t_end = 80.0;
    const auto est = estimate_spreading_speed({0.5, 1.5, 0.2, 1.0}, lab);
    const double target = linear_speed(0.5);
    CHECK(std::abs(est.value - target) / target < 0.05);
    CHECK(est.method == Method::InvasionFront);
    CHECK(est.value > 0.0);
}

TEST_CASE("overwhelming competition extinguishes the invader") {
    CHECK_THROWS_AS(estimate_spreading_speed({50.0, 2.0, 1.0, 1.0}, small_lab()),
                    ExtinctionError);
}

TEST_CASE("invasion estimation rejects out-of-scope and short windows") {
    CHECK_THROWS_AS(estimate_spreading_speed({0.5, 0.5, 1.0, 1.0}, small_lab()),
                    RegimeError);
    CHECK_THROWS_AS(estimate_wave_speed_signed({2.0, 2.0, 1.0, 1.0}, small_lab(2.0)),
                    WindowError);
}

TEST_CASE("sign probe prefers the closed form and measures otherwise") {
    const auto closed = probe_sign_of_wave_speed({2.0, 3.0, 1.0, 1.0}, small_lab());
    CHECK(closed.sign.value == SignValue::Positive);
    CHECK(closed.sign.source == SignSource::ClosedForm);
    CHECK_FALSE(closed.estimate.has_value());

    // No comparison clause decides (1.2, 2, 3, 1); the probe must simulate.
    const auto numeric = probe_sign_of_wave_speed({1.2, 2.0, 3.0, 1.0}, small_lab());
    CHECK(numeric.sign.source == SignSource::Numeric);
    CHECK(numeric.estimate.has_value());
    CHECK(numeric.sign.value != SignValue::Unknown);
}

TEST_CASE("threshold search lands on the closed-form crossing") {
    LabConfig lab = small_lab();
    lab.tol_a = 0.05;
    const auto res = find_sign_threshold(1.5, 3.0, 2.0, 1.0, 1.0, lab);
    CHECK(res.a_star >= 1.9);
    CHECK(res.a_star <= 2.1);
    CHECK(res.bracket_hi - res.bracket_lo <= lab.tol_a + 1e-12);
    CHECK(res.monotone_ok);
    CHECK(res.evaluations.size() >= 3);
    // Equal kinetics: every probe is decided by the closed form.
    for (const auto& ev : res.evaluations)
        CHECK(ev.sign.source == SignSource::ClosedForm);
}

TEST_CASE("threshold search stops exactly on a zero probe") {
    const auto res = find_sign_threshold(1.5, 2.5, 2.0, 1.0, 1.0, small_lab());
    CHECK(res.a_star == 2.0); // first bisection midpoint is the exact crossing
}

TEST_CASE("threshold search validates its bracket") {
    CHECK_THROWS_AS(find_sign_threshold(2.5, 3.0, 2.0, 1.0, 1.0, small_lab()),
                    BracketError);
    CHECK_THROWS_AS(find_sign_threshold(3.0, 1.5, 2.0, 1.0, 1.0, small_lab()),
                    DomainError);
}

TEST_CASE("speed scan crosses the regime boundary coherently") {
    const auto scan =
        continuity_scan({0.95, 1.0, 1.05}, 2.0, 1.0, 1.0, small_lab());
    REQUIRE(scan.entries.size() == 3);
    CHECK(scan.entries[0].a == 0.95);
    CHECK(scan.entries[1].a == 1.0);
    CHECK(scan.entries[0].estimate.value > scan.entries[2].estimate.value);
    CHECK(scan.monotone_ok);
    CHECK(scan.methods_agree);
    CHECK(scan.entries[1].secondary.has_value()); // both methods at a = 1
    CHECK_FALSE(scan.entries[0].secondary.has_value());
    CHECK(scan.max_adjacent_jump < 0.15);
    CHECK(scan.max_adjacent_jump > 0.0);
}

TEST_CASE("single-point scan is degenerate but well formed") {
    const auto scan = continuity_scan({1.2}, 2.0, 1.0, 1.0, small_lab());
    CHECK(scan.entries.size() == 1);
    CHECK(scan.max_adjacent_jump == 0.0);
    CHECK(scan.monotone_ok);
}

TEST_CASE("scan validates its inputs") {
    CHECK_THROWS_AS(continuity_scan({}, 2.0, 1.0, 1.0, small_lab()), DomainError);
    CHECK_THROWS_AS(continuity_scan({0.5, -1.0}, 2.0, 1.0, 1.0, small_lab()),
                    DomainError);
    CHECK_THROWS_AS(continuity_scan({0.5}, 1.0, 1.0, 1.0, small_lab()),
                    DomainError);
}

TEST_CASE("selection verdicts on both sides of the boundary") {
    // The pulled-front deficit decays like 1/t, so the linear verdict needs
    // the full default horizon to fall inside the margin.
    LabConfig lab;
    const auto lin = selection_classifier({0.5, 1.5, 1.0, 1.0}, lab);
    CHECK(lin.verdict == Selection::Linear);
    CHECK(lin.c_linear == linear_speed(0.5));
    CHECK(std::abs(lin.excess) <= lab.margin_threshold);

    const auto non = selection_classifier({1.0, 2.0, 1.0, 1.0}, small_lab());
    CHECK(non.verdict == Selection::Nonlinear);
    CHECK(non.c_linear == 0.0);
    CHECK(non.excess > lab.margin_threshold);

    CHECK_THROWS_AS(selection_classifier({2.0, 2.0, 1.0, 1.0}, small_lab()),
                    RegimeError);
}
