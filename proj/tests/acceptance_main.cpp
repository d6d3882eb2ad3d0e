// Acceptance gate: one line per shipped behavioral guarantee, checked at the
// desk scale (domain [-200, 200], dx = 0.25, t_end <= 200). Prints
// [PASS]/[FAIL] per item and exits nonzero if anything failed.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "frontlab/linefit.hpp"
#include "frontlab/model.hpp"
#include "frontlab/simulator.hpp"
#include "frontlab/speed.hpp"
#include "frontlab/twprofile.hpp"
#include "frontlab/verify.hpp"

using namespace frontlab;

namespace {

int failures = 0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

void report(int idx, const char* what, const Outcome& o) {
    std::printf("[%s] %2d. %s: %s\n", o.pass ? "PASS" : "FAIL", idx, what,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
}

template <class F>
void criterion(int idx, const char* what, F&& f) {
    try {
        report(idx, what, f());
    } catch (const std::exception& e) {
        report(idx, what, {false, std::string("exception: ") + e.what()});
    }
}

std::string fmt(double v, int prec = 5) {
    std::ostringstream ss;
    ss << std::setprecision(prec) << v;
    return ss.str();
}

// The balanced-interface wave shared by the decay-rate and profile checks.
const MeasuredWave& wave_a2_b3() {
    static std::optional<MeasuredWave> cached;
    if (!cached) {
        LabConfig lab;
        cached = measure_wave_profile({2.0, 3.0, 1.0, 1.0}, lab);
    }
    return *cached;
}

Outcome check_zero_speed() {
    LabConfig lab;
    const SpeedEstimate est = estimate_wave_speed_signed({2.0, 2.0, 1.0, 1.0}, lab);
    const bool ok = std::abs(est.value) <= 0.02;
    return {ok, "|c| = " + fmt(std::abs(est.value), 3) + " (tolerance 0.02)"};
}

Outcome check_sign_agreement() {
    struct Pt {
        double a, b, r, d;
    };
    const std::vector<Pt> pts = {
        {1.5, 3.0, 1.0, 1.0}, {2.0, 3.0, 1.0, 1.0},  {1.3, 2.0, 1.0, 1.0},
        {2.5, 4.0, 1.0, 1.0}, {3.0, 1.5, 1.0, 1.0},  {2.0, 1.2, 1.0, 1.0},
        {4.0, 2.0, 1.0, 1.0}, {3.0, 2.0, 1.0, 1.0},  {1.2, 5.0, 2.0, 1.0},
        {1.5, 9.0, 2.0, 1.0}, {9.0, 2.0, 1.0, 2.0},  {10.0, 2.2, 1.0, 2.0},
    };
    LabConfig lab;
    int agreed = 0;
    std::string worst;
    for (const auto& q : pts) {
        const ModelParams p{q.a, q.b, q.r, q.d};
        const Sign gl = guo_lin_sign(p);
        if (gl.value == SignValue::Unknown || gl.value == SignValue::Zero)
            return {false, "point set includes an undecided closed-form sign"};
        const SpeedEstimate est = estimate_wave_speed_signed(p, lab);
        const double want = gl.value == SignValue::Positive ? 1.0 : -1.0;
        const bool same = est.value * want > 0.0;
        const bool decisive = std::abs(est.value) > 2.0 * est.std_err;
        if (same && decisive) {
            ++agreed;
        } else if (worst.empty()) {
            worst = " first miss at (a,b,r,d)=(" + fmt(q.a, 3) + "," +
                    fmt(q.b, 3) + "," + fmt(q.r, 3) + "," + fmt(q.d, 3) +
                    "), c = " + fmt(est.value) + " +- " + fmt(est.std_err, 2);
        }
    }
    return {agreed == 12,
            fmt(agreed, 2) + "/12 points decisive with matching sign" + worst};
}

// One pure-species spreading run; the other field starts (and stays) at zero.
double one_species_speed(bool v_runs, double r, double d) {
    const Grid1D grid = make_grid(-300.0, 300.0, 0.25);
    const ModelParams p{0.5, 2.0, r, d};
    SimState s0;
    s0.t = 0.0;
    if (v_runs) {
        s0.u.assign(static_cast<size_t>(grid.n), 0.0);
        s0.v = smoothed_plateau(grid, -10.0, 10.0, 2.5);
    } else {
        s0.u = smoothed_plateau(grid, -10.0, 10.0, 2.5);
        s0.v.assign(static_cast<size_t>(grid.n), 0.0);
    }
    SchemeConfig cfg;
    cfg.dt = std::min(0.005, 0.45 * max_stable_dt(p, grid, cfg.scheme));
    const auto [s1, trace] = run(s0, p, cfg, grid, 60.0, 100);
    std::vector<double> ts, xs;
    for (const auto& smp : trace.samples) {
        const auto& pos = v_runs ? smp.pos_v : smp.pos_u;
        if (smp.t >= 30.0 && pos) {
            ts.push_back(smp.t);
            xs.push_back(*pos);
        }
    }
    const LineFit fit = fit_line(ts, xs);
    // The v-front spreads leftward, the u-front rightward.
    return v_runs ? -fit.slope : fit.slope;
}

Outcome check_fisher_reduction() {
    struct Cfg {
        double r, d;
    };
    std::string detail;
    bool ok = true;
    for (const Cfg c : {Cfg{1.0, 1.0}, Cfg{4.0, 1.0}, Cfg{1.0, 4.0}}) {
        const double speed = one_species_speed(true, c.r, c.d);
        const double target = 2.0 * std::sqrt(c.r * c.d);
        const double reldev = std::abs(speed - target) / target;
        ok = ok && reldev <= 0.05;
        if (!detail.empty()) detail += ", ";
        detail += "(r=" + fmt(c.r, 2) + ",d=" + fmt(c.d, 2) + ") dev " +
                  fmt(100.0 * reldev, 3) + "%";
    }
    return {ok, detail + " (tolerance 5%)"};
}

Outcome check_scalar_reduction() {
    const double speed = one_species_speed(false, 1.0, 1.0);
    const double reldev = std::abs(speed - 2.0) / 2.0;
    return {reldev <= 0.05,
            "front speed " + fmt(speed) + ", dev " + fmt(100.0 * reldev, 3) +
                "% of 2 (tolerance 5%)"};
}

Outcome check_speed_bounds() {
    std::mt19937_64 rng(20260822ull);
    std::uniform_real_distribution<double> ab(1.1, 3.5), rd(0.5, 2.0);
    LabConfig lab;
    int inside = 0;
    std::string miss;
    for (int i = 0; i < 20; ++i) {
        const ModelParams p{ab(rng), ab(rng), rd(rng), rd(rng)};
        const SpeedBounds kb = kanon_bounds(p);
        const SpeedEstimate est = estimate_wave_speed_signed(p, lab);
        if (est.value >= kb.lo - 0.05 && est.value <= kb.hi + 0.05) {
            ++inside;
        } else if (miss.empty()) {
            miss = " first escape: c = " + fmt(est.value) + " outside [" +
                   fmt(kb.lo - 0.05) + ", " + fmt(kb.hi + 0.05) + "]";
        }
    }
    return {inside == 20, fmt(inside, 2) + "/20 estimates inside the bracket" + miss};
}

Outcome check_speed_continuity() {
    std::vector<double> as;
    for (int i = 0; i <= 8; ++i) as.push_back(0.6 + 0.1 * i);
    LabConfig lab;
    const ScanResult scan = continuity_scan(as, 2.0, 1.0, 1.0, lab);

    bool nonincreasing = true;
    for (size_t i = 1; i < scan.entries.size(); ++i) {
        const auto& prev = scan.entries[i - 1].estimate;
        const auto& cur = scan.entries[i].estimate;
        nonincreasing = nonincreasing &&
                        cur.value <= prev.value +
                                         2.0 * (prev.std_err + cur.std_err);
    }
    const auto& mid = scan.entries[4].estimate; // a = 1.0
    const bool mid_positive = mid.value - 2.0 * mid.std_err > 0.0;
    const bool jump_ok = scan.max_adjacent_jump <= 0.1;
    const bool ok = nonincreasing && jump_ok && mid_positive;

    std::string detail = "nonincreasing " +
                         std::string(nonincreasing ? "yes" : "NO") +
                         ", max adjacent jump " + fmt(scan.max_adjacent_jump) +
                         " (budget 0.1), a=1 speed " + fmt(mid.value) + " +- " +
                         fmt(mid.std_err, 2);
    if (!jump_ok && nonincreasing && mid_positive) {
        detail +=
            "; the curve genuinely drops ~0.18 per 0.1-step of a on the "
            "weak-competition side, so the 0.1 jump budget cannot be met at "
            "this sampling no matter how accurate the estimates are";
    }
    return {ok, detail};
}

Outcome check_threshold() {
    LabConfig lab;
    const ThresholdResult t2 = find_sign_threshold(1.5, 3.0, 2.0, 1.0, 1.0, lab);
    const ThresholdResult t3 = find_sign_threshold(2.0, 4.0, 3.0, 1.0, 1.0, lab);
    const bool ok2 = t2.a_star >= 1.95 && t2.a_star <= 2.05;
    const bool ok3 = t3.a_star >= 2.9 && t3.a_star <= 3.1;
    return {ok2 && ok3, "a*(b=2) = " + fmt(t2.a_star) + " (want [1.95, 2.05]), "
                            "a*(b=3) = " + fmt(t3.a_star) + " (want [2.9, 3.1])"};
}

Outcome check_selection_margin() {
    LabConfig lab;
    bool found = false;
    double best = -1e9, best_a = 0.0;
    for (const double a : {0.999, 0.99, 0.95}) {
        const SelectionVerdict sel = selection_classifier({a, 2.0, 1.0, 1.0}, lab);
        const double margin = sel.estimate.value - sel.c_linear;
        if (margin > best) {
            best = margin;
            best_a = a;
        }
        found = found ||
                margin > 0.02 + 2.0 * sel.estimate.std_err;
    }
    return {found, "largest excess over the linear speed: " + fmt(best) +
                       " at a = " + fmt(best_a, 4) + " (needs > 0.02 + 2 stderr)"};
}

Outcome check_decay_rates() {
    const MeasuredWave& mw = wave_a2_b3();
    const ModelParams p{2.0, 3.0, 1.0, 1.0};
    const std::vector<TailFit> fits = fit_decay_rates(mw.profile, p);
    const TailFit& u_plus = fits[0];  // U at +inf
    const TailFit& v_minus = fits[2]; // V at -inf
    const double dev_u =
        std::abs(u_plus.rate - u_plus.expected_rate) / u_plus.expected_rate;
    const double dev_v =
        std::abs(v_minus.rate - v_minus.expected_rate) / v_minus.expected_rate;
    const bool ok = dev_u <= 0.10 && dev_v <= 0.10 &&
                    u_plus.r_squared >= 0.98 && v_minus.r_squared >= 0.98;
    return {ok, "U tail rate " + fmt(u_plus.rate) + " vs " +
                    fmt(u_plus.expected_rate) + " (dev " +
                    fmt(100.0 * dev_u, 3) + "%), V tail rate " +
                    fmt(v_minus.rate) + " vs " + fmt(v_minus.expected_rate) +
                    " (dev " + fmt(100.0 * dev_v, 3) + "%), r^2 " +
                    fmt(u_plus.r_squared, 6) + "/" + fmt(v_minus.r_squared, 6)};
}

Outcome check_profile_validity() {
    const MeasuredWave& mw = wave_a2_b3();
    const ModelParams p{2.0, 3.0, 1.0, 1.0};
    const ProfileInvariantReport inv = profile_invariants(mw.profile);
    WaveProfile desk = mw.profile;
    const double r0 = ode_residual(desk, p);

    LabConfig fine;
    fine.grid = make_grid(-200.0, 200.0, 0.125);
    MeasuredWave mwf = measure_wave_profile(p, fine);
    const double r1 = ode_residual(mwf.profile, p);

    const bool ok = inv.all_ok && r0 < 0.02 && r1 < 0.011;
    return {ok, std::string("invariants ") + (inv.all_ok ? "ok" : "VIOLATED") +
                    ", residual " + fmt(r0, 4) + " (budget 0.02) -> " +
                    fmt(r1, 4) + " after one refinement (budget 0.011)"};
}

Outcome check_comparison_order() {
    LabConfig lab;
    lab.grid = make_grid(-100.0, 100.0, 0.25);
    lab.t_end = 40.0;
    const ComparisonReport rep =
        comparison_test({2.0, 3.0, 1.0, 1.0}, 20, lab, 20260822ull);
    return {rep.pass && rep.min_gap_u >= -1e-8 && rep.min_gap_v >= -1e-8,
            fmt(rep.n_pairs, 2) + " ordered pairs, min gaps " +
                fmt(rep.min_gap_u, 3) + " (u), " + fmt(rep.min_gap_v, 3) +
                " (v), floor -1e-8"};
}

Outcome check_barrier() {
    const BarrierReport good = large_a_barrier_check(100.0, 0.25, 5.0, 2001);
    const BarrierReport bad = large_a_barrier_check(1.0, 0.01, 5.0, 2001);
    const BarrierReport coarse = large_a_barrier_check(100.0, 0.25, 5.0, 1001);
    const double ratio = coarse.fd_identity_error / good.fd_identity_error;
    const bool second_order = ratio > 3.0 && ratio < 5.0;
    const bool ok = good.pass && !bad.pass && second_order;
    return {ok, std::string("strong case ") + (good.pass ? "passes" : "FAILS") +
                    ", weak case " + (bad.pass ? "PASSES" : "fails") +
                    ", curvature identity error ratio " + fmt(ratio, 3) +
                    " across a mesh halving (want ~4)"};
}

Outcome check_supersolution_search() {
    const ModelParams p{1.05, 2.0, 1.0, 1.0};
    LabConfig lab;
    const MeasuredWave mw = measure_wave_profile(p, lab);
    const SupersolutionSearch sr = search_supersolution(mw.profile, p, 0.01);
    if (!sr.found || !sr.audit.pass) {
        return {false, "no passing barrier found after " +
                           fmt(sr.tried, 3) + " candidates"};
    }

    SupersolutionParams flipped = sr.params;
    flipped.delta1 *= 6.0; // breaks only the kink-size budget at xi1
    const SupersolutionAudit fa = supersolution_audit(flipped, mw.profile, p, 0.01);
    bool exact_flip = fa.continuity_ok;
    for (size_t i = 0; i < fa.corners.size(); ++i) {
        const bool expect = i >= 2; // first two corners flip, the rest hold
        exact_flip = exact_flip && sr.audit.corners[i].ok &&
                     fa.corners[i].ok == expect;
    }
    return {exact_flip, "passing set found after " + fmt(sr.tried, 3) +
                            " candidate(s); widening delta1 6x flips exactly "
                            "the two corner checks at the right interface"};
}

} // namespace

int main() {
    criterion(1, "balanced bistable interface is numerically stationary",
              check_zero_speed);
    criterion(2, "closed-form speed signs agree with decisive measurements",
              check_sign_agreement);
    criterion(3, "lone v spreads at its own pulled-front speed",
              check_fisher_reduction);
    criterion(4, "lone u spreads at speed 2", check_scalar_reduction);
    criterion(5, "random bistable speeds respect the a-priori bracket",
              check_speed_bounds);
    criterion(6, "speed falls continuously and stays positive at a = 1",
              check_speed_continuity);
    criterion(7, "sign-change threshold lands on the balance point",
              check_threshold);
    criterion(8, "weak competition outruns the linear speed near a = 1",
              check_selection_margin);
    criterion(9, "wave tails decay at their predicted rates", check_decay_rates);
    criterion(10, "extracted profiles are valid waves with vanishing residual",
              check_profile_validity);
    criterion(11, "ordered initial data stays ordered", check_comparison_order);
    criterion(12, "strong-competition barrier certificate discriminates",
              check_barrier);
    criterion(13, "barrier search certifies the near-balance wave",
              check_supersolution_search);

    std::printf("%d/13 criteria passed\n", 13 - failures);
    return failures == 0 ? 0 : 1;
}
