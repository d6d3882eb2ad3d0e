#include "frontlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "frontlab/errors.hpp"

namespace frontlab {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

/// Compactly supported C^1 bump, value 1 at the center.
double bump(double z) {
    if (std::abs(z) >= 1.0) return 0.0;
    const double c = std::cos(0.5 * std::numbers::pi * z);
    return c * c;
}

/// Sum of a few random bumps, clamped onto [0, 1]. Draw order is fixed so a
/// seed pins the fields exactly.
std::vector<double> random_field(std::mt19937_64& rng, const Grid1D& g) {
    std::uniform_int_distribution<int> count(2, 4);
    std::uniform_real_distribution<double> amp(0.15, 0.85);
    std::uniform_real_distribution<double> center(g.x_min + 0.1 * g.span(),
                                                  g.x_max - 0.1 * g.span());
    std::uniform_real_distribution<double> width(0.05 * g.span(), 0.25 * g.span());
    const int m = count(rng);
    std::vector<double> f(static_cast<size_t>(g.n), 0.0);
    for (int k = 0; k < m; ++k) {
        const double a = amp(rng);
        const double c = center(rng);
        const double w = width(rng);
        for (int i = 0; i < g.n; ++i) {
            f[static_cast<size_t>(i)] += a * bump((g.node(i) - c) / w);
        }
    }
    for (double& x : f) x = clamp01(x);
    return f;
}

} // namespace

ComparisonReport comparison_test(const ModelParams& p, int n_pairs,
                                 const LabConfig& lab, std::uint64_t seed) {
    p.validate();
    lab.grid.validate();
    if (n_pairs < 1) throw DomainError("comparison_test: n_pairs must be >= 1");

    SchemeConfig cfg = lab.scheme;
    cfg.dt = lab.effective_dt(p);
    const long long n_steps = std::llround(lab.t_end / cfg.dt);
    const long long check_every =
        std::max<long long>(1, std::llround(lab.sample_dt / cfg.dt));

    std::mt19937_64 rng(seed);
    ComparisonReport rep;
    rep.n_pairs = n_pairs;
    rep.seed = seed;
    rep.min_gap_u = std::numeric_limits<double>::infinity();
    rep.min_gap_v = std::numeric_limits<double>::infinity();

    for (int pair = 0; pair < n_pairs; ++pair) {
        const std::vector<double> u_base = random_field(rng, lab.grid);
        const std::vector<double> u_extra = random_field(rng, lab.grid);
        const std::vector<double> v_base = random_field(rng, lab.grid);
        const std::vector<double> v_extra = random_field(rng, lab.grid);

        // Upper state: larger u, smaller v; ordering holds pointwise at t = 0.
        SimState upper, lower;
        upper.u.resize(static_cast<size_t>(lab.grid.n));
        upper.v = v_base;
        lower.u = u_base;
        lower.v.resize(static_cast<size_t>(lab.grid.n));
        for (int i = 0; i < lab.grid.n; ++i) {
            const auto ii = static_cast<size_t>(i);
            upper.u[ii] = clamp01(u_base[ii] + u_extra[ii]);
            lower.v[ii] = clamp01(v_base[ii] + v_extra[ii]);
        }

        auto record = [&] {
            for (int i = 0; i < lab.grid.n; ++i) {
                const auto ii = static_cast<size_t>(i);
                rep.min_gap_u = std::min(rep.min_gap_u, upper.u[ii] - lower.u[ii]);
                rep.min_gap_v = std::min(rep.min_gap_v, lower.v[ii] - upper.v[ii]);
            }
        };
        record();
        for (long long k = 1; k <= n_steps; ++k) {
            upper = step(upper, p, cfg, lab.grid);
            lower = step(lower, p, cfg, lab.grid);
            if (k % check_every == 0 || k == n_steps) record();
        }
    }
    rep.pass = rep.min_gap_u >= -1e-8 && rep.min_gap_v >= -1e-8;
    return rep;
}

SpeedEstimate degenerate_positivity(double b, double r, double d,
                                    const LabConfig& lab) {
    if (!(b > 1.0)) {
        throw DomainError("degenerate_positivity requires b > 1");
    }
    ModelParams p;
    p.a = 1.0;
    p.b = b;
    p.r = r;
    p.d = d;
    p.validate();
    const SpeedEstimate est = estimate_spreading_speed(p, lab);
    if (!(est.value - 2.0 * est.std_err > 0.0)) {
        std::ostringstream msg;
        msg << "degenerate spreading speed not positive beyond two error bars: "
            << est.value << " +- " << est.std_err;
        throw AssertionError(msg.str());
    }
    return est;
}

namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void construction_fail(const std::string& what) {
    throw ConstructionError("supersolution construction: " + what);
}

bool pos_finite(double x) { return std::isfinite(x) && x > 0.0; }

/// Piece index at xi, 1 (rightmost) through 5 (leftmost). Boundaries belong
/// to the piece on their right, so each node lands in exactly one piece.
int segment_of(const SupersolutionParams& sp, double xi) {
    if (xi >= sp.xi1 + sp.delta1) return 1;
    if (xi >= sp.xi1 - sp.delta4) return 2;
    if (xi >= sp.xi2 + sp.delta5) return 3;
    if (xi >= sp.xi2 - sp.delta7) return 4;
    return 5;
}

struct PieceVal {
    double v = 0.0;   // value
    double d1 = 0.0;  // first derivative
    double d2 = 0.0;  // second derivative
};

PieceVal ru_piece(const SupersolutionParams& sp, int seg, double xi) {
    PieceVal out;
    switch (seg) {
        case 1: {
            const double e = std::exp(-sp.lambda1 * xi);
            const double s = xi - sp.xi1;
            out.v = sp.eps1 * s * e;
            out.d1 = sp.eps1 * e * (1.0 - sp.lambda1 * s);
            out.d2 = sp.eps1 * e * (sp.lambda1 * sp.lambda1 * s - 2.0 * sp.lambda1);
            break;
        }
        case 2: {
            const double arg = sp.delta2 * (xi - sp.xi1 + sp.delta3);
            out.v = sp.eps2 * std::sin(arg);
            out.d1 = sp.eps2 * sp.delta2 * std::cos(arg);
            out.d2 = -sp.eps2 * sp.delta2 * sp.delta2 * std::sin(arg);
            break;
        }
        case 3:
            out.v = -sp.eps3;
            break;
        default: {
            const double e = std::exp(sp.lambda3 * xi);
            out.v = -sp.eps4 * e;
            out.d1 = -sp.eps4 * sp.lambda3 * e;
            out.d2 = -sp.eps4 * sp.lambda3 * sp.lambda3 * e;
            break;
        }
    }
    return out;
}

PieceVal rv_piece(const SupersolutionParams& sp, int seg, double xi) {
    PieceVal out;
    switch (seg) {
        case 1: {
            const double e = std::exp(-sp.lambda1 * xi);
            const double s = xi - sp.xi1;
            out.v = sp.eta1 * s * e;
            out.d1 = sp.eta1 * e * (1.0 - sp.lambda1 * s);
            out.d2 = sp.eta1 * e * (sp.lambda1 * sp.lambda1 * s - 2.0 * sp.lambda1);
            break;
        }
        case 2:
        case 3: {
            const double e = std::exp(sp.lambda2 * xi);
            out.v = sp.eta2 * e;
            out.d1 = sp.eta2 * sp.lambda2 * e;
            out.d2 = sp.eta2 * sp.lambda2 * sp.lambda2 * e;
            break;
        }
        case 4: {
            const double arg = sp.delta6 * (xi - sp.xi2);
            out.v = sp.eta3 * std::sin(arg);
            out.d1 = sp.eta3 * sp.delta6 * std::cos(arg);
            out.d2 = -sp.eta3 * sp.delta6 * sp.delta6 * std::sin(arg);
            break;
        }
        default: {
            const double e = std::exp(sp.lambda3 * xi);
            out.v = -sp.eta4 * e;
            out.d1 = -sp.eta4 * sp.lambda3 * e;
            out.d2 = -sp.eta4 * sp.lambda3 * sp.lambda3 * e;
            break;
        }
    }
    return out;
}

} // namespace

SupersolutionParams resolve_amplitudes(SupersolutionParams sp) {
    for (double x : {sp.delta1, sp.delta2, sp.delta3, sp.delta4, sp.delta5,
                     sp.delta6, sp.delta7, sp.lambda1, sp.lambda2, sp.lambda3,
                     sp.eps1, sp.eta1}) {
        if (!pos_finite(x)) {
            construction_fail("deltas, lambdas, eps1 and eta1 must be positive");
        }
    }
    if (!(sp.delta_star > 0.0)) construction_fail("delta_star must be positive");
    if (!(sp.c1 < sp.c2)) construction_fail("needs c1 < c2");
    if (!(sp.xi2 < sp.xi1)) construction_fail("needs xi2 < xi1");
    if (!(sp.xi2 + sp.delta5 < sp.xi1 - sp.delta4)) {
        construction_fail("pieces overlap: xi2 + delta5 must stay left of xi1 - delta4");
    }
    if (!(sp.delta3 < sp.delta4)) {
        construction_fail("needs delta3 < delta4 for a positive core amplitude");
    }
    if (!(sp.delta2 * (sp.delta1 + sp.delta3) < kPi)) {
        construction_fail("sine argument delta2 (delta1 + delta3) must stay below pi");
    }
    if (!(sp.delta2 * (sp.delta4 - sp.delta3) < kPi)) {
        construction_fail("sine argument delta2 (delta4 - delta3) must stay below pi");
    }
    if (!(sp.delta6 * sp.delta5 < kPi) || !(sp.delta6 * sp.delta7 < kPi)) {
        construction_fail("sine arguments delta6 delta5 and delta6 delta7 must stay below pi");
    }

    const double e1 = std::exp(-sp.lambda1 * (sp.xi1 + sp.delta1));
    sp.eps2 = sp.eps1 * sp.delta1 * e1 / std::sin(sp.delta2 * (sp.delta1 + sp.delta3));
    sp.eta2 = sp.eta1 * sp.delta1 *
              std::exp(-(sp.lambda1 + sp.lambda2) * (sp.xi1 + sp.delta1));
    sp.eps3 = sp.eps2 * std::sin(sp.delta2 * (sp.delta4 - sp.delta3));
    sp.eps4 = sp.eps3 * std::exp(-sp.lambda3 * (sp.xi2 + sp.delta5));
    sp.eta3 = sp.eta2 * std::exp(sp.lambda2 * (sp.xi2 + sp.delta5)) /
              std::sin(sp.delta6 * sp.delta5);
    sp.eta4 = sp.eta3 * std::sin(sp.delta6 * sp.delta7) *
              std::exp(-sp.lambda3 * (sp.xi2 - sp.delta7));
    for (double x : {sp.eps2, sp.eps3, sp.eps4, sp.eta2, sp.eta3, sp.eta4}) {
        if (!pos_finite(x)) {
            construction_fail("a derived amplitude is not positive and finite "
                              "(check for under- or overflow)");
        }
    }
    return sp;
}

SupersolutionAudit supersolution_audit(const SupersolutionParams& sp_in,
                                       const WaveProfile& base,
                                       const ModelParams& p, double delta0) {
    p.validate();
    if (!(delta0 > 0.0 && delta0 < 1.0)) {
        throw DomainError("supersolution_audit: need 0 < delta0 < 1");
    }
    const size_t m = base.xi.size();
    if (m < 32 || base.U.size() != m || base.V.size() != m) {
        throw DomainError("supersolution_audit: base profile too short or inconsistent");
    }
    const SupersolutionParams sp = resolve_amplitudes(sp_in);

    SupersolutionAudit audit;

    // Continuity at the four interior joints, each formula taken one-sided.
    const struct {
        double xi;
        int left, right;
    } joint_spec[4] = {
        {sp.xi2 - sp.delta7, 5, 4},
        {sp.xi2 + sp.delta5, 4, 3},
        {sp.xi1 - sp.delta4, 3, 2},
        {sp.xi1 + sp.delta1, 2, 1},
    };
    audit.continuity_ok = true;
    for (int j = 0; j < 4; ++j) {
        const double xi = joint_spec[j].xi;
        const PieceVal ul = ru_piece(sp, joint_spec[j].left, xi);
        const PieceVal ur = ru_piece(sp, joint_spec[j].right, xi);
        const PieceVal vl = rv_piece(sp, joint_spec[j].left, xi);
        const PieceVal vr = rv_piece(sp, joint_spec[j].right, xi);
        JointCheck chk;
        chk.xi = xi;
        chk.gap_u = std::abs(ur.v - ul.v);
        chk.gap_v = std::abs(vr.v - vl.v);
        const double tol_u = 1e-10 * std::max({1.0, std::abs(ul.v), std::abs(ur.v)});
        const double tol_v = 1e-10 * std::max({1.0, std::abs(vl.v), std::abs(vr.v)});
        chk.ok = chk.gap_u <= tol_u && chk.gap_v <= tol_v;
        audit.joints[static_cast<size_t>(j)] = chk;
        audit.continuity_ok = audit.continuity_ok && chk.ok;
    }

    // Corner convexity: the one-sided derivative must jump upward, so each
    // kink adds a negative Dirac part to R'' (harmless for an upper barrier).
    auto corner = [&](const char* name, double xi, const PieceVal& right,
                      const PieceVal& left) {
        CornerCheck chk;
        chk.name = name;
        chk.xi = xi;
        chk.jump = right.d1 - left.d1;
        chk.ok = chk.jump > 0.0;
        return chk;
    };
    const double j1 = sp.xi1 + sp.delta1;
    const double j2 = sp.xi1 - sp.delta4;
    const double j3 = sp.xi2 + sp.delta5;
    const double j4 = sp.xi2 - sp.delta7;
    audit.corners[0] = corner("alpha1_Ru", j1, ru_piece(sp, 1, j1), ru_piece(sp, 2, j1));
    audit.corners[1] = corner("alpha2_Rv", j1, rv_piece(sp, 1, j1), rv_piece(sp, 2, j1));
    audit.corners[2] = corner("alpha3_Ru", j2, ru_piece(sp, 2, j2), ru_piece(sp, 3, j2));
    audit.corners[3] = corner("alpha4_Rv", j3, rv_piece(sp, 3, j3), rv_piece(sp, 4, j3));
    audit.corners[4] = corner("alpha5_Ru", j3, ru_piece(sp, 3, j3), ru_piece(sp, 4, j3));
    audit.corners[5] = corner("alpha6_Rv", j4, rv_piece(sp, 4, j4), rv_piece(sp, 5, j4));
    audit.corners_ok = true;
    for (const auto& c : audit.corners) audit.corners_ok = audit.corners_ok && c.ok;

    // Differential inequalities, node by node over the base profile. R-parts
    // are analytic; base derivatives are central differences, so 5 nodes at
    // each domain edge are left out of the sweep.
    const double h = base.xi[1] - base.xi[0];
    const int edge_guard = 5;
    for (int k = 0; k < 5; ++k) {
        auto& seg = audit.segments[static_cast<size_t>(k)];
        seg.index = k + 1;
        seg.n1_max = -std::numeric_limits<double>::infinity();
        seg.n2_min = std::numeric_limits<double>::infinity();
    }
    audit.segments[0].xi_lo = j1;
    audit.segments[0].xi_hi = base.xi.back();
    audit.segments[1].xi_lo = j2;
    audit.segments[1].xi_hi = j1;
    audit.segments[2].xi_lo = j3;
    audit.segments[2].xi_hi = j2;
    audit.segments[3].xi_lo = j4;
    audit.segments[3].xi_hi = j3;
    audit.segments[4].xi_lo = base.xi.front();
    audit.segments[4].xi_hi = j4;

    double scale1[5] = {0, 0, 0, 0, 0};
    double scale2[5] = {0, 0, 0, 0, 0};
    audit.ubar_min = std::numeric_limits<double>::infinity();
    audit.ubar_max = -std::numeric_limits<double>::infinity();
    audit.vlow_min = std::numeric_limits<double>::infinity();
    audit.vlow_max = -std::numeric_limits<double>::infinity();

    for (size_t i = static_cast<size_t>(edge_guard);
         i + static_cast<size_t>(edge_guard) < m; ++i) {
        const double xi = base.xi[i];
        const int seg_id = segment_of(sp, xi);
        auto& seg = audit.segments[static_cast<size_t>(seg_id - 1)];
        const PieceVal ru = ru_piece(sp, seg_id, xi);
        const PieceVal rv = rv_piece(sp, seg_id, xi);

        const double ubar_raw = base.U[i] - ru.v;
        const double vlow_raw = base.V[i] + rv.v;
        const double ubar = std::min(1.0, ubar_raw);
        const double vlow = std::max(0.0, vlow_raw);
        if (i == static_cast<size_t>(edge_guard)) {
            audit.left_ubar = ubar;
            audit.left_vlow = vlow;
        }
        audit.ubar_min = std::min(audit.ubar_min, ubar);
        audit.ubar_max = std::max(audit.ubar_max, ubar);
        audit.vlow_min = std::min(audit.vlow_min, vlow);
        audit.vlow_max = std::max(audit.vlow_max, vlow);

        const double u0_d2 = (base.U[i - 1] - 2.0 * base.U[i] + base.U[i + 1]) / (h * h);
        const double u0_d1 = (base.U[i + 1] - base.U[i - 1]) / (2.0 * h);
        const double v0_d2 = (base.V[i - 1] - 2.0 * base.V[i] + base.V[i + 1]) / (h * h);
        const double v0_d1 = (base.V[i + 1] - base.V[i - 1]) / (2.0 * h);

        double n1, t1a, t1b, t1c;
        if (ubar_raw >= 1.0) {
            // Clamped stretch: Ubar is the constant 1 there.
            t1a = 0.0;
            t1b = 0.0;
            t1c = ubar * (1.0 - ubar - (1.0 - delta0) * vlow);
            n1 = t1c;
        } else {
            t1a = u0_d2 - ru.d2;
            t1b = sp.c2 * (u0_d1 - ru.d1);
            t1c = ubar * (1.0 - ubar - (1.0 - delta0) * vlow);
            n1 = t1a + t1b + t1c;
        }
        double n2, t2a, t2b, t2c;
        if (vlow_raw <= 0.0) {
            t2a = 0.0;
            t2b = 0.0;
            t2c = 0.0;
            n2 = 0.0;
        } else {
            t2a = p.d * (v0_d2 + rv.d2);
            t2b = sp.c2 * (v0_d1 + rv.d1);
            t2c = p.r * vlow * (1.0 - vlow - p.b * ubar);
            n2 = t2a + t2b + t2c;
        }

        seg.nodes += 1;
        seg.n1_max = std::max(seg.n1_max, n1);
        seg.n2_min = std::min(seg.n2_min, n2);
        scale1[seg_id - 1] = std::max(
            {scale1[seg_id - 1], std::abs(t1a), std::abs(t1b), std::abs(t1c)});
        scale2[seg_id - 1] = std::max(
            {scale2[seg_id - 1], std::abs(t2a), std::abs(t2b), std::abs(t2c)});
    }

    audit.inequalities_ok = true;
    for (int k = 0; k < 5; ++k) {
        auto& seg = audit.segments[static_cast<size_t>(k)];
        seg.tol_n1 = std::max(1e-6 * scale1[k], 1e-12);
        seg.tol_n2 = std::max(1e-6 * scale2[k], 1e-12);
        if (seg.nodes == 0) {
            // Piece thinner than the grid spacing; the joint and corner
            // checks still pin it down.
            seg.n1_max = 0.0;
            seg.n2_min = 0.0;
            seg.ok = true;
        } else {
            seg.ok = seg.n1_max <= seg.tol_n1 && seg.n2_min >= -seg.tol_n2;
        }
        audit.inequalities_ok = audit.inequalities_ok && seg.ok;
    }

    // The construction needs the barrier saturated at (1, 0) far to the left;
    // on the truncated grid the leftmost audited node stands in for -infinity.
    audit.left_saturation_ok =
        audit.left_ubar >= 1.0 - 1e-8 && audit.left_vlow <= 1e-8;

    audit.pass = audit.continuity_ok && audit.corners_ok &&
                 audit.inequalities_ok && audit.left_saturation_ok;
    return audit;
}

SupersolutionSearch search_supersolution(const WaveProfile& base,
                                         const ModelParams& p_base, double delta0,
                                         const SearchOptions& opts) {
    p_base.validate();
    if (classify_regime(p_base) != Regime::Bistable) {
        throw RegimeError("search_supersolution: base parameters must be Bistable");
    }
    const size_t m = base.xi.size();
    if (m < 32) throw DomainError("search_supersolution: base profile too short");

    // Interface anchors: where each tail first falls below rho, pushed
    // `pad` further out so the exponential pieces live in the true tails.
    double xi_u_tail = base.xi.back();
    for (size_t i = 0; i < m; ++i) {
        if (base.U[i] <= opts.rho) {
            xi_u_tail = base.xi[i];
            break;
        }
    }
    double xi_v_tail = base.xi.front();
    for (size_t i = m; i-- > 0;) {
        if (base.V[i] <= opts.rho) {
            xi_v_tail = base.xi[i];
            break;
        }
    }
    const double xi1 = xi_u_tail + opts.pad;
    const double xi2 = xi_v_tail - opts.pad;

    const DecayRates rates = decay_rates_formula(p_base, base.c);
    const double mu_min = std::min(rates.mu_u_plus, rates.mu_v_plus);

    SupersolutionSearch out;
    for (double gap : opts.gaps) {
        for (double lambda2 : opts.lambda2s) {
            for (double l1_mult : opts.lambda1_mults) {
                for (double l3_frac : opts.lambda3_fracs) {
                    for (double eps1_hat : opts.eps1_hats) {
                        SupersolutionParams sp;
                        sp.delta_star = p_base.a - 1.0;
                        sp.c1 = base.c;
                        sp.c2 = base.c + gap;
                        sp.xi1 = xi1;
                        sp.xi2 = xi2;
                        sp.lambda1 = l1_mult * rates.sigma_u_plus;
                        sp.lambda2 = lambda2;
                        sp.lambda3 = l3_frac * mu_min;
                        sp.delta1 = 0.5 / (sp.lambda1 + sp.lambda2);
                        sp.delta3 = sp.delta1;
                        sp.delta4 = 1.2 * sp.delta1;
                        sp.delta2 = 0.02 / (sp.delta1 + sp.delta3);
                        sp.delta5 = 2.0 / sp.lambda2;
                        sp.delta6 = 0.02 / sp.delta5;
                        sp.delta7 = 0.5 * sp.delta5;
                        sp.eps1 = eps1_hat * std::exp(sp.lambda1 * sp.xi1);
                        sp.eta1 = 0.01 * sp.eps1;
                        out.tried += 1;
                        try {
                            SupersolutionAudit audit =
                                supersolution_audit(sp, base, p_base, delta0);
                            out.params = resolve_amplitudes(sp);
                            out.audit = audit;
                            if (audit.pass) {
                                out.found = true;
                                return out;
                            }
                        } catch (const ConstructionError&) {
                            // Invalid candidate; keep walking the grid.
                        }
                    }
                }
            }
        }
    }
    return out;
}

BarrierReport large_a_barrier_check(double a, double eps, double R, int n_nodes) {
    if (!pos_finite(a) || !pos_finite(eps) || !pos_finite(R) || n_nodes < 9) {
        throw DomainError(
            "large_a_barrier_check: need a > 0, eps > 0, R > 0, n_nodes >= 9");
    }
    BarrierReport rep;
    rep.a = a;
    rep.eps = eps;
    rep.R = R;
    rep.n_nodes = n_nodes;
    rep.rate = std::sqrt(a * eps);
    const double L = rep.rate;
    const double denom = 1.0 + std::exp(-4.0 * L * R);
    const double h = 4.0 * R / static_cast<double>(n_nodes - 1);

    std::vector<double> xi(static_cast<size_t>(n_nodes));
    std::vector<double> ub(static_cast<size_t>(n_nodes));
    for (int i = 0; i < n_nodes; ++i) {
        xi[static_cast<size_t>(i)] = -2.0 * R + h * static_cast<double>(i);
        const double x = xi[static_cast<size_t>(i)];
        ub[static_cast<size_t>(i)] =
            (std::exp(-L * (x + 2.0 * R)) + std::exp(L * (x - 2.0 * R))) / denom;
    }

    rep.boundary_ok = std::abs(ub.front() - 1.0) <= 1e-12 &&
                      std::abs(ub.back() - 1.0) <= 1e-12;
    rep.range_ok = true;
    rep.ineq_max = -std::numeric_limits<double>::infinity();
    rep.ineq_max_full = -std::numeric_limits<double>::infinity();
    rep.fd_identity_error = 0.0;
    bool window_seen = false;

    for (int i = 0; i < n_nodes; ++i) {
        const auto ii = static_cast<size_t>(i);
        if (ub[ii] < 0.0 || ub[ii] > 1.0 + 1e-12) rep.range_ok = false;
        // The exact second derivative of Ubar is L^2 Ubar, so the operator
        // reduces to L^2 Ubar + Ubar (1 - Ubar) - a eps Ubar = Ubar (1 - Ubar).
        const double value = L * L * ub[ii] + ub[ii] * (1.0 - ub[ii]) - a * eps * ub[ii];
        if (i > 0 && i + 1 < n_nodes) {
            rep.ineq_max_full = std::max(rep.ineq_max_full, value);
            const double d2 = (ub[ii - 1] - 2.0 * ub[ii] + ub[ii + 1]) / (h * h);
            rep.fd_identity_error =
                std::max(rep.fd_identity_error, std::abs(d2 - L * L * ub[ii]));
        }
        if (std::abs(xi[ii]) <= R + 1e-12) {
            rep.ineq_max = std::max(rep.ineq_max, value);
            window_seen = true;
        }
    }
    if (!window_seen) rep.ineq_max = 0.0;
    rep.inequality_ok = rep.ineq_max <= 1e-10;
    rep.pass = rep.boundary_ok && rep.range_ok && rep.inequality_ok;
    return rep;
}

} // namespace frontlab
