#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "frontlab/model.hpp"
#include "frontlab/simulator.hpp"
#include "frontlab/speed.hpp"
#include "frontlab/twprofile.hpp"

namespace frontlab {

/// Order-preservation audit of the discrete evolution. Draws seeded random
/// ordered pairs of initial states (upper = larger u, smaller v), evolves
/// both with identical settings, and records the most negative ordering gap
/// seen at any checked time and node.
struct ComparisonReport {
    int n_pairs = 0;
    std::uint64_t seed = 0;
    double min_gap_u = 0.0;   // min over checks of (u_upper - u_lower)
    double min_gap_v = 0.0;   // min over checks of (v_lower_of_upper_state ...)
    bool pass = false;        // both gaps >= -1e-8
};

ComparisonReport comparison_test(const ModelParams& p, int n_pairs,
                                 const LabConfig& lab, std::uint64_t seed);

/// Measures the spreading speed at a = 1 and asserts it is positive beyond
/// two error bars (AssertionError otherwise). Throws DomainError for b <= 1.
SpeedEstimate degenerate_positivity(double b, double r, double d,
                                    const LabConfig& lab);

/// Piecewise perturbation data for an ordered barrier pair built around a
/// base wave (U0, V0) moving at c1: Ubar = min(1, U0 - R_u) and
/// Vlow = max(0, V0 + R_v) in a frame moving at c2 > c1. R_u and R_v are
/// assembled from five analytic pieces joined at
///   xi1 + delta1 > xi1 - delta4 > xi2 + delta5 > xi2 - delta7,
/// exponential in the outer pieces, sine bridges around the two interface
/// zones, constant core. eps1/eta1 are free; the remaining amplitudes are
/// fixed by continuity (resolve_amplitudes).
struct SupersolutionParams {
    double delta_star = 0.0;  // a_base - 1 of the wave the pieces hang on
    double c1 = 0.0;          // base wave speed
    double c2 = 0.0;          // barrier frame speed, must exceed c1
    double xi1 = 0.0;         // right interface anchor (u-tail zone)
    double xi2 = 0.0;         // left interface anchor (v-tail zone), xi2 < xi1
    double delta1 = 0.0, delta2 = 0.0, delta3 = 0.0, delta4 = 0.0;
    double delta5 = 0.0, delta6 = 0.0, delta7 = 0.0;
    double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0;
    double eps1 = 0.0, eta1 = 0.0;                      // free amplitudes
    double eps2 = 0.0, eps3 = 0.0, eps4 = 0.0;          // derived
    double eta2 = 0.0, eta3 = 0.0, eta4 = 0.0;          // derived
};

/// Fills the derived amplitudes from eps1/eta1 by continuity at the four
/// interior joints. Throws ConstructionError when the data cannot form a
/// valid piecewise barrier (nonpositive scales, sine arguments outside
/// (0, pi), delta3 >= delta4, overlapping pieces, under-/overflow).
SupersolutionParams resolve_amplitudes(SupersolutionParams sp);

struct JointCheck {
    double xi = 0.0;
    double gap_u = 0.0;   // |R_u right - R_u left|
    double gap_v = 0.0;
    bool ok = false;
};

/// One-sided derivative jump at a corner: jump = R'(xi+) - R'(xi-).
/// A barrier corner must be convex (jump > 0) so the kink only helps.
struct CornerCheck {
    const char* name = "";
    double xi = 0.0;
    double jump = 0.0;
    bool ok = false;
};

struct SegmentCheck {
    int index = 0;            // 1..5, right to left
    double xi_lo = 0.0, xi_hi = 0.0;
    int nodes = 0;            // profile nodes audited (0 = piece thinner than dx)
    double n1_max = 0.0;      // max of the u-side operator, must be <= tol_n1
    double n2_min = 0.0;      // min of the v-side operator, must be >= -tol_n2
    double tol_n1 = 0.0, tol_n2 = 0.0;
    bool ok = false;
};

struct SupersolutionAudit {
    std::array<JointCheck, 4> joints{};
    std::array<CornerCheck, 6> corners{};
    std::array<SegmentCheck, 5> segments{};
    bool continuity_ok = false;
    bool corners_ok = false;
    bool inequalities_ok = false;
    // Far to the left the barrier must saturate at the (1, 0) state; on the
    // truncated grid this is checked at the leftmost audited node within 1e-8.
    double left_ubar = 0.0, left_vlow = 0.0;
    bool left_saturation_ok = false;
    bool pass = false;
    // informational range of the clamped barrier fields over the profile
    double ubar_min = 0.0, ubar_max = 0.0, vlow_min = 0.0, vlow_max = 0.0;
};

/// Audits (Ubar, Vlow) as an ordered barrier pair for the system with
/// competition coefficient (1 - delta0) on the u side and (b, r, d) from p:
///   N1 = Ubar'' + c2 Ubar' + Ubar (1 - Ubar - (1 - delta0) Vlow) <= 0
///   N2 = d Vlow'' + c2 Vlow' + r Vlow (1 - Vlow - b Ubar)       >= 0
/// Joint continuity and corner convexity are checked analytically; the two
/// differential inequalities are swept node-by-node over the base profile,
/// with derivatives of R taken analytically and of the base numerically.
/// Tolerances are 1e-10 (relative) for joints and 1e-6 of each segment's
/// dominant term for the sweeps.
SupersolutionAudit supersolution_audit(const SupersolutionParams& sp,
                                       const WaveProfile& base,
                                       const ModelParams& p, double delta0);

/// Knobs of the deterministic candidate grid search_supersolution walks.
struct SearchOptions {
    double rho = 0.02;   // tail level defining the interface anchors xi1/xi2
    double pad = 2.0;    // extra distance pushed into each tail
    std::vector<double> gaps{0.2, 0.3, 0.45};         // c2 - c1
    std::vector<double> lambda2s{4.0, 6.0};
    std::vector<double> lambda1_mults{1.3, 1.6};      // times sigma_u_plus(c1)
    std::vector<double> lambda3_fracs{0.3, 0.5};      // times min(mu_u+, mu_v+)
    std::vector<double> eps1_hats{1e-4, 1e-3};        // peak scale of R_u tail
};

struct SupersolutionSearch {
    bool found = false;
    int tried = 0;                // candidates audited
    SupersolutionParams params;   // first passing candidate, else last tried
    SupersolutionAudit audit;
};

/// Walks a small deterministic grid of barrier candidates around the base
/// wave and returns the first one whose audit passes. p_base must be the
/// Bistable parameters the profile was measured at (a = 1 + delta_star).
SupersolutionSearch search_supersolution(const WaveProfile& base,
                                         const ModelParams& p_base, double delta0,
                                         const SearchOptions& opts = {});

/// Algebraic barrier for strong competition: on [-2R, 2R] the comparison
/// function Ubar(xi) = (e^(-L (xi + 2R)) + e^(L (xi - 2R))) / (1 + e^(-4LR))
/// with L = sqrt(a eps) equals 1 at both ends and must satisfy
///   Ubar'' + Ubar (1 - Ubar) - a eps Ubar <= 0
/// on the inner window [-R, R], which is where the barrier squeezes the
/// solution; near the ends the construction leans on the boundary values
/// instead and the inequality genuinely reverses. The report carries the
/// inner-window maximum (the gate), the full-interval maximum (context),
/// and a second-difference identity error that shrinks at second order.
struct BarrierReport {
    double a = 0.0, eps = 0.0, R = 0.0;
    int n_nodes = 0;
    double rate = 0.0;            // sqrt(a eps)
    bool boundary_ok = false;     // Ubar(+-2R) = 1 to 1e-12
    bool range_ok = false;        // 0 <= Ubar <= 1 everywhere
    double ineq_max = 0.0;        // max over [-R, R] of the operator
    double ineq_max_full = 0.0;   // max over all of (-2R, 2R), informational
    bool inequality_ok = false;   // ineq_max <= 1e-10
    double fd_identity_error = 0.0; // max |D2 Ubar - rate^2 Ubar|, O(h^2)
    bool pass = false;
};

/// Evaluates the strong-competition barrier on n_nodes uniform nodes.
/// Throws DomainError unless a > 0, 0 < eps, R > 0 and n_nodes >= 9.
BarrierReport large_a_barrier_check(double a, double eps, double R, int n_nodes);

} // namespace frontlab
