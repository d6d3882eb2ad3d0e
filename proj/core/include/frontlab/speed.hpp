#pragma once

#include <optional>
#include <vector>

#include "frontlab/model.hpp"
#include "frontlab/simulator.hpp"

namespace frontlab {

/// How a speed was measured.
///   InvasionFront : compactly supported u released into v == 1; tracks the
///                   rightmost u = 1/2 level crossing (spreading speed).
///   InterfaceDrift: half-line interface between the two single-species
///                   states; tracks the signed drift of the u = 1/2 crossing
///                   (bistable/degenerate wave speed).
enum class Method { InvasionFront, InterfaceDrift };

const char* to_string(Method m);

/// Least-squares front speed over a late-time window.
/// std_err is conservative: the larger of the OLS slope error and half the
/// spread of slopes refit on four contiguous sub-blocks, so residual
/// transients show up as uncertainty instead of false precision.
struct SpeedEstimate {
    double value = 0.0;
    double std_err = 0.0;
    double t_start = 0.0;   // regression window
    double t_end = 0.0;
    Method method = Method::InvasionFront;
    int samples_used = 0;
    bool flagged = false;   // u- and v-front slopes disagreed beyond 3 sigma
};

/// Shared numerical-experiment configuration. Defaults are the desk scale:
/// domain [-200, 200] at dx = 0.25, dt auto-clamped to the stability bound,
/// horizon 200, front sampled every 0.5 time units.
struct LabConfig {
    Grid1D grid{};
    SchemeConfig scheme{};
    double t_end = 200.0;
    double sample_dt = 0.5;          // spacing between front-position samples
    double transient_fraction = 0.5; // head of the trace dropped before the fit
    double boundary_margin = 20.0;   // halt when the front enters this margin
    double init_width = 10.0;        // support width of the invasion bump
    double extinction_sup = 0.01;    // sup u below this means the bump died
    int min_samples = 8;             // fewer post-transient samples -> WindowError
    double zero_band = 0.02;         // |c| below this counts as numerically zero
    double margin_threshold = 0.03;  // excess-speed threshold for selection calls
    double tol_a = 0.02;             // bisection bracket width on the parameter a
    int workers = 0;                 // 0 = hardware concurrency

    /// dt actually used: the requested dt clamped to the scheme's bound.
    double effective_dt(const ModelParams& p) const;
};

/// Positive spreading speed of u invading v == 1 from a compact bump.
/// Fits the rightmost u = 1/2 crossing; cross-checks the v-front slope and
/// sets `flagged` on disagreement. Throws RegimeError for OutOfScope
/// parameters, ExtinctionError if sup u drops below extinction_sup, and
/// WindowError if fewer than min_samples usable samples remain.
SpeedEstimate estimate_spreading_speed(const ModelParams& p, const LabConfig& lab);

/// Signed drift speed of the half-line interface (positive = u advances).
/// Requires the Bistable or Degenerate regime.
SpeedEstimate estimate_wave_speed_signed(const ModelParams& p, const LabConfig& lab);

/// Sign probe: the closed-form sign rule when it is decisive, otherwise a
/// numeric interface-drift measurement with |c| <= zero_band reported as Zero.
struct SignProbe {
    Sign sign;
    std::optional<SpeedEstimate> estimate; // present iff measured numerically
};

SignProbe probe_sign_of_wave_speed(const ModelParams& p, const LabConfig& lab);

/// Convenience wrapper returning just the sign.
Sign sign_of_wave_speed(const ModelParams& p, const LabConfig& lab);

/// One sign evaluation recorded during threshold bisection.
struct ThresholdEvaluation {
    double a = 0.0;
    Sign sign{};
    std::optional<SpeedEstimate> estimate;
};

/// Bisection result for the sign-change threshold a*(b, r, d).
struct ThresholdResult {
    double a_star = 0.0;
    double bracket_lo = 0.0;  // final bracket, width <= tol_a
    double bracket_hi = 0.0;
    bool monotone_ok = true;  // numeric estimates decrease in a within error
    std::vector<ThresholdEvaluation> evaluations;
};

/// Locates the a at which the wave speed changes sign on [a_lo, a_hi] for
/// fixed (b, r, d), to bracket width lab.tol_a. Endpoints must give Positive
/// at a_lo and Negative at a_hi, else BracketError. A Zero probe ends the
/// search at that a.
ThresholdResult find_sign_threshold(double a_lo, double a_hi, double b, double r,
                                    double d, const LabConfig& lab);

/// One point of a speed-versus-a scan.
struct ScanEntry {
    double a = 0.0;
    SpeedEstimate estimate;                    // method chosen by regime
    std::optional<SpeedEstimate> secondary;    // InterfaceDrift at a == 1
};

struct ScanResult {
    std::vector<ScanEntry> entries;            // ascending in a
    double max_adjacent_jump = 0.0;
    bool monotone_ok = true;                   // non-increasing within 2 sigma
    bool methods_agree = true;                 // at a == 1, both methods match
};

/// Measures the front speed across a_values (InvasionFront for a <= 1,
/// InterfaceDrift for a > 1, both at a == 1), in parallel over lab.workers.
/// Requires b > 1 and every a > 0.
ScanResult continuity_scan(const std::vector<double>& a_values, double b, double r,
                           double d, const LabConfig& lab);

/// Linear versus nonlinear selection of the spreading speed.
enum class Selection { Linear, Nonlinear, Inconclusive };

const char* to_string(Selection s);

struct SelectionVerdict {
    Selection verdict = Selection::Inconclusive;
    SpeedEstimate estimate;
    double c_linear = 0.0;   // 2*sqrt(1-a)
    double excess = 0.0;     // estimate.value - c_linear
};

/// Classifies the measured spreading speed against the linear value:
/// Nonlinear if the excess clears margin_threshold plus 2 sigma, Linear if
/// |excess| <= margin_threshold, else Inconclusive. Requires a <= 1.
SelectionVerdict selection_classifier(const ModelParams& p, const LabConfig& lab);

} // namespace frontlab
