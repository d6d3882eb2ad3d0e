#pragma once

#include <vector>

#include "frontlab/model.hpp"
#include "frontlab/simulator.hpp"
#include "frontlab/speed.hpp"

namespace frontlab {

/// Traveling-wave profile on a uniform moving-frame grid xi, aligned so the
/// u = 1/2 crossing sits at xi = 0. U decreases 1 -> 0 and V increases 0 -> 1
/// as xi runs left to right.
struct WaveProfile {
    double c = 0.0;               // frame speed the profile was extracted at
    std::vector<double> xi;
    std::vector<double> U;
    std::vector<double> V;
    double residual_norm = 0.0;   // filled by ode_residual()
};

/// Builds a profile from late-time snapshots of a front run. Each snapshot is
/// shifted so its own u = 1/2 crossing sits at xi = 0, resampled onto the
/// common xi window, and the snapshots are averaged. If any two aligned
/// snapshots differ by more than pairwise_tol in sup norm the run has not
/// settled onto a wave and ConvergenceError is thrown. Needs >= 2 snapshots
/// whose u-front is on the grid (else DomainError / ConvergenceError).
WaveProfile extract_profile(const ModelParams& p, double c_est,
                            const std::vector<SimState>& snapshots,
                            const Grid1D& grid, double pairwise_tol = 0.01);

/// Max norm of the traveling-wave equations on the profile's interior nodes,
///   U'' + c U' + U (1 - U - a V)   and   d V'' + c V' + r V (1 - V - b U),
/// with central differences. Stores the value in w.residual_norm and returns
/// it. Second-order small for a genuine wave; order one when c is wrong.
double ode_residual(WaveProfile& w, const ModelParams& p);

/// Which tail a fit describes and which quantity decays there.
enum class TailEnd { PlusInfinity, MinusInfinity };
enum class TailField { U, OneMinusV, V, OneMinusU };

const char* to_string(TailEnd e);
const char* to_string(TailField f);

/// Log-linear fit of one exponential tail against its predicted rate.
/// The fit window is the contiguous run of nodes nearest the relevant end
/// where the field lies in [band_lo, band_hi]. `resonance_biased` marks
/// fits whose competing rates coincide, where the extra factor xi in the
/// tail biases a pure log-linear slope.
struct TailFit {
    TailEnd end = TailEnd::PlusInfinity;
    TailField field = TailField::U;
    double rate = 0.0;        // fitted decay rate, positive
    double amplitude = 0.0;   // fitted prefactor
    double expected_rate = 0.0;
    double win_lo = 0.0;      // xi range of the points used
    double win_hi = 0.0;
    int points = 0;
    double r_squared = 0.0;
    bool resonance_biased = false;
};

/// Fits the four tails (U and 1-V at +inf, V and 1-U at -inf) and pairs each
/// with the rate predicted for speed w.c: sigma_u_plus, min(sigma_u_plus,
/// sigma_v_plus), mu_v_plus, min(mu_u_plus, mu_v_plus). Requires the Bistable
/// regime; throws WindowError when a band holds fewer than 5 points.
std::vector<TailFit> fit_decay_rates(const WaveProfile& w, const ModelParams& p,
                                     double band_lo = 1e-6, double band_hi = 1e-2);

/// Structural checks on an extracted profile.
struct ProfileInvariantReport {
    bool u_monotone = false;      // U non-increasing up to `slack`
    bool v_monotone = false;      // V non-decreasing up to `slack`
    bool range_ok = false;        // both fields within [-slack, 1 + slack]
    bool endpoints_ok = false;    // U: left >= 0.95, right <= 0.05; V mirrored
    double worst_u_step = 0.0;    // largest increase of U between neighbors
    double worst_v_step = 0.0;    // largest decrease of V between neighbors
    double u_left = 0.0, u_right = 0.0, v_left = 0.0, v_right = 0.0;
    bool all_ok = false;
};

ProfileInvariantReport profile_invariants(const WaveProfile& w,
                                          double slack = 1e-6);

/// Speed measurement plus settled profile from one interface experiment.
struct MeasuredWave {
    SpeedEstimate speed;
    WaveProfile profile;
};

/// Runs the half-line interface to the estimator's stopping time, captures
/// n_snapshots states spaced snapshot_spacing apart at the end of the run,
/// and extracts the averaged profile (with ode_residual already filled).
/// Requires the Bistable or Degenerate regime.
MeasuredWave measure_wave_profile(const ModelParams& p, const LabConfig& lab,
                                  int n_snapshots = 3,
                                  double snapshot_spacing = 10.0);

} // namespace frontlab
