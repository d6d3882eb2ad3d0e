#pragma once

#include <string>

#include "frontlab/errors.hpp"

namespace frontlab {

/// Parameters of the two-species competition-diffusion system
///
///   u_t = u_xx + u (1 - u - a v)
///   v_t = d v_xx + r v (1 - v - b u)
///
/// a, b are the interspecific competition coefficients, r the growth rate
/// and d the diffusivity of the second species. All four must be positive.
struct ModelParams {
    double a = 1.0;
    double b = 2.0;
    double r = 1.0;
    double d = 1.0;

    /// Throws DomainError unless all four parameters are positive and finite.
    void validate() const;
};

/// Competition regime as seen from the invading species u.
enum class Regime {
    Monostable, ///< 0 < a < 1, b > 1: (0,1) unstable, u can always invade
    Degenerate, ///< a = 1, b > 1: the u-invasion eigenvalue degenerates
    Bistable,   ///< a > 1, b > 1: both single-species states are stable
    OutOfScope, ///< anything else (coexistence / founder-control not covered)
};

enum class SignValue { Positive, Negative, Zero, Unknown };
enum class SignSource { ClosedForm, Numeric };

/// Sign of the bistable wave speed together with how it was obtained.
struct Sign {
    SignValue value = SignValue::Unknown;
    SignSource source = SignSource::ClosedForm;
};

/// Exponential rates of the traveling-wave tails for speed c.
///
/// At +inf (u-side tail): U ~ e^(-sigma_u_plus xi) and the v-deficit 1-V decays
/// with the slower of sigma_u_plus and sigma_v_plus. At -inf: V ~ e^(mu_v_plus xi)
/// and 1-U decays with the slower of mu_u_plus and mu_v_plus. `resonance` is set
/// when either competing pair coincides; the degenerate tail then carries an
/// extra factor xi, which biases a pure log-linear fit.
struct DecayRates {
    double sigma_u_plus = 0.0;
    double sigma_v_plus = 0.0;
    double mu_u_plus = 0.0;
    double mu_v_plus = 0.0;
    bool resonance = false;
};

/// Classifies (a, b) into the regime taxonomy above. Throws DomainError on
/// nonpositive parameters.
Regime classify_regime(const ModelParams& p);

/// Linearly selected invasion speed 2 sqrt(1 - a) for 0 < a <= 1.
/// Throws DomainError outside that range (there is no linear speed for a > 1).
double linear_speed(double a);

/// A-priori bounds [-2 sqrt(d r), 2] containing the unique bistable wave
/// speed. Throws RegimeError unless the regime is Bistable.
struct SpeedBounds {
    double lo = 0.0;
    double hi = 0.0;
};
SpeedBounds kanon_bounds(const ModelParams& p);

/// Closed-form sign of the bistable wave speed where the comparison clauses
/// decide it:
///   r = d : sign is sign(b - a)
///   r > d : Positive when b >= r^2 a / d^2
///   r < d : Negative when a >= d^2 b / r^2
/// Everything else returns Unknown rather than guessing. Throws RegimeError
/// unless the regime is Bistable.
Sign guo_lin_sign(const ModelParams& p);

/// Tail decay rates of a bistable wave with speed c:
///   sigma_u_plus = (c + sqrt(c^2 + 4(a-1))) / 2
///   sigma_v_plus = (c + sqrt(c^2 + 4 r d)) / (2 d)
///   mu_u_plus    = (-c + sqrt(c^2 + 4)) / 2
///   mu_v_plus    = (-c + sqrt(c^2 + 4 r d (b-1))) / (2 d)
/// `resonance_rel_tol` is the relative tolerance for flagging coinciding
/// competing rates. Throws RegimeError unless the regime is Bistable.
DecayRates decay_rates_formula(const ModelParams& p, double c,
                               double resonance_rel_tol = 1e-9);

/// Spreading speed 2 sqrt(d r) of the single-species v-front.
/// Throws DomainError unless r and d are positive.
double fisher_speed(double r, double d);

const char* to_string(Regime regime);
const char* to_string(SignValue value);
const char* to_string(SignSource source);

} // namespace frontlab
