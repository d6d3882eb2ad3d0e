#include "frontlab/model.hpp"

#include <cmath>
#include <sstream>

namespace frontlab {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

} // namespace

void ModelParams::validate() const {
    if (!positive_finite(a) || !positive_finite(b) || !positive_finite(r) ||
        !positive_finite(d)) {
        std::ostringstream msg;
        msg << "model parameters must be positive and finite, got a=" << a
            << " b=" << b << " r=" << r << " d=" << d;
        throw DomainError(msg.str());
    }
}

Regime classify_regime(const ModelParams& p) {
    p.validate();
    if (p.b > 1.0) {
        if (p.a > 1.0) return Regime::Bistable;
        if (p.a == 1.0) return Regime::Degenerate;
        return Regime::Monostable;
    }
    return Regime::OutOfScope;
}

double linear_speed(double a) {
    if (!std::isfinite(a) || a <= 0.0 || a > 1.0) {
        std::ostringstream msg;
        msg << "linear_speed requires 0 < a <= 1, got a=" << a;
        throw DomainError(msg.str());
    }
    return 2.0 * std::sqrt(1.0 - a);
}

namespace {

void require_bistable(const ModelParams& p, const char* op) {
    Regime regime = classify_regime(p);
    if (regime != Regime::Bistable) {
        std::ostringstream msg;
        msg << op << " requires the Bistable regime (a > 1, b > 1), got a="
            << p.a << " b=" << p.b << " (" << to_string(regime) << ")";
        throw RegimeError(msg.str());
    }
}

} // namespace

SpeedBounds kanon_bounds(const ModelParams& p) {
    require_bistable(p, "kanon_bounds");
    return SpeedBounds{-2.0 * std::sqrt(p.d * p.r), 2.0};
}

Sign guo_lin_sign(const ModelParams& p) {
    require_bistable(p, "guo_lin_sign");
    Sign sign;
    sign.source = SignSource::ClosedForm;
    if (p.r == p.d) {
        if (p.b > p.a) {
            sign.value = SignValue::Positive;
        } else if (p.a > p.b) {
            sign.value = SignValue::Negative;
        } else {
            sign.value = SignValue::Zero;
        }
    } else if (p.r > p.d) {
        sign.value = (p.b >= p.r * p.r * p.a / (p.d * p.d))
                         ? SignValue::Positive
                         : SignValue::Unknown;
    } else {
        sign.value = (p.a >= p.d * p.d * p.b / (p.r * p.r))
                         ? SignValue::Negative
                         : SignValue::Unknown;
    }
    return sign;
}

DecayRates decay_rates_formula(const ModelParams& p, double c,
                               double resonance_rel_tol) {
    require_bistable(p, "decay_rates_formula");
    if (!std::isfinite(c)) throw DomainError("decay_rates_formula: c must be finite");

    DecayRates rates;
    rates.sigma_u_plus = (c + std::sqrt(c * c + 4.0 * (p.a - 1.0))) / 2.0;
    rates.sigma_v_plus = (c + std::sqrt(c * c + 4.0 * p.r * p.d)) / (2.0 * p.d);
    rates.mu_u_plus = (-c + std::sqrt(c * c + 4.0)) / 2.0;
    rates.mu_v_plus =
        (-c + std::sqrt(c * c + 4.0 * p.r * p.d * (p.b - 1.0))) / (2.0 * p.d);

    auto close = [resonance_rel_tol](double x, double y) {
        double scale = std::max({std::abs(x), std::abs(y), 1.0});
        return std::abs(x - y) <= resonance_rel_tol * scale;
    };
    rates.resonance = close(rates.sigma_u_plus, rates.sigma_v_plus) ||
                      close(rates.mu_u_plus, rates.mu_v_plus);
    return rates;
}

double fisher_speed(double r, double d) {
    if (!positive_finite(r) || !positive_finite(d)) {
        std::ostringstream msg;
        msg << "fisher_speed requires positive r and d, got r=" << r << " d=" << d;
        throw DomainError(msg.str());
    }
    return 2.0 * std::sqrt(d * r);
}

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::Monostable: return "monostable";
        case Regime::Degenerate: return "degenerate";
        case Regime::Bistable: return "bistable";
        case Regime::OutOfScope: return "out-of-scope";
    }
    return "unknown";
}

const char* to_string(SignValue value) {
    switch (value) {
        case SignValue::Positive: return "positive";
        case SignValue::Negative: return "negative";
        case SignValue::Zero: return "zero";
        case SignValue::Unknown: return "unknown";
    }
    return "unknown";
}

const char* to_string(SignSource source) {
    switch (source) {
        case SignSource::ClosedForm: return "closed-form";
        case SignSource::Numeric: return "numeric";
    }
    return "unknown";
}

} // namespace frontlab
