#include "frontlab/speed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "frontlab/errors.hpp"
#include "frontlab/linefit.hpp"
#include "frontlab/parallel.hpp"

namespace frontlab {

namespace {

double sup_norm(const std::vector<double>& f) {
    double m = 0.0;
    for (double x : f) m = std::max(m, x);
    return m;
}

/// Drives a front experiment in chunks, concatenating the trace. Stops at
/// lab.t_end, or early when the tracked front enters the boundary margin, or
/// (for invasion runs) throws once sup u falls below the extinction level.
FrontTrace run_until_stop(const ModelParams& p, const LabConfig& lab, InitKind kind,
                          bool check_extinction) {
    p.validate();
    lab.grid.validate();
    SchemeConfig cfg = lab.scheme;
    cfg.dt = lab.effective_dt(p);
    const long long sample_every =
        std::max<long long>(1, std::llround(lab.sample_dt / cfg.dt));
    const double sample_spacing = static_cast<double>(sample_every) * cfg.dt;

    SimState s = init_front_data(lab.grid, kind, lab.init_width);
    const double pos0 =
        front_position(s, lab.grid, Field::U, 0.5).value_or(lab.grid.x_min);

    // Chunks are whole multiples of the sample spacing so the concatenated
    // trace stays evenly spaced across chunk boundaries.
    const double chunk_raw = std::max(8.0 * sample_spacing, lab.t_end / 40.0);
    const double chunk =
        sample_spacing * std::ceil(chunk_raw / sample_spacing - 1e-9);
    const double hi_stop = lab.grid.x_max - lab.boundary_margin;
    const double lo_stop = lab.grid.x_min + lab.boundary_margin;

    FrontTrace all;
    while (s.t < lab.t_end - 1e-9) {
        const double t_target = std::min(s.t + chunk, lab.t_end);
        auto [s_next, tr] =
            run(s, p, cfg, lab.grid, t_target, static_cast<int>(sample_every));
        s = std::move(s_next);
        for (const auto& smp : tr.samples) {
            if (!all.samples.empty() && smp.t <= all.samples.back().t + 1e-12) continue;
            all.samples.push_back(smp);
        }
        if (check_extinction) {
            const double sup_u = sup_norm(s.u);
            if (sup_u < lab.extinction_sup) {
                std::ostringstream msg;
                msg << "invading species collapsed: sup u = " << sup_u << " < "
                    << lab.extinction_sup << " at t = " << s.t;
                throw ExtinctionError(msg.str());
            }
        }
        const auto pos = front_position(s, lab.grid, Field::U, 0.5);
        if (pos) {
            if (*pos > hi_stop) break;                      // approaching the right wall
            if (*pos < lo_stop && *pos < pos0 - 1.0) break; // retreated into the left wall
        }
    }
    return all;
}

struct FitOutcome {
    double slope = 0.0;
    double se = 0.0;
    double t_start = 0.0;
    double t_end = 0.0;
    int n = 0;
};

/// Post-transient least-squares slope of one front trace. The error bar is
/// the larger of the OLS slope error and half the spread of four block-wise
/// slopes, so leftover curvature is not reported as precision.
std::optional<FitOutcome> fit_front(const FrontTrace& tr, Field field,
                                    const LabConfig& lab) {
    if (tr.samples.empty()) return std::nullopt;
    const double t_first = tr.samples.front().t;
    const double t_last = tr.samples.back().t;
    const double t_cut = t_first + lab.transient_fraction * (t_last - t_first);

    std::vector<double> ts, ps;
    for (const auto& smp : tr.samples) {
        const auto& pos = (field == Field::U) ? smp.pos_u : smp.pos_v;
        if (smp.t >= t_cut - 1e-12 && pos) {
            ts.push_back(smp.t);
            ps.push_back(*pos);
        }
    }
    const int n = static_cast<int>(ts.size());
    if (n < lab.min_samples || n < 2) return std::nullopt;

    const LineFit full = fit_line(ts, ps);
    double se = full.stderr_slope;
    if (n >= 8) {
        double lo_slope = 0.0, hi_slope = 0.0;
        for (int b = 0; b < 4; ++b) {
            const int lo = b * n / 4;
            const int hi = (b + 1) * n / 4;
            const std::vector<double> bt(ts.begin() + lo, ts.begin() + hi);
            const std::vector<double> bp(ps.begin() + lo, ps.begin() + hi);
            const LineFit blk = fit_line(bt, bp);
            if (b == 0) {
                lo_slope = hi_slope = blk.slope;
            } else {
                lo_slope = std::min(lo_slope, blk.slope);
                hi_slope = std::max(hi_slope, blk.slope);
            }
        }
        se = std::max(se, 0.5 * (hi_slope - lo_slope));
    }
    return FitOutcome{full.slope, se, ts.front(), ts.back(), n};
}

[[noreturn]] void throw_window(const char* what, int got, int need) {
    std::ostringstream msg;
    msg << what << ": only " << got << " usable front samples, need " << need;
    throw WindowError(msg.str());
}

} // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::InvasionFront: return "InvasionFront";
        case Method::InterfaceDrift: return "InterfaceDrift";
    }
    return "?";
}

const char* to_string(Selection s) {
    switch (s) {
        case Selection::Linear: return "Linear";
        case Selection::Nonlinear: return "Nonlinear";
        case Selection::Inconclusive: return "Inconclusive";
    }
    return "?";
}

double LabConfig::effective_dt(const ModelParams& p) const {
    return std::min(scheme.dt, max_stable_dt(p, grid, scheme.scheme));
}

SpeedEstimate estimate_spreading_speed(const ModelParams& p, const LabConfig& lab) {
    p.validate();
    if (classify_regime(p) == Regime::OutOfScope) {
        throw RegimeError(
            "spreading-speed estimate requires b > 1 (invaded state unstable to u)");
    }
    const FrontTrace tr = run_until_stop(p, lab, InitKind::CompactInvasion, true);
    const auto fu = fit_front(tr, Field::U, lab);
    if (!fu) {
        int usable = 0;
        for (const auto& s : tr.samples) usable += s.pos_u.has_value();
        throw_window("spreading-speed fit", usable, lab.min_samples);
    }
    SpeedEstimate est;
    est.value = fu->slope;
    est.std_err = fu->se;
    est.t_start = fu->t_start;
    est.t_end = fu->t_end;
    est.method = Method::InvasionFront;
    est.samples_used = fu->n;
    if (const auto fv = fit_front(tr, Field::V, lab)) {
        est.flagged = std::abs(fu->slope - fv->slope) > 3.0 * (fu->se + fv->se);
    }
    return est;
}

SpeedEstimate estimate_wave_speed_signed(const ModelParams& p, const LabConfig& lab) {
    p.validate();
    const Regime reg = classify_regime(p);
    if (reg != Regime::Bistable && reg != Regime::Degenerate) {
        std::ostringstream msg;
        msg << "signed interface speed requires the Bistable or Degenerate regime, got "
            << to_string(reg);
        throw RegimeError(msg.str());
    }
    const FrontTrace tr = run_until_stop(p, lab, InitKind::HalfLineInterface, false);
    const auto fu = fit_front(tr, Field::U, lab);
    if (!fu) {
        int usable = 0;
        for (const auto& s : tr.samples) usable += s.pos_u.has_value();
        throw_window("interface-drift fit", usable, lab.min_samples);
    }
    SpeedEstimate est;
    est.value = fu->slope;
    est.std_err = fu->se;
    est.t_start = fu->t_start;
    est.t_end = fu->t_end;
    est.method = Method::InterfaceDrift;
    est.samples_used = fu->n;
    return est;
}

SignProbe probe_sign_of_wave_speed(const ModelParams& p, const LabConfig& lab) {
    const Sign closed = guo_lin_sign(p);
    if (closed.value != SignValue::Unknown) return {closed, std::nullopt};
    const SpeedEstimate est = estimate_wave_speed_signed(p, lab);
    SignValue v = SignValue::Zero;
    if (std::abs(est.value) > lab.zero_band) {
        v = est.value > 0.0 ? SignValue::Positive : SignValue::Negative;
    }
    return {Sign{v, SignSource::Numeric}, est};
}

Sign sign_of_wave_speed(const ModelParams& p, const LabConfig& lab) {
    return probe_sign_of_wave_speed(p, lab).sign;
}

ThresholdResult find_sign_threshold(double a_lo, double a_hi, double b, double r,
                                    double d, const LabConfig& lab) {
    if (!(std::isfinite(a_lo) && std::isfinite(a_hi) && a_lo < a_hi)) {
        throw DomainError("sign threshold needs a finite bracket with a_lo < a_hi");
    }
    if (!(lab.tol_a > 0.0)) throw DomainError("tol_a must be positive");

    ThresholdResult res;
    auto probe = [&](double a) {
        ModelParams q;
        q.a = a;
        q.b = b;
        q.r = r;
        q.d = d;
        const SignProbe sp = probe_sign_of_wave_speed(q, lab);
        res.evaluations.push_back({a, sp.sign, sp.estimate});
        return sp.sign.value;
    };

    double lo = a_lo, hi = a_hi;
    const SignValue s_lo = probe(lo);
    const SignValue s_hi = probe(hi);
    if (s_lo == SignValue::Zero) {
        res.a_star = lo;
        hi = lo;
    } else if (s_hi == SignValue::Zero) {
        res.a_star = hi;
        lo = hi;
    } else {
        if (s_lo != SignValue::Positive || s_hi != SignValue::Negative) {
            std::ostringstream msg;
            msg << "bracket endpoints must give Positive at a_lo and Negative at a_hi, got "
                << to_string(s_lo) << " at " << a_lo << " and " << to_string(s_hi)
                << " at " << a_hi;
            throw BracketError(msg.str());
        }
        bool pinned = false;
        while (hi - lo > lab.tol_a) {
            const double mid = 0.5 * (lo + hi);
            const SignValue sm = probe(mid);
            if (sm == SignValue::Zero) {
                res.a_star = mid;
                lo = hi = mid;
                pinned = true;
                break;
            }
            if (sm == SignValue::Positive) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (!pinned) res.a_star = 0.5 * (lo + hi);
    }
    res.bracket_lo = lo;
    res.bracket_hi = hi;

    // The wave speed decreases in a; numeric estimates should respect that
    // within their error bars.
    std::vector<std::pair<double, const SpeedEstimate*>> numeric;
    for (const auto& e : res.evaluations) {
        if (e.estimate) numeric.emplace_back(e.a, &*e.estimate);
    }
    std::sort(numeric.begin(), numeric.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (size_t i = 0; i + 1 < numeric.size(); ++i) {
        const auto& cur = *numeric[i].second;
        const auto& nxt = *numeric[i + 1].second;
        if (nxt.value > cur.value + 2.0 * (cur.std_err + nxt.std_err)) {
            res.monotone_ok = false;
        }
    }
    return res;
}

ScanResult continuity_scan(const std::vector<double>& a_values, double b, double r,
                           double d, const LabConfig& lab) {
    if (a_values.empty()) throw DomainError("continuity scan needs a values");
    if (!(b > 1.0)) throw DomainError("continuity scan requires b > 1");
    for (double a : a_values) {
        if (!(std::isfinite(a) && a > 0.0)) {
            throw DomainError("continuity scan requires every a > 0");
        }
    }
    std::vector<double> as = a_values;
    std::sort(as.begin(), as.end());

    ScanResult res;
    res.entries.resize(as.size());
    parallel_for_indexed(static_cast<int>(as.size()), lab.workers, [&](int i) {
        ModelParams q;
        q.a = as[static_cast<size_t>(i)];
        q.b = b;
        q.r = r;
        q.d = d;
        ScanEntry e;
        e.a = q.a;
        if (q.a <= 1.0) {
            e.estimate = estimate_spreading_speed(q, lab);
            if (q.a == 1.0) e.secondary = estimate_wave_speed_signed(q, lab);
        } else {
            e.estimate = estimate_wave_speed_signed(q, lab);
        }
        res.entries[static_cast<size_t>(i)] = std::move(e);
    });

    for (size_t i = 0; i + 1 < res.entries.size(); ++i) {
        const auto& cur = res.entries[i].estimate;
        const auto& nxt = res.entries[i + 1].estimate;
        res.max_adjacent_jump =
            std::max(res.max_adjacent_jump, std::abs(nxt.value - cur.value));
        if (nxt.value > cur.value + 2.0 * (cur.std_err + nxt.std_err)) {
            res.monotone_ok = false;
        }
    }
    for (const auto& e : res.entries) {
        if (e.secondary &&
            std::abs(e.estimate.value - e.secondary->value) >
                3.0 * (e.estimate.std_err + e.secondary->std_err)) {
            res.methods_agree = false;
        }
    }
    return res;
}

SelectionVerdict selection_classifier(const ModelParams& p, const LabConfig& lab) {
    p.validate();
    const Regime reg = classify_regime(p);
    if (reg != Regime::Monostable && reg != Regime::Degenerate) {
        std::ostringstream msg;
        msg << "selection classification requires a <= 1 (got regime "
            << to_string(reg) << ")";
        throw RegimeError(msg.str());
    }
    SelectionVerdict out;
    out.c_linear = linear_speed(p.a);
    out.estimate = estimate_spreading_speed(p, lab);
    out.excess = out.estimate.value - out.c_linear;
    if (out.excess > lab.margin_threshold + 2.0 * out.estimate.std_err) {
        out.verdict = Selection::Nonlinear;
    } else if (std::abs(out.excess) <= lab.margin_threshold) {
        out.verdict = Selection::Linear;
    } else {
        out.verdict = Selection::Inconclusive;
    }
    return out;
}

} // namespace frontlab
