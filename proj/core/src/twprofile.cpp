#include "frontlab/twprofile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "frontlab/errors.hpp"
#include "frontlab/linefit.hpp"

namespace frontlab {

namespace {

double lerp_at(const std::vector<double>& f, const Grid1D& g, double x) {
    const double s = (x - g.x_min) / g.dx();
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, g.n - 2);
    const double frac = s - static_cast<double>(i);
    return (1.0 - frac) * f[static_cast<size_t>(i)] +
           frac * f[static_cast<size_t>(i) + 1];
}

} // namespace

const char* to_string(TailEnd e) {
    switch (e) {
        case TailEnd::PlusInfinity: return "+inf";
        case TailEnd::MinusInfinity: return "-inf";
    }
    return "?";
}

const char* to_string(TailField f) {
    switch (f) {
        case TailField::U: return "U";
        case TailField::OneMinusV: return "1-V";
        case TailField::V: return "V";
        case TailField::OneMinusU: return "1-U";
    }
    return "?";
}

WaveProfile extract_profile(const ModelParams& p, double c_est,
                            const std::vector<SimState>& snapshots,
                            const Grid1D& grid, double pairwise_tol) {
    p.validate();
    grid.validate();
    if (!std::isfinite(c_est)) throw DomainError("extract_profile: c_est not finite");
    if (snapshots.size() < 2) {
        throw DomainError("extract_profile needs at least 2 snapshots");
    }

    const size_t n_snap = snapshots.size();
    std::vector<double> shift(n_snap);
    for (size_t k = 0; k < n_snap; ++k) {
        if (static_cast<int>(snapshots[k].u.size()) != grid.n ||
            static_cast<int>(snapshots[k].v.size()) != grid.n) {
            throw DomainError("extract_profile: snapshot size does not match grid");
        }
        const auto pos = front_position(snapshots[k], grid, Field::U, 0.5);
        if (!pos) {
            std::ostringstream msg;
            msg << "extract_profile: snapshot " << k
                << " has no u = 1/2 crossing on the grid";
            throw ConvergenceError(msg.str());
        }
        shift[k] = *pos;
    }

    // Window of xi shared by every shifted snapshot, pulled in one spacing so
    // interpolation stays interior.
    const double dx = grid.dx();
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < n_snap; ++k) {
        lo = std::max(lo, grid.x_min - shift[k]);
        hi = std::min(hi, grid.x_max - shift[k]);
    }
    lo += dx;
    hi -= dx;
    const long j0 = static_cast<long>(std::ceil(lo / dx - 1e-9));
    const long j1 = static_cast<long>(std::floor(hi / dx + 1e-9));
    const long m = j1 - j0 + 1;
    if (m < 16) {
        throw WindowError("extract_profile: aligned snapshots share too few nodes");
    }

    WaveProfile w;
    w.c = c_est;
    w.xi.resize(static_cast<size_t>(m));
    w.U.assign(static_cast<size_t>(m), 0.0);
    w.V.assign(static_cast<size_t>(m), 0.0);
    for (long j = 0; j < m; ++j) {
        w.xi[static_cast<size_t>(j)] = static_cast<double>(j0 + j) * dx;
    }

    std::vector<std::vector<double>> us(n_snap), vs(n_snap);
    for (size_t k = 0; k < n_snap; ++k) {
        us[k].resize(static_cast<size_t>(m));
        vs[k].resize(static_cast<size_t>(m));
        for (long j = 0; j < m; ++j) {
            const double x = w.xi[static_cast<size_t>(j)] + shift[k];
            us[k][static_cast<size_t>(j)] = lerp_at(snapshots[k].u, grid, x);
            vs[k][static_cast<size_t>(j)] = lerp_at(snapshots[k].v, grid, x);
        }
    }

    double worst_dev = 0.0;
    for (size_t k = 0; k + 1 < n_snap; ++k) {
        for (size_t l = k + 1; l < n_snap; ++l) {
            for (long j = 0; j < m; ++j) {
                const auto jj = static_cast<size_t>(j);
                worst_dev = std::max(worst_dev, std::abs(us[k][jj] - us[l][jj]));
                worst_dev = std::max(worst_dev, std::abs(vs[k][jj] - vs[l][jj]));
            }
        }
    }
    if (worst_dev > pairwise_tol) {
        std::ostringstream msg;
        msg << "aligned snapshots still differ by " << worst_dev << " (tol "
            << pairwise_tol << "); the run has not settled onto a wave";
        throw ConvergenceError(msg.str());
    }

    for (long j = 0; j < m; ++j) {
        const auto jj = static_cast<size_t>(j);
        double su = 0.0, sv = 0.0;
        for (size_t k = 0; k < n_snap; ++k) {
            su += us[k][jj];
            sv += vs[k][jj];
        }
        w.U[jj] = su / static_cast<double>(n_snap);
        w.V[jj] = sv / static_cast<double>(n_snap);
    }
    return w;
}

double ode_residual(WaveProfile& w, const ModelParams& p) {
    p.validate();
    const size_t m = w.xi.size();
    if (m < 3 || w.U.size() != m || w.V.size() != m) {
        throw DomainError("ode_residual: profile needs >= 3 consistent nodes");
    }
    const double h = w.xi[1] - w.xi[0];
    double worst = 0.0;
    for (size_t i = 1; i + 1 < m; ++i) {
        const double d2u = (w.U[i - 1] - 2.0 * w.U[i] + w.U[i + 1]) / (h * h);
        const double d1u = (w.U[i + 1] - w.U[i - 1]) / (2.0 * h);
        const double d2v = (w.V[i - 1] - 2.0 * w.V[i] + w.V[i + 1]) / (h * h);
        const double d1v = (w.V[i + 1] - w.V[i - 1]) / (2.0 * h);
        const double ru =
            d2u + w.c * d1u + w.U[i] * (1.0 - w.U[i] - p.a * w.V[i]);
        const double rv = p.d * d2v + w.c * d1v +
                          p.r * w.V[i] * (1.0 - w.V[i] - p.b * w.U[i]);
        worst = std::max({worst, std::abs(ru), std::abs(rv)});
    }
    w.residual_norm = worst;
    return worst;
}

namespace {

struct TailWindow {
    std::vector<double> xs, logs;
    double win_lo = 0.0, win_hi = 0.0;
};

/// Contiguous run of nodes nearest the chosen end whose values lie inside
/// [band_lo, band_hi]. Values below band_lo (the numerical floor) are skipped
/// first; the run ends at the first value outside the band.
TailWindow collect_band(const std::vector<double>& xi, const std::vector<double>& q,
                        TailEnd end, double band_lo, double band_hi) {
    const int m = static_cast<int>(xi.size());
    int lo_idx = 0, hi_idx = -1;
    if (end == TailEnd::PlusInfinity) {
        int i = m - 1;
        while (i >= 0 && q[static_cast<size_t>(i)] < band_lo) --i;
        hi_idx = i;
        while (i >= 0 && q[static_cast<size_t>(i)] >= band_lo &&
               q[static_cast<size_t>(i)] <= band_hi) {
            --i;
        }
        lo_idx = i + 1;
    } else {
        int i = 0;
        while (i < m && q[static_cast<size_t>(i)] < band_lo) ++i;
        lo_idx = i;
        while (i < m && q[static_cast<size_t>(i)] >= band_lo &&
               q[static_cast<size_t>(i)] <= band_hi) {
            ++i;
        }
        hi_idx = i - 1;
    }
    TailWindow win;
    for (int j = lo_idx; j <= hi_idx; ++j) {
        win.xs.push_back(xi[static_cast<size_t>(j)]);
        win.logs.push_back(std::log(q[static_cast<size_t>(j)]));
    }
    if (!win.xs.empty()) {
        win.win_lo = win.xs.front();
        win.win_hi = win.xs.back();
    }
    return win;
}

} // namespace

std::vector<TailFit> fit_decay_rates(const WaveProfile& w, const ModelParams& p,
                                     double band_lo, double band_hi) {
    if (!(band_lo > 0.0 && band_lo < band_hi && band_hi < 1.0)) {
        throw DomainError("fit_decay_rates: need 0 < band_lo < band_hi < 1");
    }
    const size_t m = w.xi.size();
    if (m < 8 || w.U.size() != m || w.V.size() != m) {
        throw DomainError("fit_decay_rates: profile too short or inconsistent");
    }
    const DecayRates rates = decay_rates_formula(p, w.c);
    const auto close = [](double x, double y) {
        const double scale = std::max({std::abs(x), std::abs(y), 1.0});
        return std::abs(x - y) <= 1e-9 * scale;
    };
    const bool plus_resonant = close(rates.sigma_u_plus, rates.sigma_v_plus);
    const bool minus_resonant = close(rates.mu_u_plus, rates.mu_v_plus);

    std::vector<double> one_minus_u(m), one_minus_v(m);
    for (size_t i = 0; i < m; ++i) {
        one_minus_u[i] = 1.0 - w.U[i];
        one_minus_v[i] = 1.0 - w.V[i];
    }

    struct Plan {
        TailEnd end;
        TailField field;
        const std::vector<double>* q;
        double expected;
        bool biased;
    };
    const Plan plans[4] = {
        {TailEnd::PlusInfinity, TailField::U, &w.U, rates.sigma_u_plus, false},
        {TailEnd::PlusInfinity, TailField::OneMinusV, &one_minus_v,
         std::min(rates.sigma_u_plus, rates.sigma_v_plus), plus_resonant},
        {TailEnd::MinusInfinity, TailField::V, &w.V, rates.mu_v_plus, false},
        {TailEnd::MinusInfinity, TailField::OneMinusU, &one_minus_u,
         std::min(rates.mu_u_plus, rates.mu_v_plus), minus_resonant},
    };

    std::vector<TailFit> fits;
    fits.reserve(4);
    for (const Plan& plan : plans) {
        const TailWindow win = collect_band(w.xi, *plan.q, plan.end, band_lo, band_hi);
        if (win.xs.size() < 5) {
            std::ostringstream msg;
            msg << "tail fit " << to_string(plan.field) << " at "
                << to_string(plan.end) << ": only " << win.xs.size()
                << " nodes inside [" << band_lo << ", " << band_hi << "], need 5";
            throw WindowError(msg.str());
        }
        const LineFit line = fit_line(win.xs, win.logs);
        const double rate =
            (plan.end == TailEnd::PlusInfinity) ? -line.slope : line.slope;
        if (!(rate > 0.0)) {
            std::ostringstream msg;
            msg << "tail " << to_string(plan.field) << " at " << to_string(plan.end)
                << " does not decay (fitted rate " << rate << ")";
            throw WindowError(msg.str());
        }
        TailFit fit;
        fit.end = plan.end;
        fit.field = plan.field;
        fit.rate = rate;
        fit.amplitude = std::exp(line.intercept);
        fit.expected_rate = plan.expected;
        fit.win_lo = win.win_lo;
        fit.win_hi = win.win_hi;
        fit.points = static_cast<int>(win.xs.size());
        fit.r_squared = line.r_squared;
        fit.resonance_biased = plan.biased;
        fits.push_back(fit);
    }
    return fits;
}

ProfileInvariantReport profile_invariants(const WaveProfile& w, double slack) {
    const size_t m = w.xi.size();
    if (m < 2 || w.U.size() != m || w.V.size() != m) {
        throw DomainError("profile_invariants: profile too short or inconsistent");
    }
    ProfileInvariantReport rep;
    double lo_u = w.U[0], hi_u = w.U[0], lo_v = w.V[0], hi_v = w.V[0];
    for (size_t i = 0; i + 1 < m; ++i) {
        rep.worst_u_step = std::max(rep.worst_u_step, w.U[i + 1] - w.U[i]);
        rep.worst_v_step = std::max(rep.worst_v_step, w.V[i] - w.V[i + 1]);
    }
    for (size_t i = 0; i < m; ++i) {
        lo_u = std::min(lo_u, w.U[i]);
        hi_u = std::max(hi_u, w.U[i]);
        lo_v = std::min(lo_v, w.V[i]);
        hi_v = std::max(hi_v, w.V[i]);
    }
    rep.u_left = w.U.front();
    rep.u_right = w.U.back();
    rep.v_left = w.V.front();
    rep.v_right = w.V.back();
    rep.u_monotone = rep.worst_u_step <= slack;
    rep.v_monotone = rep.worst_v_step <= slack;
    rep.range_ok = lo_u >= -slack && hi_u <= 1.0 + slack && lo_v >= -slack &&
                   hi_v <= 1.0 + slack;
    rep.endpoints_ok = rep.u_left >= 0.95 && rep.u_right <= 0.05 &&
                       rep.v_left <= 0.05 && rep.v_right >= 0.95;
    rep.all_ok =
        rep.u_monotone && rep.v_monotone && rep.range_ok && rep.endpoints_ok;
    return rep;
}

MeasuredWave measure_wave_profile(const ModelParams& p, const LabConfig& lab,
                                  int n_snapshots, double snapshot_spacing) {
    if (n_snapshots < 2) {
        throw DomainError("measure_wave_profile needs at least 2 snapshots");
    }
    if (!(snapshot_spacing > 0.0)) {
        throw DomainError("measure_wave_profile: snapshot_spacing must be positive");
    }
    const SpeedEstimate est = estimate_wave_speed_signed(p, lab);
    const double t_stop = est.t_end;
    const double t_first =
        t_stop - snapshot_spacing * static_cast<double>(n_snapshots - 1);
    if (!(t_first > 0.0)) {
        throw WindowError(
            "measure_wave_profile: snapshot schedule does not fit inside the run");
    }

    SchemeConfig cfg = lab.scheme;
    cfg.dt = lab.effective_dt(p);
    SimState s = init_front_data(lab.grid, InitKind::HalfLineInterface, lab.init_width);
    std::vector<SimState> snaps;
    snaps.reserve(static_cast<size_t>(n_snapshots));
    double t_next = t_first;
    for (int k = 0; k < n_snapshots; ++k) {
        auto [s_next, tr] = run(s, p, cfg, lab.grid, t_next, 1 << 30);
        s = std::move(s_next);
        snaps.push_back(s);
        t_next += snapshot_spacing;
    }

    MeasuredWave mw;
    mw.speed = est;
    mw.profile = extract_profile(p, est.value, snaps, lab.grid);
    ode_residual(mw.profile, p);
    return mw;
}

} // namespace frontlab
