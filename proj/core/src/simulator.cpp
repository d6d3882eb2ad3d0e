#include "frontlab/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace frontlab {

namespace {

constexpr double kOvershootLimit = 1e-12;
constexpr double kRampNodes = 10.0; // cosine ramp length in grid spacings

void check_state(const SimState& s, const Grid1D& grid, const char* op) {
    if (s.u.size() != static_cast<size_t>(grid.n) ||
        s.v.size() != static_cast<size_t>(grid.n)) {
        std::ostringstream msg;
        msg << op << ": state size (" << s.u.size() << ", " << s.v.size()
            << ") does not match grid n=" << grid.n;
        throw DomainError(msg.str());
    }
}

/// Clips x onto [0, 1]; anything further out than the rounding allowance is a
/// blow-up and raises StabilityError.
double clip_or_throw(double x, double t, int node, const char* field) {
    if (x < -kOvershootLimit || x > 1.0 + kOvershootLimit || !std::isfinite(x)) {
        std::ostringstream msg;
        msg << "state left [0,1] at t=" << t << ", " << field << "[" << node
            << "]=" << x << " (unstable dt?)";
        throw StabilityError(msg.str());
    }
    return std::clamp(x, 0.0, 1.0);
}

void advance_explicit(const std::vector<double>& u, const std::vector<double>& v,
                      std::vector<double>& nu, std::vector<double>& nv,
                      const ModelParams& p, const Grid1D& grid, double dt,
                      double t_new) {
    const int n = grid.n;
    const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    for (int i = 0; i < n; ++i) {
        const double um = u[i > 0 ? i - 1 : 1];
        const double up = u[i < n - 1 ? i + 1 : n - 2];
        const double vm = v[i > 0 ? i - 1 : 1];
        const double vp = v[i < n - 1 ? i + 1 : n - 2];
        const double lap_u = (um - 2.0 * u[i] + up) * inv_dx2;
        const double lap_v = (vm - 2.0 * v[i] + vp) * inv_dx2;
        const double fu = u[i] * (1.0 - u[i] - p.a * v[i]);
        const double fv = p.r * v[i] * (1.0 - v[i] - p.b * u[i]);
        nu[i] = clip_or_throw(u[i] + dt * (lap_u + fu), t_new, i, "u");
        nv[i] = clip_or_throw(v[i] + dt * (p.d * lap_v + fv), t_new, i, "v");
    }
}

/// Solves (I - dt D Lap) x = rhs with zero-flux ends (Thomas algorithm).
void solve_diffusion(std::vector<double>& x, const std::vector<double>& rhs,
                     double mu, std::vector<double>& scratch) {
    const int n = static_cast<int>(rhs.size());
    const double diag = 1.0 + 2.0 * mu;
    // Forward sweep; the first and last rows carry the mirrored ghost node,
    // so their off-diagonal entry is -2 mu.
    scratch[0] = -2.0 * mu / diag;
    x[0] = rhs[0] / diag;
    for (int i = 1; i < n; ++i) {
        const double lower = (i == n - 1) ? -2.0 * mu : -mu;
        const double upper = -mu;
        const double denom = diag - lower * scratch[i - 1];
        scratch[i] = upper / denom;
        x[i] = (rhs[i] - lower * x[i - 1]) / denom;
    }
    for (int i = n - 2; i >= 0; --i) {
        x[i] -= scratch[i] * x[i + 1];
    }
}

void advance_semi_implicit(const std::vector<double>& u,
                           const std::vector<double>& v,
                           std::vector<double>& nu, std::vector<double>& nv,
                           std::vector<double>& rhs, std::vector<double>& scratch,
                           const ModelParams& p, const Grid1D& grid, double dt,
                           double t_new) {
    const int n = grid.n;
    const double inv_dx2 = 1.0 / (grid.dx() * grid.dx());
    for (int i = 0; i < n; ++i) {
        rhs[i] = u[i] + dt * u[i] * (1.0 - u[i] - p.a * v[i]);
    }
    solve_diffusion(nu, rhs, dt * inv_dx2, scratch);
    for (int i = 0; i < n; ++i) {
        rhs[i] = v[i] + dt * p.r * v[i] * (1.0 - v[i] - p.b * u[i]);
    }
    solve_diffusion(nv, rhs, dt * p.d * inv_dx2, scratch);
    for (int i = 0; i < n; ++i) {
        nu[i] = clip_or_throw(nu[i], t_new, i, "u");
        nv[i] = clip_or_throw(nv[i], t_new, i, "v");
    }
}

} // namespace

double reaction_lipschitz(const ModelParams& p) {
    return std::max(3.0 + p.a, p.r * (3.0 + p.b));
}

double max_stable_dt(const ModelParams& p, const Grid1D& grid, Scheme scheme) {
    p.validate();
    grid.validate();
    const double L = reaction_lipschitz(p);
    const double reaction_bound = 0.25 / L;
    if (scheme == Scheme::SemiImplicitDiffusion) return reaction_bound;
    const double dx = grid.dx();
    // Joint bound: every explicit update keeps a nonnegative center
    // coefficient, so [0,1]^2 is preserved node-by-node. Taking the
    // diffusion and reaction caps separately leaves a ~1e-12 positivity
    // escape when the diffusion part sits exactly at dt = dx^2/(2d).
    const double joint_bound =
        1.0 / (2.0 * std::max(1.0, p.d) / (dx * dx) + L);
    return std::min(joint_bound, reaction_bound);
}

SimState init_front_data(const Grid1D& grid, InitKind kind, double width) {
    grid.validate();
    if (!(std::isfinite(width) && width > 0.0) || width >= grid.span() / 4.0) {
        std::ostringstream msg;
        msg << "initial-data width must lie in (0, span/4), got width=" << width
            << " span=" << grid.span();
        throw GeometryError(msg.str());
    }

    const double ramp = kRampNodes * grid.dx();
    SimState s;
    s.t = 0.0;
    s.u.resize(grid.n);
    s.v.resize(grid.n);

    // Half-cosine rising from 0 at distance <= 0 to 1 at distance >= ramp.
    auto rise = [ramp](double dist) {
        if (dist <= 0.0) return 0.0;
        if (dist >= ramp) return 1.0;
        return 0.5 * (1.0 - std::cos(std::numbers::pi * dist / ramp));
    };

    if (kind == InitKind::CompactInvasion) {
        const double center = grid.x_min + width;
        const double lo = center - width / 2.0;
        const double hi = center + width / 2.0;
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.node(i);
            s.u[i] = std::min(rise(x - lo), rise(hi - x));
            s.v[i] = 1.0;
        }
    } else {
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.node(i);
            s.u[i] = rise(ramp / 2.0 - x);
            s.v[i] = 1.0 - s.u[i];
        }
    }
    return s;
}

std::vector<double> smoothed_plateau(const Grid1D& grid, double lo, double hi,
                                     double ramp) {
    grid.validate();
    if (!(std::isfinite(ramp) && ramp > 0.0) || !(lo + 2.0 * ramp <= hi)) {
        std::ostringstream msg;
        msg << "smoothed_plateau needs ramp > 0 and lo + 2 ramp <= hi, got lo="
            << lo << " hi=" << hi << " ramp=" << ramp;
        throw GeometryError(msg.str());
    }
    auto rise = [ramp](double dist) {
        if (dist <= 0.0) return 0.0;
        if (dist >= ramp) return 1.0;
        return 0.5 * (1.0 - std::cos(std::numbers::pi * dist / ramp));
    };
    std::vector<double> f(static_cast<size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        f[static_cast<size_t>(i)] = std::min(rise(x - lo), rise(hi - x));
    }
    return f;
}

SimState step(const SimState& s, const ModelParams& p, const SchemeConfig& cfg,
              const Grid1D& grid) {
    p.validate();
    grid.validate();
    check_state(s, grid, "step");
    if (!(std::isfinite(cfg.dt) && cfg.dt > 0.0)) {
        throw DomainError("step: dt must be positive");
    }

    SimState next;
    next.t = s.t + cfg.dt;
    next.u.resize(grid.n);
    next.v.resize(grid.n);
    if (cfg.scheme == Scheme::ExplicitEuler) {
        advance_explicit(s.u, s.v, next.u, next.v, p, grid, cfg.dt, next.t);
    } else {
        std::vector<double> rhs(grid.n), scratch(grid.n);
        advance_semi_implicit(s.u, s.v, next.u, next.v, rhs, scratch, p, grid,
                              cfg.dt, next.t);
    }
    return next;
}

std::pair<SimState, FrontTrace> run(const SimState& s0, const ModelParams& p,
                                    const SchemeConfig& cfg, const Grid1D& grid,
                                    double t_end, int sample_every) {
    p.validate();
    grid.validate();
    check_state(s0, grid, "run");
    if (!(std::isfinite(cfg.dt) && cfg.dt > 0.0)) {
        throw DomainError("run: dt must be positive");
    }
    if (sample_every < 1) throw DomainError("run: sample_every must be >= 1");
    if (!(std::isfinite(t_end)) || t_end < s0.t - 1e-12) {
        std::ostringstream msg;
        msg << "run: t_end=" << t_end << " lies before s0.t=" << s0.t;
        throw DomainError(msg.str());
    }

    const long long n_steps =
        std::llround(std::max(0.0, t_end - s0.t) / cfg.dt);

    SimState cur = s0;
    SimState next;
    next.u.resize(grid.n);
    next.v.resize(grid.n);
    std::vector<double> rhs, scratch;
    if (cfg.scheme == Scheme::SemiImplicitDiffusion) {
        rhs.resize(grid.n);
        scratch.resize(grid.n);
    }

    FrontTrace trace;
    auto record = [&](const SimState& s) {
        FrontTrace::Sample sample;
        sample.t = s.t;
        sample.pos_u = front_position(s, grid, Field::U, 0.5);
        sample.pos_v = front_position(s, grid, Field::V, 0.5);
        trace.samples.push_back(sample);
    };

    record(cur);
    for (long long k = 1; k <= n_steps; ++k) {
        next.t = cur.t + cfg.dt;
        if (cfg.scheme == Scheme::ExplicitEuler) {
            advance_explicit(cur.u, cur.v, next.u, next.v, p, grid, cfg.dt,
                             next.t);
        } else {
            advance_semi_implicit(cur.u, cur.v, next.u, next.v, rhs, scratch, p,
                                  grid, cfg.dt, next.t);
        }
        std::swap(cur, next);
        if (k % sample_every == 0 || k == n_steps) record(cur);
    }
    return {std::move(cur), std::move(trace)};
}

std::optional<double> front_position(const SimState& s, const Grid1D& grid,
                                     Field field, double level) {
    check_state(s, grid, "front_position");
    if (!(level > 0.0 && level < 1.0)) {
        throw DomainError("front_position: level must lie in (0, 1)");
    }
    const int n = grid.n;
    if (field == Field::U) {
        for (int i = n - 1; i >= 0; --i) {
            if (s.u[i] >= level) {
                if (i == n - 1) return std::nullopt;
                const double denom = s.u[i] - s.u[i + 1];
                return grid.node(i) + grid.dx() * (s.u[i] - level) / denom;
            }
        }
        return std::nullopt;
    }
    for (int j = 0; j < n; ++j) {
        if (s.v[j] >= level) {
            if (j == 0) return std::nullopt;
            const double denom = s.v[j] - s.v[j - 1];
            return grid.node(j - 1) +
                   grid.dx() * (level - s.v[j - 1]) / denom;
        }
    }
    return std::nullopt;
}

} // namespace frontlab
