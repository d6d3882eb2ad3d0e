#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "frontlab/grid.hpp"
#include "frontlab/model.hpp"

namespace frontlab {

enum class Scheme {
    ExplicitEuler,          ///< forward Euler, central differences
    SemiImplicitDiffusion,  ///< implicit diffusion (tridiagonal), explicit reaction
};

enum class Boundary { NeumannZeroFlux };

/// Time-stepping configuration. For ExplicitEuler positivity requires the
/// joint bound dt <= 1 / (2 max(1, d)/dx^2 + L_reac) with
/// L_reac = max(3 + a, r (3 + b)), which implies the usual separate caps
/// dt <= dx^2/(2 max(1, d)) and dt <= 0.25/L_reac; SemiImplicitDiffusion
/// only needs the reaction bound. See max_stable_dt().
struct SchemeConfig {
    double dt = 0.01;
    Scheme scheme = Scheme::ExplicitEuler;
    Boundary bc = Boundary::NeumannZeroFlux;
};

/// Lipschitz bound of the reaction terms on the invariant rectangle [0,1]^2.
double reaction_lipschitz(const ModelParams& p);

/// Largest dt the scheme tolerates for these parameters on this grid.
double max_stable_dt(const ModelParams& p, const Grid1D& grid, Scheme scheme);

/// Semigroup state: both fields sampled on the grid at time t.
struct SimState {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

/// Which field a front query refers to.
enum class Field { U, V };

/// Time series of level-set front positions. Positions are absent whenever
/// the level line does not cross the grid.
struct FrontTrace {
    struct Sample {
        double t = 0.0;
        std::optional<double> pos_u;
        std::optional<double> pos_v;
    };
    std::vector<Sample> samples;
};

enum class InitKind {
    CompactInvasion,   ///< u: smoothed bump near the left end, v = 1 everywhere
    HalfLineInterface, ///< u: smoothed step 1 -> 0 at x = 0, v = 1 - u
};

/// Builds initial data. Ramps are cosine-smoothed over 10 grid spacings.
/// Throws GeometryError when width >= span/4 (the bump must fit well inside).
SimState init_front_data(const Grid1D& grid, InitKind kind, double width);

/// Field equal to 1 on the middle of [lo, hi], falling to 0 at both ends
/// through half-cosine ramps of the given width. Useful for assembling
/// single-species (Fisher/KPP) reduction experiments by hand. Throws
/// GeometryError unless lo + 2 ramp <= hi and ramp > 0.
std::vector<double> smoothed_plateau(const Grid1D& grid, double lo, double hi,
                                     double ramp);

/// Advances the state by one time step. The caller is responsible for a
/// CFL-stable dt (see max_stable_dt); values escaping [ -1e-12, 1 + 1e-12 ]
/// raise StabilityError, smaller overshoots are clipped onto [0, 1].
SimState step(const SimState& s, const ModelParams& p, const SchemeConfig& cfg,
              const Grid1D& grid);

/// Runs from s0 to t_end, recording level-1/2 front positions of both fields
/// every sample_every steps (plus the initial and final states). t_end equal
/// to s0.t returns s0 with a single-sample trace; t_end below s0.t throws
/// DomainError.
std::pair<SimState, FrontTrace> run(const SimState& s0, const ModelParams& p,
                                    const SchemeConfig& cfg, const Grid1D& grid,
                                    double t_end, int sample_every);

/// Level crossing of a front. For U: the rightmost node i with u_i >= level,
/// position interpolated linearly between nodes i and i+1. For V: the
/// leftmost node j with v_j >= level, interpolated between j-1 and j (the
/// v-interface seen from the invaded side). Returns nullopt when no crossing
/// exists.
std::optional<double> front_position(const SimState& s, const Grid1D& grid,
                                     Field field, double level);

} // namespace frontlab
