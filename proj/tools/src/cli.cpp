#include "frontlab_cli/cli.hpp"

#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontlab/errors.hpp"
#include "frontlab/model.hpp"
#include "frontlab/simulator.hpp"
#include "frontlab/speed.hpp"
#include "frontlab/twprofile.hpp"
#include "frontlab/verify.hpp"
#include "frontlab_cli/io.hpp"
#include "frontlab_cli/manifest.hpp"
#include "frontlab_cli/svg.hpp"

namespace frontlab::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

/// Missing or inconsistent options; maps to exit code 2.
struct UsageFailure {
    std::string msg;
};

std::string flag_name(const std::string& key) {
    std::string f = "--" + key;
    for (char& c : f) {
        if (c == '_') c = '-';
    }
    return f;
}

// ---- config access -------------------------------------------------------

json load_config_file(const std::string& path) {
    json j = json::parse(read_text_file(path), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ParseError("config file must be a flat JSON object: " + path);
    }
    return j;
}

double num_at(const json& c, const std::string& key) {
    if (!c.at(key).is_number()) {
        throw ParseError("config key '" + key + "' must be a number");
    }
    return c.at(key).get<double>();
}

double num_or(const json& c, const std::string& key, double dflt) {
    return c.contains(key) ? num_at(c, key) : dflt;
}

long long int_at(const json& c, const std::string& key) {
    if (!c.at(key).is_number_integer()) {
        throw ParseError("config key '" + key + "' must be an integer");
    }
    return c.at(key).get<long long>();
}

long long int_or(const json& c, const std::string& key, long long dflt) {
    return c.contains(key) ? int_at(c, key) : dflt;
}

std::string str_at(const json& c, const std::string& key) {
    if (!c.at(key).is_string()) {
        throw ParseError("config key '" + key + "' must be a string");
    }
    return c.at(key).get<std::string>();
}

std::string str_or(const json& c, const std::string& key, std::string dflt) {
    return c.contains(key) ? str_at(c, key) : std::move(dflt);
}

void require_keys(const json& c, std::initializer_list<const char*> keys) {
    std::string missing;
    for (const char* k : keys) {
        if (!c.contains(k)) {
            if (!missing.empty()) missing += ", ";
            missing += flag_name(k);
        }
    }
    if (!missing.empty()) {
        throw UsageFailure{"missing required option(s): " + missing +
                           " (flags or config keys)"};
    }
}

ModelParams params_from(const json& c) {
    ModelParams p;
    p.a = num_at(c, "a");
    p.b = num_at(c, "b");
    p.r = num_at(c, "r");
    p.d = num_at(c, "d");
    p.validate();
    return p;
}

LabConfig lab_from(const json& c) {
    LabConfig lab;
    lab.grid = make_grid(num_or(c, "x_min", -200.0), num_or(c, "x_max", 200.0),
                         num_or(c, "dx", 0.25));
    lab.scheme.dt = num_or(c, "dt", lab.scheme.dt);
    const std::string scheme = str_or(c, "scheme", "explicit_euler");
    if (scheme == "explicit_euler") {
        lab.scheme.scheme = Scheme::ExplicitEuler;
    } else if (scheme == "semi_implicit") {
        lab.scheme.scheme = Scheme::SemiImplicitDiffusion;
    } else {
        throw ParseError("unknown scheme '" + scheme +
                         "' (explicit_euler or semi_implicit)");
    }
    lab.t_end = num_or(c, "t_end", lab.t_end);
    lab.sample_dt = num_or(c, "sample_dt", lab.sample_dt);
    lab.transient_fraction = num_or(c, "transient_fraction", lab.transient_fraction);
    lab.boundary_margin = num_or(c, "boundary_margin", lab.boundary_margin);
    lab.init_width = num_or(c, "init_width", lab.init_width);
    lab.extinction_sup = num_or(c, "extinction_sup", lab.extinction_sup);
    lab.min_samples = static_cast<int>(int_or(c, "min_samples", lab.min_samples));
    lab.zero_band = num_or(c, "zero_band", lab.zero_band);
    lab.margin_threshold = num_or(c, "margin_threshold", lab.margin_threshold);
    lab.tol_a = num_or(c, "tol_a", lab.tol_a);
    lab.workers = static_cast<int>(int_or(c, "workers", lab.workers));
    return lab;
}

// ---- result serialization ------------------------------------------------

json speed_json(const SpeedEstimate& e) {
    json j;
    j["value"] = e.value;
    j["std_err"] = e.std_err;
    j["t_start"] = e.t_start;
    j["t_end"] = e.t_end;
    j["method"] = to_string(e.method);
    j["samples_used"] = e.samples_used;
    j["flagged"] = e.flagged;
    return j;
}

json tailfit_json(const TailFit& t) {
    json j;
    j["end"] = to_string(t.end);
    j["field"] = to_string(t.field);
    j["rate"] = t.rate;
    j["expected_rate"] = t.expected_rate;
    j["amplitude"] = t.amplitude;
    j["win_lo"] = t.win_lo;
    j["win_hi"] = t.win_hi;
    j["points"] = t.points;
    j["r_squared"] = t.r_squared;
    j["resonance_biased"] = t.resonance_biased;
    return j;
}

// ---- run context ---------------------------------------------------------

struct RunContext {
    fs::path out_dir;
    json config;
    std::string started;
    std::vector<std::string> outputs;

    fs::path file(const std::string& name) const { return out_dir / name; }

    void emit_json(const std::string& name, const json& j) {
        write_text_file(file(name), j.dump(2) + "\n");
        outputs.push_back(name);
    }

    void emit_csv(const std::string& name, const Table& t) {
        write_csv(file(name), t);
        outputs.push_back(name);
    }
};

/// Persists the effective config and the provenance manifest. The manifest
/// hash covers exactly what config.json stores, so it can be re-derived.
void write_manifest(RunContext& ctx) {
    write_text_file(ctx.file("config.json"), ctx.config.dump(2) + "\n");
    ctx.outputs.push_back("config.json");
    RunManifest m;
    m.config_hash = config_hash_hex(ctx.config);
    m.started = ctx.started;
    m.finished = iso_utc_timestamp();
    m.outputs = ctx.outputs;
    write_text_file(ctx.file("manifest.json"), to_json(m).dump(2) + "\n");
}

fs::path resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("FRONTLAB_OUT"); env && *env) return env;
    return "frontlab_out";
}

// ---- subcommand handlers -------------------------------------------------

int do_simulate(const json& c, RunContext& ctx) {
    const ModelParams p = params_from(c);
    const LabConfig lab = lab_from(c);
    SchemeConfig cfg = lab.scheme;
    cfg.dt = lab.effective_dt(p);

    const std::string init = str_or(c, "init", "compact");
    InitKind kind;
    if (init == "compact") {
        kind = InitKind::CompactInvasion;
    } else if (init == "halfline") {
        kind = InitKind::HalfLineInterface;
    } else {
        throw ParseError("unknown init '" + init + "' (compact or halfline)");
    }

    const SimState s0 = init_front_data(lab.grid, kind, lab.init_width);
    const int sample_every =
        std::max(1, static_cast<int>(std::llround(lab.sample_dt / cfg.dt)));
    auto [s1, trace] = run(s0, p, cfg, lab.grid, lab.t_end, sample_every);

    Table tr;
    tr.columns = {"t", "pos_u", "pos_v"};
    for (const auto& smp : trace.samples) {
        tr.rows.push_back({format_double(smp.t),
                           smp.pos_u ? format_double(*smp.pos_u) : "",
                           smp.pos_v ? format_double(*smp.pos_v) : ""});
    }
    ctx.emit_csv("trace.csv", tr);

    Table st;
    st.columns = {"x", "u", "v"};
    for (int i = 0; i < lab.grid.n; ++i) {
        const auto ii = static_cast<size_t>(i);
        st.rows.push_back({format_double(lab.grid.node(i)),
                           format_double(s1.u[ii]), format_double(s1.v[ii])});
    }
    ctx.emit_csv("state.csv", st);

    json summary;
    summary["regime"] = to_string(classify_regime(p));
    summary["t_final"] = s1.t;
    summary["samples"] = trace.samples.size();
    summary["dt"] = cfg.dt;
    ctx.emit_json("summary.json", summary);
    return 0;
}

int do_speed(const json& c, RunContext& ctx) {
    const ModelParams p = params_from(c);
    const LabConfig lab = lab_from(c);
    const Regime regime = classify_regime(p);

    const std::string method = str_or(c, "method", "auto");
    SpeedEstimate est;
    if (method == "invasion") {
        est = estimate_spreading_speed(p, lab);
    } else if (method == "interface") {
        est = estimate_wave_speed_signed(p, lab);
    } else if (method == "auto") {
        est = regime == Regime::Bistable ? estimate_wave_speed_signed(p, lab)
                                         : estimate_spreading_speed(p, lab);
    } else {
        throw ParseError("unknown method '" + method +
                         "' (auto, invasion or interface)");
    }

    json out = speed_json(est);
    out["a"] = p.a;
    out["b"] = p.b;
    out["r"] = p.r;
    out["d"] = p.d;
    out["regime"] = to_string(regime);
    ctx.emit_json("speed.json", out);
    return 0;
}

int do_threshold(const json& c, RunContext& ctx) {
    const LabConfig lab = lab_from(c);
    const ThresholdResult res =
        find_sign_threshold(num_at(c, "a_lo"), num_at(c, "a_hi"), num_at(c, "b"),
                            num_at(c, "r"), num_at(c, "d"), lab);

    json out;
    out["a_star"] = res.a_star;
    out["bracket_lo"] = res.bracket_lo;
    out["bracket_hi"] = res.bracket_hi;
    out["monotone_ok"] = res.monotone_ok;
    json evs = json::array();
    Table ev;
    ev.columns = {"a", "sign", "source", "value", "std_err"};
    for (const auto& e : res.evaluations) {
        json je;
        je["a"] = e.a;
        je["sign"] = to_string(e.sign.value);
        je["source"] = to_string(e.sign.source);
        if (e.estimate) je["estimate"] = speed_json(*e.estimate);
        evs.push_back(je);
        ev.rows.push_back({format_double(e.a), to_string(e.sign.value),
                           to_string(e.sign.source),
                           e.estimate ? format_double(e.estimate->value) : "",
                           e.estimate ? format_double(e.estimate->std_err) : ""});
    }
    out["evaluations"] = evs;
    ctx.emit_json("threshold.json", out);
    ctx.emit_csv("evaluations.csv", ev);
    return 0;
}

int do_scan(const json& c, RunContext& ctx) {
    const LabConfig lab = lab_from(c);
    const double a_from = num_at(c, "a_from");
    const double a_to = num_at(c, "a_to");
    const long long steps = int_at(c, "steps");
    if (steps < 1) throw DomainError("scan requires steps >= 1");

    std::vector<double> a_values;
    a_values.reserve(static_cast<size_t>(steps));
    for (long long i = 0; i < steps; ++i) {
        // Weighted form hits both endpoints exactly and lands on round
        // interior values (e.g. 1.0 in a 0.9..1.1 sweep).
        a_values.push_back(steps == 1
                               ? a_from
                               : (static_cast<double>(steps - 1 - i) * a_from +
                                  static_cast<double>(i) * a_to) /
                                     static_cast<double>(steps - 1));
    }
    const ScanResult res = continuity_scan(a_values, num_at(c, "b"),
                                           num_at(c, "r"), num_at(c, "d"), lab);

    Table t;
    t.columns = {"a", "speed", "std_err", "method", "samples_used"};
    json entries = json::array();
    for (const auto& e : res.entries) {
        t.rows.push_back({format_double(e.a), format_double(e.estimate.value),
                          format_double(e.estimate.std_err),
                          to_string(e.estimate.method),
                          std::to_string(e.estimate.samples_used)});
        json je;
        je["a"] = e.a;
        je["estimate"] = speed_json(e.estimate);
        if (e.secondary) je["secondary"] = speed_json(*e.secondary);
        entries.push_back(je);
    }
    ctx.emit_csv("scan.csv", t);

    json out;
    out["entries"] = entries;
    out["max_adjacent_jump"] = res.max_adjacent_jump;
    out["monotone_ok"] = res.monotone_ok;
    out["methods_agree"] = res.methods_agree;
    ctx.emit_json("scan.json", out);
    return 0;
}

int do_profile(const json& c, RunContext& ctx) {
    const ModelParams p = params_from(c);
    const LabConfig lab = lab_from(c);
    const int n_snapshots = static_cast<int>(int_or(c, "snapshots", 3));
    const double spacing = num_or(c, "snapshot_spacing", 10.0);
    MeasuredWave mw = measure_wave_profile(p, lab, n_snapshots, spacing);

    json out;
    out["a"] = p.a;
    out["b"] = p.b;
    out["r"] = p.r;
    out["d"] = p.d;
    out["c"] = mw.speed.value;
    out["speed"] = speed_json(mw.speed);
    out["residual_norm"] = mw.profile.residual_norm;
    out["xi"] = mw.profile.xi;
    out["U"] = mw.profile.U;
    out["V"] = mw.profile.V;
    if (classify_regime(p) == Regime::Bistable) {
        try {
            json tails = json::array();
            for (const TailFit& t : fit_decay_rates(mw.profile, p)) {
                tails.push_back(tailfit_json(t));
            }
            out["tails"] = tails;
        } catch (const WindowError& e) {
            out["tails_error"] = e.what();
        }
    }
    ctx.emit_json("profile.json", out);

    Table t;
    t.columns = {"xi", "U", "V"};
    for (size_t i = 0; i < mw.profile.xi.size(); ++i) {
        t.rows.push_back({format_double(mw.profile.xi[i]),
                          format_double(mw.profile.U[i]),
                          format_double(mw.profile.V[i])});
    }
    ctx.emit_csv("profile.csv", t);
    return 0;
}

int do_verify(const json& c, RunContext& ctx) {
    const std::string check = str_at(c, "check");
    json out;
    out["check"] = check;

    if (check == "comparison") {
        require_keys(c, {"a", "b", "r", "d"});
        const ModelParams p = params_from(c);
        const LabConfig lab = lab_from(c);
        const ComparisonReport rep =
            comparison_test(p, static_cast<int>(int_or(c, "pairs", 20)), lab,
                            static_cast<std::uint64_t>(int_or(c, "seed", 20260822)));
        out["n_pairs"] = rep.n_pairs;
        out["seed"] = rep.seed;
        out["min_gap_u"] = rep.min_gap_u;
        out["min_gap_v"] = rep.min_gap_v;
        out["pass"] = rep.pass;
    } else if (check == "degenerate") {
        require_keys(c, {"b", "r", "d"});
        const LabConfig lab = lab_from(c);
        const SpeedEstimate est = degenerate_positivity(
            num_at(c, "b"), num_at(c, "r"), num_at(c, "d"), lab);
        out["estimate"] = speed_json(est);
        out["pass"] = true;
    } else if (check == "barrier") {
        require_keys(c, {"a", "eps", "radius"});
        const BarrierReport rep = large_a_barrier_check(
            num_at(c, "a"), num_at(c, "eps"), num_at(c, "radius"),
            static_cast<int>(int_or(c, "nodes", 2001)));
        out["a"] = rep.a;
        out["eps"] = rep.eps;
        out["radius"] = rep.R;
        out["n_nodes"] = rep.n_nodes;
        out["rate"] = rep.rate;
        out["boundary_ok"] = rep.boundary_ok;
        out["range_ok"] = rep.range_ok;
        out["ineq_max"] = rep.ineq_max;
        out["ineq_max_full"] = rep.ineq_max_full;
        out["inequality_ok"] = rep.inequality_ok;
        out["fd_identity_error"] = rep.fd_identity_error;
        out["pass"] = rep.pass;
    } else if (check == "supersolution") {
        require_keys(c, {"b", "r", "d", "delta_star"});
        const double delta_star = num_at(c, "delta_star");
        const double delta0 = num_or(c, "delta0", 0.01);
        ModelParams p;
        p.a = 1.0 + delta_star;
        p.b = num_at(c, "b");
        p.r = num_at(c, "r");
        p.d = num_at(c, "d");
        p.validate();
        const LabConfig lab = lab_from(c);
        const MeasuredWave mw = measure_wave_profile(p, lab);
        const SupersolutionSearch s =
            search_supersolution(mw.profile, p, delta0);
        out["delta_star"] = delta_star;
        out["delta0"] = delta0;
        out["base_speed"] = mw.speed.value;
        out["found"] = s.found;
        out["tried"] = s.tried;
        out["c1"] = s.params.c1;
        out["c2"] = s.params.c2;
        json corners = json::array();
        for (const auto& cc : s.audit.corners) {
            corners.push_back(
                {{"name", cc.name}, {"jump", cc.jump}, {"ok", cc.ok}});
        }
        out["corners"] = corners;
        json segments = json::array();
        for (const auto& sg : s.audit.segments) {
            segments.push_back({{"index", sg.index},
                                {"nodes", sg.nodes},
                                {"n1_max", sg.n1_max},
                                {"n2_min", sg.n2_min},
                                {"ok", sg.ok}});
        }
        out["segments"] = segments;
        out["continuity_ok"] = s.audit.continuity_ok;
        out["corners_ok"] = s.audit.corners_ok;
        out["inequalities_ok"] = s.audit.inequalities_ok;
        out["left_saturation_ok"] = s.audit.left_saturation_ok;
        out["pass"] = s.audit.pass;
    } else {
        throw ParseError("unknown check '" + check +
                         "' (comparison, degenerate, barrier or supersolution)");
    }
    ctx.emit_json("verify.json", out);
    return 0;
}

int do_plot(const json& c, RunContext& ctx) {
    const std::string kind_s = str_at(c, "kind");
    PlotKind kind;
    if (kind_s == "ProfileXY") {
        kind = PlotKind::ProfileXY;
    } else if (kind_s == "SpeedVsA") {
        kind = PlotKind::SpeedVsA;
    } else if (kind_s == "FrontTrace") {
        kind = PlotKind::FrontTrace;
    } else {
        throw ParseError("unknown plot kind '" + kind_s +
                         "' (ProfileXY, SpeedVsA or FrontTrace)");
    }
    const fs::path in = str_at(c, "in");
    const bool custom_out = c.contains("svg");
    const fs::path svg = custom_out ? fs::path(str_at(c, "svg"))
                                    : ctx.file("plot.svg");
    const int rc = emit_plot(in, kind, svg);
    if (rc != 0) return rc;
    ctx.outputs.push_back(custom_out ? svg.string() : std::string("plot.svg"));
    return 0;
}

// ---- plot schema readers -------------------------------------------------

PlotSpec profile_spec(const fs::path& file) {
    const json j = json::parse(read_text_file(file));
    if (!j.is_object() || !j.contains("xi") || !j.contains("U") ||
        !j.contains("V") || !j["xi"].is_array() || !j["U"].is_array() ||
        !j["V"].is_array()) {
        throw ParseError("not a profile result (needs xi/U/V arrays): " +
                         file.string());
    }
    const auto xi = j["xi"].get<std::vector<double>>();
    const auto U = j["U"].get<std::vector<double>>();
    const auto V = j["V"].get<std::vector<double>>();
    if (xi.size() < 2 || xi.size() != U.size() || xi.size() != V.size()) {
        throw ParseError("profile arrays are empty or of unequal length: " +
                         file.string());
    }
    PlotSpec spec;
    spec.title = "Wave profile";
    spec.x_label = "xi (moving frame)";
    spec.y_label = "density";
    spec.series.push_back({"U", xi, U});
    spec.series.push_back({"V", xi, V});
    return spec;
}

/// Pulls one numeric column; empty cells become NaN (plotted as gaps).
std::vector<double> numeric_column(const Table& t, int col) {
    std::vector<double> out;
    out.reserve(t.rows.size());
    for (const auto& row : t.rows) {
        const std::string& cell = row[static_cast<size_t>(col)];
        if (cell.empty()) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        try {
            size_t pos = 0;
            const double v = std::stod(cell, &pos);
            if (pos != cell.size()) throw std::invalid_argument(cell);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("non-numeric cell '" + cell + "' in column " +
                             t.columns[static_cast<size_t>(col)]);
        }
    }
    return out;
}

PlotSpec scan_spec(const fs::path& file) {
    const Table t = read_csv(file);
    const int ia = t.column_index("a");
    const int ic = t.column_index("speed");
    if (ia < 0 || ic < 0) {
        throw ParseError("not a scan table (needs columns a, speed): " +
                         file.string());
    }
    PlotSpec spec;
    spec.title = "Front speed across a";
    spec.x_label = "a";
    spec.y_label = "speed";
    spec.series.push_back({"speed", numeric_column(t, ia), numeric_column(t, ic)});
    spec.vertical_markers.push_back(1.0);
    return spec;
}

PlotSpec trace_spec(const fs::path& file) {
    const Table t = read_csv(file);
    const int it = t.column_index("t");
    const int iu = t.column_index("pos_u");
    const int iv = t.column_index("pos_v");
    if (it < 0 || (iu < 0 && iv < 0)) {
        throw ParseError(
            "not a front trace (needs columns t and pos_u or pos_v): " +
            file.string());
    }
    PlotSpec spec;
    spec.title = "Front positions";
    spec.x_label = "t";
    spec.y_label = "position";
    const std::vector<double> ts = numeric_column(t, it);
    if (iu >= 0) spec.series.push_back({"pos_u", ts, numeric_column(t, iu)});
    if (iv >= 0) spec.series.push_back({"pos_v", ts, numeric_column(t, iv)});
    return spec;
}

} // namespace

int emit_plot(const fs::path& result_file, PlotKind kind, const fs::path& out) {
    try {
        PlotSpec spec;
        switch (kind) {
            case PlotKind::ProfileXY: spec = profile_spec(result_file); break;
            case PlotKind::SpeedVsA: spec = scan_spec(result_file); break;
            case PlotKind::FrontTrace: spec = trace_spec(result_file); break;
        }
        write_text_file(out, render_svg(spec));
        return 0;
    } catch (const json::exception& e) {
        std::cerr << "error: " << result_file.string()
                  << " does not parse as JSON: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"Competition-diffusion front laboratory"};
    app.name("frontlab");
    app.require_subcommand(1);

    json flags = json::object();
    std::string config_path;
    std::string out_flag;

    auto add_num = [&flags](CLI::App* sub, const std::string& flag,
                            const std::string& key, const std::string& desc) {
        sub->add_option_function<double>(
            flag, [&flags, key](double v) { flags[key] = v; }, desc);
    };
    auto add_int = [&flags](CLI::App* sub, const std::string& flag,
                            const std::string& key, const std::string& desc) {
        sub->add_option_function<long long>(
            flag, [&flags, key](long long v) { flags[key] = v; }, desc);
    };
    auto add_str = [&flags](CLI::App* sub, const std::string& flag,
                            const std::string& key, const std::string& desc) {
        return sub->add_option_function<std::string>(
            flag, [&flags, key](const std::string& v) { flags[key] = v; }, desc);
    };

    auto add_lab = [&](CLI::App* sub) {
        add_num(sub, "--x-min", "x_min", "left domain edge");
        add_num(sub, "--x-max", "x_max", "right domain edge");
        add_num(sub, "--dx", "dx", "grid spacing");
        add_num(sub, "--dt", "dt", "time step (clamped to the stability bound)");
        add_str(sub, "--scheme", "scheme", "explicit_euler or semi_implicit")
            ->check(CLI::IsMember({"explicit_euler", "semi_implicit"}));
        add_num(sub, "--t-end", "t_end", "time horizon");
        add_num(sub, "--sample-dt", "sample_dt", "front sampling interval");
        add_num(sub, "--transient-fraction", "transient_fraction",
                "head fraction of the trace dropped before fitting");
        add_num(sub, "--boundary-margin", "boundary_margin",
                "stop when a front enters this margin");
        add_num(sub, "--init-width", "init_width", "initial bump width");
        add_num(sub, "--extinction-sup", "extinction_sup",
                "sup u below this counts as extinction");
        add_int(sub, "--min-samples", "min_samples",
                "minimum post-transient samples");
        add_num(sub, "--zero-band", "zero_band",
                "|speed| below this counts as zero");
        add_num(sub, "--margin-threshold", "margin_threshold",
                "selection excess threshold");
        add_num(sub, "--tol-a", "tol_a", "bisection bracket tolerance");
        add_int(sub, "--workers", "workers", "worker threads (0 = logical cores)");
    };

    struct Sub {
        CLI::App* sub = nullptr;
        std::string name;
        std::vector<std::string> required;
        std::function<int(const json&, RunContext&)> fn;
    };
    std::vector<Sub> subs;

    auto make_sub = [&](const std::string& name, const std::string& desc,
                        std::vector<std::string> required,
                        std::function<int(const json&, RunContext&)> fn) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path,
                        "flat JSON config file; flags override its values");
        sub->add_option("--out", out_flag,
                        "output directory (default: FRONTLAB_OUT or frontlab_out)");
        add_lab(sub);
        subs.push_back({sub, name, std::move(required), std::move(fn)});
        return sub;
    };

    CLI::App* s;
    s = make_sub("simulate", "run one front experiment and store the trace",
                 {"a", "b", "r", "d"}, do_simulate);
    add_num(s, "--a", "a", "competition coefficient on u");
    add_num(s, "--b", "b", "competition coefficient on v");
    add_num(s, "--r", "r", "growth rate of v");
    add_num(s, "--d", "d", "diffusivity of v");
    add_str(s, "--init", "init", "initial data: compact or halfline")
        ->check(CLI::IsMember({"compact", "halfline"}));

    s = make_sub("speed", "measure a front speed", {"a", "b", "r", "d"}, do_speed);
    add_num(s, "--a", "a", "competition coefficient on u");
    add_num(s, "--b", "b", "competition coefficient on v");
    add_num(s, "--r", "r", "growth rate of v");
    add_num(s, "--d", "d", "diffusivity of v");
    add_str(s, "--method", "method", "auto, invasion or interface")
        ->check(CLI::IsMember({"auto", "invasion", "interface"}));

    s = make_sub("threshold", "bisect the sign change of the wave speed in a",
                 {"b", "r", "d", "a_lo", "a_hi"}, do_threshold);
    add_num(s, "--b", "b", "competition coefficient on v");
    add_num(s, "--r", "r", "growth rate of v");
    add_num(s, "--d", "d", "diffusivity of v");
    add_num(s, "--a-lo", "a_lo", "bracket start (positive-speed side)");
    add_num(s, "--a-hi", "a_hi", "bracket end (negative-speed side)");

    s = make_sub("scan", "front speed across an a-range",
                 {"b", "r", "d", "a_from", "a_to", "steps"}, do_scan);
    add_num(s, "--b", "b", "competition coefficient on v");
    add_num(s, "--r", "r", "growth rate of v");
    add_num(s, "--d", "d", "diffusivity of v");
    add_num(s, "--a-from", "a_from", "first a value");
    add_num(s, "--a-to", "a_to", "last a value");
    add_int(s, "--steps", "steps", "number of scan points");

    s = make_sub("profile", "extract a settled wave profile",
                 {"a", "b", "r", "d"}, do_profile);
    add_num(s, "--a", "a", "competition coefficient on u");
    add_num(s, "--b", "b", "competition coefficient on v");
    add_num(s, "--r", "r", "growth rate of v");
    add_num(s, "--d", "d", "diffusivity of v");
    add_int(s, "--snapshots", "snapshots", "late-time snapshots to average");
    add_num(s, "--snapshot-spacing", "snapshot_spacing",
            "time between snapshots");

    s = make_sub("verify", "structural checks on the dynamics", {"check"},
                 do_verify);
    add_str(s, "--check", "check",
            "comparison, degenerate, barrier or supersolution")
        ->check(CLI::IsMember(
            {"comparison", "degenerate", "barrier", "supersolution"}));
    add_num(s, "--a", "a", "competition coefficient on u (comparison, barrier)");
    add_num(s, "--b", "b", "competition coefficient on v");
    add_num(s, "--r", "r", "growth rate of v");
    add_num(s, "--d", "d", "diffusivity of v");
    add_int(s, "--pairs", "pairs", "ordered pairs to evolve (comparison)");
    add_int(s, "--seed", "seed", "random seed (comparison)");
    add_num(s, "--eps", "eps", "competitor floor (barrier)");
    add_num(s, "--radius", "radius", "half-width R of the barrier window");
    add_int(s, "--nodes", "nodes", "barrier evaluation nodes");
    add_num(s, "--delta-star", "delta_star", "a = 1 + delta-star (supersolution)");
    add_num(s, "--delta0", "delta0", "competition slack (supersolution)");

    s = make_sub("plot", "render a stored result to SVG", {"in", "kind"},
                 do_plot);
    add_str(s, "--in", "in", "result file (profile JSON, scan or trace CSV)");
    add_str(s, "--kind", "kind", "ProfileXY, SpeedVsA or FrontTrace")
        ->check(CLI::IsMember({"ProfileXY", "SpeedVsA", "FrontTrace"}));
    add_str(s, "--svg", "svg", "output SVG path (default <out>/plot.svg)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (const Sub& chosen : subs) {
        if (!app.got_subcommand(chosen.sub)) continue;
        try {
            json config = json::object();
            if (!config_path.empty()) config = load_config_file(config_path);
            for (const auto& [k, v] : flags.items()) config[k] = v;
            config["command"] = chosen.name;

            std::string missing;
            for (const auto& key : chosen.required) {
                if (!config.contains(key)) {
                    if (!missing.empty()) missing += ", ";
                    missing += flag_name(key);
                }
            }
            if (!missing.empty()) {
                std::cerr << "frontlab " << chosen.name
                          << ": missing required option(s): " << missing
                          << " (flags or config keys)\n";
                return 2;
            }

            RunContext ctx;
            ctx.config = config;
            ctx.started = iso_utc_timestamp();
            ctx.out_dir = resolve_out_dir(out_flag);
            fs::create_directories(ctx.out_dir);

            const int rc = chosen.fn(config, ctx);
            if (rc != 0) return rc;
            write_manifest(ctx);
            return 0;
        } catch (const UsageFailure& u) {
            std::cerr << "frontlab " << chosen.name << ": " << u.msg << "\n";
            return 2;
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        } catch (const json::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}

} // namespace frontlab::cli
