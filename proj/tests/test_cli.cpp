#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontlab_cli/cli.hpp"
#include "frontlab_cli/manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int run(std::vector<std::string> args) { return frontlab::cli::run_command(args); }

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    const fs::path p = fs::temp_directory_path() /
                       ("frontlab_cli_" + tag + "_" + std::to_string(counter++));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json slurp_json(const fs::path& p) { return json::parse(slurp(p)); }

// Flags that shrink every run to a quick desk check.
std::vector<std::string> small(std::vector<std::string> args,
                               const fs::path& out) {
    for (auto s : {std::string("--t-end"), std::string("60"),
                   std::string("--x-min"), std::string("-100"),
                   std::string("--x-max"), std::string("100"),
                   std::string("--out"), out.string()})
        args.push_back(s);
    return args;
}

size_t count_occurrences(const std::string& hay, const std::string& needle) {
    size_t n = 0;
    for (size_t at = hay.find(needle); at != std::string::npos;
         at = hay.find(needle, at + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("usage mistakes exit with code 2") {
    const fs::path out = fresh_dir("usage");
    CHECK(run({}) == 2);
    CHECK(run({"speed", "--a", "2", "--b", "2", "--d", "1", "--out",
               out.string()}) == 2); // --r missing
    CHECK(run({"speed", "--a", "2", "--b", "2", "--r", "1", "--d", "1",
               "--frobnicate", "7"}) == 2);
    CHECK(run({"plot", "--in", (out / "x.json").string(), "--kind", "Bogus",
               "--out", out.string()}) == 2);
}

TEST_CASE("balanced bistable point reports a numerically zero speed") {
    const fs::path out = fresh_dir("zero");
    const int rc = run(small(
        {"speed", "--a", "2", "--b", "2", "--r", "1", "--d", "1"}, out));
    REQUIRE(rc == 0);
    const json sp = slurp_json(out / "speed.json");
    CHECK(std::abs(sp.at("value").get<double>()) <= 0.02);
    CHECK(sp.at("method").get<std::string>() == "InterfaceDrift");
    CHECK(sp.at("regime").get<std::string>() == "bistable");

    // Provenance: the stored config re-hashes to the manifest digest and
    // every listed output is a real, non-empty file.
    const json manifest = slurp_json(out / "manifest.json");
    const json config = slurp_json(out / "config.json");
    CHECK(frontlab::cli::config_hash_hex(config) ==
          manifest.at("config_hash").get<std::string>());
    const auto outputs = manifest.at("outputs").get<std::vector<std::string>>();
    CHECK(outputs.size() >= 2);
    for (const auto& name : outputs) {
        CAPTURE(name);
        CHECK(fs::exists(out / name));
        CHECK(fs::file_size(out / name) > 0);
    }
}

TEST_CASE("domain and bracket failures exit with code 1") {
    const fs::path out = fresh_dir("err");
    CHECK(run(small({"speed", "--a", "-1", "--b", "2", "--r", "1", "--d", "1"},
                    out)) == 1);
    // Both bracket ends sit on the negative-speed side.
    CHECK(run(small({"threshold", "--a-lo", "2.5", "--a-hi", "3", "--b", "2",
                     "--r", "1", "--d", "1"},
                    out)) == 1);
}

TEST_CASE("config file provides defaults and flags override them") {
    const fs::path out = fresh_dir("cfg");
    const fs::path cfg = out / "base.json";
    {
        std::ofstream f(cfg);
        f << json{{"a", 2.0}, {"b", 2.0},     {"r", 1.0},
                  {"d", 1.0}, {"t_end", 60.0}, {"x_min", -100.0},
                  {"x_max", 100.0}}
                 .dump();
    }
    const int rc = run({"speed", "--config", cfg.string(), "--b", "3", "--out",
                        out.string()});
    REQUIRE(rc == 0);
    const json stored = slurp_json(out / "config.json");
    CHECK(stored.at("b").get<double>() == 3.0);
    CHECK(stored.at("a").get<double>() == 2.0);
    CHECK(slurp_json(out / "speed.json").at("value").get<double>() > 0.1);
}

TEST_CASE("threshold bisection rides the closed-form sign oracle") {
    const fs::path out = fresh_dir("thresh");
    const int rc = run(small({"threshold", "--a-lo", "1.5", "--a-hi", "3",
                              "--b", "2", "--r", "1", "--d", "1", "--tol-a",
                              "0.05"},
                             out));
    REQUIRE(rc == 0);
    const json th = slurp_json(out / "threshold.json");
    const double a_star = th.at("a_star").get<double>();
    CHECK(a_star > 1.9);
    CHECK(a_star < 2.1);
    CHECK(th.at("monotone_ok").get<bool>());
    CHECK(fs::exists(out / "evaluations.csv"));
}

TEST_CASE("identical scans produce byte-identical tables") {
    const fs::path out1 = fresh_dir("scan_a");
    const fs::path out2 = fresh_dir("scan_b");
    const std::vector<std::string> base = {"scan",   "--b",     "2",
                                           "--r",    "1",       "--d",
                                           "1",      "--a-from", "1.1",
                                           "--a-to", "1.2",      "--steps",
                                           "2"};
    REQUIRE(run(small(base, out1)) == 0);
    REQUIRE(run(small(base, out2)) == 0);
    CHECK(slurp(out1 / "scan.csv") == slurp(out2 / "scan.csv"));
}

TEST_CASE("scan across the balance point decreases monotonically") {
    const fs::path out = fresh_dir("scan5");
    const int rc = run(small({"scan", "--b", "2", "--r", "1", "--d", "1",
                              "--a-from", "0.9", "--a-to", "1.3", "--steps",
                              "5"},
                             out));
    REQUIRE(rc == 0);
    const std::string csv = slurp(out / "scan.csv");
    std::istringstream lines(csv);
    std::string line;
    REQUIRE(std::getline(lines, line)); // header
    CHECK(line.rfind("a,", 0) == 0);
    std::vector<double> speeds;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        const size_t c1 = line.find(',');
        const size_t c2 = line.find(',', c1 + 1);
        speeds.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    REQUIRE(speeds.size() == 5);
    for (size_t i = 1; i < speeds.size(); ++i) CHECK(speeds[i] < speeds[i - 1]);
    CHECK(speeds.back() > 0.0);
}

TEST_CASE("plot renders stored results and rejects mismatched schemas") {
    const fs::path out = fresh_dir("plot");
    const fs::path profile = out / "profile.json";
    {
        json j;
        j["xi"] = {-2.0, -1.0, 0.0, 1.0, 2.0};
        j["U"] = {0.95, 0.8, 0.5, 0.2, 0.05};
        j["V"] = {0.05, 0.2, 0.5, 0.8, 0.95};
        std::ofstream f(profile);
        f << j.dump();
    }
    const fs::path scan_csv = out / "scan.csv";
    {
        std::ofstream f(scan_csv);
        f << "a,speed,std_err\n0.9,0.7,0.001\n1.0,0.6,0.001\n1.1,0.5,0.001\n";
    }
    const fs::path trace_csv = out / "trace.csv";
    {
        std::ofstream f(trace_csv);
        f << "t,pos_u,pos_v\n0,0.0,1.0\n1,0.5,1.5\n2,1.0,2.0\n";
    }

    REQUIRE(run({"plot", "--in", profile.string(), "--kind", "ProfileXY",
                 "--svg", (out / "p.svg").string(), "--out",
                 out.string()}) == 0);
    const std::string svg = slurp(out / "p.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(count_occurrences(svg, "<polyline") == 2); // U and V series

    REQUIRE(run({"plot", "--in", scan_csv.string(), "--kind", "SpeedVsA",
                 "--svg", (out / "s.svg").string(), "--out",
                 out.string()}) == 0);
    const std::string svg2 = slurp(out / "s.svg");
    CHECK(svg2.find("stroke-dasharray") != std::string::npos); // a = 1 marker

    REQUIRE(run({"plot", "--in", trace_csv.string(), "--kind", "FrontTrace",
                 "--svg", (out / "t.svg").string(), "--out",
                 out.string()}) == 0);

    // Schema mismatch and missing input are data errors, not usage errors.
    CHECK(run({"plot", "--in", scan_csv.string(), "--kind", "ProfileXY",
               "--svg", (out / "x.svg").string(), "--out",
               out.string()}) == 1);
    CHECK(run({"plot", "--in", (out / "absent.json").string(), "--kind",
               "ProfileXY", "--svg", (out / "y.svg").string(), "--out",
               out.string()}) == 1);
}

TEST_CASE("FRONTLAB_OUT names the output directory when --out is absent") {
    const fs::path out = fresh_dir("envout");
    REQUIRE(setenv("FRONTLAB_OUT", out.string().c_str(), 1) == 0);
    const int rc = run({"threshold", "--a-lo", "1.5", "--a-hi", "3", "--b",
                        "2", "--r", "1", "--d", "1", "--tol-a", "0.1"});
    REQUIRE(unsetenv("FRONTLAB_OUT") == 0);
    REQUIRE(rc == 0);
    CHECK(fs::exists(out / "threshold.json"));
    CHECK(fs::exists(out / "manifest.json"));
}
