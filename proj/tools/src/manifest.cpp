#include "frontlab_cli/manifest.hpp"

#include <cstdio>
#include <ctime>

namespace frontlab::cli {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string config_hash_hex(const nlohmann::json& config) {
    // nlohmann::json keeps object keys sorted, so dump() is canonical.
    const std::string canonical = config.dump();
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical)));
    return buf;
}

std::string iso_utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json to_json(const RunManifest& m) {
    nlohmann::json j;
    j["config_hash"] = m.config_hash;
    j["started"] = m.started;
    j["finished"] = m.finished;
    j["outputs"] = m.outputs;
    j["tool_version"] = m.tool_version;
    return j;
}

} // namespace frontlab::cli
