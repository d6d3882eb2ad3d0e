#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace frontlab::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// 64-bit FNV-1a over the given bytes.
std::uint64_t fnv1a64(std::string_view bytes);

/// Hash of the canonical serialization of a config object: compact dump with
/// alphabetically sorted keys, FNV-1a, 16 lowercase hex digits. Re-parsing
/// and re-dumping the stored config reproduces the digest.
std::string config_hash_hex(const nlohmann::json& config);

/// Current wall-clock time, ISO 8601 UTC, second resolution.
std::string iso_utc_timestamp();

/// Provenance record written next to every command's outputs.
struct RunManifest {
    std::string config_hash;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;   // paths relative to the output dir
    std::string tool_version = kToolVersion;
};

nlohmann::json to_json(const RunManifest& m);

} // namespace frontlab::cli
