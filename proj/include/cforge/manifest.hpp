#pragma once

// Run manifests: a JSON record of the exact configuration, inputs, and output
// content digests written next to every command's outputs, so reruns are
// comparable byte-for-byte.

#include <cstdint>
#include <string>
#include <vector>

#include "cforge/common.hpp"
#include "json.hpp"

namespace cforge {

struct OutputDigest {
    std::string path;
    std::string sha256;
    std::uint64_t bytes = 0;
};

struct RunManifest {
    std::string command;
    std::string version = kVersion;
    nlohmann::ordered_json config;
    std::vector<std::string> inputs;
    std::vector<OutputDigest> outputs;
    std::uint64_t wall_clock_ms = 0;
};

OutputDigest digest_file(const std::string& path);
void write_manifest(const std::string& path, const RunManifest& manifest);
nlohmann::json read_manifest(const std::string& path);

}  // namespace cforge
