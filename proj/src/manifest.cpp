#include "cforge/manifest.hpp"

#include <fstream>
#include <sstream>

#include "cforge/sha256.hpp"

namespace cforge {

OutputDigest digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read back output: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    return {path, Sha256::hex(content), content.size()};
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
    nlohmann::ordered_json j;
    j["command"] = manifest.command;
    j["version"] = manifest.version;
    j["config"] = manifest.config;
    j["inputs"] = manifest.inputs;
    nlohmann::ordered_json outs = nlohmann::ordered_json::array();
    for (const auto& o : manifest.outputs) {
        outs.push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
    }
    j["outputs"] = std::move(outs);
    j["wall_clock_ms"] = manifest.wall_clock_ms;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write manifest: " + path);
    out << j.dump(2) << '\n';
}

nlohmann::json read_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open manifest: " + path);
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
}

}  // namespace cforge
