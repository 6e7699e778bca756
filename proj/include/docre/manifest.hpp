#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace docre {

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

// Provenance record written next to every stage output.
struct Manifest {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;

  // sha256 of the canonical (sorted-key, compact) config dump.
  std::string config_hash() const;
  // Checksums are taken when this is called; no timestamps are recorded.
  nlohmann::json to_json() const;
};

// `<primary_output>.manifest.json`
std::filesystem::path manifest_path(const std::filesystem::path& primary_output);
void write_manifest(const Manifest& manifest, const std::filesystem::path& primary_output);

}  // namespace docre
