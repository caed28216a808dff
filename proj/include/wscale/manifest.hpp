#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wscale {

// Record of one CLI run with every default materialized: replaying the
// stored argument list against byte-identical inputs reproduces the run's
// outputs bit for bit.
struct RunManifest {
  std::string tool;
  std::string version;
  std::string command;
  std::vector<std::pair<std::string, std::string>> args;    // flag, value; order kept
  std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;  // files the run wrote, manifest excluded
};

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json_file(const std::string& path);  // schema_error / io_error

// "<primary output>.manifest.json", i.e. next to the output it describes.
std::string manifest_path_for(const std::string& primary_output);

void write_manifest(const RunManifest& m, const std::string& path);

// Re-hashes every recorded input; schema_error on any mismatch, so a replay
// cannot silently run on different data.
void verify_manifest_inputs(const RunManifest& m);

// Argument vector for replay: {command, "--flag=value", ...}.
std::vector<std::string> manifest_argv(const RunManifest& m);

}  // namespace wscale
