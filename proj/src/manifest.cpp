#include "wscale/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wscale/digest.hpp"
#include "wscale/errors.hpp"

namespace wscale {

std::string manifest_to_json(const RunManifest& m) {
  nlohmann::ordered_json j;
  j["tool"] = m.tool;
  j["version"] = m.version;
  j["command"] = m.command;
  auto args = nlohmann::ordered_json::array();
  for (const auto& [flag, value] : m.args) args.push_back({flag, value});
  j["args"] = std::move(args);
  auto inputs = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : m.inputs) inputs.push_back({path, digest});
  j["inputs"] = std::move(inputs);
  j["seed"] = m.seed;
  j["outputs"] = m.outputs;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open manifest '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw schema_error("manifest '" + path + "' is not valid JSON: " + e.what());
  }
  try {
    RunManifest m;
    m.tool = j.at("tool").get<std::string>();
    m.version = j.at("version").get<std::string>();
    m.command = j.at("command").get<std::string>();
    for (const auto& pair : j.at("args"))
      m.args.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    for (const auto& pair : j.at("inputs"))
      m.inputs.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    m.seed = j.at("seed").get<std::uint64_t>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw schema_error("manifest '" + path + "' is missing fields: " + e.what());
  }
}

std::string manifest_path_for(const std::string& primary_output) {
  return primary_output + ".manifest.json";
}

void write_manifest(const RunManifest& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << manifest_to_json(m);
  if (!out) throw io_error("failed writing '" + path + "'");
}

void verify_manifest_inputs(const RunManifest& m) {
  for (const auto& [path, digest] : m.inputs) {
    const std::string now = sha256_file(path);
    if (now != digest)
      throw schema_error("manifest replay: input '" + path + "' changed (digest " + now +
                         ", manifest has " + digest + ")");
  }
}

std::vector<std::string> manifest_argv(const RunManifest& m) {
  std::vector<std::string> argv;
  argv.reserve(m.args.size() + 1);
  argv.push_back(m.command);
  for (const auto& [flag, value] : m.args) argv.push_back(flag + "=" + value);
  return argv;
}

}  // namespace wscale
