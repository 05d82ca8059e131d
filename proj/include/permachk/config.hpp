#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "permachk/model.hpp"

namespace permachk {

/// A parsed model configuration: {family, params, tail_caps?}.
struct ModelConfig {
  Family family{};
  std::map<std::string, double> params;
  bool has_tail_caps = false;
  std::pair<double, double> tail_caps{1e6, 1e6};
  std::string source_text;  // raw JSON, kept for digesting

  GrowthModel build() const {
    return build_model(family, params, has_tail_caps ? &tail_caps : nullptr);
  }
};

inline ModelConfig parse_model_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParameter(std::string("model config parse error: ") + e.what());
  }
  if (!j.is_object()) throw InvalidParameter("model config must be a JSON object");
  if (!j.contains("family") || !j["family"].is_string())
    throw InvalidParameter("model config: missing string field 'family'");
  if (!j.contains("params") || !j["params"].is_object())
    throw InvalidParameter("model config: missing object field 'params'");

  ModelConfig cfg;
  cfg.source_text = text;
  cfg.family = family_from_name(j["family"].get<std::string>());
  for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
    if (!it.value().is_number())
      throw InvalidParameter("model config: param '" + it.key() + "' must be a number");
    cfg.params[it.key()] = it.value().get<double>();
  }
  if (j.contains("tail_caps")) {
    const auto& tc = j["tail_caps"];
    if (!tc.is_array() || tc.size() != 2 || !tc[0].is_number() || !tc[1].is_number())
      throw InvalidParameter("model config: tail_caps must be [x_max, y_max]");
    cfg.has_tail_caps = true;
    cfg.tail_caps = {tc[0].get<double>(), tc[1].get<double>()};
  }
  return cfg;
}

inline ModelConfig load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open model config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_config(ss.str());
}

/// FNV-1a digest of the raw config text, for provenance stamps in outputs.
inline std::string config_digest(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace permachk
