#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "permachk/checker.hpp"
#include "permachk/config.hpp"
#include "permachk/lyapunov.hpp"
#include "permachk/orbit.hpp"
#include "permachk/verifier.hpp"

namespace permachk {

using ojson = nlohmann::ordered_json;

/// Provenance stamp embedded in every output artifact.
inline ojson provenance(const ModelConfig& cfg) {
  return ojson{{"tool", "permachk"},
               {"version", kVersion},
               {"config_digest", config_digest(cfg.source_text)}};
}

inline ojson to_json(const ConditionEntry& e) {
  return ojson{{"id", e.id},
               {"verdict", cond_verdict_name(e.verdict)},
               {"margin", e.margin},
               {"witness", e.witness},
               {"note", e.note}};
}

inline ojson to_json(const PermanenceVerdict& v) {
  ojson entries = ojson::array();
  for (const auto& e : v.entries) entries.push_back(to_json(e));
  return ojson{{"conclusion", v.permanent ? "Permanent" : "NotEstablished"},
               {"basis", v.basis},
               {"conditions", entries},
               {"notes", v.notes}};
}

inline ojson to_json(const ExponentEstimate& e) {
  ojson j{{"axis", axis_name(e.axis)},
          {"value", e.value},
          {"method", e.method == ExponentMethod::Direct ? "direct" : "decomposition"},
          {"n", e.n},
          {"burn_in", e.burn_in},
          {"window", e.window},
          {"converged", e.converged},
          {"invader_rate_defined", e.invader_rate_defined}};
  if (e.method == ExponentMethod::Decomposition) {
    j["expansion_point"] = e.expansion_point;
    j["base"] = e.base;
    j["slope_ratio"] = e.slope_ratio;
    j["coupling"] = e.coupling;
    j["delta"] = e.delta;
    j["is_lower_bound"] = e.is_lower_bound;
    j["quadrature_warning"] = e.quadrature_warning;
  }
  return j;
}

inline ojson to_json(const SweepResult& s) {
  return ojson{{"grid", ojson{{"nx", s.nx},
                              {"ny", s.ny},
                              {"x_range", {s.x_lo, s.x_hi}},
                              {"y_range", {s.y_lo, s.y_hi}},
                              {"spacing", "geometric"}}},
               {"horizon", s.horizon},
               {"burn_in", s.burn_in},
               {"b_hat", s.b_hat},
               {"B_hat", s.B_hat},
               {"persistent", s.persistent},
               {"any_divergent", s.any_divergent}};
}

/// Writes text to `path` atomically (temp file in place, then rename).
inline void atomic_write(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidParameter("cannot open output file: " + tmp);
    out << text;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw InvalidParameter("cannot rename output into place: " + path);
}

inline void write_json(const std::string& path, const ojson& j) {
  atomic_write(path, j.dump(2) + "\n");
}

inline std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string orbit_csv(const GrowthModel& m, const Orbit& o) {
  std::string s = "t,x,y,F,G\n";
  for (std::size_t t = 0; t <= o.horizon; ++t) {
    const double x = o.x[t], y = o.y[t];
    const double F = m.F(x, y);
    const double G = m.G(x, y);
    s += std::to_string(t) + "," + csv_num(x) + "," + csv_num(y) + ",";
    s += std::isfinite(F) ? csv_num(F) : "";
    s += ",";
    s += std::isfinite(G) ? csv_num(G) : "";
    s += "\n";
  }
  return s;
}

inline std::string sweep_csv(const SweepResult& r) {
  std::string s = "x0,y0,tail_min,tail_max,divergent\n";
  for (const auto& p : r.points) {
    s += csv_num(p.x0) + "," + csv_num(p.y0) + "," + csv_num(p.tail_min) + "," +
         csv_num(p.tail_max) + "," + (p.divergent ? "1" : "0") + "\n";
  }
  return s;
}

}  // namespace permachk
