#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include <json.hpp>

#include "hybridsum/io.hpp"
#include "hybridsum/parse.hpp"
#include "hybridsum/sums.hpp"

namespace hybridsum {

/// On-disk experiment description (JSON). Intervals: I = [lo, hi] inclusive,
/// J = [lo, hi) half-open. Absent I/J default to the full ranges.
struct RunConfig {
  u64 p = 0;
  std::string curve;
  std::string g = "1";
  std::string f = "0";
  u64 chi_order = 1;
  u64 chi_power = 1;
  u64 psi_k = 0;
  double theta = 0.0;
  bool has_i = false, has_j = false;
  u64 i_lo = 0, i_hi = 0;
  u64 j_lo = 0, j_hi = 0;
  u64 H = 1;
  u32 k_max = 8;
  std::string mode = "auto";
  bool wrap = true;
  u64 seed = 0;
  std::string out_dir = "out";
};

namespace detail {

template <typename T>
T json_get(const nlohmann::json& j, const std::string& key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(key, e.what());
  }
}

inline void json_get_interval(const nlohmann::json& j, const std::string& key, u64& lo, u64& hi,
                              bool& present) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
    throw ConfigError(key, "expected [lo, hi]");
  if (v[0].get<i64>() < 0 || v[1].get<i64>() < 0) throw ConfigError(key, "negative endpoint");
  lo = v[0].get<u64>();
  hi = v[1].get<u64>();
  present = true;
}

}  // namespace detail

inline RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  if (!j.is_object()) throw ConfigError("", "top level must be an object");
  if (!j.contains("p")) throw ConfigError("p", "missing");
  if (!j.contains("curve")) throw ConfigError("curve", "missing");
  c.p = detail::json_get<u64>(j, "p", 0);
  c.curve = detail::json_get<std::string>(j, "curve", "");
  c.g = detail::json_get<std::string>(j, "g", c.g);
  c.f = detail::json_get<std::string>(j, "f", c.f);
  c.chi_order = detail::json_get<u64>(j, "chi_order", c.chi_order);
  c.chi_power = detail::json_get<u64>(j, "chi_power", c.chi_power);
  c.psi_k = detail::json_get<u64>(j, "psi_k", c.psi_k);
  c.theta = detail::json_get<double>(j, "theta", c.theta);
  detail::json_get_interval(j, "I", c.i_lo, c.i_hi, c.has_i);
  detail::json_get_interval(j, "J", c.j_lo, c.j_hi, c.has_j);
  if (!j.contains("H")) throw ConfigError("H", "missing");
  c.H = detail::json_get<u64>(j, "H", 1);
  c.k_max = detail::json_get<u32>(j, "k_max", c.k_max);
  c.mode = detail::json_get<std::string>(j, "mode", c.mode);
  c.wrap = detail::json_get<bool>(j, "wrap", c.wrap);
  c.seed = detail::json_get<u64>(j, "seed", c.seed);
  c.out_dir = detail::json_get<std::string>(j, "out_dir", c.out_dir);
  return c;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return run_config_from_json(j);
}

inline nlohmann::json run_config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["p"] = c.p;
  j["curve"] = c.curve;
  j["g"] = c.g;
  j["f"] = c.f;
  j["chi_order"] = c.chi_order;
  j["chi_power"] = c.chi_power;
  j["psi_k"] = c.psi_k;
  j["theta"] = c.theta;
  j["I"] = {c.i_lo, c.i_hi};
  j["J"] = {c.j_lo, c.j_hi};
  j["H"] = c.H;
  j["k_max"] = c.k_max;
  j["mode"] = c.mode;
  j["wrap"] = c.wrap;
  j["seed"] = c.seed;
  return j;
}

inline TheoremMode resolve_mode(const RunConfig& c) {
  if (c.mode == "mainthm") return TheoremMode::Main;
  if (c.mode == "trivial_chi") return TheoremMode::TrivialChi;
  if (c.mode == "trivial_psi") return TheoremMode::TrivialPsi;
  if (c.mode != "auto") throw ConfigError("mode", "expected auto|mainthm|trivial_chi|trivial_psi");
  if (c.psi_k == 0 && c.chi_order <= 1) return TheoremMode::Degenerate;
  if (c.psi_k == 0) return TheoremMode::TrivialPsi;
  if (c.chi_order <= 1) return TheoremMode::TrivialChi;
  return TheoremMode::Main;
}

// Cross-field validation and assembly of the in-memory experiment.
inline ExperimentConfig build_experiment(RunConfig c) {
  auto field = std::make_shared<const PrimeField>(c.p);
  if (!c.has_i) {
    c.i_lo = 0;
    c.i_hi = c.p - 1;
  }
  if (!c.has_j) {
    c.j_lo = 0;
    c.j_hi = c.p;
  }
  if (c.chi_order == 0 || (c.p - 1) % c.chi_order != 0)
    throw ConfigError("chi_order", "must divide p-1");
  if (c.psi_k >= c.p) throw ConfigError("psi_k", "must lie in [0, p)");
  if (!(c.theta == c.theta)) throw ConfigError("theta", "must be finite");
  if (c.k_max > 32) throw ConfigError("k_max", "must be at most 32");

  BivarPoly curve = [&] {
    try {
      return parse_poly(c.curve, c.p);
    } catch (const Error& e) {
      throw ConfigError("curve", e.what());
    }
  }();
  if (curve.degree_y() < 1) throw ConfigError("curve", "deg_y(P) must be >= 1");
  RationalMap g = [&] {
    try {
      return parse_rational(c.g, c.p);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError("g", e.what());
    }
  }();
  RationalMap f = [&] {
    try {
      return parse_rational(c.f, c.p);
    } catch (const Error& e) {
      throw ConfigError("f", e.what());
    }
  }();

  Rectangle rect{c.i_lo, c.i_hi, c.j_lo, c.j_hi, c.H};
  rect.validate(c.p);

  MultChar chi(field, c.chi_order, c.chi_power);
  AddChar psi(field, c.psi_k);
  return ExperimentConfig{field,          std::move(curve), std::move(g), std::move(f),
                          std::move(chi), std::move(psi),   rect,         c.theta,
                          c.wrap};
}

inline std::string config_hash(const RunConfig& c) {
  return hex64(fnv1a(run_config_to_json(c).dump()));
}

}  // namespace hybridsum
