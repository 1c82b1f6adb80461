#pragma once

// Run configuration shared by the CLI commands. A TOML file uses the long flag
// names as keys (dashes or underscores); values given on the command line win.

#include <string>
#include <vector>

#include <json.hpp>
#include <toml.hpp>

#include "error.hpp"
#include "io.hpp"

namespace braidfib {

struct Tolerances {
  double margin = 1e-8;         // P-fibration certificate: min |d/dt arg v|
  double phi = 1e-6;            // distance of phi from critical arguments
  double cone = 1e-6;           // relative root-set mismatch in the cone check
  double residual = 1e-9;       // relative semiholomorphic identity residual
  double collision = 1e-6;      // strand / root collision
  double refine = 1e-10;        // critical point time refinement
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::string builtin;
  std::string out_dir = "out";
  std::string config_file;

  int N = 2048;          // tracking grid
  int harmonics = 8;     // per unit period, for braid-word inputs
  bool lift = false;     // deform twist-loop inputs before analysis

  // Level sets.
  int nx = 192, ny = 192, nt = 384;
  double radius = 0;     // 0 picks a radius from the loop
  std::vector<double> phis;
  int phi_count = 0;     // evenly spaced phi values when phis is empty
  int per_gap = 3;       // otherwise phi values per gap between critical arguments
  bool obj = true;
  bool ply = false;

  // Diagram.
  bool fiber_word = false;
  double phi = 1.0;

  // Singularity.
  int k = 0;             // 0 picks the smallest admissible k
  bool newton = false;
  std::vector<double> cone_radii{0.5, 1.0, 2.0};
  int residual_samples = 1000;
  int cone_t_samples = 64;

  unsigned seed = 1;
  Tolerances tol{};

  void validate() const {
    auto positive = [](double x, const char* what) {
      require(x > 0, ErrorKind::InvalidInput, std::string(what) + " must be positive");
    };
    positive(tol.margin, "margin tolerance");
    positive(tol.phi, "phi tolerance");
    positive(tol.cone, "cone tolerance");
    positive(tol.residual, "residual tolerance");
    positive(tol.collision, "collision tolerance");
    positive(tol.refine, "refine tolerance");
    for (auto [v, what] : {std::pair{N, "N"}, {nx, "nx"}, {ny, "ny"}, {nt, "nt"}})
      require(v >= 16, ErrorKind::InvalidInput, std::string(what) + " must be at least 16");
    require(harmonics >= 1, ErrorKind::InvalidInput, "harmonics must be positive");
    require(per_gap >= 1, ErrorKind::InvalidInput, "per-gap must be positive");
    require(phi_count >= 0, ErrorKind::InvalidInput, "phi-count must be non-negative");
    require(residual_samples >= 1 && cone_t_samples >= 1, ErrorKind::InvalidInput, "sample counts must be positive");
    require(k >= 0, ErrorKind::InvalidInput, "k must be non-negative");
    for (double r : cone_radii) positive(r, "cone radius");
    require(radius >= 0, ErrorKind::InvalidInput, "radius must be non-negative");
  }

  LevelSetOptions level_set_options() const {
    LevelSetOptions o;
    o.nx = nx;
    o.ny = ny;
    o.nt = nt;
    o.radius = radius;
    o.phi_tol = tol.phi;
    return o;
  }

  io::LoadOptions load_options() const {
    io::LoadOptions o;
    o.harmonics = harmonics;
    o.lift_twists = lift;
    return o;
  }
};

// Every report starts with this block; it holds nothing that varies between
// runs of the same configuration (no timings, no worker count).
inline json reproducibility_header(const RunConfig& c) {
  json tol = {{"margin", c.tol.margin},     {"phi", c.tol.phi},
              {"cone", c.tol.cone},         {"residual", c.tol.residual},
              {"collision", c.tol.collision}, {"refine", c.tol.refine}};
  json cfg = {{"inputs", c.inputs},     {"builtin", c.builtin}, {"N", c.N},
              {"harmonics", c.harmonics}, {"lift", c.lift},     {"nx", c.nx},
              {"ny", c.ny},             {"nt", c.nt},           {"radius", c.radius},
              {"phis", c.phis},         {"phi_count", c.phi_count}, {"per_gap", c.per_gap},
              {"fiber_word", c.fiber_word}, {"phi", c.phi},     {"k", c.k},
              {"newton", c.newton},     {"cone_radii", c.cone_radii},
              {"residual_samples", c.residual_samples}, {"cone_t_samples", c.cone_t_samples},
              {"seed", c.seed}};
  return {{"tool", kToolName}, {"version", kToolVersion}, {"command", c.command}, {"config", cfg}, {"tolerances", tol}};
}

namespace detail {

inline std::string normalize_key(std::string k) {
  for (auto& ch : k)
    if (ch == '-') ch = '_';
  return k;
}

template <class T>
T toml_get(const toml::node& n, const std::string& key) {
  if constexpr (std::is_same_v<T, double>) {
    if (auto v = n.value<double>()) return *v;
  } else if constexpr (std::is_same_v<T, bool>) {
    if (auto v = n.value_exact<bool>()) return *v;
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (auto v = n.value_exact<std::string>()) return *v;
  } else {
    if (auto v = n.value_exact<int64_t>()) return static_cast<T>(*v);
  }
  fail(ErrorKind::InvalidInput, "config key '" + key + "' has the wrong type");
}

template <class T>
std::vector<T> toml_list(const toml::node& n, const std::string& key) {
  std::vector<T> out;
  if (const auto* arr = n.as_array()) {
    for (const auto& e : *arr) out.push_back(toml_get<T>(e, key));
    return out;
  }
  out.push_back(toml_get<T>(n, key));
  return out;
}

}  // namespace detail

// Applies the keys of a TOML document to c. Unknown keys are an error, so a
// typo cannot silently fall back to a default.
inline void apply_toml(RunConfig& c, const std::string& text, const std::string& source = "config") {
  toml::table tbl;
  try {
    tbl = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    fail(ErrorKind::InvalidInput, std::string("config: ") + std::string(e.description()));
  }
  auto apply = [&](const std::string& raw, const toml::node& v, bool in_tol) {
    const std::string key = detail::normalize_key(raw);
    using detail::toml_get;
    using detail::toml_list;
    if (in_tol || key.rfind("tol_", 0) == 0) {
      const std::string k = in_tol ? key : key.substr(4);
      double x = toml_get<double>(v, raw);
      if (k == "margin") c.tol.margin = x;
      else if (k == "phi") c.tol.phi = x;
      else if (k == "cone") c.tol.cone = x;
      else if (k == "residual") c.tol.residual = x;
      else if (k == "collision") c.tol.collision = x;
      else if (k == "refine") c.tol.refine = x;
      else fail(ErrorKind::InvalidInput, "unknown tolerance '" + raw + "'");
      return;
    }
    if (key == "command") c.command = toml_get<std::string>(v, raw);
    else if (key == "input" || key == "inputs") c.inputs = toml_list<std::string>(v, raw);
    else if (key == "builtin") c.builtin = toml_get<std::string>(v, raw);
    else if (key == "out" || key == "out_dir") c.out_dir = toml_get<std::string>(v, raw);
    else if (key == "N" || key == "n_samples" || key == "samples") c.N = toml_get<int>(v, raw);
    else if (key == "harmonics") c.harmonics = toml_get<int>(v, raw);
    else if (key == "lift") c.lift = toml_get<bool>(v, raw);
    else if (key == "nx") c.nx = toml_get<int>(v, raw);
    else if (key == "ny") c.ny = toml_get<int>(v, raw);
    else if (key == "nt") c.nt = toml_get<int>(v, raw);
    else if (key == "grid") {
      auto g = toml_list<int>(v, raw);
      require(g.size() == 3, ErrorKind::InvalidInput, "config 'grid' needs [nx, ny, nt]");
      c.nx = g[0], c.ny = g[1], c.nt = g[2];
    } else if (key == "radius") {
      if (v.is_string()) {
        require(*v.value<std::string>() == "auto", ErrorKind::InvalidInput, "config 'radius' must be a number or \"auto\"");
        c.radius = 0;
      } else {
        c.radius = toml_get<double>(v, raw);
      }
    }
    else if (key == "phis") c.phis = toml_list<double>(v, raw);
    else if (key == "phi_count") c.phi_count = toml_get<int>(v, raw);
    else if (key == "per_gap") c.per_gap = toml_get<int>(v, raw);
    else if (key == "obj") c.obj = toml_get<bool>(v, raw);
    else if (key == "ply") c.ply = toml_get<bool>(v, raw);
    else if (key == "fiber_word") c.fiber_word = toml_get<bool>(v, raw);
    else if (key == "phi") c.phi = toml_get<double>(v, raw);
    else if (key == "k") c.k = toml_get<int>(v, raw);
    else if (key == "newton") c.newton = toml_get<bool>(v, raw);
    else if (key == "cone_radii") c.cone_radii = toml_list<double>(v, raw);
    else if (key == "residual_samples") c.residual_samples = toml_get<int>(v, raw);
    else if (key == "cone_t_samples") c.cone_t_samples = toml_get<int>(v, raw);
    else if (key == "seed") c.seed = toml_get<unsigned>(v, raw);
    else fail(ErrorKind::InvalidInput, "unknown config key '" + raw + "'");
  };
  for (const auto& [k, v] : tbl) {
    const std::string key(k.str());
    if (detail::normalize_key(key) == "tolerances") {
      const auto* sub = v.as_table();
      require(sub != nullptr, ErrorKind::InvalidInput, "config 'tolerances' must be a table");
      for (const auto& [k2, v2] : *sub) apply(std::string(k2.str()), v2, true);
      continue;
    }
    apply(key, v, false);
  }
}

inline void load_toml(RunConfig& c, const std::string& path) {
  apply_toml(c, io::read_file(path), path);
  c.config_file = path;
}

}  // namespace braidfib
