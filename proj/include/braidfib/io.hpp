#pragma once

// JSON and CSV persistence. Numbers go through nlohmann's shortest round-trip
// formatting, so every double reads back bit for bit.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arg_analysis.hpp"
#include "braid_word.hpp"
#include "fiber_mesh.hpp"
#include "mixed_poly.hpp"
#include "poly_loop.hpp"
#include "square_diagram.hpp"
#include "strands.hpp"
#include "twist_realization.hpp"

namespace braidfib {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "braidfib";
inline constexpr const char* kToolVersion = "0.1.0";

namespace io {

inline json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

inline cd complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail(ErrorKind::InvalidInput, "complex number must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json complex_list(const std::vector<cd>& z) {
  json a = json::array();
  for (const auto& x : z) a.push_back(complex_json(x));
  return a;
}

inline std::vector<cd> complex_list_from(const json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidInput, "expected an array of complex numbers");
  std::vector<cd> out;
  for (const auto& x : j) out.push_back(complex_from(x));
  return out;
}

// {"denominator": q, "terms": [[d, re, im], ...]} for sum c_d exp(i d t / q).
inline json to_json(const TrigCurve& c) {
  json terms = json::array();
  for (const auto& [d, z] : c.coeffs()) terms.push_back(json::array({d, z.real(), z.imag()}));
  return {{"denominator", c.denominator()}, {"terms", terms}};
}

inline TrigCurve trig_curve_from(const json& j) {
  if (!j.is_object() || !j.contains("terms")) fail(ErrorKind::InvalidInput, "trig curve needs 'terms'");
  std::map<int, cd> m;
  for (const auto& t : j.at("terms")) {
    if (!t.is_array() || t.size() != 3) fail(ErrorKind::InvalidInput, "trig term must be [degree, re, im]");
    m[t[0].get<int>()] += cd(t[1].get<double>(), t[2].get<double>());
  }
  return TrigCurve(std::move(m), j.value("denominator", 1));
}

inline json to_json(const StrandSystem& s) {
  json a = json::array();
  for (const auto& c : s.curves) a.push_back(to_json(c));
  return {{"type", "strands"}, {"strands", a}};
}

inline StrandSystem strands_from(const json& j, const ValidationOptions& opt = {}) {
  StrandSystem s;
  for (const auto& c : j.at("strands")) s.curves.push_back(trig_curve_from(c));
  require(!s.curves.empty(), ErrorKind::InvalidInput, "strand system is empty");
  return validated(std::move(s), opt);
}

inline json to_json(const PolyLoop& g) {
  json segs = json::array();
  for (const auto& s : g.segments()) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs) coeffs.push_back(to_json(c));
    segs.push_back({{"t0", s.t0}, {"t1", s.t1}, {"coeffs", coeffs}});
  }
  return {{"type", "poly_loop"}, {"degree", g.degree()}, {"segments", segs}};
}

inline PolyLoop poly_loop_from(const json& j) {
  const int n = j.at("degree").get<int>();
  require(n >= 1, ErrorKind::InvalidInput, "poly loop degree must be positive");
  std::vector<LoopSegment> segs;
  for (const auto& s : j.at("segments")) {
    LoopSegment seg;
    seg.t0 = s.value("t0", 0.0);
    seg.t1 = s.value("t1", kTwoPi);
    for (const auto& c : s.at("coeffs")) seg.coeffs.push_back(trig_curve_from(c));
    require(static_cast<int>(seg.coeffs.size()) == n, ErrorKind::InvalidInput,
            "each segment needs degree many coefficients a_0 .. a_{n-1}");
    segs.push_back(std::move(seg));
  }
  require(!segs.empty(), ErrorKind::InvalidInput, "poly loop needs at least one segment");
  if (segs.size() == 1 && segs[0].t0 == 0.0 && segs[0].t1 == kTwoPi) return PolyLoop::closed_form(segs[0].coeffs);
  return PolyLoop::piecewise(n, std::move(segs));
}

inline json to_json(const BraidWord& w) {
  json letters = json::array();
  for (const auto& l : w.letters) {
    if (w.scheme == Scheme::Band) letters.push_back(json::array({l.generator, l.partner, l.sign}));
    else letters.push_back(json::array({l.generator, l.sign}));
  }
  json out = {{"strands", w.strands}, {"scheme", to_string(w.scheme)}, {"letters", letters}};
  const std::string text = format_braid_word(w);
  const std::size_t last = text.rfind('\n', text.size() - 2);
  out["text"] = text.substr(last + 1, text.size() - last - 2);
  if (w.tree) {
    json edges = json::array();
    for (const auto& e : w.tree->edges) edges.push_back(json::array({e.a, e.b, e.sign}));
    out["tree"] = {{"positions", complex_list(w.tree->positions)}, {"edges", edges}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// Input loading.

// What an input file described, with whatever provenance data it carried.
struct LoopInput {
  std::string kind;  // strands | poly_loop | twist_loop | braid_word | builtin
  std::string name;
  PolyLoop loop;
  std::optional<StrandSystem> strands;
  std::optional<BraidWord> word;                  // generating word, when there is one
  std::optional<TwistRealization> twist;
  std::optional<LiftedLoop> lifted;
};

struct LoadOptions {
  int harmonics = 8;         // for braid-word inputs
  bool lift_twists = false;  // deform twist loops to remove surplus critical points
  LiftOptions lift{};
};

inline LoopInput twist_input(const std::vector<cd>& base, const std::vector<TwistLetter>& letters,
                             std::optional<BraidWord> artin, bool lift, const LiftOptions& lopt) {
  LoopInput in;
  in.kind = "twist_loop";
  in.twist = twist_realization(base, letters);
  in.word = artin ? *artin : in.twist->word;
  if (lift) {
    in.lifted = lift_deformed(*in.twist, lopt);
    in.loop = in.lifted->loop;
  } else {
    in.loop = in.twist->loop;
  }
  return in;
}

// {"type": "twist_loop", "base": [[re, im], ...] (ascending, monic) or
// "artin": "<word text>", "letters": [[saddle, sign], ...], "lift": bool}
inline LoopInput twist_input_from(const json& j, const LoadOptions& opt) {
  const bool lift = j.value("lift", opt.lift_twists);
  if (j.contains("artin")) {
    std::string text = j.at("artin").get<std::string>();
    BraidWord w = parse_braid_word(text);
    require(w.scheme == Scheme::Artin, ErrorKind::InvalidInput, "twist_loop 'artin' must be an Artin word");
    auto base = artin_base(w.strands);
    return twist_input(base, artin_to_twist(base, w), w, lift, opt.lift);
  }
  std::vector<cd> base = complex_list_from(j.at("base"));
  require(base.size() >= 3, ErrorKind::InvalidInput, "twist base needs degree >= 2");
  if (j.value("far_constant", true)) base = far_constant(base);
  std::vector<TwistLetter> letters;
  for (const auto& l : j.at("letters")) {
    require(l.is_array() && l.size() == 2, ErrorKind::InvalidInput, "twist letter must be [saddle, sign]");
    letters.push_back({l[0].get<int>(), l[1].get<int>() >= 0 ? 1 : -1});
  }
  return twist_input(base, letters, std::nullopt, lift, opt.lift);
}

inline LoopInput input_from_braid_word(const BraidWord& w, int harmonics) {
  LoopInput in;
  in.kind = "braid_word";
  BraidWord artin = w.scheme == Scheme::Artin ? w : band_to_artin(w.scheme == Scheme::TreeEdge ? tree_to_band(w) : w);
  in.strands = parametrize(artin, harmonics);
  in.loop = from_roots(*in.strands);
  in.word = w;
  return in;
}

inline LoopInput parse_input(const std::string& text, const LoadOptions& opt = {}) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidInput, std::string("malformed JSON: ") + e.what());
    }
    try {
      const std::string type = j.value("type", "");
      if (type == "strands") {
        LoopInput in;
        in.kind = type;
        in.strands = strands_from(j);
        in.loop = from_roots(*in.strands);
        return in;
      }
      if (type == "poly_loop") {
        LoopInput in;
        in.kind = type;
        in.loop = poly_loop_from(j);
        return in;
      }
      if (type == "twist_loop") return twist_input_from(j, opt);
      fail(ErrorKind::InvalidInput, "unknown input type '" + type + "'");
    } catch (const json::exception& e) {
      fail(ErrorKind::InvalidInput, std::string("bad input field: ") + e.what());
    }
  }
  return input_from_braid_word(parse_braid_word(text), opt.harmonics);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  f << data;
}

inline LoopInput load_input(const std::string& path, const LoadOptions& opt = {}) {
  LoopInput in = parse_input(read_file(path), opt);
  in.name = path;
  return in;
}

// Built-in examples: "52" (the three-strand 5_2 curves) and "trefoil"
// (three positive twists on a degree-2 base).
inline LoopInput builtin_input(const std::string& name, const LoadOptions& opt = {}) {
  if (name == "52" || name == "5_2") {
    LoopInput in;
    in.kind = "builtin";
    in.name = "52";
    in.strands = builtin_52();
    in.loop = from_roots(*in.strands);
    return in;
  }
  if (name == "trefoil") {
    BraidWord w = artin_word(2, {1, 1, 1});
    auto base = artin_base(2);
    LoopInput in = twist_input(base, artin_to_twist(base, w), w, opt.lift_twists, opt.lift);
    in.kind = "builtin";
    in.name = "trefoil";
    return in;
  }
  fail(ErrorKind::InvalidInput, "unknown builtin '" + name + "' (known: 52, trefoil)");
}

// ---------------------------------------------------------------------------
// CSV exports.

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// t, Re z_1, Im z_1, Re z_2, ...
inline std::string strands_csv(const StrandSystem& s, int samples) {
  std::string out = "t";
  for (int j = 1; j <= s.size(); ++j) out += ",re_z" + std::to_string(j) + ",im_z" + std::to_string(j);
  out += "\n";
  for (int k = 0; k <= samples; ++k) {
    const double t = kTwoPi * k / samples;
    out += fmt17(t);
    for (const auto& z : s.at(t)) out += "," + fmt17(z.real()) + "," + fmt17(z.imag());
    out += "\n";
  }
  return out;
}

// One row per sample and strand: t, j, Re, Im, strand_id. strand_id follows
// the strand across the closure, so points of one closed component share it.
inline std::string sampled_braid_csv(const SampledBraid& sb) {
  std::string out = "t,j,re,im,strand_id\n";
  std::vector<int> id(sb.strands());
  for (int j = 0; j < sb.strands(); ++j) {
    int s = j, first = j;
    for (int guard = 0; guard < sb.strands(); ++guard) {
      s = sb.closure(s + 1) - 1;
      first = std::min(first, s);
    }
    id[j] = first;
  }
  for (int k = 0; k <= sb.N; ++k)
    for (int j = 0; j < sb.strands(); ++j) {
      const cd z = sb.points[k][j];
      out += fmt17(sb.t[k]) + "," + std::to_string(j) + "," + fmt17(z.real()) + "," + fmt17(z.imag()) + "," +
             std::to_string(id[j]) + "\n";
    }
  return out;
}

// ---------------------------------------------------------------------------
// Reports.

inline json to_json(const ArgCriticalPoint& p) {
  return {{"t", p.t},           {"strand", p.strand},
          {"location", complex_json(p.location)}, {"critical_arg", p.critical_arg},
          {"type", to_string(p.type)}};
}

inline json to_json(const MorseReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) pts.push_back(to_json(p));
  json comps = json::array();
  for (const auto& c : r.components)
    comps.push_back({{"strands", c.strands}, {"winding", c.winding}, {"critical_points", c.critical_points}, {"even", c.even}});
  json out = {{"count", r.count}, {"degenerate", r.degenerate}, {"per_strand", r.per_strand},
              {"components", comps}, {"points", pts}};
  if (r.beta) out["beta"] = *r.beta;
  if (r.mn) out["mn_upper_bound"] = *r.mn;
  if (!r.comparison.empty()) out["comparison"] = r.comparison;
  return out;
}

inline json to_json(const PFiberResult& r) {
  json out = {{"p_fibered", r.p_fibered},
              {"margin", r.margin},
              {"margin_t", r.margin_t},
              {"margin_strand", r.margin_strand}};
  if (r.first_change_t) {
    out["first_change_t"] = *r.first_change_t;
    out["first_change_strand"] = *r.first_change_strand;
  }
  return out;
}

inline json to_json(const SquareDiagram& d) {
  json cr = json::array(), wr = json::array(), tg = json::array(), arcs = json::array();
  for (const auto& c : d.crossings)
    cr.push_back({{"t", c.t}, {"arg", c.arg}, {"a", c.a}, {"b", c.b}, {"under", c.under}});
  for (const auto& w : d.wraps) wr.push_back({{"t", w.t}, {"strand", w.strand}, {"direction", w.direction}});
  for (const auto& p : d.tangencies) tg.push_back(to_json(p));
  for (const auto& a : d.arcs)
    arcs.push_back({{"strand", a.strand}, {"t0", a.t0}, {"t1", a.t1}, {"i", a.i}, {"j", a.j}, {"sign", a.sign}});
  return {{"n", d.n},           {"curves", d.curves()}, {"rampichini", d.rampichini},
          {"tangencies", tg},   {"crossings", cr},      {"wraps", wr},
          {"arcs", arcs}};
}

inline json to_json(const FiberWord& f) {
  return {{"word", to_json(f.word)}, {"times", f.times}, {"euler_characteristic", f.euler_characteristic}};
}

inline json to_json(const MeshTopology& t) {
  return {{"vertices", t.vertices},   {"edges", t.edges},           {"faces", t.faces},
          {"euler_raw", t.euler_raw}, {"euler", t.euler},           {"components", t.components},
          {"braid_loops", t.braid_loops}, {"wall_loops", t.wall_loops}};
}

inline json to_json(const SweepReport& r) {
  json entries = json::array(), changes = json::array();
  for (const auto& e : r.entries) entries.push_back({{"phi", e.phi}, {"topology", to_json(e.topo)}});
  for (const auto& c : r.changes)
    changes.push_back(
        {{"phi_from", c.phi_from}, {"phi_to", c.phi_to}, {"delta", c.delta}, {"critical_args", c.critical_args}});
  return {{"entries", entries}, {"changes", changes}, {"critical_args", r.critical_args}};
}

inline json to_json(const MixedPolynomial& f) {
  json terms = json::array();
  for (const auto& [m, c] : f.terms)
    terms.push_back({{"i", m[0]}, {"k", m[1]}, {"l", m[2]}, {"re", c.real()}, {"im", c.imag()}});
  return {{"terms", terms}, {"pretty", f.to_string()}};
}

inline MixedPolynomial mixed_polynomial_from(const json& j) {
  MixedPolynomial f;
  for (const auto& t : j.at("terms"))
    f.terms[{t.at("i").get<int>(), t.at("k").get<int>(), t.at("l").get<int>()}] +=
        cd(t.at("re").get<double>(), t.at("im").get<double>());
  return f;
}

inline json to_json(const NewtonData& nd) {
  auto pts = [](const std::vector<std::array<int, 2>>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back(json::array({p[0], p[1]}));
    return a;
  };
  return {{"support", pts(nd.support)},
          {"vertices", pts(nd.vertices)},
          {"above_boundary", pts(nd.above)},
          {"convenient", nd.convenient},
          {"radially_weighted_homogeneous", nd.radially_weighted_homogeneous}};
}

inline json to_json(const ConeReport& c) {
  return {{"max_mismatch", c.max_mismatch}, {"worst_r", c.worst_r}, {"worst_t", c.worst_t},
          {"samples", c.samples},           {"tolerance", c.tolerance}, {"passed", c.passed}};
}

}  // namespace io
}  // namespace braidfib
