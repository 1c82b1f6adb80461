#pragma once

// The four pipelines behind the CLI. Each writes its files into the output
// directory, returns the JSON report and an exit code from the contract below.

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "config.hpp"
#include "io.hpp"

namespace braidfib {

namespace exit_code {
inline constexpr int fibration = 0;
inline constexpr int other = 1;
inline constexpr int input_error = 2;
inline constexpr int pseudo_fibration = 3;
inline constexpr int degenerate = 4;
inline constexpr int critical_phi = 5;
inline constexpr int symmetry_failure = 6;
}  // namespace exit_code

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::NotABraid:
    case ErrorKind::BasepointMismatch:
    case ErrorKind::InsufficientHarmonics:
    case ErrorKind::ClosedFormRequired: return exit_code::input_error;
    case ErrorKind::LeavesXn:
    case ErrorKind::NotMorse:
    case ErrorKind::NonGeneric: return exit_code::degenerate;
    case ErrorKind::CriticalPhi: return exit_code::critical_phi;
    case ErrorKind::SymmetryFailure: return exit_code::symmetry_failure;
    default: return exit_code::other;
  }
}

struct CommandResult {
  int exit_code = 0;
  json report;
  std::vector<std::string> files;  // written, relative to the output directory
  std::string message;             // one-line summary or error
};

namespace detail {

inline io::LoopInput load_for(const RunConfig& c) {
  if (!c.builtin.empty()) return io::builtin_input(c.builtin, c.load_options());
  require(!c.inputs.empty(), ErrorKind::InvalidInput, "no input: give an input file or --builtin");
  return io::load_input(c.inputs.front(), c.load_options());
}

inline json input_summary(const io::LoopInput& in) {
  json j = {{"kind", in.kind}, {"name", in.name}, {"degree", in.loop.degree()},
            {"segments", in.loop.segments().size()}};
  if (in.word) j["word"] = io::to_json(*in.word);
  if (in.lifted) j["lift"] = {{"eta", in.lifted->eta}, {"fit_error", in.lifted->fit_error},
                              {"harmonics", in.lifted->harmonics}};
  return j;
}

inline std::optional<int> beta_of(const io::LoopInput& in) {
  if (!in.word || in.word->scheme == Scheme::Band) return std::nullopt;
  return beta(*in.word);
}

inline TrackOptions track_options(const RunConfig& c) {
  TrackOptions o;
  o.collision_tol = c.tol.collision;
  return o;
}

inline ArgOptions arg_options(const RunConfig& c) {
  ArgOptions o;
  o.refine_tol = c.tol.refine;
  return o;
}

inline std::string path_in(const RunConfig& c, const std::string& name) {
  return (std::filesystem::path(c.out_dir) / name).string();
}

inline void emit(const RunConfig& c, CommandResult& r, const std::string& name, const std::string& data) {
  io::write_file(path_in(c, name), data);
  r.files.push_back(name);
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace detail

// Root braid, saddle braid, arg critical points and the P-fibration test.
inline CommandResult cmd_analyze(const RunConfig& c) {
  CommandResult r;
  const auto in = detail::load_for(c);
  const auto topt = detail::track_options(c);
  const SampledBraid roots = track(in.loop, Target::Roots, c.N, topt);
  json root_json = {{"min_separation", roots.min_separation}, {"closure", roots.closure.to_string()}};
  try {
    root_json["word"] = io::to_json(braid_word_of(in.loop, roots));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Tangency) throw;
    root_json["word_error"] = e.what();
  }
  const CriticalData cdat = critical_data(in.loop, c.N, topt);
  const auto b = detail::beta_of(in);
  const MorseReport morse = morse_count_report(cdat, b, std::nullopt, detail::arg_options(c));
  PFiberOptions popt;
  popt.N = c.N;
  popt.margin_tol = c.tol.margin;
  popt.track = topt;
  const PFiberResult pf = is_p_fibered(cdat, popt);

  r.report = reproducibility_header(c);
  r.report["input"] = detail::input_summary(in);
  r.report["roots"] = root_json;
  r.report["saddles"] = {{"count", cdat.count()},
                         {"min_separation", cdat.saddles.min_separation},
                         {"closure", cdat.saddles.closure.to_string()},
                         {"min_abs_value", cdat.min_abs_value}};
  r.report["count"] = morse.count;
  r.report["p_fibered"] = pf.p_fibered;
  r.report["morse"] = io::to_json(morse);
  r.report["p_fiber"] = io::to_json(pf);
  if (pf.p_fibered) r.exit_code = exit_code::fibration;
  else if (morse.degenerate > 0) r.exit_code = exit_code::degenerate;
  else r.exit_code = exit_code::pseudo_fibration;
  r.report["exit_code"] = r.exit_code;
  detail::emit(c, r, "analyze.json", detail::dump(r.report));
  detail::emit(c, r, "roots.csv", io::sampled_braid_csv(roots));
  detail::emit(c, r, "saddles.csv", io::sampled_braid_csv(cdat.saddles));
  r.message = "critical points: " + std::to_string(morse.count) + (pf.p_fibered ? ", P-fibered" : ", not P-fibered");
  return r;
}

// Square diagram of the critical values, optionally with the band word of one fiber.
inline CommandResult cmd_diagram(const RunConfig& c) {
  CommandResult r;
  const auto in = detail::load_for(c);
  DiagramOptions dopt;
  dopt.N = c.N;
  dopt.arg = detail::arg_options(c);
  const SquareDiagram d = square_diagram(in.loop, dopt);
  r.report = reproducibility_header(c);
  r.report["input"] = detail::input_summary(in);
  r.report["diagram"] = io::to_json(d);
  if (c.fiber_word) r.report["fiber_word"] = io::to_json(fiber_band_word(d, c.phi, c.tol.phi));
  int degenerate = 0;
  for (const auto& p : d.tangencies) degenerate += p.type == CriticalType::Degenerate;
  r.exit_code = d.rampichini ? exit_code::fibration : degenerate ? exit_code::degenerate : exit_code::pseudo_fibration;
  r.report["exit_code"] = r.exit_code;
  detail::emit(c, r, "diagram.svg", diagram_svg(d));
  detail::emit(c, r, "diagram.json", detail::dump(r.report));
  r.message = std::to_string(d.curves()) + " curves, " + std::to_string(d.tangencies.size()) + " tangencies" +
              (d.rampichini ? ", monotone" : "");
  return r;
}

// Level sets {arg g = phi} as meshes, and how their topology changes with phi.
inline CommandResult cmd_fibers(const RunConfig& c) {
  CommandResult r;
  const auto in = detail::load_for(c);
  std::vector<double> crit;
  if (in.loop.degree() >= 2)
    for (const auto& p : arg_critical_points(critical_data(in.loop, c.N, detail::track_options(c)),
                                             detail::arg_options(c)))
      crit.push_back(p.critical_arg);
  std::sort(crit.begin(), crit.end());
  std::vector<double> phis = c.phis;
  if (phis.empty() && c.phi_count > 0)
    for (int q = 0; q < c.phi_count; ++q) phis.push_back(kTwoPi * (q + 0.5) / c.phi_count);
  if (phis.empty()) phis = regular_phis(crit, c.per_gap);
  for (auto& p : phis) p -= kTwoPi * std::floor(p / kTwoPi);

  std::vector<std::string> names;
  const auto rep = sweep_report(in.loop, phis, c.level_set_options(), &crit, [&](std::size_t q, const FiberMesh& m) {
    char base[32];
    std::snprintf(base, sizeof base, "fiber_%03zu", q);
    if (c.obj) {
      write_obj(m, detail::path_in(c, std::string(base) + ".obj"));
      r.files.push_back(std::string(base) + ".obj");
    }
    if (c.ply) {
      write_ply(m, detail::path_in(c, std::string(base) + ".ply"));
      r.files.push_back(std::string(base) + ".ply");
    }
  });
  r.report = reproducibility_header(c);
  r.report["input"] = detail::input_summary(in);
  r.report["sweep"] = io::to_json(rep);
  json chi = json::array();
  for (const auto& e : rep.entries) chi.push_back(e.topo.euler);
  r.report["euler_sequence"] = chi;
  if (in.word) r.report["n_minus_length"] = in.word->strands - in.word->length();
  r.exit_code = exit_code::fibration;
  r.report["exit_code"] = r.exit_code;
  detail::emit(c, r, "sweep.json", detail::dump(r.report));
  r.message = std::to_string(rep.entries.size()) + " level sets, " + std::to_string(rep.changes.size()) +
              " changes of topology";
  return r;
}

// Mixed polynomial f(u, v) with f(u, r e^{it}) = r^{kn} g_t(u / r^k) and its checks.
inline CommandResult cmd_singularity(const RunConfig& c) {
  CommandResult r;
  const auto in = detail::load_for(c);
  r.report = reproducibility_header(c);
  r.report["input"] = detail::input_summary(in);
  const auto diag = diagnose_symmetry(in.loop);
  json sym = {{"symmetry", to_string(diag.symmetry)}};
  auto pairs = [](const std::vector<std::array<int, 2>>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back({{"m", p[0]}, {"degree", p[1]}});
    return a;
  };
  sym["fractional_coefficients"] = diag.fractional;
  sym["breaks_even"] = pairs(diag.breaks_even);
  sym["breaks_odd"] = pairs(diag.breaks_odd);
  r.report["symmetry"] = sym;
  if (diag.symmetry == Symmetry::None) {
    r.exit_code = exit_code::symmetry_failure;
    r.report["exit_code"] = r.exit_code;
    std::string why = "no symmetry: ";
    if (!diag.fractional.empty()) why += "fractional frequencies in a_" + std::to_string(diag.fractional.front()) + "; ";
    if (!diag.breaks_even.empty())
      why += "a_" + std::to_string(diag.breaks_even.front()[0]) + " has odd degree " +
             std::to_string(diag.breaks_even.front()[1]) + "; ";
    if (!diag.breaks_odd.empty())
      why += "a_" + std::to_string(diag.breaks_odd.front()[0]) + " has degree " +
             std::to_string(diag.breaks_odd.front()[1]) + " against parity of n-m";
    r.message = why;
    r.report["error"] = {{"kind", to_string(ErrorKind::SymmetryFailure)}, {"message", why}};
    detail::emit(c, r, "singularity.json", detail::dump(r.report));
    return r;
  }
  const int k = c.k > 0 ? c.k : minimal_k(in.loop);
  const MixedPolynomial f = semiholomorphic(in.loop, k);

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0), R(0.05, 3.0), T(0.0, kTwoPi);
  std::vector<std::array<double, 4>> pts(c.residual_samples);
  for (auto& p : pts) p = {2 * U(rng), 2 * U(rng), R(rng), T(rng)};
  double worst = 0;
  for (const auto& p : pts)
    worst = std::max(worst, semiholomorphic_residual(f, in.loop, k, {p[0], p[1]}, p[2], p[3]));
  const NewtonData nd = newton_data(f);
  const ConeReport cone = verify_cone(f, in.loop, k, c.cone_radii, c.cone_t_samples, c.tol.cone);

  r.report["k"] = k;
  r.report["mixed_polynomial"] = io::to_json(f);
  r.report["pruned"] = f.pruned;
  r.report["identity"] = {{"samples", c.residual_samples},
                          {"max_relative_residual", worst},
                          {"tolerance", c.tol.residual},
                          {"passed", worst <= c.tol.residual}};
  r.report["newton"] = io::to_json(nd);
  r.report["cone"] = io::to_json(cone);
  const bool ok = worst <= c.tol.residual && cone.passed;
  r.exit_code = ok ? exit_code::fibration : exit_code::other;
  r.report["exit_code"] = r.exit_code;
  detail::emit(c, r, "mixed_polynomial.json", detail::dump(io::to_json(f)));
  if (c.newton) detail::emit(c, r, "newton.svg", newton_svg(nd));
  detail::emit(c, r, "singularity.json", detail::dump(r.report));
  r.message = "f = " + f.to_string() + (ok ? ", checks passed" : ", checks FAILED");
  return r;
}

// Validates, dispatches and turns library errors into exit codes. Errors still
// produce a report file so pipelines can inspect what went wrong.
inline CommandResult run_command(const RunConfig& c) {
  CommandResult r;
  try {
    c.validate();
    std::filesystem::create_directories(c.out_dir);
    if (c.command == "analyze") return cmd_analyze(c);
    if (c.command == "diagram") return cmd_diagram(c);
    if (c.command == "fibers") return cmd_fibers(c);
    if (c.command == "singularity") return cmd_singularity(c);
    fail(ErrorKind::InvalidInput, "unknown command '" + c.command + "'");
  } catch (const Error& e) {
    r.exit_code = exit_code_for(e.kind());
    r.message = e.what();
    r.report = reproducibility_header(c);
    r.report["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    r.report["exit_code"] = r.exit_code;
  } catch (const std::exception& e) {
    r.exit_code = exit_code::other;
    r.message = e.what();
    r.report = reproducibility_header(c);
    r.report["error"] = {{"kind", "internal"}, {"message", e.what()}};
    r.report["exit_code"] = r.exit_code;
  }
  try {
    if (!c.command.empty() && std::filesystem::is_directory(c.out_dir))
      io::write_file(detail::path_in(c, c.command + ".error.json"), detail::dump(r.report));
  } catch (...) {
  }
  return r;
}

}  // namespace braidfib
