#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include <braidfib/braidfib.hpp>

using namespace braidfib;

namespace {

// The config file has to be read before flags are bound, so that flags win.
std::string find_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

void add_common(CLI::App* sub, RunConfig& c, std::string& config_path) {
  sub->add_option("input", c.inputs, "Input file: strands/poly_loop/twist_loop JSON or braid word text");
  sub->add_option("--builtin", c.builtin, "Built-in example instead of a file: 52 or trefoil");
  sub->add_option("-o,--out", c.out_dir, "Output directory");
  sub->add_option("--config", config_path, "TOML file with the same keys as the long flags");
  sub->add_option("-N,--samples", c.N, "Tracking grid size (>= 16)");
  sub->add_option("--harmonics", c.harmonics, "Harmonics per period when realizing braid words");
  sub->add_flag("--lift,!--no-lift", c.lift, "Deform twist-loop inputs so surplus critical points cancel");
  sub->add_option("--seed", c.seed, "Seed for randomized sampling");
  sub->add_option("--tol-margin", c.tol.margin, "P-fibration margin tolerance");
  sub->add_option("--tol-phi", c.tol.phi, "Minimum distance of phi from critical arguments");
  sub->add_option("--tol-collision", c.tol.collision, "Strand collision tolerance");
  sub->add_option("--tol-refine", c.tol.refine, "Critical point refinement tolerance");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string config_path = find_config(argc, argv);
  if (!config_path.empty()) {
    try {
      load_toml(cfg, config_path);
    } catch (const Error& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return exit_code::input_error;
    }
  }

  CLI::App app{"braidfib: braids, loops of polynomials and their arg fibrations"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 fibration, 1 other failure, 2 input error, 3 pseudo-fibration,\n"
      "4 degenerate, 5 critical phi, 6 symmetry failure. BRAIDFIB_THREADS caps workers.");
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

  auto* analyze = app.add_subcommand("analyze", "Critical points of arg g and the P-fibration test");
  add_common(analyze, cfg, config_path);

  auto* diagram = app.add_subcommand("diagram", "Square diagram of the critical values (SVG + JSON)");
  add_common(diagram, cfg, config_path);
  diagram->add_flag("--fiber-word", cfg.fiber_word, "Also emit the band word of the fiber at --phi");
  diagram->add_option("--phi", cfg.phi, "Fiber argument in radians");

  auto* fibers = app.add_subcommand("fibers", "Level sets arg g = phi as OBJ/PLY meshes and a sweep report");
  add_common(fibers, cfg, config_path);
  fibers->add_option("--phi,--phis", cfg.phis, "Explicit phi values (repeatable or comma separated)")->delimiter(',');
  fibers->add_option("--phi-count", cfg.phi_count, "Evenly spaced phi values (used when --phis is absent)");
  fibers->add_option("--per-gap", cfg.per_gap, "Otherwise phi values per gap between critical arguments");
  fibers->add_option("--nx", cfg.nx, "Grid cells in Re u");
  fibers->add_option("--ny", cfg.ny, "Grid cells in Im u");
  fibers->add_option("--nt", cfg.nt, "Grid cells in t");
  std::string grid, radius;
  fibers->add_option("--grid", grid, "Grid cells NX,NY,NT");
  fibers->add_option("--radius", radius, "Half width of the box in u: auto or a number");
  fibers->add_flag("--obj,!--no-obj", cfg.obj, "Write OBJ meshes");
  fibers->add_flag("--ply,!--no-ply", cfg.ply, "Write binary PLY meshes");

  auto* sing = app.add_subcommand("singularity", "Mixed polynomial of a loop and its verification");
  add_common(sing, cfg, config_path);
  sing->add_option("-k", cfg.k, "Root exponent k (0 = smallest admissible)");
  sing->add_flag("--newton", cfg.newton, "Write the Newton boundary as SVG");
  sing->add_option("--cone-radii", cfg.cone_radii, "Radii for the cone check")->delimiter(',');
  sing->add_option("--residual-samples", cfg.residual_samples, "Samples for the identity check");
  sing->add_option("--tol-cone", cfg.tol.cone, "Cone check tolerance");
  sing->add_option("--tol-residual", cfg.tol.residual, "Identity residual tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_code::input_error;
  }
  for (auto* s : {analyze, diagram, fibers, sing})
    if (s->parsed()) cfg.command = s->get_name();
  try {
    if (!grid.empty()) {
      int nx = 0, ny = 0, nt = 0;
      char tail = 0;
      require(std::sscanf(grid.c_str(), "%d,%d,%d%c", &nx, &ny, &nt, &tail) == 3, ErrorKind::InvalidInput,
              "--grid expects NX,NY,NT");
      cfg.nx = nx, cfg.ny = ny, cfg.nt = nt;
    }
    if (!radius.empty()) cfg.radius = radius == "auto" ? 0.0 : std::stod(radius);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code::input_error;
  }

  const CommandResult r = run_command(cfg);
  if (r.report.contains("error")) std::fprintf(stderr, "error: %s\n", r.message.c_str());
  else std::printf("%s\n", r.message.c_str());
  for (const auto& f : r.files) std::printf("wrote %s/%s\n", cfg.out_dir.c_str(), f.c_str());
  return r.exit_code;
}
