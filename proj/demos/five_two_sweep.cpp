// Level sets of arg g for the 5_2 loop at regular values between the critical
// arguments: capped Euler characteristic and genus of each fiber.
//
//   demo_five_two_sweep [grid]   (default 128; the box has grid x grid x 2 grid cells)

#include <braidfib/braidfib.hpp>

#include <cstdio>
#include <cstdlib>

using namespace braidfib;

int main(int argc, char** argv) {
  const int grid = argc > 1 ? std::atoi(argv[1]) : 128;
  const auto g = from_roots(builtin_52());
  const auto cdat = critical_data(g, 2048);
  const auto pts = arg_critical_points(cdat);
  std::vector<double> crit;
  std::printf("critical points of arg g: %zu\n", pts.size());
  for (const auto& p : pts) {
    std::printf("  t = %.6f  strand %d  arg = %.6f  %s\n", p.t, p.strand, p.critical_arg, to_string(p.type));
    crit.push_back(p.critical_arg);
  }
  LevelSetOptions o;
  o.nx = o.ny = grid;
  o.nt = 2 * grid;
  SweepReport rep;
  try {
    rep = sweep_report(g, regular_phis(crit, 1), o, &crit);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  std::printf("\n%10s %6s %6s %6s\n", "phi", "chi", "genus", "faces");
  for (const auto& e : rep.entries) {
    // one boundary component (the knot): chi = 1 - 2 genus
    std::printf("%10.4f %6d %6d %6d\n", e.phi, e.topo.euler, (1 - e.topo.euler) / 2, e.topo.faces);
  }
  std::printf("\n");
  for (const auto& c : rep.changes)
    std::printf("phi %.3f -> %.3f: chi %+d across %zu critical argument(s)\n", c.phi_from, c.phi_to, c.delta,
                c.critical_args.size());
}
