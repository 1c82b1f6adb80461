// Builds the mixed polynomial f(u, v) of a loop of polynomials and checks that
// the zeros of f_u form the cone over the critical points.
//
//   demo_milnor_cone [loop.json]   (default: u^3 - (3/4) e^{2it} u)

#include <braidfib/braidfib.hpp>

#include <cstdio>

using namespace braidfib;

int main(int argc, char** argv) {
  PolyLoop g = PolyLoop::closed_form({TrigCurve(), TrigCurve::mode(2, -0.75), TrigCurve()});
  try {
    if (argc > 1) g = io::load_input(argv[1]).loop;
    const auto sym = check_symmetry(g);
    std::printf("symmetry: %s\n", to_string(sym));
    const int k = minimal_k(g);
    const auto f = semiholomorphic(g, k);
    std::printf("k = %d\nf   = %s\nf_u = %s\n", k, f.to_string().c_str(), derivative_u(f).to_string().c_str());
    const auto nd = newton_data(f);
    std::printf("support:");
    for (const auto& p : nd.support) std::printf(" (%d,%d)", p[0], p[1]);
    std::printf("\nradially weighted homogeneous: %s, convenient: %s\n",
                nd.radially_weighted_homogeneous ? "yes" : "no", nd.convenient ? "yes" : "no");
    for (double r : {0.25, 0.5, 1.0, 2.0}) {
      const auto rep = verify_cone(f, g, k, {r});
      std::printf("r = %4.2f: cone mismatch %.2e\n", r, rep.max_mismatch);
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
