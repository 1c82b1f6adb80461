// Realizes a few Artin words as loops of polynomials and reports, for each, the
// number of critical points of arg g against beta of the word.
//
//   demo_fibered_braids [word ...]     e.g.  demo_fibered_braids "1 2 -1" "1 1 1"

#include <braidfib/braidfib.hpp>

#include <cstdio>
#include <sstream>

using namespace braidfib;

int main(int argc, char** argv) {
  std::vector<std::vector<int>> words{{1, 1, 1}, {1, -2}, {1, 2, 1, 2}, {1, 2, -1, 2}, {1, -2, -2, 1, 2}};
  if (argc > 1) {
    words.clear();
    for (int a = 1; a < argc; ++a) {
      std::istringstream in(argv[a]);
      std::vector<int> w;
      for (int g; in >> g;) w.push_back(g);
      words.push_back(w);
    }
  }
  std::printf("%-22s %5s %6s %6s %11s\n", "word", "beta", "raw", "lifted", "P-fibered");
  for (const auto& gens : words) {
    int n = 2;
    for (int g : gens) n = std::max(n, std::abs(g) + 1);
    try {
      const auto w = artin_word(n, gens);
      const auto p = artin_base(n);
      const auto raw = twist_realization(p, artin_to_twist(p, w));
      const auto lifted = lift_deformed(raw);
      const int raw_count = static_cast<int>(arg_critical_points(critical_data(raw.loop, 2048)).size());
      const auto cdat = critical_data(lifted.loop, 2048);
      const int count = static_cast<int>(arg_critical_points(cdat).size());
      const bool pf = is_p_fibered(cdat).p_fibered;
      std::string text = format_braid_word(w);
      text = text.substr(text.find('\n') + 1);
      text.pop_back();
      std::printf("%-22s %5d %6d %6d %11s\n", text.c_str(), beta(w), raw_count, count, pf ? "yes" : "no");
    } catch (const Error& e) {
      std::fprintf(stderr, "skipping word: %s\n", e.what());
    }
  }
  std::printf("\nraw: the concatenated twist loops; lifted: after deforming the critical values\n");
}
