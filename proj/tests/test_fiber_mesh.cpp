#include <gtest/gtest.h>

#include <braidfib/fiber_mesh.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "twist_cases.hpp"

using namespace braidfib;

namespace {

LevelSetOptions grid(int g) {
  LevelSetOptions o;
  o.nx = o.ny = g;
  o.nt = 2 * g;
  return o;
}

std::vector<double> crit_args(const PolyLoop& g) {
  std::vector<double> c;
  if (g.degree() >= 2)
    for (const auto& p : arg_critical_points(critical_data(g, 2048))) c.push_back(p.critical_arg);
  return c;
}

PolyLoop disk_loop() { return PolyLoop::closed_form({TrigCurve::mode(1, -1.0)}); }
PolyLoop quarter_loop() { return PolyLoop::closed_form({TrigCurve::mode(1, -0.25), TrigCurve()}); }

std::filesystem::path tmp_path(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST(EulerCharacteristic, MatchesSetOracle) {
  for (int m : {3, 5, 8}) {
    const auto t = oracle::torus(m);
    EXPECT_EQ(euler_characteristic(t), 0);
    EXPECT_EQ(oracle::euler(t), 0);
  }
  const auto m = level_set(quarter_loop(), 2.0, grid(48));
  EXPECT_EQ(euler_characteristic(m), oracle::euler(m.triangles));
  // a single triangle and a closed tetrahedron
  EXPECT_EQ(euler_characteristic({{0, 1, 2}}), 1);
  EXPECT_EQ(euler_characteristic({{0, 1, 2}, {0, 3, 1}, {1, 3, 2}, {2, 3, 0}}), 2);
}

TEST(LevelSet, LinearLoopFiberIsADisk) {
  for (double phi : {0.3, 2.5, 5.0}) {
    const auto tp = topology(level_set(disk_loop(), phi, grid(48)));
    EXPECT_EQ(tp.euler, 1) << phi;
    EXPECT_EQ(tp.components, 1);
    EXPECT_EQ(tp.braid_loops, 1);
  }
}

TEST(LevelSet, QuarterLoopFiberIsADisk) {
  const auto tp = topology(level_set(quarter_loop(), 1.0, grid(64)));
  EXPECT_EQ(tp.euler, 1);
  EXPECT_EQ(tp.components, 1);
  EXPECT_EQ(tp.braid_loops, 1);
}

TEST(LevelSet, GridDoublingKeepsTopology) {
  const auto a = topology(level_set(quarter_loop(), 4.0, grid(40)));
  const auto b = topology(level_set(quarter_loop(), 4.0, grid(80)));
  EXPECT_EQ(a.euler, b.euler);
  EXPECT_EQ(a.components, b.components);
  EXPECT_EQ(a.braid_loops, b.braid_loops);
  EXPECT_GT(b.vertices, 3 * a.vertices);
}

TEST(LevelSet, BraidBoundaryFollowsTheRoots) {
  const auto g = quarter_loop();
  const auto m = level_set(g, 1.0, grid(64));
  const double h = 2 * m.radius / m.nx;
  ASSERT_FALSE(m.braid_boundary.empty());
  for (const auto& loop : m.braid_boundary)
    for (int v : loop) {
      const auto& p = m.vertices[v];
      double best = 1e300;
      for (const auto& z : roots_at(g, p[2])) best = std::min(best, std::abs(z - cd(p[0], p[1])));
      EXPECT_LT(best, 2 * h);
    }
}

TEST(LevelSet, RejectsCriticalPhi) {
  const auto g = from_roots(builtin_52());
  const auto c = crit_args(g);
  ASSERT_FALSE(c.empty());
  try {
    level_set(g, c[0], grid(32), &c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CriticalPhi);
  }
}

TEST(LevelSet, RejectsCoarseGrid) {
  const auto g = from_roots(builtin_52());
  const auto c = crit_args(g);
  try {
    level_set(g, regular_phis(c, 1)[0], grid(16), &c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::GridTooCoarse);
  }
}

TEST(LevelSet, PFiberedEulerCharacteristic) {
  // capped fiber of a homogeneous closure: n - length
  struct Case {
    int n;
    std::vector<int> gens;
    int g;
  };
  for (const auto& c : std::vector<Case>{{2, {1, 1, 1}, 64}, {2, {-1, -1}, 64}, {3, {1, -2}, 128}}) {
    const auto r = cases::realize(c.n, c.gens);
    const auto crit = crit_args(r.lifted.loop);
    for (double phi : regular_phis(crit, 1)) {
      const auto tp = topology(level_set(r.lifted.loop, phi, grid(c.g), &crit));
      EXPECT_EQ(tp.euler, c.n - static_cast<int>(c.gens.size())) << format_braid_word(r.word) << " phi " << phi;
      EXPECT_EQ(tp.components, 1);
    }
  }
}

TEST(LevelSet, ConstantBetweenCriticalArguments) {
  const auto g = from_roots(builtin_52());
  const auto crit = crit_args(g);
  auto sorted = crit;
  std::sort(sorted.begin(), sorted.end());
  // two values inside one gap
  const double a = sorted[0], b = sorted[1];
  const auto x = topology(level_set(g, a + 0.3 * (b - a), grid(128), &crit));
  const auto y = topology(level_set(g, a + 0.7 * (b - a), grid(128), &crit));
  EXPECT_EQ(x.euler, y.euler);
  EXPECT_EQ(x.euler_raw, y.euler_raw);
}

TEST(Sweep, ChangesOnlyAcrossCriticalArguments) {
  const auto g = from_roots(builtin_52());
  const auto crit = crit_args(g);
  const auto rep = sweep_report(g, regular_phis(crit, 1), grid(128), &crit);
  EXPECT_EQ(rep.entries.size(), crit.size());
  for (const auto& ch : rep.changes) {
    if (ch.delta != 0) {
      EXPECT_FALSE(ch.critical_args.empty());
    }
  }
  int total = 0;
  for (const auto& ch : rep.changes) total += ch.delta;
  EXPECT_EQ(total, 0);
}

TEST(RegularPhis, InteriorOfEveryGap) {
  const std::vector<double> crit{1.0, 2.0, 6.0};
  const auto p = regular_phis(crit, 3);
  ASSERT_EQ(p.size(), 9u);
  for (double x : p)
    for (double c : crit) EXPECT_GT(std::abs(x - c), 0.1);
  EXPECT_EQ(regular_phis({}, 4).size(), 4u);
}

TEST(MeshIo, ObjAndPly) {
  const auto m = level_set(quarter_loop(), 1.0, grid(24));
  const auto obj = tmp_path("braidfib_test_mesh.obj"), ply = tmp_path("braidfib_test_mesh.ply");
  write_obj(m, obj.string());
  write_ply(m, ply.string());
  std::ifstream f(obj);
  std::string line;
  std::size_t nv = 0, nf = 0;
  int max_index = 0;
  while (std::getline(f, line)) {
    if (line.rfind("v ", 0) == 0) ++nv;
    if (line.rfind("f ", 0) == 0) {
      ++nf;
      std::istringstream s(line.substr(2));
      int a, b, c;
      s >> a >> b >> c;
      max_index = std::max({max_index, a, b, c});
      EXPECT_GE(std::min({a, b, c}), 1);
    }
  }
  EXPECT_EQ(nv, m.vertices.size());
  EXPECT_EQ(nf, m.triangles.size());
  EXPECT_LE(max_index, static_cast<int>(nv));

  std::ifstream p(ply, std::ios::binary);
  std::string header, l;
  while (std::getline(p, l) && l != "end_header") header += l + "\n";
  EXPECT_NE(header.find("element vertex " + std::to_string(m.vertices.size())), std::string::npos);
  EXPECT_NE(header.find("element face " + std::to_string(m.triangles.size())), std::string::npos);
  const auto body = std::filesystem::file_size(ply) - static_cast<std::uintmax_t>(p.tellg());
  EXPECT_EQ(body, m.vertices.size() * 24 + m.triangles.size() * 13);
  std::filesystem::remove(obj);
  std::filesystem::remove(ply);
}
