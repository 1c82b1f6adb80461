#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CliRun {
  int code = -1;
  std::string out, err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string data(const std::string& name) { return std::string(BRAIDFIB_DATA_DIR) + "/" + name; }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("braidfib_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path out(const std::string& sub) const { return dir_ / sub; }

  CliRun run(const std::string& args, int threads = 1) const {
    const auto o = dir_ / "stdout.txt", e = dir_ / "stderr.txt";
    const std::string cmd = "BRAIDFIB_THREADS=" + std::to_string(threads) + " \"" + BRAIDFIB_CLI + "\" " + args +
                            " > \"" + o.string() + "\" 2> \"" + e.string() + "\"";
    const int st = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
  }

  json report(const std::string& sub, const std::string& name) const {
    return json::parse(slurp(out(sub) / name));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, AnalyzeFiveTwo) {
  const auto r = run("analyze --builtin 52 -o " + out("a").string());
  EXPECT_EQ(r.code, 3) << r.err;
  const auto j = report("a", "analyze.json");
  EXPECT_EQ(j.at("count"), 6);
  EXPECT_EQ(j.at("p_fibered"), false);
  EXPECT_EQ(j.at("exit_code"), 3);
  EXPECT_EQ(j.at("tool"), "braidfib");
  EXPECT_TRUE(j.contains("tolerances"));
  EXPECT_EQ(j.at("config").at("N"), 2048);
  for (const auto& p : j.at("morse").at("points")) {
    EXPECT_GE(p.at("critical_arg").get<double>(), 0.0);
    EXPECT_LT(p.at("critical_arg").get<double>(), 6.283185307179586);
  }
  EXPECT_TRUE(fs::exists(out("a") / "roots.csv"));
  EXPECT_TRUE(fs::exists(out("a") / "saddles.csv"));
  EXPECT_NE(r.out.find("critical points: 6"), std::string::npos);
}

TEST_F(Cli, AnalyzePFibered) {
  const auto r = run("analyze " + data("u2_quarter.json") + " -o " + out("q").string());
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(report("q", "analyze.json").at("p_fibered"), true);
}

TEST_F(Cli, AnalyzeCollidingStrands) {
  const auto r = run("analyze " + data("colliding.json") + " -o " + out("c").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not a braid"), std::string::npos) << r.err;
  const auto j = report("c", "analyze.error.json");
  EXPECT_EQ(j.at("error").at("kind"), "not a braid");
  EXPECT_EQ(j.at("exit_code"), 2);
  EXPECT_EQ(j.at("command"), "analyze");
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run("analyze " + data("missing.json") + " -o " + out("m").string()).code, 2);
  EXPECT_EQ(run("analyze --samples 4 --builtin 52 -o " + out("m").string()).code, 2);
  EXPECT_EQ(run("analyze --bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("fibers --builtin 52 --grid 10,10 -o " + out("m").string()).code, 2);
  const auto v = run("--version");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("braidfib"), std::string::npos);
  const auto h = run("--help");
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("Exit codes"), std::string::npos);
}

TEST_F(Cli, DiagramFiveTwo) {
  const auto r = run("diagram --builtin 52 -o " + out("d").string());
  EXPECT_EQ(r.code, 3) << r.err;
  const auto j = report("d", "diagram.json");
  EXPECT_EQ(j.at("diagram").at("curves"), 2);
  EXPECT_EQ(j.at("diagram").at("tangencies").size(), 6u);
  EXPECT_EQ(j.at("diagram").at("rampichini"), false);
  const auto svg = slurp(out("d") / "diagram.svg");
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST_F(Cli, DiagramHomogeneousTwistIsRampichini) {
  const auto r = run("diagram " + data("trefoil_twist.json") + " --lift --fiber-word --phi 1.0 -o " + out("t").string());
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = report("t", "diagram.json");
  EXPECT_EQ(j.at("diagram").at("rampichini"), true);
  EXPECT_EQ(j.at("fiber_word").at("word").at("letters").size(), 3u);
  EXPECT_EQ(j.at("fiber_word").at("euler_characteristic"), -1);
}

TEST_F(Cli, DiagramIsDeterministicAcrossWorkerCounts) {
  ASSERT_EQ(run("diagram --builtin 52 -o " + out("x").string(), 1).code, 3);
  ASSERT_EQ(run("diagram --builtin 52 -o " + out("y").string(), 4).code, 3);
  EXPECT_EQ(slurp(out("x") / "diagram.svg"), slurp(out("y") / "diagram.svg"));
  EXPECT_EQ(slurp(out("x") / "diagram.json"), slurp(out("y") / "diagram.json"));
  ASSERT_EQ(run("analyze --builtin 52 -o " + out("x").string(), 1).code, 3);
  ASSERT_EQ(run("analyze --builtin 52 -o " + out("y").string(), 3).code, 3);
  EXPECT_EQ(slurp(out("x") / "analyze.json"), slurp(out("y") / "analyze.json"));
  EXPECT_EQ(slurp(out("x") / "roots.csv"), slurp(out("y") / "roots.csv"));
}

TEST_F(Cli, FibersTrefoil) {
  const auto r = run("fibers " + data("trefoil_twist.json") + " --lift --grid 64,64,128 --per-gap 2 --ply -o " +
                     out("f").string());
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = report("f", "sweep.json");
  EXPECT_EQ(j.at("n_minus_length"), -1);
  ASSERT_FALSE(j.at("euler_sequence").empty());
  for (const auto& x : j.at("euler_sequence")) EXPECT_EQ(x, -1);
  EXPECT_TRUE(fs::exists(out("f") / "fiber_000.obj"));
  EXPECT_TRUE(fs::exists(out("f") / "fiber_000.ply"));
}

TEST_F(Cli, FibersFiveTwoSweep) {
  const auto r = run("fibers --builtin 52 --phi-count 15 --grid 128,128,256 --no-obj -o " + out("s").string());
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = report("s", "sweep.json");
  EXPECT_EQ(j.at("sweep").at("entries").size(), 15u);
  EXPECT_EQ(j.at("sweep").at("critical_args").size(), 6u);
  int with_crit = 0, moved = 0;
  for (const auto& ch : j.at("sweep").at("changes")) {
    with_crit += !ch.at("critical_args").empty();
    moved += ch.at("delta") != 0;
    if (ch.at("delta") != 0) {
      EXPECT_FALSE(ch.at("critical_args").empty());
    }
  }
  EXPECT_EQ(with_crit, 6);
  EXPECT_GT(moved, 0);
  EXPECT_FALSE(fs::exists(out("s") / "fiber_000.obj"));
}

TEST_F(Cli, FibersRefuseCriticalPhi) {
  ASSERT_EQ(run("analyze --builtin 52 -o " + out("a").string()).code, 3);
  const double phi = report("a", "analyze.json").at("morse").at("points")[0].at("critical_arg").get<double>();
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", phi);
  const auto r = run(std::string("fibers --builtin 52 --grid 64,64,128 --phis ") + buf + " -o " + out("b").string());
  EXPECT_EQ(r.code, 5) << r.err;
  EXPECT_EQ(report("b", "fibers.error.json").at("exit_code"), 5);
}

TEST_F(Cli, SingularityTorusKnotModel) {
  const auto r = run("singularity " + data("u3_e2it.json") + " --newton -o " + out("s").string());
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = report("s", "singularity.json");
  EXPECT_EQ(j.at("k"), 2);
  EXPECT_EQ(j.at("mixed_polynomial").at("pretty"), "1·u^3 - 1·v^4·v̄^2");
  EXPECT_EQ(j.at("cone").at("passed"), true);
  EXPECT_EQ(j.at("identity").at("passed"), true);
  EXPECT_EQ(j.at("identity").at("samples"), 1000);
  EXPECT_EQ(j.at("newton").at("radially_weighted_homogeneous"), true);
  EXPECT_TRUE(fs::exists(out("s") / "newton.svg"));
  EXPECT_TRUE(fs::exists(out("s") / "mixed_polynomial.json"));
}

TEST_F(Cli, SingularityOddAndCone) {
  EXPECT_EQ(run("singularity " + data("u3_eit.json") + " -o " + out("o").string()).code, 0);
  EXPECT_EQ(report("o", "singularity.json").at("symmetry").at("symmetry"), "odd");
  EXPECT_EQ(run("singularity " + data("u3_saddle_pair.json") + " -o " + out("p").string()).code, 0);
  EXPECT_LE(report("p", "singularity.json").at("cone").at("max_mismatch").get<double>(), 1e-6);
}

TEST_F(Cli, SingularityWithoutSymmetry) {
  const auto r = run("singularity " + data("u2_eit.json") + " -o " + out("n").string());
  EXPECT_EQ(r.code, 6);
  const auto j = report("n", "singularity.json");
  EXPECT_EQ(j.at("symmetry").at("symmetry"), "none");
  EXPECT_FALSE(j.at("symmetry").at("breaks_even").empty());
  EXPECT_EQ(run("singularity " + data("u2_eit.json") + " -k 2 -o " + out("n").string()).code, 6);
}

TEST_F(Cli, ConfigFileAndFlagPrecedence) {
  const auto cfg = out("run.toml");
  std::ofstream(cfg) << "builtin = \"52\"\nsamples = 1024\n[tolerances]\nmargin = 1e-7\n";
  ASSERT_EQ(run("analyze --config " + cfg.string() + " -o " + out("c1").string()).code, 3);
  EXPECT_EQ(report("c1", "analyze.json").at("config").at("N"), 1024);
  EXPECT_EQ(report("c1", "analyze.json").at("tolerances").at("margin"), 1e-7);
  ASSERT_EQ(run("analyze --config " + cfg.string() + " -N 2048 -o " + out("c2").string()).code, 3);
  EXPECT_EQ(report("c2", "analyze.json").at("config").at("N"), 2048);
  std::ofstream(cfg) << "smaples = 1024\n";
  EXPECT_EQ(run("analyze --config " + cfg.string() + " --builtin 52").code, 2);
}
