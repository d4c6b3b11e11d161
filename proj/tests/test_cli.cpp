#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "bohrwig/json_io.hpp"
#include "bohrwig/sampling.hpp"
#include "cli.hpp"

using namespace bohrwig;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args, std::map<std::string, std::string> env = {}) {
  std::ostringstream out, err;
  auto getenv = [&](const char* name) -> std::optional<std::string> {
    auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  int code = cli::run(args, out, err, getenv);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() / ("bohrwig_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  std::string write(const std::string& name, const std::string& text) const {
    auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Json, RoundTripRational) {
  Rng rng(51);
  for (int k = 0; k < 30; ++k) {
    auto psi = random_cyl(rng, FrequencyKind::rational);
    EXPECT_EQ(cyl_from_json(to_json(psi)), psi);
    EXPECT_EQ(parse_cyl(to_json(psi).dump()), psi);
  }
  auto psi = make_character(Frequency::rational(-7, 3), Complex(1, 2));
  EXPECT_EQ(to_json(psi)["terms"][0]["freq"], "-7/3");
}

TEST(Json, RoundTripReal) {
  Rng rng(52);
  for (int k = 0; k < 30; ++k) {
    auto psi = random_cyl(rng, FrequencyKind::real);
    EXPECT_EQ(cyl_from_json(to_json(psi)), psi);
  }
}

TEST(Json, Errors) {
  EXPECT_THROW(parse_json("{\"kind\": "), JsonInputError);
  try {
    parse_json("{\"kind\": ]");
    FAIL();
  } catch (const JsonInputError& e) {
    EXPECT_NE(std::string(e.what()).find("10"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_cyl(R"({"kind":"complex","terms":[]})"), JsonInputError);
  EXPECT_THROW(parse_cyl(R"({"kind":"rational","terms":[{"freq":"1/0","re":1,"im":0}]})"), JsonInputError);
  EXPECT_THROW(parse_cyl(R"({"kind":"rational","terms":[{"freq":"1","re":"x","im":0}]})"), JsonInputError);
  auto g = gaussian_from_json(nlohmann::json::parse(R"({"a":[1,0.5],"b":[0,1],"c":[0.1,0]})"));
  EXPECT_EQ(g.a, Complex(1, 0.5));
  EXPECT_EQ(g.b, Complex(0, 1));
}

TEST(Cli, SolveZero) {
  auto r = run_cli({"solve", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_NEAR(j[0]["alpha"].get<double>(), std::sqrt(3.0), 1e-12);
  EXPECT_LT(j[0]["residual"].get<double>(), 1e-10);
  EXPECT_EQ(j[0]["branch"], "outer-plus");
  EXPECT_EQ(nlohmann::json::parse(run_cli({"solve", "--", "-10"}).out).size(), 3u);
}

TEST(Cli, WignerOfTwoCharacters) {
  TempDir dir;
  auto a = dir.write("h0.json", R"({"kind":"rational","terms":[{"freq":"0","re":1,"im":0}]})");
  auto b = dir.write("h1.json", R"({"kind":"rational","terms":[{"freq":"1","re":1,"im":0}]})");
  auto r = run_cli({"wigner", a, b});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("mu,nu,re,im"), std::string::npos);
  EXPECT_NE(r.out.find("0.5,1,1,0"), std::string::npos) << r.out;
}

TEST(Cli, QuantizeMomentum) {
  TempDir dir;
  auto f = dir.write("h.json", R"({"kind":"rational","terms":[{"freq":"3/2","re":1,"im":0}]})");
  auto r = run_cli({"quantize", "sigma2", f});
  ASSERT_EQ(r.code, 0) << r.err;
  auto psi = parse_cyl(r.out);
  EXPECT_EQ(psi.coefficient(Frequency::rational(3, 2)), Complex(1.5));
  EXPECT_EQ(run_cli({"quantize", "nonsense", f}).code, cli::usage_error);
}

TEST(Cli, MalformedJsonIsUsageError) {
  TempDir dir;
  auto f = dir.write("bad.json", R"({"kind": "rational", "terms": [)");
  auto r = run_cli({"quantize", "sigma2", f});
  EXPECT_EQ(r.code, cli::usage_error);
  EXPECT_NE(r.err.find("byte"), std::string::npos) << r.err;
}

TEST(Cli, FiguresNeedK) {
  TempDir dir;
  EXPECT_EQ(run_cli({"--output-dir", dir.path().string(), "figures"}).code, cli::usage_error);
}

TEST(Cli, FiguresDeterministic) {
  TempDir d1, d2;
  auto r1 = run_cli({"--K", "1", "--samples", "300", "--output-dir", d1.path().string(), "figures"});
  auto r2 = run_cli({"--K", "1", "--samples", "300", "--output-dir", d2.path().string(), "figures"});
  ASSERT_EQ(r1.code, 0) << r1.err;
  ASSERT_EQ(r2.code, 0) << r2.err;
  for (const char* name : {"e_graph.csv", "e_aps_graph.csv", "h_mu0_graph.csv", "comparison.csv", "e_branches.csv",
                           "e_curve.csv", "figures.gp"}) {
    ASSERT_TRUE(fs::exists(d1.path() / name)) << name;
    EXPECT_EQ(slurp(d1.path() / name), slurp(d2.path() / name)) << name;
  }
  EXPECT_EQ(slurp(d1.path() / "e_graph.csv").rfind("# seed=1\n", 0), 0u);
}

TEST(Cli, FiguresEmptyRange) {
  TempDir dir;
  auto r = run_cli({"--K", "1", "--beta-lo", "1", "--beta-hi", "0", "--output-dir", dir.path().string(), "figures"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(slurp(dir.path() / "h_mu0_graph.csv"), "# seed=1\noperator,alpha,beta,branch\n");
}

TEST(Cli, OutputDirPrecedence) {
  TempDir file_dir, env_dir, flag_dir;
  TempDir cfg;
  auto path = cfg.write("c.json", nlohmann::json{{"output_dir", file_dir.path().string()}, {"K", 1.0},
                                                 {"samples", 10}}.dump());
  auto has_output = [](const fs::path& p) { return fs::exists(p / "e_graph.csv"); };

  ASSERT_EQ(run_cli({"--config", path, "figures"}).code, 0);
  EXPECT_TRUE(has_output(file_dir.path()));

  ASSERT_EQ(run_cli({"--config", path, "figures"}, {{"BOHRWIG_OUTPUT_DIR", env_dir.path().string()}}).code, 0);
  EXPECT_TRUE(has_output(env_dir.path()));

  ASSERT_EQ(run_cli({"--config", path, "--output-dir", flag_dir.path().string(), "figures"},
                    {{"BOHRWIG_OUTPUT_DIR", env_dir.path().string()}})
                .code,
            0);
  EXPECT_TRUE(has_output(flag_dir.path()));
}

TEST(Cli, ConfigRejectsUnknownKeys) {
  TempDir cfg;
  auto path = cfg.write("c.json", R"({"kay": 1})");
  EXPECT_EQ(run_cli({"--config", path, "solve", "0"}).code, cli::usage_error);
}

TEST(Cli, VerifyPassesAndCorruptedToleranceFails) {
  auto ok = run_cli({"verify"});
  EXPECT_EQ(ok.code, 0) << ok.out;
  auto j = nlohmann::json::parse(ok.out);
  EXPECT_EQ(j["seed"], 1);
  auto bad = run_cli({"--eps-freq", "1", "verify"});
  EXPECT_EQ(bad.code, cli::verification_failed);
  EXPECT_NE(bad.out.find("closer than 2 eps_freq"), std::string::npos);
}

TEST(Cli, VerifyAcrossSeeds) {
  for (int s = 1; s <= 10; ++s) EXPECT_EQ(run_cli({"--seed", std::to_string(s), "verify"}).code, 0) << s;
}

TEST(Cli, Convergence) {
  auto r = run_cli({"convergence", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["N"], 2);
  EXPECT_EQ(j["beta"], 0.0);
}

TEST(Cli, NormOfHolonomy) {
  auto r = run_cli({"norm", "e", "--seeds", "-10", "--radius", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schur_bound"], 3.0);
  EXPECT_TRUE(j["nondecreasing"].get<bool>());
}

TEST(Cli, UnknownSubcommandOrFlag) {
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::usage_error);
  EXPECT_EQ(run_cli({"--no-such-flag", "solve", "0"}).code, cli::usage_error);
  EXPECT_EQ(run_cli({"--help"}).code, 0);
}
