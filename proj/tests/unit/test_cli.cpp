#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "hsr/io.hpp"

namespace hsr::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hsr_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int call(std::vector<std::string> args) {
    args.insert(args.begin(), "hankelsr");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  // Noiseless forward data for the default two-step phantom.
  std::string forward(const std::string& name, const std::string& nu = "0",
                      const std::string& noise = "0") {
    const std::string file = path(name);
    EXPECT_EQ(call({"forward", "--nu", nu, "--r", "10", "--sigma", "1", "--phantom", "two-step",
                    "--n", "256", "--noise", noise, "--seed", "1", "--out", file}),
              kExitOk)
        << err_.str();
    return file;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST_F(CliTest, ForwardWritesCsvAndSidecar) {
  const std::string data = forward("h.csv");
  const std::string text = read_text_file(data);
  EXPECT_EQ(text.rfind("t,re,im\n", 0), 0u);
  EXPECT_EQ(line_count(text), 257u);

  const DataSidecar meta = read_sidecar(path("h.meta.json"));
  EXPECT_EQ(meta.nu, 0.0);
  EXPECT_EQ(meta.r, 10.0);
  EXPECT_EQ(meta.n_samples, 256u);
  EXPECT_EQ(meta.seed, 1u);
  EXPECT_EQ(meta.noise_level, 0.0);
}

TEST_F(CliTest, ForwardIsByteIdenticalAcrossRunsAndThreadCounts) {
  const std::string a = read_text_file(forward("a.csv", "0", "0.1"));
  ::setenv("HSR_THREADS", "3", 1);
  const std::string b = read_text_file(forward("b.csv", "0", "0.1"));
  ::unsetenv("HSR_THREADS");
  EXPECT_EQ(a, b);
  EXPECT_EQ(read_text_file(path("a.meta.json")).size(), read_text_file(path("b.meta.json")).size());
}

TEST_F(CliTest, PhantomSubcommand) {
  EXPECT_EQ(call({"phantom", "--phantom", "harmonic", "--omega", "3.14159265358979", "--n", "3",
                  "--out", path("p.csv")}),
            kExitOk);
  const SampledFunction1D p = read_function_csv(path("p.csv"));
  ASSERT_EQ(p.size(), 3u);
  EXPECT_NEAR(p[1].real(), 1.0, 1e-12);

  EXPECT_EQ(call({"phantom", "--n", "11", "--format", "json", "--out", path("p.json")}), kExitOk);
  const json j = json::parse(read_text_file(path("p.json")));
  EXPECT_EQ(j.at("s").size(), 11u);
}

TEST_F(CliTest, ValidationErrorsExitWithTwo) {
  EXPECT_EQ(call({"forward", "--nu", "-1", "--out", path("x.csv")}), kExitValidation);
  EXPECT_FALSE(fs::exists(path("x.csv")));
  EXPECT_EQ(call({"forward", "--nu", "0.3", "--out", path("x.csv")}), kExitValidation);
  EXPECT_EQ(call({"forward", "--sigma", "0", "--out", path("x.csv")}), kExitValidation);
  EXPECT_EQ(call({"forward", "--noise", "-0.5", "--out", path("x.csv")}), kExitValidation);
  EXPECT_EQ(call({"phantom", "--phantom", "triangle", "--out", path("x.csv")}), kExitValidation);
  EXPECT_EQ(call({"forward", "--no-such-flag"}), kExitValidation);
  EXPECT_EQ(call({}), kExitValidation);
}

TEST_F(CliTest, MissingInputExitsWithThree) {
  EXPECT_EQ(call({"reconstruct", "--data", path("missing.csv"), "--nu", "0", "--r", "10",
                  "--sigma", "1", "--out", path("f.csv")}),
            kExitIo);
  EXPECT_NE(err_.str().find("error"), std::string::npos);
}

TEST_F(CliTest, NaiveOnZeroDataIsZero) {
  std::string zeros = "t,re,im\n";
  for (int k = 0; k < 64; ++k) zeros += format_double(10.0 * k / 63.0) + ",0,0\n";
  write_text_file(path("z.csv"), zeros);
  ASSERT_EQ(call({"reconstruct", "--data", path("z.csv"), "--nu", "0", "--r", "10", "--sigma", "1",
                  "--method", "naive", "--out", path("f.csv")}),
            kExitOk)
      << err_.str();
  const SampledFunction1D f = read_function_csv(path("f.csv"));
  EXPECT_EQ(f.size(), 64u);
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_EQ(f[k], cdouble{});
}

TEST_F(CliTest, AutoReconstructionBeatsNaive) {
  const std::string data = forward("h.csv");
  ASSERT_EQ(call({"reconstruct", "--data", data, "--method", "pswf-cormack", "--m", "auto", "--out",
                  path("f.csv"), "--report", path("r.json"), "--plot", path("p.svg")}),
            kExitOk)
      << err_.str();
  const json rep = json::parse(read_text_file(path("r.json")));
  EXPECT_EQ(rep.at("schema_version"), kSchemaVersion);
  EXPECT_EQ(rep.at("auto_m"), true);
  EXPECT_LT(rep.at("err_rec").get<double>(), rep.at("err_naive").get<double>());
  EXPECT_EQ(read_function_csv(path("f.csv")).size(), 256u);
  EXPECT_TRUE(fs::exists(path("p.svg")));
}

TEST_F(CliTest, FbpRejectsHalfIntegerOrder) {
  const std::string data = forward("h.csv", "0.5");
  EXPECT_EQ(call({"reconstruct", "--data", data, "--method", "pswf-fbp", "--m", "8", "--out",
                  path("f.csv")}),
            kExitValidation);
  EXPECT_NE(err_.str().find("integer"), std::string::npos);
}

TEST_F(CliTest, InconsistentMetadataIsRejected) {
  const std::string data = forward("h.csv");
  EXPECT_EQ(call({"reconstruct", "--data", data, "--r", "20", "--out", path("f.csv")}),
            kExitValidation);
  EXPECT_EQ(call({"reconstruct", "--data", data, "--m", "-3", "--out", path("f.csv")}),
            kExitValidation);
  EXPECT_EQ(call({"reconstruct", "--data", data, "--m", "500", "--out", path("f.csv")}),
            kExitValidation);
}

TEST_F(CliTest, SweepCurveDipsBelowNaive) {
  const std::string data = forward("h.csv");
  ASSERT_EQ(call({"sweep", "--data", data, "--m-lo", "0", "--m-hi", "16", "--out", path("c.csv")}),
            kExitOk)
      << err_.str();
  std::istringstream in(read_text_file(path("c.csv")));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "m,residual,naive");
  double best = 1e300, naive = 0.0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    double m = 0.0, res = 0.0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &m, &res, &naive), 3);
    EXPECT_EQ(m, static_cast<double>(rows));
    best = std::min(best, res);
    ++rows;
  }
  EXPECT_EQ(rows, 17u);
  EXPECT_LT(best, naive);
}

TEST_F(CliTest, SweepAtHighNoiseResemblesNaive) {
  const std::string data = forward("h.csv", "0", "0.35");
  ASSERT_EQ(call({"sweep", "--data", data, "--out", path("c.csv")}), kExitOk) << err_.str();
  std::istringstream in(read_text_file(path("c.csv")));
  std::string line;
  std::getline(in, line);
  double best = 1e300, naive = 0.0;
  while (std::getline(in, line)) {
    double m = 0.0, res = 0.0;
    std::sscanf(line.c_str(), "%lf,%lf,%lf", &m, &res, &naive);
    best = std::min(best, res);
  }
  EXPECT_LE(std::abs(best - naive), 0.1 * naive);
}

TEST_F(CliTest, SweepRejectsEmptyRangeAndNaive) {
  const std::string data = forward("h.csv");
  EXPECT_EQ(call({"sweep", "--data", data, "--m-lo", "9", "--m-hi", "3", "--out", path("c.csv")}),
            kExitValidation);
  EXPECT_EQ(call({"sweep", "--data", data, "--method", "naive", "--out", path("c.csv")}),
            kExitValidation);
  EXPECT_FALSE(fs::exists(path("c.csv")));
}

TEST_F(CliTest, RunFromConfigReproducesForward) {
  const std::string data = forward("h.csv");
  json cfg = {{"nu", 0},
              {"r", 10},
              {"sigma", 1},
              {"n_samples", 256},
              {"phantom", "two-step"},
              {"noise_level", 0},
              {"seed", 1},
              {"m", 10},
              {"outputs",
               {{"data_csv", path("run_h.csv")},
                {"report_json", path("run_r.json")},
                {"result_csv", path("run_f.csv")}}}};
  write_text_file(path("cfg.json"), cfg.dump());
  ASSERT_EQ(call({"run", path("cfg.json")}), kExitOk) << err_.str();
  EXPECT_EQ(read_text_file(path("run_h.csv")), read_text_file(data));
  EXPECT_EQ(json::parse(read_text_file(path("run_r.json"))).at("m_selected"), 10);

  cfg["typo_key"] = 1;
  write_text_file(path("bad.json"), cfg.dump());
  EXPECT_EQ(call({"run", path("bad.json")}), kExitValidation);
  EXPECT_EQ(call({"run", path("absent.json")}), kExitIo);
}

TEST_F(CliTest, SelftestPasses) {
  EXPECT_EQ(call({"selftest"}), kExitOk) << out_.str();
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
  EXPECT_NE(out_.str().find("PASS"), std::string::npos);
}

}  // namespace
}  // namespace hsr::cli
