#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qit/errors.hpp"
#include "qit/serialization.hpp"
#include "support.hpp"

using namespace qit;
using namespace qit::testing;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() / ("qit-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                      "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// Value of `measure` in "measure,value" CSV output.
std::string csv_value(const std::string& text, const std::string& measure) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(measure + ",", 0) == 0) return line.substr(measure.size() + 1);
  return {};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST(CliEntropy, Distribution) {
  const auto r = run_cli({"entropy", "--dist", "[0.5,0.5]"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, "measure,value\nH,1\n");
  const auto skew = run_cli({"entropy", "--dist", "[0.75,0.125,0.0625,0.0625]"});
  EXPECT_NEAR(std::stod(csv_value(skew.out, "H")), 1.18627812446, 1e-11);
}

TEST(CliEntropy, DensityFiles) {
  TempDir dir;
  const auto mixed = dir.write("mixed.json", R"({"dim":2,"re":[0.5,0,0,0.5]})");
  const auto r = run_cli({"entropy", "--density", mixed});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(csv_value(r.out, "S")), 1.0, 1e-12);
  // ½|0⟩⟨0| + ½|+⟩⟨+| = [[¾, ¼], [¼, ¼]]
  const auto fixture = dir.write("fixture.json", R"({"dim":2,"re":[0.75,0.25,0.25,0.25],"im":[0,0,0,0]})");
  const auto f = run_cli({"entropy", "--density", fixture});
  EXPECT_NEAR(std::stod(csv_value(f.out, "S")), mixed_fixture_entropy(0.5), 1e-10);
  const auto dist = dir.write("dist.json", R"({"probs":[0.25,0.25,0.25,0.25]})");
  EXPECT_EQ(csv_value(run_cli({"entropy", "--dist-file", dist}).out, "H"), "2");
}

TEST(CliEntropy, JsonFormatAndOutFile) {
  TempDir dir;
  const auto r = run_cli({"--format", "json", "entropy", "--dist", "[1,0]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(Json::parse(r.out)["H"].get<double>(), 0.0);
  const auto out = dir.path("h.csv");
  const auto w = run_cli({"--out", out, "entropy", "--dist", "[0.5,0.5]"});
  EXPECT_EQ(w.code, 0);
  EXPECT_TRUE(w.out.empty());
  std::ifstream in(out);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), "measure,value\nH,1\n");
}

TEST(CliEntropy, Errors) {
  EXPECT_EQ(run_cli({"entropy", "--dist", "[0.5,0.6]"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"entropy", "--dist", "[0.5,"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"entropy"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"entropy", "--density", "/nonexistent/rho.json"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"--format", "xml", "entropy", "--dist", "[1]"}).code, cli::kExitUsage);
  const auto bad = run_cli({"entropy", "--dist", "[0.5,0.6]"});
  EXPECT_FALSE(bad.err.empty());
  EXPECT_TRUE(bad.out.empty());
}

TEST(CliQinfo, BellStateAndChannel) {
  TempDir dir;
  const auto bell = dir.write("bell.json", R"({"dim":4,"re":[0.5,0,0,0.5, 0,0,0,0, 0,0,0,0, 0.5,0,0,0.5],"subsystem_dims":[2,2]})");
  const auto r = run_cli({"qinfo", "--density", bell});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(csv_value(r.out, "S")), 0.0, 1e-9);
  EXPECT_NEAR(std::stod(csv_value(r.out, "S_A")), 1.0, 1e-9);
  EXPECT_NEAR(std::stod(csv_value(r.out, "S_A_given_B")), -1.0, 1e-9);
  EXPECT_NEAR(std::stod(csv_value(r.out, "I_A_B")), 2.0, 1e-9);
  const auto mixed = dir.write("mixed.json", R"({"dim":2,"re":[0.5,0,0,0.5]})");
  const auto c = run_cli({"qinfo", "--density", mixed, "--depolarizing", "1"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NEAR(std::stod(csv_value(c.out, "coherent_information")), -1.0, 1e-9);
  EXPECT_NEAR(std::stod(csv_value(c.out, "entanglement_fidelity")), 0.25, 1e-9);
  EXPECT_EQ(run_cli({"qinfo", "--density", bell, "--depolarizing", "0.1"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"qinfo", "--density", mixed, "--depolarizing", "1.5"}).code, cli::kExitUsage);
  const auto bad = dir.write("bad.json", R"({"dim":2,"re":[1,0,0,1]})");
  EXPECT_EQ(run_cli({"qinfo", "--density", bad}).code, cli::kExitUsage);
}

TEST(CliCodes, FixturesFilesAndDecoding) {
  const auto h = run_cli({"codes", "--fixture", "hamming74"});
  ASSERT_EQ(h.code, 0) << h.err;
  EXPECT_EQ(csv_value(h.out, "d"), "3");
  EXPECT_EQ(csv_value(h.out, "singleton_ok"), "1");
  const auto s = run_cli({"codes", "--fixture", "steane"});
  EXPECT_EQ(csv_value(s.out, "k"), "1");
  EXPECT_EQ(csv_value(s.out, "quantum_singleton_ok"), "1");
  TempDir dir;
  const auto rep = dir.write("rep.txt", "3 1\n111\n");
  const auto d = run_cli({"codes", "--code", rep, "--decode", "101"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(csv_value(d.out, "decoded"), "111");
  EXPECT_EQ(csv_value(d.out, "error"), "010");
  const auto broken = dir.write("broken.txt", "3 1\n11\n");
  EXPECT_EQ(run_cli({"codes", "--code", broken}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"codes", "--fixture", "golay"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"codes"}).code, cli::kExitUsage);
}

TEST(CliCompress, ShannonSweep) {
  const auto r = run_cli({"compress", "--probs", "0.75,0.25", "--n", "4,8,12", "--eps", "0.3", "--rate", "0.95"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto l = lines(r.out);
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l[0], "n,epsilon,typical_size,mass,reliability");
  EXPECT_EQ(l[3].substr(0, 13), "12,0.3,1585,0");
  const double rel = std::stod(l[3].substr(l[3].rfind(',') + 1));
  EXPECT_GT(rel, 0.8);
}

TEST(CliCompress, QuantumSweepJson) {
  const auto r = run_cli({"--format", "json", "compress", "--probs", "0.75,0.25", "--n", "4,8", "--quantum"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_GT(j[1]["fidelity"].get<double>(), j[0]["fidelity"].get<double>());
  EXPECT_EQ(run_cli({"compress", "--probs", "0.7,0.7"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"compress"}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"compress", "--probs", "0.5,0.5", "--eps", "-1"}).code, cli::kExitUsage);
}

TEST(CliCapacity, ClassicalChannels) {
  const auto bsc = run_cli({"capacity", "--bsc", "0.11"});
  ASSERT_EQ(bsc.code, 0) << bsc.err;
  const auto l = lines(bsc.out);
  EXPECT_EQ(l[0], "capacity,p0,p1");
  EXPECT_NEAR(std::stod(l[1]), 1 - hbin(0.11), 1e-6);
  const auto bec = run_cli({"capacity", "--bec", "0.3"});
  EXPECT_NEAR(std::stod(lines(bec.out)[1]), 0.7, 1e-6);
  TempDir dir;
  const auto id = dir.write("id.json", R"({"rows":[[1,0],[0,1]]})");
  EXPECT_NEAR(std::stod(lines(run_cli({"capacity", "--channel", id}).out)[1]), 1.0, 1e-9);
  const auto bad = dir.write("bad.json", R"({"rows":[[0.5,0.4],[0,1]]})");
  EXPECT_EQ(run_cli({"capacity", "--channel", bad}).code, cli::kExitUsage);
  EXPECT_EQ(run_cli({"capacity"}).code, cli::kExitUsage);
}

TEST(CliCapacity, HswNeedsSeed) {
  EXPECT_EQ(run_cli({"capacity", "--hsw-depolarizing", "0.5"}).code, cli::kExitUsage);
  const auto r = run_cli({"--seed", "4", "capacity", "--hsw-depolarizing", "0.5", "--restarts", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(std::stod(lines(r.out)[1]), 1 - hbin(0.25), 1e-3);
}

TEST(CliQkd, IdealBatchDeterministic) {
  TempDir dir;
  const auto cfg = dir.write("ideal.json", R"({"n":128,"channel":{"kind":"ideal"}})");
  const auto a = run_cli({"--seed", "9", "--trials", "20", "qkd", "--config", cfg});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto l = lines(a.out);
  ASSERT_EQ(l.size(), 23u);
  EXPECT_EQ(l[0], "trial,aborted,sifted_count,qber,key_len,keys_match");
  EXPECT_EQ(l[21], "mean_qber,abort_rate,key_match_rate");
  EXPECT_EQ(l[22], "0,0,1");
  const auto b = run_cli({"--seed", "9", "--trials", "20", "qkd", "--config", cfg});
  EXPECT_EQ(a.out, b.out);
  const auto c = run_cli({"--seed", "10", "--trials", "20", "qkd", "--config", cfg});
  EXPECT_NE(a.out, c.out);
}

TEST(CliQkd, InterceptResendJson) {
  TempDir dir;
  const auto cfg = dir.write("eve.json", R"({"n":256,"threshold_fraction":0.15,"channel":{"kind":"intercept_resend"}})");
  const auto r = run_cli({"--seed", "1", "--trials", "100", "--format", "json", "qkd", "--config", cfg});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_NEAR(j["summary"]["mean_qber"].get<double>(), 0.25, 0.01);
  EXPECT_GT(j["summary"]["abort_rate"].get<double>(), 0.99);
  EXPECT_EQ(j["trials"].size(), 100u);
}

TEST(CliQkd, ConfigErrors) {
  TempDir dir;
  const auto ok = dir.write("ok.json", R"({"n":64})");
  EXPECT_EQ(run_cli({"qkd", "--config", ok}).code, cli::kExitUsage);  // no seed
  for (const std::string text : {R"({"n":64,"code":"golay"})", R"({"n":64,"threshold_t":64})", R"({"delta":1})",
                                 R"({"n":64,"channel":{"kind":"telepathy"}})", R"({"n":64,"channel":{"kind":"depolarizing","parameter":2}})",
                                 R"({"n":"many"})", "not json"}) {
    const auto bad = dir.write("bad.json", text);
    EXPECT_EQ(run_cli({"--seed", "1", "qkd", "--config", bad}).code, cli::kExitUsage) << text;
  }
}

TEST(CliHelp, ExitsCleanly) {
  const auto r = run_cli({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("qkd"), std::string::npos);
}

TEST(Serialization, MatrixRoundTripAndNumbers) {
  Rng rng = seeded(91);
  const ComplexMatrix m = random_hermitian(3, rng);
  const ComplexMatrix back = matrix_from_json(Json::parse(matrix_to_json(m).dump()));
  EXPECT_NEAR((back - m).norm(), 0.0, 1e-15);
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"dim":2,"re":[1,0,0]})")), ParseError);
  EXPECT_THROW(dist_from_json(Json::parse(R"("abc")")), ParseError);
  EXPECT_EQ(bits_to_string(Bits{1, 0, 1}), "101");
}

TEST(Serialization, QkdConfigDefaults) {
  const auto run = qkd_config_from_json(Json::parse(R"({"n":100})"));
  EXPECT_EQ(run.config.threshold_t, 11u);
  EXPECT_EQ(run.config.delta, 1.0);
  EXPECT_EQ(run.channel.kind, ChannelModel::Kind::ideal);
  const auto eve = qkd_config_from_json(Json::parse(R"({"n":100,"channel":{"kind":"intercept_resend"}})"));
  EXPECT_EQ(eve.channel.parameter, 1.0);
}
