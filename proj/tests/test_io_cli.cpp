#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "oracle.hpp"

using namespace ncgasket;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ncgasket");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("ncgasket_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

}  // namespace

TEST(Json, RoundTripIsExact) {
  Rng rng(61);
  for (int n = 0; n <= 3; ++n) {
    auto e = random_element(rng, n);
    const auto back = parse_element(dump_json(element_to_json(e)));
    EXPECT_EQ(max_abs_diff(back, e), 0.0) << n;
  }
}

TEST(Json, ZeroBlocksAreOmitted) {
  const Json j = element_to_json(alpha(3, 2));
  EXPECT_EQ(j["blocks"].size(), 0u);
  EXPECT_EQ(j["level"], 3);
  EXPECT_EQ(j["schema"], 1);
}

TEST(Json, SchemaErrorsCarryPaths) {
  auto path_of = [](const std::string& text) {
    try {
      parse_element(text);
    } catch (const SchemaError& e) {
      return e.path();
    }
    return std::string("no error");
  };
  EXPECT_EQ(path_of(R"({"level":1,"xi":[[0,0],[0,0],[0,0]],"blocks":[]})"), "/schema");
  EXPECT_EQ(path_of(R"({"schema":2,"level":1,"xi":[[0,0],[0,0],[0,0]],"blocks":[]})"), "/schema");
  EXPECT_EQ(path_of(R"({"schema":1,"level":1,"xi":[[0,0],[0,0]],"blocks":[]})"), "/xi");
  EXPECT_EQ(path_of(R"({"schema":1,"level":1,"xi":[[0,0],[0,0],[0,"x"]],"blocks":[]})"), "/xi/2");
  EXPECT_EQ(path_of(R"({"schema":1,"level":1,"xi":[[0,0],[0,0],[0,0]],"blocks":[{"k":1,"j":1,"matrix":[[[1,0]]]}]})"),
            "/blocks/0/k");
  EXPECT_EQ(path_of(R"({"schema":1,"level":2,"xi":[[0,0],[0,0],[0,0]],"blocks":[{"k":1,"j":1,"matrix":[[[1,0]]]}]})"),
            "/blocks/0/matrix");
  EXPECT_EQ(path_of(R"({"schema":1,"level":1,"xi":[[0,0],[0,0],[0,0]],"blocks":[)"
                    R"({"k":0,"j":2,"matrix":[[[1,0]]]},{"k":0,"j":2,"matrix":[[[1,0]]]}]})"),
            "/blocks/1");
  EXPECT_EQ(path_of("{not json"), "");
}

TEST(Csv, ZetaHeaderAndRows) {
  auto chain = make_extension_chain(alpha(0, 1), kHarmonicT, 5);
  const auto p = zeta_trace(chain, {2.0, 3.0}, 5);
  const std::string csv = zeta_profile_to_csv(p);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "s,partial_sum,tail_corrected,cutoff,partial_sum_imag,tail_corrected_imag");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Csv, VertexTable) {
  const std::string csv = vertices_to_csv(1);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,x,y,age");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_NE(csv.find("11,0.25,"), std::string::npos);
}

TEST(Cli, GenIsDeterministicPerSeed) {
  const auto a = invoke({"gen", "--random", "2", "--seed", "7"});
  const auto b = invoke({"gen", "--random", "2", "--seed", "7"});
  const auto c = invoke({"gen", "--random", "2", "--seed", "8"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_NO_THROW(parse_element(a.out));
}

TEST(Cli, ExtendThenRestrictIsIdentity) {
  TempDir dir;
  ASSERT_EQ(invoke({"gen", "--random", "1", "-o", dir.file("a.json")}).code, 0);
  ASSERT_EQ(invoke({"extend", "--element", dir.file("a.json"), "--extend", "harmonic", "--to", "3", "-o",
                 dir.file("b.json")})
                .code,
            0);
  const auto r = invoke({"restrict", "--element", dir.file("b.json"), "--to", "1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(max_abs_diff(parse_element(r.out), load_element(dir.file("a.json"))), 0.0);
}

TEST(Cli, EnergyReport) {
  TempDir dir;
  ASSERT_EQ(invoke({"gen", "--alpha", "0", "1", "-o", dir.file("a.json")}).code, 0);
  const auto r = invoke({"energy", "--element", dir.file("a.json")});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["energy"].get<double>(), 4.0);
}

TEST(Cli, OpValues) {
  TempDir dir;
  ASSERT_EQ(invoke({"gen", "--identity", "2", "-o", dir.file("i.json")}).code, 0);
  const Json tau = Json::parse(invoke({"op", "--op", "tau", "--a", dir.file("i.json")}).out);
  EXPECT_DOUBLE_EQ(tau["value"].get<double>(), 1.0);
  const Json tr = Json::parse(invoke({"op", "--op", "trace", "--a", dir.file("i.json")}).out);
  EXPECT_DOUBLE_EQ(tr["value"].get<double>(), 27.0);
  EXPECT_EQ(invoke({"op", "--op", "mul", "--a", dir.file("i.json")}).code, 2);
}

TEST(Cli, ZetaWritesCsvAndResidue) {
  TempDir dir;
  ASSERT_EQ(invoke({"gen", "--alpha", "0", "1", "-o", dir.file("a.json")}).code, 0);
  const auto r = invoke({"zeta", "--element", dir.file("a.json"), "--mode", "trace", "--extend", "harmonic", "--s-grid",
                      "1.6:2.0:0.1", "-o", dir.file("z.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["residue"].get<double>(), 1.0 / std::log(2.0), 1e-12);
  const std::string csv = read_file(dir.file("z.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 6);
}

TEST(Cli, ZetaWithoutTailBelowAbscissaIsUsageError) {
  TempDir dir;
  ASSERT_EQ(invoke({"gen", "--alpha", "0", "1", "-o", dir.file("a.json")}).code, 0);
  const auto r = invoke({"zeta", "--element", dir.file("a.json"), "--mode", "energy", "--extend", "affine", "--s-grid",
                      "1.0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("abscissa"), std::string::npos);
}

TEST(Cli, LipAffineIsStationary) {
  TempDir dir;
  ASSERT_EQ(invoke({"gen", "--alpha", "0", "1", "-o", dir.file("a.json")}).code, 0);
  const Json j = Json::parse(invoke({"lip", "--element", dir.file("a.json"), "--extend", "affine"}).out);
  EXPECT_TRUE(j["stationary"].get<bool>());
  EXPECT_DOUBLE_EQ(j["value"].get<double>(), 1.0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({"gen", "--alpha", "1", "5"}).code, 2);
  EXPECT_EQ(invoke({"gen", "--random", "1", "--unknown"}).code, 2);
  EXPECT_EQ(invoke({"energy", "--element", "/nonexistent/file.json"}).code, 1);
  EXPECT_EQ(invoke({"extend", "--element", "x", "--extend", "0.3"}).code, 1);  // file read fails first
  EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(Cli, BadExtensionParameterIsUsageError) {
  TempDir dir;
  ASSERT_EQ(invoke({"gen", "--alpha", "0", "1", "-o", dir.file("a.json")}).code, 0);
  EXPECT_EQ(invoke({"extend", "--element", dir.file("a.json"), "--extend", "0.3"}).code, 2);
  EXPECT_EQ(invoke({"extend", "--element", dir.file("a.json"), "--extend", "sideways"}).code, 2);
}

TEST(Cli, InvalidElementIsUsageError) {
  TempDir dir;
  write_file(dir.file("bad.json"), R"({"schema":1,"level":1})");
  const auto r = invoke({"energy", "--element", dir.file("bad.json")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("/xi"), std::string::npos);
}

TEST(Cli, VerifyReportShape) {
  const auto r = invoke({"verify", "--suite", "traces", "--samples", "5", "--seed", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"suite", "status", "cases", "seed", "elapsed"}));
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["status"], "pass");
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("NCGASKET_SEED", "7", 1);
  const auto env = invoke({"gen", "--random", "1"});
  ::unsetenv("NCGASKET_SEED");
  EXPECT_EQ(env.out, invoke({"gen", "--random", "1", "--seed", "7"}).out);
  ::setenv("NCGASKET_SEED", "abc", 1);
  EXPECT_EQ(invoke({"gen", "--random", "1"}).code, 2);
  ::unsetenv("NCGASKET_SEED");
}

TEST(Cli, ExportVertices) {
  const auto r = invoke({"export", "--vertices", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 16);
  const auto e = invoke({"export", "--edges", "1"});
  EXPECT_EQ(std::count(e.out.begin(), e.out.end(), '\n'), 1 + 18);
}
