#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kExe = ECP_CLI_PATH;
const std::string kData = ECP_DATA_DIR;

struct Proc {
  int code = -1;
  std::string out;
};

Proc run(const std::string& args) {
  const std::string cmd = kExe + " " + args + " 2>/dev/null";
  Proc r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ecp_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, CheckExitCodes) {
  const Proc ok = run("check " + kData + "/example1.json");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(json::parse(ok.out)["suitable"], true);

  const Proc bad = run("check " + kData + "/example1b.json");
  EXPECT_EQ(bad.code, 1);
  const json doc = json::parse(bad.out);
  EXPECT_EQ(doc["failure"]["level"], 1);
  EXPECT_EQ(doc["failure"]["interval"], 2);
  EXPECT_EQ(doc["failure"]["function"], 2);

  const fs::path dir = scratch("invalid");
  std::ofstream(dir / "knots.json") << R"({"interval": [0, 6], "knots": [2, 2], "sections": [["1","x"]]})";
  std::ofstream(dir / "broken.json") << "{";
  EXPECT_EQ(run("check " + (dir / "knots.json").string()).code, 2);
  EXPECT_EQ(run("check " + (dir / "broken.json").string()).code, 2);
  EXPECT_EQ(run("check " + (dir / "missing.json").string()).code, 2);
  EXPECT_EQ(run("check").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check " + kData + "/example1.json --report yaml").code, 2);
  fs::remove_all(dir);
}

TEST(Cli, TextReportAndTrace) {
  const Proc t = run("check " + kData + "/example1b.json --report text");
  EXPECT_EQ(t.code, 1);
  EXPECT_NE(t.out.find("level 1, interval 2, function 2"), std::string::npos);
  const Proc tr = run("check " + kData + "/example1.json --trace");
  EXPECT_EQ(json::parse(tr.out)["levels"].size(), 4u);
}

TEST(Cli, DeterministicReports) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  EXPECT_EQ(run("check " + kData + "/example1b.json --out " + a.string()).code, 1);
  EXPECT_EQ(run("check " + kData + "/example1b.json --out " + b.string()).code, 1);
  const std::string ra = slurp(a / "report.json");
  EXPECT_FALSE(ra.empty());
  EXPECT_EQ(ra, slurp(b / "report.json"));
  EXPECT_EQ(ra.find('\r'), std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Cli, BasisWeightsCurveFiles) {
  const fs::path dir = scratch("files");
  EXPECT_EQ(run("basis " + kData + "/example1.json --grid 11 --out " + dir.string()).code, 0);
  const std::string basis = slurp(dir / "basis.csv");
  EXPECT_EQ(basis.substr(0, basis.find('\n')), "x,side,B_1,B_2,B_3,B_4");
  EXPECT_EQ(std::count(basis.begin(), basis.end(), '\n'), 1 + 44);

  EXPECT_EQ(run("weights " + kData + "/example1.json --grid 11 --out " + dir.string()).code, 0);
  for (int j = 1; j <= 3; ++j) EXPECT_TRUE(fs::exists(dir / ("weights_w" + std::to_string(j) + ".csv")));
  EXPECT_EQ(run("weights " + kData + "/example1b.json --grid 50 --out " + dir.string()).code, 1);

  const Proc c = run("curve " + kData + "/example2a.json --control " + kData + "/polygon2a.csv --samples 5");
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out.substr(0, c.out.find('\n')), "t,side,x,y");
  EXPECT_EQ(std::count(c.out.begin(), c.out.end(), '\n'), 1 + 10);
  EXPECT_EQ(run("curve " + kData + "/example2a.json").code, 2);
  fs::remove_all(dir);
}

TEST(Cli, SweepTable) {
  const Proc s = run("sweep " + kData + "/example2a.json");
  EXPECT_EQ(s.code, 0);
  std::istringstream in(s.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "value,suitable");
  int rows = 0, flips = 0;
  char prev = 0;
  double last_unsuitable = -1e9;
  while (std::getline(in, line)) {
    ++rows;
    const char v = line.back();
    if (prev && v != prev) ++flips;
    if (v == '0') last_unsuitable = std::stod(line.substr(0, line.find(',')));
    prev = v;
  }
  EXPECT_EQ(rows, 51);
  EXPECT_EQ(flips, 1);
  EXPECT_LT(last_unsuitable, -3.9);

  const Proc b = run("sweep " + kData + "/example2a.json --bisect 24");
  EXPECT_NE(b.out.find("flip between"), std::string::npos);
  EXPECT_EQ(run("sweep " + kData + "/example1.json").code, 2);
}
