#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI through the shell, capturing stdout; stderr is discarded.
Run run(const std::string& args) {
  const std::string cmd = std::string(SACUT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(SACUT_DATA_DIR) + "/" + name; }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("sacut_cli_test_" + std::to_string(::getpid()) + "_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, SolvesMaxCutAndUniqueGames) {
  const auto c4 = run("solve --input " + data("c4.txt"));
  EXPECT_EQ(c4.code, 0);
  EXPECT_NE(c4.out.find("problem=maxcut"), std::string::npos);
  EXPECT_NE(c4.out.find("final_value=1\n"), std::string::npos) << c4.out;

  const auto k3 = run("solve --input " + data("k3.txt") + " --problem maxcut");
  EXPECT_EQ(k3.code, 0);
  EXPECT_NE(k3.out.find("final_value=0.666666666667"), std::string::npos) << k3.out;

  const auto ug = run("solve --input " + data("ug_c4_q3.txt"));
  EXPECT_EQ(ug.code, 0);
  EXPECT_NE(ug.out.find("problem=unique-games"), std::string::npos);
  EXPECT_NE(ug.out.find("final_value=1\n"), std::string::npos) << ug.out;
}

TEST(Cli, UsageAndParseErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("solve").code, 2);
  EXPECT_EQ(run("solve --input " + data("c4.txt") + " --degree notanumber").code, 2);
  EXPECT_EQ(run("solve --input /nonexistent/file.txt").code, 2);
  EXPECT_EQ(run("verify --check not-a-check").code, 2);
  EXPECT_EQ(run("maxqp --n 6 --k 3").code, 2);
  EXPECT_EQ(run("generate --kind planted-cut --n 6").code, 2);  // planted kinds need --output

  const auto bad = temp_path("bad.txt");
  std::ofstream(bad) << "0 1\n1 one\n";
  EXPECT_EQ(run("solve --input " + bad.string()).code, 2);
  std::filesystem::remove(bad);
}

TEST(Cli, HelpExitsZero) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, VerifyWritesCsv) {
  const auto r = run("verify --check trace-bound --trials 3 --seed 2 --threads 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("check,instance,seed,params,relation,lhs,rhs,pass\n", 0), 0u);
  EXPECT_EQ(r.out, run("verify --check trace-bound --trials 3 --seed 2 --threads 1").out);
}

TEST(Cli, MaxQpReportsTheGap) {
  const auto r = run("maxqp --n 6 --k 4");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("10"), std::string::npos) << r.out;
}

TEST(Cli, GenerateThenPartitionAndRank) {
  const auto g = temp_path("blocks.txt");
  ASSERT_EQ(run("generate --kind expander-union --blocks 3 --block-size 8 --edge-degree 7 --bridges 0 --output " +
                g.string())
                .code,
            0);
  const auto rank = run("threshold-rank --input " + g.string() + " --tau 0.2");
  EXPECT_EQ(rank.code, 0);
  EXPECT_NE(rank.out.find("rank_tau=3\n"), std::string::npos) << rank.out;
  const auto part = run("partition --input " + g.string() + " --tau 0.2 --rank-target 1");
  EXPECT_EQ(part.code, 0);
  EXPECT_NE(part.out.find("component 2:"), std::string::npos) << part.out;
  EXPECT_EQ(part.out.find("component 3:"), std::string::npos);
  std::filesystem::remove(g);

  const auto pu = temp_path("planted.txt");
  ASSERT_EQ(run("generate --kind planted-ug-shift --n 6 --q 3 --p 0.6 --noise 0 --seed 3 --output " + pu.string()).code,
            0);
  EXPECT_FALSE(slurp(pu.string() + ".planted").empty());
  const auto solved = run("solve --input " + pu.string());
  EXPECT_EQ(solved.code, 0);
  EXPECT_NE(solved.out.find("final_value=1\n"), std::string::npos) << solved.out;
  std::filesystem::remove(pu);
  std::filesystem::remove(pu.string() + ".planted");
}
