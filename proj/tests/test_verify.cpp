#include <gtest/gtest.h>

#include <sstream>

#include "sacut/verify.hpp"

using namespace sacut;

namespace {

VerifyConfig small(const std::string& check, int trials) {
  VerifyConfig cfg;
  cfg.check = check;
  cfg.trials = trials;
  cfg.seed = 5;
  cfg.threads = 2;
  return cfg;
}

}  // namespace

TEST(Verify, UnknownChecksAreRejected) {
  EXPECT_THROW(run_verify(small("no-such-check", 1)), UnknownCheck);
  EXPECT_THROW(default_trials("trace"), UnknownCheck);
  for (const auto& name : verify_check_names()) EXPECT_GT(default_trials(name), 0);
}

TEST(Verify, CsvHeaderQuotingAndLineEndings) {
  VerifyRow r{"trace-bound", "gnp,n=3", 7, "base_seed=1;t=2", "lhs<=rhs", 0.1 + 0.2, 1.0 / 3.0, true};
  VerifyRow q{"x", "say \"hi\"", 8, "", "lhs<=rhs", -1e-20, 12345678901234.0, false};
  const std::string csv = to_csv({r, q});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "check,instance,seed,params,relation,lhs,rhs,pass");
  std::getline(in, line);
  EXPECT_EQ(line, "trace-bound,\"gnp,n=3\",7,base_seed=1;t=2,lhs<=rhs,0.3,0.333333333333,true");
  std::getline(in, line);
  EXPECT_EQ(line, "x,\"say \"\"hi\"\"\",8,,lhs<=rhs,-1e-20,1.23456789012e+13,false");
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(csv.back(), '\n');
}

TEST(Verify, EverySuitePassesOnASmallRun) {
  const std::pair<const char*, int> runs[] = {
      {"trace-bound", 4},           {"loc-to-glob", 6},     {"loc-to-glob-ug", 6},
      {"conditioning-identity", 2}, {"entropy-potential", 10}, {"rounding-bound", 3},
      {"rounding-bound-ug", 3},     {"relaxation-sandwich", 6},
  };
  for (const auto& [check, trials] : runs) {
    const auto rows = run_verify(small(check, trials));
    EXPECT_FALSE(rows.empty()) << check;
    for (const auto& row : rows) {
      EXPECT_EQ(row.check, check);
      EXPECT_TRUE(row.pass) << check << " " << row.instance << " " << row.params << " lhs=" << row.lhs
                            << " rhs=" << row.rhs;
      EXPECT_EQ(row.params.rfind("base_seed=5", 0), 0u) << row.params;
    }
  }
}

TEST(Verify, OutputIsIndependentOfThreadCount) {
  for (const char* check : {"trace-bound", "loc-to-glob-ug", "relaxation-sandwich"}) {
    auto one = small(check, 5);
    one.threads = 1;
    auto many = small(check, 5);
    many.threads = 4;
    EXPECT_EQ(to_csv(run_verify(one)), to_csv(run_verify(many))) << check;
  }
}

TEST(Verify, SeedChangesTheCorpus) {
  auto a = small("trace-bound", 3);
  auto b = small("trace-bound", 3);
  b.seed = 6;
  EXPECT_NE(to_csv(run_verify(a)), to_csv(run_verify(b)));
}
