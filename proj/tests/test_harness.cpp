#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "fracsob/error.hpp"
#include "fracsob/harness.hpp"

namespace {

using namespace fracsob;
using namespace fracsob::harness;

ExperimentConfig non_default() {
  ExperimentConfig c;
  c.command = "risk";
  c.beta = 0.1 + 0.2;  // not exactly representable in short form
  c.n_list = {1e3, 2.5e4};
  c.seed = 18446744073709551557ull;
  c.criterion = -3;
  c.out = "/tmp/x.csv";
  c.variance = "4A";
  return c;
}

TEST(Config, SerializeRoundTripsExactly) {
  const ExperimentConfig c = non_default();
  const std::string text = serialize(c);
  EXPECT_NE(text.find("beta:real = 0.30000000000000004"), std::string::npos);
  EXPECT_EQ(parse_config(text), c);
  EXPECT_EQ(config_keys().size(), 21u);
}

TEST(Config, ParseErrors) {
  auto code = [](const std::string& text) {
    try {
      (void)parse_config(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::io_error;
  };
  EXPECT_EQ(code("bogus:real = 1"), Errc::parse_error);
  EXPECT_EQ(code("beta:uint = 1"), Errc::parse_error);
  EXPECT_EQ(code("beta:real = one"), Errc::parse_error);
  EXPECT_EQ(code("reps:uint = -4"), Errc::parse_error);
  EXPECT_EQ(code("beta = 1"), Errc::parse_error);
  EXPECT_EQ(code("n_list:real[] = "), Errc::parse_error);
  // Comments and blank lines are fine and unspecified keys keep the base value.
  ExperimentConfig base;
  base.L = 3.0;
  const ExperimentConfig c = parse_config("# note\n\nbeta:real = 2\n", base);
  EXPECT_EQ(c.beta, 2.0);
  EXPECT_EQ(c.L, 3.0);
}

TEST(Config, EnvironmentUsesPrefixedUpperCaseKeys) {
  std::map<std::string, std::string> env = {{"FRACSOB_BETA", "1.5"},
                                            {"FRACSOB_N_LIST", "10,20"},
                                            {"FRACSOB_A_LIST", "4"},
                                            {"BETA", "9"}};
  ExperimentConfig c;
  apply_environment(c, [&](const char* key) -> const char* {
    auto it = env.find(key);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  EXPECT_EQ(c.beta, 1.5);
  EXPECT_EQ(c.n_list, (std::vector<double>{10, 20}));
  EXPECT_EQ(c.A_list, (std::vector<double>{4}));
  set_field(c, "beta", "2");  // flags are applied last
  EXPECT_EQ(c.beta, 2.0);
  EXPECT_THROW(set_field(c, "nope", "1"), Error);
}

TEST(Config, HashIgnoresOutputAndWorkers) {
  ExperimentConfig a, b;
  b.out = "elsewhere.csv";
  b.workers = 7;
  EXPECT_EQ(config_hash(a), config_hash(b));
  b.seed += 1;
  EXPECT_NE(config_hash(a), config_hash(b));
}

TEST(ResultTable, WriteReadRoundTrip) {
  ResultTable t({"a", "b"});
  t.add_row({1.0 / 3.0, -2e-300});
  t.add_row({1e300, 0.0});
  t.set_meta("note", "hello");
  std::stringstream s;
  t.write(s);
  EXPECT_NE(s.str().find("# note: hello"), std::string::npos);
  EXPECT_NE(s.str().find("0.33333333333333331"), std::string::npos);
  const ResultTable r = ResultTable::read(s);
  EXPECT_EQ(r.columns(), t.columns());
  EXPECT_EQ(r.rows(), t.rows());
  EXPECT_EQ(r.at(1, "a"), 1e300);
  EXPECT_EQ(r.column("b"), (std::vector<double>{-2e-300, 0.0}));
  EXPECT_EQ(r.body(), t.body());
  EXPECT_THROW(t.add_row({1.0}), Error);
}

TEST(Commands, PinskerTableAndMetadata) {
  ExperimentConfig c;
  c.command = "pinsker";
  c.beta = 1.0;
  c.L = 1.0;
  const CommandOutput out = run_pinsker(c);
  EXPECT_EQ(out.exit_code, 0);
  EXPECT_NEAR(out.table.at(0, "pinsker_gamma"), 0.42356542881870966897, 1e-16);
  std::ostringstream log;
  ExperimentConfig copy = c;
  const CommandOutput again = execute(copy, log);
  std::map<std::string, std::string> meta(again.table.meta().begin(), again.table.meta().end());
  EXPECT_TRUE(meta.count("config_hash"));
  EXPECT_TRUE(meta.count("seed"));
  EXPECT_TRUE(meta.count("timestamp"));
}

TEST(Commands, UnknownCommandIsInvalidArgument) {
  ExperimentConfig c;
  c.command = "frobnicate";
  std::ostringstream log;
  try {
    (void)execute(c, log);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::invalid_argument);
  }
}

TEST(Commands, RiskRowsAreConsistent) {
  ExperimentConfig c;
  c.command = "risk";
  c.beta = 2.0;
  c.n_list = {200, 800};
  c.reps = 40;
  const CommandOutput out = run_risk(c);
  ASSERT_EQ(out.table.rows().size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const double n = out.table.at(i, "n");
    const double rate = std::pow(n, 4.0 / 5.0);
    EXPECT_NEAR(out.table.at(i, "scaled_risk"), rate * out.table.at(i, "mise_mc"), 1e-12);
    EXPECT_NEAR(out.table.at(i, "mise_exact"),
                out.table.at(i, "exact_variance_term") + out.table.at(i, "exact_bias_term"), 1e-15);
  }
}

TEST(Acceptance, IdsAndFormatting) {
  EXPECT_EQ(criterion_ids().size(), 11u);
  CriterionResult r{7, "derivative norm identity", true, "gap 1e-15", 0.25, 60.0};
  const std::string line = format_result(r);
  EXPECT_EQ(line.rfind("PASS criterion", 0), 0u);
  EXPECT_NE(line.find("derivative norm identity"), std::string::npos);
  r.pass = false;
  EXPECT_EQ(format_result(r).rfind("FAIL", 0), 0u);
}

}  // namespace
