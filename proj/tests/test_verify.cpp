#include <gtest/gtest.h>

#include <algorithm>

#include "thetacalc/json_io.hpp"
#include "thetacalc/verify.hpp"

using namespace thetacalc;
using namespace thetacalc::verify;

namespace {

Rational q(long x) { return Rational(x); }

bool every_residual_zero(const IdentityReport& r) {
  return std::all_of(r.residuals.begin(), r.residuals.end(), [](const ResidualEntry& e) { return e.zero; });
}

}  // namespace

TEST(Registry, IdsAreUnique) {
  const auto reg = registry();
  std::vector<std::string> ids;
  for (const auto& info : reg) ids.push_back(info.id);
  std::sort(ids.begin(), ids.end());
  EXPECT_EQ(std::adjacent_find(ids.begin(), ids.end()), ids.end());
  EXPECT_EQ(reg.size(), 22U);
}

TEST(Registry, Selection) {
  EXPECT_EQ(resolve_selection({"prop_split2"}),
            (std::vector<std::string>{"prop_split2_zero", "prop_split2_multiple"}));
  EXPECT_EQ(resolve_selection({"sec5"}).size(), 5U);
  EXPECT_EQ(resolve_selection({"assembly_two", "fmtl"}), (std::vector<std::string>{"fmtl", "assembly_two"}));
  EXPECT_THROW(resolve_selection({"nope"}), std::invalid_argument);
}

TEST(RunIdentity, LemmaSymbolicAtRankTwo) {
  const auto r = run_identity("sec4_lemma", {{Var::r, q(2)}}, Mode::Symbolic);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(every_residual_zero(r));
  EXPECT_EQ(r.instantiation.at("r"), "2");
  EXPECT_EQ(r.trial, -1);
}

TEST(RunIdentity, LlpNumeric) {
  const auto r = run_identity("llp", {{Var::d, q(1)}, {Var::e, q(1)}}, Mode::Numeric);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.instantiation.at("d"), "1");
}

TEST(RunIdentity, SplitTwoOnWorkedPair) {
  // v = (1, 0, -1), w = (2, 3H, 2), n = 1: lambda = 0 * lambda'.
  const std::map<Var, Rational> params{{Var::d2, q(3)}, {Var::e2, q(3)}, {Var::a, q(0)},  {Var::r, q(1)},
                                       {Var::r2, q(2)}, {Var::chi, q(-1)}, {Var::chi2, q(2)}};
  EXPECT_TRUE(run_identity("prop_split2_multiple", params, Mode::Numeric).pass);
}

TEST(RunIdentity, Errors) {
  EXPECT_THROW(run_identity("nope", {}, Mode::Symbolic), std::invalid_argument);
  EXPECT_THROW(run_identity("llp", {{Var::d, q(1)}}, Mode::Numeric), std::invalid_argument);
  EXPECT_THROW(run_identity("assembly_main", {}, Mode::Symbolic), std::invalid_argument);
  // r chi' + r' chi != 0
  const std::map<Var, Rational> bad{{Var::d, q(1)},  {Var::e, q(1)},   {Var::r, q(1)},
                                    {Var::r2, q(1)}, {Var::chi, q(1)}, {Var::chi2, q(1)}};
  EXPECT_THROW(run_identity("prop_split2_zero", bad, Mode::Numeric), std::domain_error);
}

TEST(RunIdentity, EverySymbolicIdentityPasses) {
  for (const auto& info : registry()) {
    if (!info.symbolic) continue;
    const auto r = run_identity(info.id, {}, Mode::Symbolic);
    EXPECT_TRUE(r.pass) << info.id;
  }
}

TEST(Suite, SmallRunPassesAndIsOrdered) {
  SuiteOptions opts;
  opts.trials = 5;
  const auto reports = run_suite(opts);
  EXPECT_TRUE(all_pass(reports));
  for (std::size_t i = 1; i < reports.size(); ++i) {
    const auto& a = reports[i - 1];
    const auto& b = reports[i];
    EXPECT_TRUE(a.identity_id < b.identity_id ||
                (a.identity_id == b.identity_id && (a.trial < b.trial)));
  }
}

TEST(Suite, DeterministicAcrossThreadCounts) {
  SuiteOptions one;
  one.trials = 4;
  one.threads = 1;
  SuiteOptions many = one;
  many.threads = 8;
  EXPECT_EQ(io::to_json(run_suite(one)).dump(), io::to_json(run_suite(many)).dump());
  SuiteOptions other = one;
  other.seed = 7;
  EXPECT_NE(io::to_json(run_suite(one)).dump(), io::to_json(run_suite(other)).dump());
}

TEST(Suite, TrialsZeroIsSymbolicOnly) {
  SuiteOptions opts;
  opts.trials = 0;
  opts.only = std::vector<std::string>{"sec4_lemma", "assembly_main"};
  const auto reports = run_suite(opts);
  ASSERT_EQ(reports.size(), 1U);
  EXPECT_EQ(reports[0].mode, Mode::Symbolic);
}

TEST(Suite, EmptySelection) {
  SuiteOptions opts;
  opts.only = std::vector<std::string>{};
  EXPECT_TRUE(run_suite(opts).empty());
}

TEST(Suite, NegativeControlBreaksFmtl) {
  SuiteOptions opts;
  opts.trials = 3;
  opts.only = std::vector<std::string>{"fmtl"};
  opts.verify.corrupt_sign = true;
  const auto reports = run_suite(opts);
  ASSERT_FALSE(reports.empty());
  for (const auto& r : reports) EXPECT_FALSE(r.pass);
}

TEST(Rng, UniformStaysInRange) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const long x = rng.uniform(-9, 9);
    EXPECT_GE(x, -9);
    EXPECT_LE(x, 9);
    EXPECT_NE(rng.nonzero(-1, 1), 0);
  }
  EXPECT_THROW(rng.uniform(1, 0), std::invalid_argument);
}

TEST(Rng, TrialSeedsDiffer) {
  EXPECT_EQ(trial_seed("fmtl", 42, 3), trial_seed("fmtl", 42, 3));
  EXPECT_NE(trial_seed("fmtl", 42, 3), trial_seed("fmtl", 42, 4));
  EXPECT_NE(trial_seed("fmtl", 42, 3), trial_seed("llp", 42, 3));
  EXPECT_NE(trial_seed("fmtl", 42, 3), trial_seed("fmtl", 43, 3));
}
