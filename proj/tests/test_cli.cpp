#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "thetacalc/cli.hpp"

using namespace thetacalc;
using namespace thetacalc::cli;

namespace {

struct Outcome {
  int status;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "thetacalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

io::Json json_of(const Outcome& o) { return io::Json::parse(o.out); }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Eval, WorkedExample) {
  const auto o = call({"eval", "--n", "1", "--v", "1,0,-1", "--w", "2,3,2", "--theorem", "all"});
  ASSERT_EQ(o.status, kSuccess) << o.err;
  const auto doc = json_of(o);
  EXPECT_EQ(doc["values"]["main"], "9");
  EXPECT_EQ(doc["values"]["two"], "9");
  EXPECT_EQ(doc["values"]["three"], "1");
  EXPECT_EQ(doc["d_v"], "1");
  EXPECT_EQ(doc["d_w"], "5");
  EXPECT_TRUE(doc["admissibility"]["v"]["primitive"].get<bool>());
  EXPECT_FALSE(doc["conventions"].empty());
}

TEST(Eval, NonOrthogonal) {
  const auto o = call({"eval", "--n", "1", "--v", "1,0,-1", "--w", "2,4,3"});
  EXPECT_EQ(o.status, kUsageError);
  EXPECT_NE(o.err.find("= 1"), std::string::npos) << o.err;
}

TEST(Eval, SpecialBranchMetadata) {
  const auto o = call({"eval", "--n", "2", "--v", "2,1,1", "--w", "2,1,-3", "--theorem", "main"});
  ASSERT_EQ(o.status, kSuccess);
  const auto doc = json_of(o);
  EXPECT_EQ(doc["results"]["main"]["branch"], "special");
  EXPECT_EQ(doc["results"]["main"]["cross_check"], "r^2");
  EXPECT_FALSE(doc["values"].contains("two"));
}

TEST(Eval, UndefinedSingleTheoremIsAnError) {
  const auto o = call({"eval", "--n", "2", "--v", "2,1,1", "--w", "2,1,-3", "--theorem", "three"});
  EXPECT_EQ(o.status, kUsageError);
  const auto all = call({"eval", "--n", "2", "--v", "2,1,1", "--w", "2,1,-3"});
  EXPECT_EQ(all.status, kSuccess);
  EXPECT_TRUE(json_of(all)["results"]["three"].contains("error"));
}

TEST(Eval, MalformedInput) {
  EXPECT_EQ(call({"eval", "--n", "1", "--v", "1,0", "--w", "2,3,2"}).status, kUsageError);
  EXPECT_EQ(call({"eval", "--n", "x", "--v", "1,0,-1", "--w", "2,3,2"}).status, kUsageError);
  EXPECT_EQ(call({"eval", "--n", "1", "--v", "1,0,-1", "--w", "2,3,2", "--theorem", "four"}).status, kUsageError);
  EXPECT_EQ(call({"eval", "--v", "1,0,-1"}).status, kUsageError);
  EXPECT_EQ(call({}).status, kUsageError);
  EXPECT_EQ(call({"--help"}).status, kSuccess);
}

TEST(Eval, VerboseBanner) {
  const auto o = call({"--verbose", "eval", "--n", "1", "--v", "1,0,-1", "--w", "2,3,2"});
  EXPECT_NE(o.err.find("lambda-hat"), std::string::npos);
}

TEST(Enumerate, ContainsWorkedRow) {
  const auto o = call({"enumerate", "--n", "1", "--max-rank", "2", "--max-k", "3", "--max-chi", "4"});
  ASSERT_EQ(o.status, kSuccess);
  EXPECT_EQ(o.out.rfind("n,v_r,v_k,v_chi,w_r,w_k,w_chi,d_v,d_w,chi_main,chi_two,chi_three,flags\n", 0), 0U);
  EXPECT_NE(o.out.find("\n1,1,0,-1,2,3,2,1,5,9,9,1,h2:+\n"), std::string::npos);
}

TEST(Enumerate, ZeroWidthBounds) {
  EnumerateBounds b;
  b.max_rank = 0;
  b.max_k = 0;
  b.max_chi = 0;
  const auto rows = enumerate_pairs(b);
  EXPECT_TRUE(rows.empty());
  EXPECT_EQ(enumerate_summary(rows)["rows"], "0");
}

TEST(Enumerate, FileOutputIsDeterministic) {
  const auto dir = std::filesystem::temp_directory_path() / "thetacalc_cli_test";
  std::filesystem::create_directories(dir);
  const auto a = dir / "a.json";
  const auto b = dir / "b.json";
  const std::vector<std::string> base{"enumerate", "--n", "1", "2", "--max-rank", "2", "--max-k", "2",
                                      "--max-chi", "3", "--format", "json"};
  auto args_a = base;
  args_a.insert(args_a.end(), {"--out", a.string(), "--threads", "1"});
  auto args_b = base;
  args_b.insert(args_b.end(), {"--out", b.string(), "--threads", "4"});
  ASSERT_EQ(call(args_a).status, kSuccess);
  ASSERT_EQ(call(args_b).status, kSuccess);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(io::Json::parse(slurp(a))["rows"].empty());
  std::filesystem::remove_all(dir);
}

TEST(Enumerate, UnwritablePath) {
  EXPECT_EQ(call({"enumerate", "--out", "/nonexistent-dir/x.csv"}).status, kUsageError);
  EXPECT_EQ(call({"enumerate", "--format", "xml"}).status, kUsageError);
}

TEST(Verify, OnlyFilter) {
  const auto o = call({"verify", "--only", "sec4_lemma", "--trials", "3", "--json"});
  ASSERT_EQ(o.status, kSuccess);
  const auto doc = json_of(o);
  ASSERT_EQ(doc.size(), 4U);
  EXPECT_EQ(doc[0]["mode"], "symbolic");
  EXPECT_EQ(doc[3]["trial"], "2");
}

TEST(Verify, TrialsZeroAndExitCodes) {
  const auto o = call({"verify", "--trials", "0", "--quiet"});
  EXPECT_EQ(o.status, kSuccess);
  EXPECT_NE(o.out.find("0 failed"), std::string::npos);
  EXPECT_EQ(call({"verify", "--only", "nope"}).status, kUsageError);
  EXPECT_EQ(call({"verify", "--only", "fmtl", "--trials", "1", "--corrupt-sign"}).status, kVerificationFailure);
}

TEST(Verify, ListAndDeterminism) {
  const auto list = call({"verify", "--list"});
  EXPECT_EQ(list.status, kSuccess);
  EXPECT_NE(list.out.find("fmtl"), std::string::npos);
  const auto a = call({"verify", "--seed", "5", "--trials", "3", "--threads", "1"});
  const auto b = call({"verify", "--seed", "5", "--trials", "3", "--threads", "3"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Kummer, Examples) {
  auto doc = json_of(call({"kummer", "--n", "2", "--chiD", "3", "--r", "0"}));
  EXPECT_EQ(doc["kummer"], "8");
  EXPECT_EQ(doc["pull1_residual"], "0");
  EXPECT_FALSE(doc.contains("bb_form"));
  EXPECT_EQ(json_of(call({"kummer", "--n", "1", "--chiD", "7", "--r", "5"}))["kummer"], "1");
  doc = json_of(call({"kummer", "--n", "5", "--chiD", "7", "--r", "2"}));
  EXPECT_EQ(doc["kummer"], "2475");
  EXPECT_EQ(doc["bb_chi"], "2475");
  EXPECT_EQ(call({"kummer", "--n", "0", "--chiD", "7", "--r", "2"}).status, kUsageError);
}
