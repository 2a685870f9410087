#include <gtest/gtest.h>

#include <random>

#include "thetacalc/mukai.hpp"

using namespace thetacalc;
using namespace thetacalc::mukai;

namespace {

MukaiVector vec(long r, long k, long chi, long n) { return make_vector(r, k, chi, n); }

}  // namespace

TEST(Pairing, Examples) {
  for (long n : {1, 2, 5}) {
    for (long np : {1, 3, 4}) EXPECT_EQ(mukai_pairing(vec(1, 0, -np, n), vec(1, 0, -np, n)), 2 * np);
    EXPECT_EQ(mukai_pairing(vec(0, 1, 3, n), vec(0, 1, -4, n)), 2 * n);
  }
  EXPECT_EQ(mukai_pairing(vec(2, 1, 1, 2), vec(2, 1, 1, 2)), 0);
  EXPECT_THROW(mukai_pairing(vec(1, 0, 0, 1), vec(1, 0, 0, 2)), std::invalid_argument);
}

TEST(Dv, Examples) {
  EXPECT_EQ(dv(vec(1, 0, -3, 2)), 3);
  EXPECT_EQ(dv(vec(1, 0, -1, 1)), 1);
  for (long k = -6; k <= 6; ++k) EXPECT_EQ(dv(vec(2, k, 2, 1)), k * k - 4);
  EXPECT_EQ(dv(vec(2, 1, 1, 2)), 0);
}

TEST(Tensor, EulerCharacteristic) {
  EXPECT_EQ(euler_chi_tensor(vec(1, 0, -1, 1), vec(2, 3, 2, 1)), 0);
  EXPECT_EQ(euler_chi_tensor(vec(1, 0, 0, 1), vec(1, 0, 0, 1)), 0);
  EXPECT_EQ(euler_chi_tensor(vec(2, 1, 1, 2), vec(2, 1, -3, 2)), 0);
  EXPECT_EQ(euler_chi_tensor(vec(1, 0, -1, 1), vec(2, 4, 3, 1)), 1);
  // χ(v ⊗ w) = -⟨v^∨, w⟩
  const auto v = vec(3, 2, -5, 2), w = vec(1, -1, 4, 2);
  EXPECT_EQ(euler_chi_tensor(v, w), -mukai_pairing(dual(v), w));
}

TEST(Tensor, FirstChernClass) {
  const NSClass c = c1_tensor(vec(1, 0, -1, 1), vec(2, 3, 2, 1));
  EXPECT_EQ(c.k, 3);
  EXPECT_EQ(c.self_intersection(), 18);
  EXPECT_EQ(c1_tensor(vec(0, 1, 2, 1), vec(0, 2, 1, 1)).k, 0);
  EXPECT_EQ(c1_tensor(vec(2, 1, 1, 2), vec(2, 1, -3, 2)).self_intersection(), 64);
}

TEST(Fm, BasisValues) {
  EXPECT_EQ(fm_vector(vec(1, 0, 0, 1)), make_vector(0, 0, 1, 1, Side::Dual));
  EXPECT_EQ(fm_vector(vec(0, 0, 1, 1)), make_vector(1, 0, 0, 1, Side::Dual));
  EXPECT_EQ(fm_vector(vec(2, 3, 5, 2)), make_vector(5, -3, 2, 2, Side::Dual));
  EXPECT_EQ(fm_vector(fm_vector(vec(2, 3, 5, 2))), vec(2, 3, 5, 2));
}

TEST(Fm, TransformedTensorClass) {
  const auto vh = fm_vector(vec(2, 1, 1, 2)), wh = fm_vector(vec(2, 1, -3, 2));
  const NSClass c = c1_tensor(vh, wh);
  EXPECT_EQ(c.k, 2);  // regression value of the sign
  EXPECT_EQ(c.self_intersection(), 16);
}

TEST(Fm, EngineOracleAgreesOnRandomVectors) {
  std::mt19937_64 rng(500);
  std::uniform_int_distribution<long> coord(-20, 20);
  std::uniform_int_distribution<long> nn(1, 6);
  for (int t = 0; t < 500; ++t) {
    const Side side = t % 2 == 0 ? Side::Surface : Side::Dual;
    const auto v = make_vector(coord(rng), coord(rng), coord(rng), nn(rng), side);
    const auto w = make_vector(coord(rng), coord(rng), coord(rng), v.n(), side);
    ASSERT_EQ(fm_vector(v), fm_vector_engine(v)) << to_string(v);
    EXPECT_EQ(mukai_pairing(fm_vector(v), fm_vector(w)), mukai_pairing(v, w));
    EXPECT_EQ(dv(fm_vector(v)), dv(v));
  }
}

TEST(Assumptions, Examples) {
  auto rep = check_assumptions(vec(2, 3, 2, 1));
  EXPECT_TRUE(rep.primitive);
  EXPECT_TRUE(rep.positive);
  EXPECT_FALSE(rep.h2_vanishing_direction);
  EXPECT_FALSE(check_assumptions(vec(2, 2, 2, 1)).primitive);
  EXPECT_TRUE(check_assumptions(vec(0, 1, 3, 1)).positive);
  EXPECT_FALSE(check_assumptions(vec(0, 1, 0, 1)).positive);
  EXPECT_FALSE(check_assumptions(vec(0, -1, 3, 1)).positive);
  EXPECT_FALSE(check_assumptions(vec(0, 1, 3, 2)).positive);  // ⟨v,v⟩ = 4
  EXPECT_FALSE(check_assumptions(vec(-1, 0, 1, 1)).positive);
  rep = check_assumptions(vec(1, 0, -1, 1), vec(2, 3, 2, 1));
  ASSERT_TRUE(rep.h2_vanishing_direction);
  EXPECT_EQ(*rep.h2_vanishing_direction, 1);
}

TEST(Parse, Text) {
  EXPECT_EQ(parse_vector("2,3,-4", 5), vec(2, 3, -4, 5));
  EXPECT_EQ(parse_vector(" 1, 0 , -1", 1), vec(1, 0, -1, 1));
  EXPECT_EQ(parse_vector("123456789012345678901234567890,0,1", 1).r.get_str(), "123456789012345678901234567890");
  EXPECT_THROW(parse_vector("1,2", 1), std::invalid_argument);
  EXPECT_THROW(parse_vector("1,x,2", 1), std::invalid_argument);
  EXPECT_THROW(parse_vector("1,2,3", 0), std::invalid_argument);
}

TEST(Parse, Json) {
  EXPECT_EQ(parse_vector_json(R"({"r": 2, "k": "3", "chi": 2, "n": 1})"), vec(2, 3, 2, 1));
  EXPECT_THROW(parse_vector_json(R"({"r": 2.5, "k": 3, "chi": 2, "n": 1})"), std::invalid_argument);
  EXPECT_THROW(parse_vector_json(R"({"r": 2})"), std::invalid_argument);
}

TEST(Format, ToString) { EXPECT_EQ(to_string(vec(1, 0, -1, 1)), "(1, 0H, -1)"); }
