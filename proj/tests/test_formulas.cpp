#include <gtest/gtest.h>

#include "thetacalc/formulas.hpp"

using namespace thetacalc;
using namespace thetacalc::formulas;
using mukai::make_vector;

namespace {

MukaiVector vec(long r, long k, long chi, long n) { return make_vector(r, k, chi, n); }

Rational q(long num, long den = 1) {
  Rational x(num, den);
  x.canonicalize();
  return x;
}

}  // namespace

TEST(Binom, Polynomial) {
  EXPECT_EQ(binom(5, 2), 10);
  for (long k : {-7, 0, 3}) EXPECT_EQ(binom(k, 0), 1);
  EXPECT_EQ(binom(-1, 2), 1);
  EXPECT_EQ(binom(-9, 4), 495);
  EXPECT_EQ(binom(3, 5), 0);
  EXPECT_EQ(binom(100, 50).get_str(), "100891344545564193334812497256");
}

TEST(FixedDet, WorkedFamily) {
  for (long k : {3, 5, 7, 9}) {
    const auto r = chi_fixed_det(vec(1, 0, -1, 1), vec(2, k, 2, 1));
    EXPECT_EQ(r.value, q(k * k));
    EXPECT_TRUE(r.integral);
    EXPECT_EQ(r.branch, "generic");
  }
}

TEST(FixedDet, SpecialBranch) {
  const auto r = chi_fixed_det(vec(2, 1, 1, 2), vec(2, 1, -3, 2));
  EXPECT_EQ(r.value, q(4));
  EXPECT_EQ(r.branch, "special");
  EXPECT_EQ(r.cross_check, "r^2");
  EXPECT_EQ(r.cross_value, q(4));
}

TEST(FixedDet, SymmetricInArguments) {
  EXPECT_EQ(chi_fixed_det(vec(2, 3, 2, 1), vec(1, 0, -1, 1)).value, q(9));
  EXPECT_EQ(chi_fixed_det(vec(2, 1, -3, 2), vec(2, 1, 1, 2)).value, q(4));
}

TEST(FixedDet, Errors) {
  EXPECT_THROW(chi_fixed_det(vec(1, 0, -1, 1), vec(2, 4, 3, 1)), std::domain_error);
  EXPECT_THROW(chi_fixed_det(vec(1, 0, 0, 1), vec(1, 0, 0, 1)), std::domain_error);
}

TEST(FixedFmDet, Examples) {
  EXPECT_EQ(chi_fixed_fm_det(vec(1, 0, -1, 1), vec(2, 3, 2, 1)).value, q(9));
  const auto r = chi_fixed_fm_det(vec(2, 1, 1, 2), vec(2, 1, -3, 2));
  EXPECT_EQ(r.value, q(1));
  EXPECT_EQ(r.branch, "special");
  EXPECT_EQ(r.cross_check, "chi^2");
}

TEST(Albanese, Examples) {
  for (long dw : {0, 1, 4, 11}) EXPECT_EQ(chi_albanese_fiber(1, dw).value, q(1));
  EXPECT_EQ(chi_albanese_fiber(2, 3).value, q(8));
  EXPECT_EQ(chi_albanese_fiber(5, 3).value, q(175));
  EXPECT_THROW(chi_albanese_fiber(0, 3), std::domain_error);
}

TEST(Kummer, Examples) {
  for (long chid : {1, 5}) {
    for (long r : {0, 3}) EXPECT_EQ(chi_kummer_lemma({chid, r, 1}).value, q(1));
  }
  EXPECT_EQ(chi_kummer_lemma({3, 0, 2}).value, q(8));
  EXPECT_EQ(chi_kummer_lemma({4, 1, 2}).value, q(6));
  EXPECT_EQ(chi_albanese_fiber(2, 3).value, q(8));
  EXPECT_EQ(chi_albanese_fiber(2, 2).value, q(6));
  EXPECT_EQ(chi_kummer_lemma({7, 2, 5}).value, q(2475));
}

TEST(Hilbert, Examples) {
  EXPECT_EQ(chi_hilbert_egl({9, 2, 1}).value, q(9));
  EXPECT_EQ(chi_hilbert_egl({4, 0, 2}).value, q(10));
  const auto r = chi_hilbert_egl({3, 1, 2});
  EXPECT_EQ(r.value, q(3, 2) * 2);
}

TEST(K3, Examples) {
  EXPECT_EQ(chi_k3_reference(0, 3).value, q(5));
  EXPECT_EQ(chi_k3_reference(1, 1).value, q(6));
}

TEST(ArbitraryDet, Examples) {
  EXPECT_EQ(chi_arbitrary_det(vec(1, 0, -1, 1), vec(2, 3, 2, 1)).value, q(1));
  const auto r = chi_arbitrary_det(vec(2, 1, -3, 2), vec(2, 1, 1, 2));
  EXPECT_EQ(r.value, q(8));
  EXPECT_EQ(r.branch, "special");
  EXPECT_EQ(r.cross_value, q(8));
  EXPECT_EQ(chi_albanese_fiber(2, 0).value, q(2));
}

TEST(ArbitraryDet, NotSymmetric) {
  const auto v = vec(1, 0, -1, 1), w = vec(2, 3, 2, 1);
  EXPECT_NE(chi_arbitrary_det(v, w).value, chi_arbitrary_det(w, v).value);
}

TEST(BeauvilleBogomolov, Examples) {
  EXPECT_EQ(bb_form({5, 0, 3}), 10);
  EXPECT_EQ(bb_form({4, 1, 3}), 2);
  EXPECT_EQ(chi_from_bb({4, 1, 3}), chi_kummer_lemma({4, 1, 3}).value);
  EXPECT_THROW(bb_form({4, 1, 2}), std::domain_error);
}
