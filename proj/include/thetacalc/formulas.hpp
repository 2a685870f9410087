#pragma once

// Euler characteristics of theta bundles on moduli of sheaves on an abelian
// surface, plus the Kummer / Hilbert scheme / K3 comparison values.

#include <map>
#include <optional>
#include <string>

#include "thetacalc/mukai.hpp"
#include "thetacalc/scalar.hpp"

namespace thetacalc::formulas {

using mukai::MukaiVector;

struct ChiResult {
  std::string formula_id;
  Rational value;
  bool integral = true;
  std::string branch = "generic";  // "generic" or "special"
  std::map<std::string, std::string> inputs;
  /// Name of the independent value a special branch was compared with
  /// ("r^2", "chi^2", ...) and that value.
  std::optional<std::string> cross_check;
  std::optional<Rational> cross_value;
};

/// Polynomial binomial a(a-1)...(a-b+1)/b!, defined for every integer a.
Integer binom(const Integer& a, unsigned long b);

/// ½·c1(v⊗w)²/(d_v+d_w)·C(d_v+d_w, d_v).
ChiResult chi_fixed_det(const MukaiVector& v, const MukaiVector& w);

/// The same shape evaluated on the transforms v̂, ŵ.
ChiResult chi_fixed_fm_det(const MukaiVector& v, const MukaiVector& w);

/// d_v²/(d_v+d_w)·C(d_v+d_w, d_v); needs dv >= 1, dw >= 0.
ChiResult chi_albanese_fiber(const Integer& dv, const Integer& dw);

struct KummerClass {
  Integer chiD;
  Integer r;
  Integer n;
};

/// n·C(χ(D) - (r²-1)n - 1, n-1).
ChiResult chi_kummer_lemma(const KummerClass& kc);

/// (χ(D)/n)·C(χ(D) - (r²-1)n - 1, n-1).
ChiResult chi_hilbert_egl(const KummerClass& kc);

/// C(d_v+d_w+2, d_v+1), the K3 value.
ChiResult chi_k3_reference(const Integer& dv, const Integer& dw);

/// χ(K_v, Θ_w) for arbitrary determinant; d_w = 0 gives d_v.
ChiResult chi_arbitrary_det(const MukaiVector& v, const MukaiVector& w);

/// Beauville–Bogomolov square 2χ(D) - 2n·r² of D_(n) - rE; n >= 3.
Integer bb_form(const KummerClass& kc);

/// n·C(B/2 + n - 1, n - 1), the Euler characteristic read off the form.
Integer chi_from_bb(const KummerClass& kc);

}  // namespace thetacalc::formulas
