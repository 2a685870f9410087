#pragma once

// Mukai lattice of a polarized abelian surface with Néron–Severi group Z·H,
// H² = 2n. Vectors are (r, kH, χ) on A or (r, kĤ, χ) on Â, where
// Ĥ = -λ̂(H) so that Ĥ² = 2n as well.

#include <optional>
#include <string>

#include "thetacalc/scalar.hpp"

namespace thetacalc::mukai {

enum class Side { Surface, Dual };

std::string to_string(Side side);

struct NSClass {
  Integer k;
  Integer n;

  Integer self_intersection() const { return 2 * n * k * k; }
  Integer dot(const NSClass& other) const;
  friend bool operator==(const NSClass&, const NSClass&) = default;
};

struct MukaiVector {
  Integer r;
  NSClass c1;
  Integer chi;
  Side side = Side::Surface;

  const Integer& k() const { return c1.k; }
  const Integer& n() const { return c1.n; }
  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

MukaiVector make_vector(const Integer& r, const Integer& k, const Integer& chi, const Integer& n,
                        Side side = Side::Surface);

std::string to_string(const MukaiVector& v);

/// ∫(x2·y2 - x0·y4 - x4·y0) = 2n·kx·ky - rx·χy - χx·ry.
Integer mukai_pairing(const MukaiVector& x, const MukaiVector& y);

/// ⟨v,v⟩/2, always an integer in rank one.
Integer dv(const MukaiVector& v);

/// χ(v ⊗ w) = r_w·χ_v + c1(v)·c1(w) + r_v·χ_w; zero iff v, w are orthogonal
/// in the sense of the theta construction.
Integer euler_chi_tensor(const MukaiVector& v, const MukaiVector& w);

/// c1(v ⊗ w) = r_v·c1(w) + r_w·c1(v).
NSClass c1_tensor(const MukaiVector& v, const MukaiVector& w);

/// (r, -c1, χ).
MukaiVector dual(const MukaiVector& v);

/// Fourier–Mukai image (χ, -k, r) on the other side.
MukaiVector fm_vector(const MukaiVector& v);

/// The same transform computed with the exterior-algebra engine on
/// r + kH + χω with H = f1v∧f2v + n·f3v∧f4v.
MukaiVector fm_vector_engine(const MukaiVector& v);

struct AdmissibilityReport {
  bool primitive = false;
  bool positive = false;
  /// Sign of c1(v⊗w)·H when w was supplied.
  std::optional<int> h2_vanishing_direction;
};

AdmissibilityReport check_assumptions(const MukaiVector& v, const std::optional<MukaiVector>& w = std::nullopt);

/// "r,k,chi" with the ambient n supplied separately.
MukaiVector parse_vector(const std::string& text, const Integer& n, Side side = Side::Surface);

/// {"r": .., "k": .., "chi": .., "n": ..}; numbers or decimal strings.
MukaiVector parse_vector_json(const std::string& json_text, Side side = Side::Surface);

}  // namespace thetacalc::mukai
