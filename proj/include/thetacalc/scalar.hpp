#pragma once

// Exact coefficient rings: GMP integers and rationals, plus a sparse
// multivariate polynomial ring over the rationals in a fixed set of named
// parameters.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace thetacalc {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& x);
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& x);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_integral(const Rational& x) { return x.get_den() == 1; }

/// Parameters a symbolic computation may use. The `mu*` block holds the six
/// coordinates of a second degree-2 class (written λ' in formulas), the
/// `alpha*` block those of an auxiliary class α.
enum class Var : std::uint8_t {
  d,
  e,
  d2,
  e2,
  a,
  r,
  r2,
  chi,
  chi2,
  n,
  k,
  k2,
  alpha12,
  alpha13,
  alpha14,
  alpha23,
  alpha24,
  alpha34,
  mu12,
  mu13,
  mu14,
  mu23,
  mu24,
  mu34,
  kCount
};

inline constexpr std::size_t kVarCount = static_cast<std::size_t>(Var::kCount);

std::string_view var_name(Var v);

class Poly {
 public:
  using Exponents = std::array<std::uint8_t, kVarCount>;
  using Terms = std::map<Exponents, Rational>;

  Poly() = default;
  Poly(long c);              // NOLINT(google-explicit-constructor)
  Poly(const Rational& c);   // NOLINT(google-explicit-constructor)
  Poly(const Integer& c);    // NOLINT(google-explicit-constructor)

  static Poly variable(Var v);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; throws std::domain_error otherwise.
  Rational constant_value() const;
  unsigned degree_in(Var v) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(const Rational& c);
  Poly& operator/=(const Rational& c);
  Poly operator-() const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend Poly operator/(Poly a, const Rational& c) { return a /= c; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Numerator of this polynomial after substituting v := num/den, cleared
  /// by den^K with K the degree in v: sum_j c_j * num^j * den^(K-j).
  /// Vanishes identically iff the substituted rational function does
  /// (for den != 0).
  Poly substitute_homogenized(Var v, const Poly& num, const Poly& den) const;

  /// Evaluates with the given parameter values; unlisted parameters must not occur.
  Rational evaluate(const std::map<Var, Rational>& values) const;

  std::string to_string() const;

 private:
  void add_term(const Exponents& mono, const Rational& coeff);

  Terms terms_;
};

Poly pow(const Poly& base, unsigned exponent);

inline bool is_zero(const Poly& p) { return p.is_zero(); }
inline std::string to_string(const Poly& p) { return p.to_string(); }

}  // namespace thetacalc
