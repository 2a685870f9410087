#pragma once

// Graded exterior algebra H*(X) of a product of real 4-tori with exact
// coefficients. R is Rational (numeric work) or Poly (symbolic work); the
// engine code is identical for both.

#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thetacalc/scalar.hpp"
#include "thetacalc/space.hpp"

namespace thetacalc::excoh {

/// Sign of g_A ∧ g_B relative to the canonically ordered monomial g_{A∪B};
/// 0 when the supports overlap.
inline int merge_sign(MonomialKey a, MonomialKey b) {
  if ((a & b) != 0) return 0;
  int swaps = 0;
  for (MonomialKey rest = b; rest != 0; rest &= static_cast<MonomialKey>(rest - 1)) {
    const int j = __builtin_ctz(rest);
    swaps += __builtin_popcount(static_cast<unsigned>(a) >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

template <class R>
class ExteriorClass {
 public:
  using Terms = std::map<MonomialKey, R>;

  ExteriorClass() = default;
  explicit ExteriorClass(Space space) : space_(std::move(space)) {}

  static ExteriorClass constant(Space space, const R& c) {
    return monomial(std::move(space), MonomialKey{0}, c);
  }

  static ExteriorClass generator(Space space, std::size_t index) {
    if (index >= space.generator_count()) {
      throw std::out_of_range("generator " + std::to_string(index) + " outside " + space.name());
    }
    return monomial(std::move(space), static_cast<MonomialKey>(1U << index), R(1L));
  }

  static ExteriorClass monomial(Space space, MonomialKey key, const R& c) {
    ExteriorClass out(std::move(space));
    out.accumulate(key, c);
    return out;
  }

  const Space& space() const { return space_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  R coefficient(MonomialKey key) const {
    const auto it = terms_.find(key);
    return it == terms_.end() ? R(0L) : it->second;
  }

  /// Adds c to the coefficient of the canonically ordered monomial `key`.
  void accumulate(MonomialKey key, const R& c) {
    if ((key & ~space_.top_mask()) != 0) {
      throw std::out_of_range("monomial outside the generators of " + space_.name());
    }
    if (thetacalc::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (thetacalc::is_zero(it->second)) terms_.erase(it);
    }
  }

  ExteriorClass homogeneous_part(int degree) const {
    ExteriorClass out(space_);
    for (const auto& [key, c] : terms_) {
      if (degree_of(key) == degree) out.terms_.emplace(key, c);
    }
    return out;
  }

  bool is_homogeneous_of_degree(int degree) const {
    for (const auto& [key, c] : terms_) {
      if (degree_of(key) != degree) return false;
    }
    return true;
  }

  ExteriorClass& operator+=(const ExteriorClass& other) {
    require_same_space(other);
    for (const auto& [key, c] : other.terms_) accumulate(key, c);
    return *this;
  }

  ExteriorClass& operator-=(const ExteriorClass& other) {
    require_same_space(other);
    for (const auto& [key, c] : other.terms_) accumulate(key, R(-c));
    return *this;
  }

  ExteriorClass& operator*=(const R& c) {
    if (thetacalc::is_zero(c)) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, coeff] : terms_) coeff *= c;
    return *this;
  }

  friend ExteriorClass operator+(ExteriorClass a, const ExteriorClass& b) { return a += b; }
  friend ExteriorClass operator-(ExteriorClass a, const ExteriorClass& b) { return a -= b; }
  friend ExteriorClass operator*(ExteriorClass a, const R& c) { return a *= c; }
  friend ExteriorClass operator*(const R& c, ExteriorClass a) { return a *= c; }
  ExteriorClass operator-() const { return *this * R(-1L); }

  friend bool operator==(const ExteriorClass& a, const ExteriorClass& b) {
    return a.space_ == b.space_ && a.terms_ == b.terms_;
  }

  void require_same_space(const ExteriorClass& other) const {
    if (!(space_ == other.space_)) {
      throw std::invalid_argument("exterior classes live on different spaces: " + space_.name() + " vs " +
                                  other.space_.name());
    }
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string coeff = thetacalc::to_string(c);
      const bool compound = coeff.find_first_of(" ") != std::string::npos;
      out += compound ? "(" + coeff + ")" : coeff;
      for (std::size_t i = 0; i < space_.generator_count(); ++i) {
        if (key & (1U << i)) out += "*" + space_.generator_name(i);
      }
    }
    return out;
  }

 private:
  Space space_;
  Terms terms_;
};

/// Cup product. A non-negative max_degree drops every product term above it.
template <class R>
ExteriorClass<R> wedge(const ExteriorClass<R>& a, const ExteriorClass<R>& b, int max_degree = -1) {
  a.require_same_space(b);
  ExteriorClass<R> out(a.space());
  R prod;
  for (const auto& [ka, ca] : a.terms()) {
    const int da = degree_of(ka);
    for (const auto& [kb, cb] : b.terms()) {
      if (max_degree >= 0 && da + degree_of(kb) > max_degree) continue;
      const int sign = merge_sign(ka, kb);
      if (sign == 0) continue;
      prod = ca * cb;
      if (sign < 0) prod = -prod;
      out.accumulate(static_cast<MonomialKey>(ka | kb), prod);
    }
  }
  return out;
}

template <class R>
ExteriorClass<R> wedge_all(const std::vector<ExteriorClass<R>>& factors, int max_degree = -1) {
  if (factors.empty()) throw std::invalid_argument("wedge_all needs at least one factor");
  ExteriorClass<R> out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = wedge(out, factors[i], max_degree);
  return out;
}

/// Linear map on H^1 inducing the pullback of a homomorphism source -> target.
/// Row t of the matrix expresses the pullback of target generator t in the
/// source generators.
template <class R>
class MorphismH1 {
 public:
  MorphismH1(Space source, Space target, std::vector<R> matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.size() != source_.generator_count() * target_.generator_count()) {
      throw std::invalid_argument("pullback matrix has " + std::to_string(matrix_.size()) + " entries, expected " +
                                  std::to_string(source_.generator_count() * target_.generator_count()));
    }
  }

  static MorphismH1 identity(const Space& space) {
    const std::size_t n = space.generator_count();
    std::vector<R> m(n * n, R(0L));
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = R(1L);
    return MorphismH1(space, space, std::move(m));
  }

  const Space& source() const { return source_; }
  const Space& target() const { return target_; }

  const R& entry(std::size_t target_gen, std::size_t source_gen) const {
    return matrix_.at(target_gen * source_.generator_count() + source_gen);
  }

  ExteriorClass<R> generator_image(std::size_t target_gen) const {
    ExteriorClass<R> out(source_);
    for (std::size_t s = 0; s < source_.generator_count(); ++s) {
      out.accumulate(static_cast<MonomialKey>(1U << s), entry(target_gen, s));
    }
    return out;
  }

  friend bool operator==(const MorphismH1& a, const MorphismH1& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
  }

 private:
  Space source_;
  Space target_;
  std::vector<R> matrix_;
};

/// outer ∘ inner; its pullback is inner* ∘ outer*.
template <class R>
MorphismH1<R> compose(const MorphismH1<R>& outer, const MorphismH1<R>& inner) {
  if (!(inner.target() == outer.source())) {
    throw std::invalid_argument("cannot compose: " + inner.target().name() + " vs " + outer.source().name());
  }
  const std::size_t nt = outer.target().generator_count();
  const std::size_t nm = outer.source().generator_count();
  const std::size_t ns = inner.source().generator_count();
  std::vector<R> m(nt * ns, R(0L));
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t mid = 0; mid < nm; ++mid) {
      const R& a = outer.entry(t, mid);
      if (thetacalc::is_zero(a)) continue;
      for (std::size_t s = 0; s < ns; ++s) {
        m[t * ns + s] += a * inner.entry(mid, s);
      }
    }
  }
  return MorphismH1<R>(inner.source(), outer.target(), std::move(m));
}

/// c·φ on H^1 (for c = -1 this is the pullback along -φ).
template <class R>
MorphismH1<R> scale(const MorphismH1<R>& phi, const R& c) {
  const std::size_t ns = phi.source().generator_count();
  const std::size_t nt = phi.target().generator_count();
  std::vector<R> m(nt * ns, R(0L));
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t s = 0; s < ns; ++s) m[t * ns + s] = R(c * phi.entry(t, s));
  }
  return MorphismH1<R>(phi.source(), phi.target(), std::move(m));
}

/// f × g : X1 × X2 -> Y1 × Y2.
template <class R>
MorphismH1<R> product(const MorphismH1<R>& f, const MorphismH1<R>& g) {
  const Space source = product(f.source(), g.source());
  const Space target = product(f.target(), g.target());
  const std::size_t ns = source.generator_count();
  const std::size_t fs = f.source().generator_count();
  const std::size_t ft = f.target().generator_count();
  std::vector<R> m(target.generator_count() * ns, R(0L));
  for (std::size_t t = 0; t < ft; ++t) {
    for (std::size_t s = 0; s < fs; ++s) m[t * ns + s] = f.entry(t, s);
  }
  for (std::size_t t = 0; t < g.target().generator_count(); ++t) {
    for (std::size_t s = 0; s < g.source().generator_count(); ++s) m[(ft + t) * ns + fs + s] = g.entry(t, s);
  }
  return MorphismH1<R>(source, target, std::move(m));
}

/// Projection of `space` onto the listed factors, in the listed order.
template <class R>
MorphismH1<R> projection(const Space& space, const std::vector<std::size_t>& factors) {
  std::vector<FactorKind> kinds;
  for (std::size_t f : factors) kinds.push_back(space.factor(f));
  const Space target(std::move(kinds));
  const std::size_t ns = space.generator_count();
  std::vector<R> m(target.generator_count() * ns, R(0L));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (std::size_t g = 0; g < Space::kGeneratorsPerFactor; ++g) {
      m[target.generator_index(i, g) * ns + space.generator_index(factors[i], g)] = R(1L);
    }
  }
  return MorphismH1<R>(space, target, std::move(m));
}

template <class R>
ExteriorClass<R> pullback(const MorphismH1<R>& phi, const ExteriorClass<R>& c) {
  if (!(c.space() == phi.target())) {
    throw std::invalid_argument("pullback: class lives on " + c.space().name() + ", morphism target is " +
                                phi.target().name());
  }
  std::vector<ExteriorClass<R>> gen_images;
  gen_images.reserve(phi.target().generator_count());
  for (std::size_t t = 0; t < phi.target().generator_count(); ++t) gen_images.push_back(phi.generator_image(t));

  // image(key) = image(key minus its highest generator) ∧ image(highest generator)
  std::unordered_map<MonomialKey, ExteriorClass<R>> cache;
  cache.emplace(MonomialKey{0}, ExteriorClass<R>::constant(phi.source(), R(1L)));
  auto image_of = [&](auto&& self, MonomialKey key) -> const ExteriorClass<R>& {
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const int top = 31 - __builtin_clz(key);
    const MonomialKey rest = static_cast<MonomialKey>(key & ~(1U << top));
    ExteriorClass<R> img = wedge(self(self, rest), gen_images[static_cast<std::size_t>(top)]);
    return cache.emplace(key, std::move(img)).first->second;
  };

  ExteriorClass<R> out(phi.source());
  for (const auto& [key, coeff] : c.terms()) {
    for (const auto& [k, v] : image_of(image_of, key).terms()) {
      out.accumulate(k, R(v * coeff));
    }
  }
  return out;
}

/// Integration along the fibers of the projection forgetting `fiber_factor`.
/// Keeps the terms containing the whole fiber volume, moves the fiber
/// generators to the front of the monomial and strips them.
template <class R>
ExteriorClass<R> fiber_integrate(const ExteriorClass<R>& c, std::size_t fiber_factor) {
  const Space& space = c.space();
  const MonomialKey fiber = space.factor_mask(fiber_factor);  // throws if absent
  const unsigned shift = static_cast<unsigned>(fiber_factor * Space::kGeneratorsPerFactor);
  const MonomialKey below = static_cast<MonomialKey>((1U << shift) - 1U);

  ExteriorClass<R> out(space.without_factor(fiber_factor));
  for (const auto& [key, coeff] : c.terms()) {
    if ((key & fiber) != fiber) continue;
    const MonomialKey rest = static_cast<MonomialKey>(key & ~fiber);
    // Each fiber generator passes the base generators in front of it.
    const int swaps = static_cast<int>(Space::kGeneratorsPerFactor) * __builtin_popcount(rest & below);
    const MonomialKey compressed =
        static_cast<MonomialKey>((rest & below) | ((rest & ~below) >> Space::kGeneratorsPerFactor));
    out.accumulate(compressed, (swaps & 1) ? R(-coeff) : coeff);
  }
  return out;
}

/// Coefficient of the top monomial; each factor's f1 f2 f3 f4 has volume 1.
template <class R>
R integrate(const ExteriorClass<R>& c) {
  return c.coefficient(c.space().top_mask());
}

/// exp of a nilpotent even class: 1 + c + c^2/2! + ...
template <class R>
ExteriorClass<R> exp_even(const ExteriorClass<R>& c) {
  for (const auto& [key, coeff] : c.terms()) {
    const int deg = degree_of(key);
    if (deg == 0 || deg % 2 != 0) {
      throw std::invalid_argument("exp_even needs even classes without constant term; found degree " +
                                  std::to_string(deg));
    }
  }
  ExteriorClass<R> result = ExteriorClass<R>::constant(c.space(), R(1L));
  ExteriorClass<R> power = result;
  for (long j = 1; !c.is_zero(); ++j) {
    power = wedge(power, c);
    if (power.is_zero()) break;
    power *= R(Rational(1, j));
    result += power;
  }
  return result;
}

}  // namespace thetacalc::excoh
