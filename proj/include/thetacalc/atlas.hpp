#pragma once

// Named spaces, classes and homomorphisms for an abelian surface A and its
// dual Â, written in a basis f1..f4 of H_1 that is symplectic for the
// polarization: λ = d·f1v∧f2v + e·f3v∧f4v, c1(P) = Σ fiv∧fi.

#include <array>
#include <map>
#include <vector>

#include "thetacalc/exterior.hpp"

namespace thetacalc::abvar {

using excoh::ExteriorClass;
using excoh::FactorKind;
using excoh::MonomialKey;
using excoh::MorphismH1;
using excoh::Space;

/// Registry of the standard product spaces, keyed by factor sequence.
class Atlas {
 public:
  static const Atlas& standard();

  /// Registered space with these factors; std::out_of_range if unknown.
  const Space& space(const std::vector<FactorKind>& factors) const;

  const Space& surface() const { return space({FactorKind::Surface}); }
  const Space& dual() const { return space({FactorKind::Dual}); }
  const Space& surface_surface() const { return space({FactorKind::Surface, FactorKind::Surface}); }
  const Space& surface_dual() const { return space({FactorKind::Surface, FactorKind::Dual}); }
  const Space& dual_surface() const { return space({FactorKind::Dual, FactorKind::Surface}); }
  const Space& dual_dual() const { return space({FactorKind::Dual, FactorKind::Dual}); }
  const Space& surface_surface_dual() const {
    return space({FactorKind::Surface, FactorKind::Surface, FactorKind::Dual});
  }
  const Space& surface_dual_dual() const { return space({FactorKind::Surface, FactorKind::Dual, FactorKind::Dual}); }

 private:
  Atlas();
  std::map<std::vector<FactorKind>, Space> registry_;
};

/// λ = d·g1∧g2 + e·g3∧g4 in a symplectic basis; χ(Λ) = de.
template <class R>
struct PolarizationClass {
  R d;
  R e;

  R euler_characteristic() const { return R(d * e); }
};

enum class Direction { SurfaceToDual, DualToSurface };

/// Coordinates of a 2-form on one factor, in the order 12, 13, 14, 23, 24, 34.
template <class R>
using TwoFormCoords = std::array<R, 6>;

inline constexpr std::array<std::pair<int, int>, 6> kTwoFormPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline MonomialKey local_key(const Space& space, std::size_t factor, std::initializer_list<int> locals) {
  MonomialKey key = 0;
  for (int g : locals) key |= static_cast<MonomialKey>(1U << space.generator_index(factor, static_cast<std::size_t>(g)));
  return key;
}

template <class R>
ExteriorClass<R> two_form(const Space& space, std::size_t factor, const TwoFormCoords<R>& coords) {
  ExteriorClass<R> out(space);
  for (std::size_t i = 0; i < kTwoFormPairs.size(); ++i) {
    const auto [p, q] = kTwoFormPairs[i];
    out.accumulate(local_key(space, factor, {p, q}), coords[i]);
  }
  return out;
}

template <class R>
ExteriorClass<R> polarization_class(const PolarizationClass<R>& pol, const Space& space, std::size_t factor) {
  return two_form<R>(space, factor, {pol.d, R(0L), R(0L), R(0L), R(0L), pol.e});
}

/// ω: the volume class of one factor.
template <class R>
ExteriorClass<R> point_class(const Space& space, std::size_t factor) {
  return ExteriorClass<R>::monomial(space, space.factor_mask(factor), R(1L));
}

/// Σ fiv(surface factor) ∧ fi(dual factor). On Â × A (dual factor listed
/// first) this is the transposed Poincaré class.
template <class R>
ExteriorClass<R> poincare_class(const Space& space, std::size_t surface_factor, std::size_t dual_factor) {
  if (space.factor(surface_factor) != FactorKind::Surface || space.factor(dual_factor) != FactorKind::Dual) {
    throw std::invalid_argument("poincare_class needs a surface factor and a dual factor of " + space.name());
  }
  ExteriorClass<R> out(space);
  for (std::size_t i = 0; i < Space::kGeneratorsPerFactor; ++i) {
    out += wedge(ExteriorClass<R>::generator(space, space.generator_index(surface_factor, i)),
                 ExteriorClass<R>::generator(space, space.generator_index(dual_factor, i)));
  }
  return out;
}

/// p_factor^* c for a class c on a single-factor space.
template <class R>
ExteriorClass<R> pull_from_factor(const ExteriorClass<R>& c, const Space& target, std::size_t factor) {
  if (c.space().factor_count() != 1 || c.space().factor(0) != target.factor(factor)) {
    throw std::invalid_argument("pull_from_factor: " + c.space().name() + " is not factor " +
                                std::to_string(factor) + " of " + target.name());
  }
  return excoh::pullback(excoh::projection<R>(target, {factor}), c);
}

/// Homomorphism X -> X̂ induced by a 2-form L on the single-factor space X:
/// the pullback of the dual generator x̂_j is ε·ι_{x_j}(L), with ε = +1 on A
/// and ε = -1 on Â (the Poincaré class of Â × A is -Σ fi∧fiv). With this
/// sign m*L = p1*L + p2*L + (1 × Φ_L)* c1(P) holds in both directions.
template <class R>
MorphismH1<R> contraction_map(const ExteriorClass<R>& form) {
  const Space& source = form.space();
  if (source.factor_count() != 1 || !form.is_homogeneous_of_degree(2)) {
    throw std::invalid_argument("contraction_map needs a 2-form on a single factor");
  }
  const Space target({excoh::dual_of(source.factor(0))});
  const R eps = source.factor(0) == FactorKind::Surface ? R(1L) : R(-1L);
  std::vector<R> m(16, R(0L));
  for (const auto& [key, coeff] : form.terms()) {
    const int lo = __builtin_ctz(key);
    const int hi = 31 - __builtin_clz(key);
    // ι_{x_lo}(x_lo x_hi) = x_hi, ι_{x_hi}(x_lo x_hi) = -x_lo
    m[static_cast<std::size_t>(lo * 4 + hi)] += eps * coeff;
    m[static_cast<std::size_t>(hi * 4 + lo)] -= eps * coeff;
  }
  return MorphismH1<R>(source, target, std::move(m));
}

/// Cohomological Fourier–Mukai transform p2!(p1*c · exp(c1(P))) of an even
/// class on A (to Â) or on Â (to A, with the transposed Poincaré class).
template <class R>
ExteriorClass<R> fm_transform(const ExteriorClass<R>& c) {
  const Space& source = c.space();
  if (source.factor_count() != 1) throw std::invalid_argument("fm_transform needs a class on A or Ahat");
  for (const auto& [key, coeff] : c.terms()) {
    if (excoh::degree_of(key) % 2 != 0) throw std::invalid_argument("fm_transform needs an even class");
  }
  const FactorKind kind = source.factor(0);
  const Space pair({kind, excoh::dual_of(kind)});
  const ExteriorClass<R> poincare =
      kind == FactorKind::Surface ? poincare_class<R>(pair, 0, 1) : poincare_class<R>(pair, 1, 0);
  return excoh::fiber_integrate(wedge(pull_from_factor(c, pair, 0), excoh::exp_even(poincare)), 0);
}

/// λ̂: the degree-2 part of the transform of a 2-form.
template <class R>
ExteriorClass<R> hat(const ExteriorClass<R>& form) {
  return fm_transform(form).homogeneous_part(2);
}

/// Closed coordinate form of hat(): g_i∧g_j ↦ -sgn(i,j,k,l)·ĝ_k∧ĝ_l with
/// {k<l} the complementary pair.
template <class R>
ExteriorClass<R> hat_closed_form(const ExteriorClass<R>& form) {
  const Space& source = form.space();
  if (source.factor_count() != 1 || !form.is_homogeneous_of_degree(2)) {
    throw std::invalid_argument("hat_closed_form needs a 2-form on a single factor");
  }
  const Space target({excoh::dual_of(source.factor(0))});
  ExteriorClass<R> out(target);
  for (const auto& [key, coeff] : form.terms()) {
    const auto comp = static_cast<MonomialKey>(0xF & ~key);
    const int sign = excoh::merge_sign(key, comp);  // sgn of (i, j, k, l)
    out.accumulate(comp, sign > 0 ? R(-coeff) : coeff);
  }
  return out;
}

template <class R>
MorphismH1<R> make_phi(const PolarizationClass<R>& pol, Direction direction) {
  if (thetacalc::is_zero(pol.euler_characteristic())) {
    throw std::domain_error("degenerate polarization: de = 0");
  }
  const Atlas& atlas = Atlas::standard();
  const ExteriorClass<R> lambda = polarization_class(pol, atlas.surface(), 0);
  if (direction == Direction::SurfaceToDual) return contraction_map(lambda);
  return contraction_map(hat(lambda));
}

/// Map source -> single factor `kind` whose pullback sends each generator g
/// to Σ_f weight_f · g(factor f). Factors with weight 0 are ignored; the
/// others must have kind `kind`.
template <class R>
MorphismH1<R> weighted_sum_map(const Space& source, FactorKind kind, const std::vector<R>& weights) {
  if (weights.size() != source.factor_count()) throw std::invalid_argument("one weight per factor expected");
  const Space target({kind});
  const std::size_t ns = source.generator_count();
  std::vector<R> m(4 * ns, R(0L));
  for (std::size_t f = 0; f < weights.size(); ++f) {
    if (thetacalc::is_zero(weights[f])) continue;
    if (source.factor(f) != kind) throw std::invalid_argument("weighted_sum_map: factor kind mismatch");
    for (std::size_t g = 0; g < 4; ++g) m[g * ns + source.generator_index(f, g)] = weights[f];
  }
  return MorphismH1<R>(source, target, std::move(m));
}

/// m_r : A × A -> A, (a, b) -> a + r·b. r = 1 is the addition map m.
template <class R>
MorphismH1<R> make_addition(const R& r_scale) {
  return weighted_sum_map<R>(Atlas::standard().surface_surface(), FactorKind::Surface, {R(1L), r_scale});
}

/// f = m ∘ (1 × Φ_Λ̂) : A × Â -> A for a 2-form λ on A. `phi_sign` scales
/// Φ_Λ̂ and exists only to build deliberately wrong conventions.
template <class R>
MorphismH1<R> twisted_addition(const ExteriorClass<R>& lambda, const R& phi_sign = R(1L)) {
  const MorphismH1<R> phi_hat = excoh::scale(contraction_map(hat(lambda)), phi_sign);
  const MorphismH1<R> one_times_phi = excoh::product(MorphismH1<R>::identity(Atlas::standard().surface()), phi_hat);
  return excoh::compose(make_addition<R>(R(1L)), one_times_phi);
}

/// r + λ + χ·ω on the given single-factor space.
template <class R>
ExteriorClass<R> mukai_class(const R& rank, const ExteriorClass<R>& c1, const R& chi) {
  const Space& space = c1.space();
  ExteriorClass<R> out = ExteriorClass<R>::constant(space, rank);
  out += c1;
  out += point_class<R>(space, 0) * chi;
  return out;
}

/// Mukai pairing ∫(x2·y2 - x0·y4 - x4·y0) of even classes on one factor.
template <class R>
R mukai_pairing(const ExteriorClass<R>& x, const ExteriorClass<R>& y) {
  x.require_same_space(y);
  const MonomialKey top = x.space().top_mask();
  R out = excoh::integrate(wedge(x.homogeneous_part(2), y.homogeneous_part(2)));
  out -= x.coefficient(0) * y.coefficient(top);
  out -= x.coefficient(top) * y.coefficient(0);
  return out;
}

}  // namespace thetacalc::abvar
