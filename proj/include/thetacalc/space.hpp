#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace thetacalc::excoh {

/// A real 4-torus factor: the surface A (generators f1v..f4v, the dual basis
/// vectors) or its dual Â (generators f1..f4).
enum class FactorKind : std::uint8_t { Surface, Dual };

FactorKind dual_of(FactorKind kind);

/// Bit i set <=> generator i occurs in the monomial, in the space's listed order.
using MonomialKey = std::uint16_t;

/// Ordered product of torus factors. Generators are numbered factor by
/// factor, left factor first, four per factor.
class Space {
 public:
  static constexpr std::size_t kGeneratorsPerFactor = 4;
  static constexpr std::size_t kMaxFactors = 4;

  Space() = default;
  explicit Space(std::vector<FactorKind> factors);

  std::size_t factor_count() const { return factors_.size(); }
  std::size_t generator_count() const { return factors_.size() * kGeneratorsPerFactor; }
  FactorKind factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<FactorKind>& factors() const { return factors_; }

  std::size_t generator_index(std::size_t factor, std::size_t local) const;
  std::size_t factor_of_generator(std::size_t index) const { return index / kGeneratorsPerFactor; }
  MonomialKey factor_mask(std::size_t factor) const;
  MonomialKey top_mask() const;

  /// Unique display name, e.g. "f2v" on a single A factor or "f2v@1" when
  /// the factor kind repeats.
  std::string generator_name(std::size_t index) const;
  /// e.g. "A x Ahat".
  std::string name() const;

  Space without_factor(std::size_t factor) const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  std::vector<FactorKind> factors_;
};

Space product(const Space& left, const Space& right);

inline int degree_of(MonomialKey key) { return __builtin_popcount(key); }

}  // namespace thetacalc::excoh
