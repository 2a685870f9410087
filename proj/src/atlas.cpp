#include "thetacalc/atlas.hpp"

namespace thetacalc::abvar {

Atlas::Atlas() {
  using K = FactorKind;
  const std::vector<std::vector<K>> standard = {
      {K::Surface},
      {K::Dual},
      {K::Surface, K::Surface},
      {K::Surface, K::Dual},
      {K::Dual, K::Surface},
      {K::Dual, K::Dual},
      {K::Surface, K::Surface, K::Dual},
      {K::Surface, K::Dual, K::Dual},
  };
  for (const auto& factors : standard) registry_.emplace(factors, Space(factors));
}

const Atlas& Atlas::standard() {
  static const Atlas atlas;
  return atlas;
}

const Space& Atlas::space(const std::vector<FactorKind>& factors) const {
  const auto it = registry_.find(factors);
  if (it == registry_.end()) throw std::out_of_range("space " + Space(factors).name() + " is not in the atlas");
  return it->second;
}

}  // namespace thetacalc::abvar
