#include "thetacalc/space.hpp"

#include <algorithm>
#include <stdexcept>

namespace thetacalc::excoh {

FactorKind dual_of(FactorKind kind) {
  return kind == FactorKind::Surface ? FactorKind::Dual : FactorKind::Surface;
}

Space::Space(std::vector<FactorKind> factors) : factors_(std::move(factors)) {
  if (factors_.size() > kMaxFactors) {
    throw std::invalid_argument("space has more than " + std::to_string(kMaxFactors) + " factors");
  }
}

std::size_t Space::generator_index(std::size_t factor, std::size_t local) const {
  if (factor >= factors_.size() || local >= kGeneratorsPerFactor) {
    throw std::out_of_range("generator (" + std::to_string(factor) + ", " + std::to_string(local) +
                            ") outside " + name());
  }
  return factor * kGeneratorsPerFactor + local;
}

MonomialKey Space::factor_mask(std::size_t factor) const {
  if (factor >= factors_.size()) {
    throw std::out_of_range("factor " + std::to_string(factor) + " not present in " + name());
  }
  return static_cast<MonomialKey>(0xFU << (factor * kGeneratorsPerFactor));
}

MonomialKey Space::top_mask() const {
  return static_cast<MonomialKey>((1U << generator_count()) - 1U);
}

std::string Space::generator_name(std::size_t index) const {
  const std::size_t factor = factor_of_generator(index);
  const FactorKind kind = factors_.at(factor);
  std::string name = "f" + std::to_string(index % kGeneratorsPerFactor + 1);
  if (kind == FactorKind::Surface) name += "v";
  if (std::count(factors_.begin(), factors_.end(), kind) > 1) name += "@" + std::to_string(factor);
  return name;
}

std::string Space::name() const {
  if (factors_.empty()) return "pt";
  std::string out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0) out += " x ";
    out += factors_[i] == FactorKind::Surface ? "A" : "Ahat";
  }
  return out;
}

Space Space::without_factor(std::size_t factor) const {
  if (factor >= factors_.size()) {
    throw std::out_of_range("factor " + std::to_string(factor) + " not present in " + name());
  }
  std::vector<FactorKind> rest = factors_;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(factor));
  return Space(std::move(rest));
}

Space product(const Space& left, const Space& right) {
  std::vector<FactorKind> all = left.factors();
  all.insert(all.end(), right.factors().begin(), right.factors().end());
  return Space(std::move(all));
}

}  // namespace thetacalc::excoh
