#include "thetacalc/scalar.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace thetacalc {

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string_view var_name(Var v) {
  static constexpr std::array<std::string_view, kVarCount> kNames = {
      "d",       "e",       "d'",      "e'",      "a",        "r",
      "r'",      "chi",     "chi'",    "n",       "k",        "k'",
      "alpha12", "alpha13", "alpha14", "alpha23", "alpha24",  "alpha34",
      "mu12",    "mu13",    "mu14",    "mu23",    "mu24",     "mu34"};
  return kNames.at(static_cast<std::size_t>(v));
}

Poly::Poly(long c) : Poly(Rational(c)) {}

Poly::Poly(const Integer& c) : Poly(Rational(c)) {}

Poly::Poly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Exponents{}, c);
}

Poly Poly::variable(Var v) {
  Poly p;
  Exponents mono{};
  mono[static_cast<std::size_t>(v)] = 1;
  p.terms_.emplace(mono, Rational(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponents{});
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw std::domain_error("polynomial is not constant: " + to_string());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

unsigned Poly::degree_in(Var v) const {
  unsigned deg = 0;
  for (const auto& [mono, coeff] : terms_) {
    deg = std::max<unsigned>(deg, mono[static_cast<std::size_t>(v)]);
  }
  return deg;
}

void Poly::add_term(const Exponents& mono, const Rational& coeff) {
  if (sgn(coeff) == 0) return;
  auto [it, inserted] = terms_.emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& other) {
  for (const auto& [mono, coeff] : other.terms_) add_term(mono, coeff);
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  for (const auto& [mono, coeff] : other.terms_) add_term(mono, -coeff);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  Rational prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      Poly::Exponents mono;
      for (std::size_t i = 0; i < kVarCount; ++i) {
        const unsigned sum = unsigned{ma[i]} + unsigned{mb[i]};
        if (sum > 255) throw std::overflow_error("polynomial exponent overflow");
        mono[i] = static_cast<std::uint8_t>(sum);
      }
      prod = ca * cb;
      out.add_term(mono, prod);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& other) { return *this = *this * other; }

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff *= c;
  return *this;
}

Poly& Poly::operator/=(const Rational& c) {
  if (sgn(c) == 0) throw std::domain_error("polynomial division by zero");
  for (auto& [mono, coeff] : terms_) coeff /= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [mono, coeff] : out.terms_) coeff = -coeff;
  return out;
}

Poly pow(const Poly& base, unsigned exponent) {
  Poly result(1L);
  Poly sq = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= sq;
    exponent >>= 1U;
    if (exponent > 0) sq *= sq;
  }
  return result;
}

Poly Poly::substitute_homogenized(Var v, const Poly& num, const Poly& den) const {
  const std::size_t idx = static_cast<std::size_t>(v);
  const unsigned top = degree_in(v);

  // Group coefficients by the power of v.
  std::vector<Poly> by_power(top + 1);
  for (const auto& [mono, coeff] : terms_) {
    Exponents stripped = mono;
    stripped[idx] = 0;
    by_power[mono[idx]].add_term(stripped, coeff);
  }

  std::vector<Poly> num_pows(top + 1), den_pows(top + 1);
  num_pows[0] = Poly(1L);
  den_pows[0] = Poly(1L);
  for (unsigned j = 1; j <= top; ++j) {
    num_pows[j] = num_pows[j - 1] * num;
    den_pows[j] = den_pows[j - 1] * den;
  }

  Poly out;
  for (unsigned j = 0; j <= top; ++j) {
    if (by_power[j].is_zero()) continue;
    out += by_power[j] * num_pows[j] * den_pows[top - j];
  }
  return out;
}

Rational Poly::evaluate(const std::map<Var, Rational>& values) const {
  Rational total = 0;
  for (const auto& [mono, coeff] : terms_) {
    Rational term = coeff;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (mono[i] == 0) continue;
      const auto it = values.find(static_cast<Var>(i));
      if (it == values.end()) {
        throw std::invalid_argument("no value for parameter " + std::string(var_name(static_cast<Var>(i))));
      }
      for (unsigned p = 0; p < mono[i]; ++p) term *= it->second;
    }
    total += term;
  }
  return total;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // Highest monomials first so leading terms read naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [mono, coeff] = *it;
    Rational mag = abs(coeff);
    const bool negative = sgn(coeff) < 0;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;

    std::string factors;
    for (std::size_t i = 0; i < kVarCount; ++i) {
      if (mono[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += var_name(static_cast<Var>(i));
      if (mono[i] > 1) factors += "^" + std::to_string(mono[i]);
    }
    if (factors.empty()) {
      out << thetacalc::to_string(mag);
    } else if (mag == 1) {
      out << factors;
    } else {
      out << thetacalc::to_string(mag) << "*" << factors;
    }
  }
  return out.str();
}

}  // namespace thetacalc
