#pragma once

#include <functional>
#include <map>
#include <string>
#include <type_traits>
#include <vector>

#include "thetacalc/exterior.hpp"
#include "thetacalc/verify.hpp"

namespace thetacalc::verify::detail {

using excoh::ExteriorClass;

/// Parameter source for one run. Numeric runs need every parameter bound;
/// symbolic runs turn unbound parameters into polynomial variables.
template <class R>
class Context {
 public:
  Context(std::map<Var, Rational> fixed, VerifyOptions options)
      : fixed_(std::move(fixed)), options_(options) {}

  R operator()(Var v) const {
    const auto it = fixed_.find(v);
    if (it != fixed_.end()) return R(it->second);
    if constexpr (std::is_same_v<R, Poly>) {
      return Poly::variable(v);
    } else {
      throw std::invalid_argument("missing numeric value for parameter " + std::string(var_name(v)));
    }
  }

  const std::map<Var, Rational>& fixed() const { return fixed_; }
  const VerifyOptions& options() const { return options_; }

 private:
  std::map<Var, Rational> fixed_;
  VerifyOptions options_;
};

template <class R>
struct Residual {
  std::string label;
  ExteriorClass<R> value;
};

/// var := numerator / denominator; also the side condition
/// numerator - var·denominator = 0 for numeric runs.
struct Elimination {
  Var var;
  Poly numerator;
  Poly denominator;
};

struct IdentityDef {
  std::string id;
  std::string statement;
  std::vector<Var> parameters;
  std::function<std::vector<Residual<Rational>>(const Context<Rational>&)> numeric;
  std::function<std::vector<Residual<Poly>>(const Context<Poly>&)> symbolic;  // empty: numeric only
  std::function<std::vector<Elimination>(const Context<Poly>&)> constraints;  // empty: none
  std::function<std::map<Var, Rational>(Rng&)> sample;
};

const std::vector<IdentityDef>& identity_table();

}  // namespace thetacalc::verify::detail
