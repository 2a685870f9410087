#pragma once

// Mechanical checks of the cohomological identities behind the theta
// Euler characteristic formulas. Each identity computes both sides with the
// exterior-algebra engine (or the closed formulas, for the assembly checks)
// and reports the exact difference.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "thetacalc/scalar.hpp"

namespace thetacalc::verify {

enum class Mode { Symbolic, Numeric };

std::string to_string(Mode mode);

struct ResidualEntry {
  std::string label;
  std::string value;  // "0" when the residual vanishes
  bool zero = false;
};

struct IdentityReport {
  std::string identity_id;
  Mode mode = Mode::Symbolic;
  int trial = -1;  // -1 for the symbolic run
  std::map<std::string, std::string> instantiation;
  std::vector<ResidualEntry> residuals;
  bool pass = false;
};

struct IdentityInfo {
  std::string id;
  std::string statement;
  bool symbolic = true;
};

/// Registered identities in registry order.
std::vector<IdentityInfo> registry();

/// Expands ids and family prefixes ("sec5" selects sec5_a, sec5_b, ...)
/// into registered ids, in registry order. Unknown names throw
/// std::invalid_argument.
std::vector<std::string> resolve_selection(const std::vector<std::string>& selection);

struct VerifyOptions {
  /// Negative control: flips the sign of Φ_Λ̂ everywhere it is used.
  bool corrupt_sign = false;
};

/// Runs one identity. In numeric mode every parameter must be given and
/// the side conditions must hold; in symbolic mode the given parameters
/// are fixed and the rest stay symbolic, with constrained ones eliminated.
/// Throws std::invalid_argument for unknown ids or missing parameters and
/// std::domain_error for unsatisfiable side conditions.
IdentityReport run_identity(const std::string& identity_id, const std::map<Var, Rational>& params, Mode mode,
                            const VerifyOptions& options = {});

struct SuiteOptions {
  std::uint64_t seed = 42;
  int trials = 200;
  /// Ids or family prefixes; nullopt selects every identity.
  std::optional<std::vector<std::string>> only;
  unsigned threads = 0;  // 0: hardware concurrency
  VerifyOptions verify;
};

/// Symbolic run of each selected identity (where defined) plus `trials`
/// seeded numeric runs, sorted by (id, mode, trial).
std::vector<IdentityReport> run_suite(const SuiteOptions& options);

bool all_pass(const std::vector<IdentityReport>& reports);

/// Deterministic integer source: mt19937_64 with a hand-written uniform
/// draw so that results do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  long uniform(long lo, long hi);
  long nonzero(long lo, long hi);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Seed of one numeric trial, derived from the suite seed and the id.
std::uint64_t trial_seed(const std::string& identity_id, std::uint64_t seed, int trial);

}  // namespace thetacalc::verify
