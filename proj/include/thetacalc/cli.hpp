#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "thetacalc/formulas.hpp"
#include "thetacalc/json_io.hpp"
#include "thetacalc/mukai.hpp"

namespace thetacalc::cli {

enum ExitCode { kSuccess = 0, kVerificationFailure = 1, kUsageError = 2 };

/// Entry point of the `thetacalc` tool; returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Notes on the sign conventions that the formulas do not fix.
std::vector<std::string> convention_notes();

enum class Theorem { Main, Two, Three, All };

Theorem parse_theorem(const std::string& name);

/// The `eval` document. Throws std::domain_error for non-orthogonal pairs.
io::Json eval_document(const mukai::MukaiVector& v, const mukai::MukaiVector& w, Theorem theorem);

io::Json kummer_document(const formulas::KummerClass& kc);

struct EnumerateBounds {
  std::vector<long> n_values{1};
  long max_rank = 1;
  long max_k = 1;
  long max_chi = 1;
};

struct PairRow {
  mukai::MukaiVector v;
  mukai::MukaiVector w;
  Integer dv;
  Integer dw;
  std::optional<Rational> chi_main;
  std::optional<Rational> chi_two;
  std::optional<Rational> chi_three;
  std::vector<std::string> flags;
  bool generic_nonintegral = false;
};

/// All ordered pairs of primitive positive vectors within the bounds with
/// χ(v⊗w) = 0, sorted by (n, v, w).
std::vector<PairRow> enumerate_pairs(const EnumerateBounds& bounds, unsigned threads = 0);

std::string rows_to_csv(const std::vector<PairRow>& rows);
io::Json rows_to_json(const EnumerateBounds& bounds, const std::vector<PairRow>& rows);
io::Json enumerate_summary(const std::vector<PairRow>& rows);

}  // namespace thetacalc::cli
