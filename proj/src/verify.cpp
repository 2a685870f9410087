#include "thetacalc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "identities.hpp"

namespace thetacalc::verify {

using detail::Context;
using detail::Elimination;
using detail::IdentityDef;
using detail::Residual;

namespace {

const IdentityDef& find_identity(const std::string& id) {
  for (const auto& def : detail::identity_table()) {
    if (def.id == id) return def;
  }
  throw std::invalid_argument("unknown identity '" + id + "'");
}

template <class R>
ResidualEntry to_entry(const Residual<R>& residual) {
  return ResidualEntry{residual.label, residual.value.to_string(), residual.value.is_zero()};
}

excoh::ExteriorClass<Poly> eliminate(const excoh::ExteriorClass<Poly>& c, const std::vector<Elimination>& steps) {
  excoh::ExteriorClass<Poly> out(c.space());
  for (const auto& [key, coeff] : c.terms()) {
    Poly p = coeff;
    for (const auto& step : steps) p = p.substitute_homogenized(step.var, step.numerator, step.denominator);
    out.accumulate(key, p);
  }
  return out;
}

IdentityReport run_symbolic(const IdentityDef& def, const std::map<Var, Rational>& params,
                            const VerifyOptions& options) {
  if (!def.symbolic) throw std::invalid_argument("identity '" + def.id + "' has no symbolic mode");
  const Context<Poly> ctx(params, options);
  std::vector<Elimination> steps;
  if (def.constraints) steps = def.constraints(ctx);
  for (const auto& step : steps) {
    if (params.count(step.var) != 0) {
      throw std::invalid_argument(std::string(var_name(step.var)) + " is eliminated in symbolic mode of '" + def.id +
                                  "' and cannot be fixed");
    }
    if (step.denominator.is_zero()) {
      throw std::domain_error("side condition of '" + def.id + "' is unsatisfiable: cannot solve for " +
                              std::string(var_name(step.var)));
    }
  }

  IdentityReport report;
  report.identity_id = def.id;
  report.mode = Mode::Symbolic;
  for (Var v : def.parameters) {
    const auto it = params.find(v);
    report.instantiation[std::string(var_name(v))] = it != params.end() ? thetacalc::to_string(it->second) : "symbolic";
  }
  for (const auto& step : steps) {
    report.instantiation[std::string(var_name(step.var))] =
        "(" + step.numerator.to_string() + ")/(" + step.denominator.to_string() + ")";
  }

  report.pass = true;
  for (const auto& residual : def.symbolic(ctx)) {
    const auto reduced = Residual<Poly>{residual.label, eliminate(residual.value, steps)};
    report.residuals.push_back(to_entry(reduced));
    report.pass = report.pass && reduced.value.is_zero();
  }
  return report;
}

IdentityReport run_numeric(const IdentityDef& def, const std::map<Var, Rational>& params,
                           const VerifyOptions& options, int trial) {
  for (Var v : def.parameters) {
    if (params.count(v) == 0) {
      throw std::invalid_argument("identity '" + def.id + "' needs a value for " + std::string(var_name(v)));
    }
  }
  if (def.constraints) {
    const Context<Poly> fixed(params, options);
    for (const auto& step : def.constraints(fixed)) {
      const Rational den = step.denominator.evaluate(params);
      const Rational defect = step.numerator.evaluate(params) - params.at(step.var) * den;
      if (is_zero(den) || !is_zero(defect)) {
        throw std::domain_error("side condition of '" + def.id + "' violated (" + std::string(var_name(step.var)) +
                                " is not (" + step.numerator.to_string() + ")/(" + step.denominator.to_string() + "))");
      }
    }
  }

  IdentityReport report;
  report.identity_id = def.id;
  report.mode = Mode::Numeric;
  report.trial = trial;
  for (Var v : def.parameters) report.instantiation[std::string(var_name(v))] = thetacalc::to_string(params.at(v));

  report.pass = true;
  for (const auto& residual : def.numeric(Context<Rational>(params, options))) {
    report.residuals.push_back(to_entry(residual));
    report.pass = report.pass && residual.value.is_zero();
  }
  return report;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::Symbolic ? "symbolic" : "numeric"; }

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  // Rejection keeps the draw unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return lo + static_cast<long>(x % span);
}

long Rng::nonzero(long lo, long hi) {
  for (;;) {
    const long x = uniform(lo, hi);
    if (x != 0) return x;
  }
}

std::uint64_t trial_seed(const std::string& identity_id, std::uint64_t seed, int trial) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : identity_id) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(h ^ splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(trial))));
}

std::vector<IdentityInfo> registry() {
  std::vector<IdentityInfo> out;
  for (const auto& def : detail::identity_table()) {
    out.push_back(IdentityInfo{def.id, def.statement, static_cast<bool>(def.symbolic)});
  }
  return out;
}

std::vector<std::string> resolve_selection(const std::vector<std::string>& selection) {
  std::vector<bool> chosen(detail::identity_table().size(), false);
  for (const auto& name : selection) {
    bool matched = false;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      const std::string& id = detail::identity_table()[i].id;
      if (id == name || id.rfind(name + "_", 0) == 0) {
        chosen[i] = true;
        matched = true;
      }
    }
    if (!matched) throw std::invalid_argument("unknown identity '" + name + "'");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i]) out.push_back(detail::identity_table()[i].id);
  }
  return out;
}

IdentityReport run_identity(const std::string& identity_id, const std::map<Var, Rational>& params, Mode mode,
                            const VerifyOptions& options) {
  const IdentityDef& def = find_identity(identity_id);
  return mode == Mode::Symbolic ? run_symbolic(def, params, options) : run_numeric(def, params, options, 0);
}

std::vector<IdentityReport> run_suite(const SuiteOptions& options) {
  if (options.trials < 0) throw std::invalid_argument("trials must be >= 0");
  std::vector<std::string> ids;
  if (options.only) {
    ids = resolve_selection(*options.only);
  } else {
    for (const auto& def : detail::identity_table()) ids.push_back(def.id);
  }

  struct Task {
    const IdentityDef* def;
    int trial;  // -1: symbolic
  };
  std::vector<Task> tasks;
  for (const auto& id : ids) {
    const IdentityDef& def = find_identity(id);
    if (def.symbolic) tasks.push_back({&def, -1});
    for (int t = 0; t < options.trials; ++t) tasks.push_back({&def, t});
  }
  // Symbolic runs are the slowest; start them first.
  std::stable_partition(tasks.begin(), tasks.end(), [](const Task& t) { return t.trial < 0; });

  std::vector<IdentityReport> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        const Task& task = tasks[i];
        if (task.trial < 0) {
          reports[i] = run_symbolic(*task.def, {}, options.verify);
        } else {
          Rng rng(trial_seed(task.def->id, options.seed, task.trial));
          reports[i] = run_numeric(*task.def, task.def->sample(rng), options.verify, task.trial);
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::sort(reports.begin(), reports.end(), [](const IdentityReport& a, const IdentityReport& b) {
    if (a.identity_id != b.identity_id) return a.identity_id < b.identity_id;
    if (a.mode != b.mode) return a.mode == Mode::Symbolic;
    return a.trial < b.trial;
  });
  return reports;
}

bool all_pass(const std::vector<IdentityReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const IdentityReport& r) { return r.pass; });
}

}  // namespace thetacalc::verify
