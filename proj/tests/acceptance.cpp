// Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "thetacalc/atlas.hpp"
#include "thetacalc/cli.hpp"
#include "thetacalc/formulas.hpp"
#include "thetacalc/mukai.hpp"
#include "thetacalc/verify.hpp"

using namespace thetacalc;
using mukai::make_vector;

namespace {

struct Check {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what;
    pass = pass && ok;
  }
};

using Q = excoh::ExteriorClass<Rational>;

std::string cli_output(std::vector<std::string> args) {
  args.insert(args.begin(), "thetacalc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return std::to_string(status) + "\n" + out.str();
}

Check ac1() {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  verify::SuiteOptions opts;
  opts.seed = 42;
  opts.trials = 200;
  const auto reports = verify::run_suite(opts);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (!r.pass) ++failed;
    for (const auto& res : r.residuals) c.expect(res.zero, r.identity_id + ": " + res.label);
  }
  c.expect(failed == 0, std::to_string(failed) + " failing reports");
  c.expect(verify::registry().size() == 22, "registry size");
  c.expect(seconds < 30.0, "runtime over 30 s");
  if (c.pass) {
    c.detail << verify::registry().size() << " identities, " << reports.size() << " reports, 0 failed, "
             << static_cast<long>(seconds * 1000) << " ms";
  }
  return c;
}

Check ac2() {
  Check c;
  for (long k : {3, 5, 7, 9}) {
    const auto r = formulas::chi_fixed_det(make_vector(1, 0, -1, 1), make_vector(2, k, 2, 1));
    c.expect(r.value == Rational(k * k), "k = " + std::to_string(k) + " gives " + to_string(r.value));
  }
  if (c.pass) c.detail << "k^2 for k in {3, 5, 7, 9}";
  return c;
}

Check ac3() {
  Check c;
  const auto v = make_vector(2, 1, 1, 2), w = make_vector(2, 1, -3, 2);
  const auto main = formulas::chi_fixed_det(v, w);
  c.expect(main.value == 4 && main.branch == "special", "chi_fixed_det = " + to_string(main.value));
  c.expect(main.cross_value && *main.cross_value == 4, "generic formula vs r^2");
  const auto two = formulas::chi_fixed_fm_det(v, w);
  c.expect(two.value == 1 && two.branch == "special", "chi_fixed_fm_det = " + to_string(two.value));
  c.expect(two.cross_value && *two.cross_value == 1, "generic formula vs chi^2");
  const auto three = formulas::chi_arbitrary_det(w, v);
  c.expect(mukai::dv(v) == 0 && three.value == mukai::dv(w), "chi_arbitrary_det with d_w = 0");
  if (c.pass) c.detail << "r^2 = 4, chi^2 = 1, d_v = " << mukai::dv(w);
  return c;
}

template <class F>
Check kummer_grid(F&& body) {
  Check c;
  long cases = 0;
  for (long n = 1; n <= 12; ++n) {
    for (long r = 0; r <= 3; ++r) {
      for (long chid = r * r * n + 1; chid <= r * r * n + 20; ++chid) {
        body(c, formulas::KummerClass{chid, r, n});
        ++cases;
      }
    }
  }
  if (c.pass) c.detail << cases << " cases";
  return c;
}

Check ac4() {
  return kummer_grid([](Check& c, const formulas::KummerClass& kc) {
    const auto lhs = formulas::chi_kummer_lemma(kc).value;
    const auto rhs = formulas::chi_albanese_fiber(kc.n, kc.chiD - kc.r * kc.r * kc.n).value;
    c.expect(lhs == rhs, "n=" + kc.n.get_str() + " r=" + kc.r.get_str() + " chiD=" + kc.chiD.get_str());
  });
}

Check ac5() {
  return kummer_grid([](Check& c, const formulas::KummerClass& kc) {
    const auto lhs = formulas::chi_hilbert_egl(kc).value;
    const Rational rhs = Rational(kc.chiD) / Rational(kc.n * kc.n) * formulas::chi_kummer_lemma(kc).value;
    c.expect(lhs == rhs, "n=" + kc.n.get_str() + " r=" + kc.r.get_str() + " chiD=" + kc.chiD.get_str());
  });
}

Check ac6() {
  Check c;
  long grid = 0;
  for (long n = 1; n <= 4; ++n) {
    for (long r = -10; r <= 10; ++r) {
      for (long k = -10; k <= 10; ++k) {
        for (long chi = -10; chi <= 10; ++chi) {
          const auto v = make_vector(r, k, chi, n);
          c.expect(mukai::fm_vector(v) == mukai::fm_vector_engine(v), "fm of " + mukai::to_string(v));
          ++grid;
        }
      }
    }
  }
  verify::Rng rng(20261015);
  for (int t = 0; t < 500; ++t) {
    const long n = rng.uniform(1, 4);
    const auto v = make_vector(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10), n);
    const auto w = make_vector(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10), n);
    const auto fv = mukai::fm_vector(v), fw = mukai::fm_vector(w);
    c.expect(mukai::mukai_pairing(fv, fw) == mukai::mukai_pairing(v, w), "pairing " + mukai::to_string(v));
    c.expect(mukai::dv(fv) == mukai::dv(v), "d-invariance " + mukai::to_string(v));
  }
  if (c.pass) c.detail << grid << " grid vectors, 500 random pairs";
  return c;
}

Check ac7() {
  Check c;
  const auto& atlas = abvar::Atlas::standard();
  const Q p = abvar::poincare_class<Rational>(atlas.surface_dual(), 0, 1);
  c.expect(excoh::integrate(excoh::wedge_all<Rational>({p, p, p, p})) / 24 == 1, "c1(P)^4/4! = 1");
  for (long d : {1, 2, -3, 7}) {
    for (long e : {1, -4, 5}) {
      const abvar::PolarizationClass<Rational> pol{Rational(d), Rational(e)};
      const Q lam = abvar::polarization_class(pol, atlas.surface(), 0);
      const Q lhat = abvar::fm_transform(lam);
      const Q expected = -(Q::monomial(atlas.dual(), 0b1100, Rational(d)) + Q::monomial(atlas.dual(), 0b0011, Rational(e)));
      c.expect(lhat == expected, "fm(lambda) for d=" + std::to_string(d) + " e=" + std::to_string(e));
      c.expect(excoh::integrate(wedge(lhat, lhat)) == excoh::integrate(wedge(lam, lam)), "lambda-hat^2 = lambda^2");
      const auto phi = abvar::make_phi(pol, abvar::Direction::SurfaceToDual);
      const auto phi_hat = abvar::make_phi(pol, abvar::Direction::DualToSurface);
      using M = excoh::MorphismH1<Rational>;
      c.expect(compose(phi, phi_hat) == excoh::scale(M::identity(atlas.dual()), Rational(-d * e)), "Phi o Phi-hat");
      c.expect(compose(phi_hat, phi) == excoh::scale(M::identity(atlas.surface()), Rational(-d * e)),
               "Phi-hat o Phi");
    }
  }
  if (c.pass) c.detail << "c1(P)^4/4! = 1, fm(lambda) = -(d f3f4 + e f1f2), lambda-hat^2 = lambda^2, -de id";
  return c;
}

Check ac8() {
  Check c;
  cli::EnumerateBounds bounds;
  bounds.n_values = {1, 2, 3};
  bounds.max_rank = 4;
  bounds.max_k = 4;
  bounds.max_chi = 6;
  const auto rows = cli::enumerate_pairs(bounds);
  const auto summary = cli::enumerate_summary(rows);
  const std::string count = summary["integrality_audit"]["nonintegral_count"];
  c.expect(count == "0", count + " non-integral generic values");
  c.expect(!rows.empty(), "no rows enumerated");
  if (c.pass) c.detail << rows.size() << " pairs, 0 non-integral generic values";
  return c;
}

Check ac9() {
  Check c;
  const std::vector<std::string> enumerate{"enumerate", "--n", "1", "2", "3", "--max-rank", "3",
                                           "--max-k", "3", "--max-chi", "4"};
  const std::vector<std::string> verify{"verify", "--all", "--seed", "42", "--trials", "25", "--json"};
  const std::string e1 = cli_output(enumerate), e2 = cli_output(enumerate);
  const std::string v1 = cli_output(verify), v2 = cli_output(verify);
  c.expect(e1 == e2, "enumerate output differs");
  c.expect(v1 == v2, "verify output differs");
  c.expect(e1.rfind("0\n", 0) == 0 && v1.rfind("0\n", 0) == 0, "nonzero exit status");
  if (c.pass) c.detail << "enumerate " << e1.size() << " bytes, verify " << v1.size() << " bytes, identical reruns";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"AC-1", ac1}, {"AC-2", ac2}, {"AC-3", ac3}, {"AC-4", ac4}, {"AC-5", ac5},
      {"AC-6", ac6}, {"AC-7", ac7}, {"AC-8", ac8}, {"AC-9", ac9},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Check c;
    try {
      c = run();
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail << "exception: " << e.what();
    }
    all = all && c.pass;
    std::cout << name << ' ' << (c.pass ? "PASS" : "FAIL") << "  " << c.detail.str() << std::endl;
  }
  return all ? 0 : 1;
}
