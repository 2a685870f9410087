#include "thetacalc/formulas.hpp"

#include <stdexcept>

namespace thetacalc::formulas {

namespace {

unsigned long to_index(const Integer& b, const char* what) {
  if (sgn(b) < 0 || !b.fits_ulong_p()) {
    throw std::domain_error(std::string(what) + " must be a nonnegative machine-size integer, got " + b.get_str());
  }
  return b.get_ui();
}

ChiResult make_result(std::string id, Rational value, std::map<std::string, std::string> inputs) {
  ChiResult out;
  out.formula_id = std::move(id);
  value.canonicalize();
  out.integral = is_integral(value);
  out.value = std::move(value);
  out.inputs = std::move(inputs);
  return out;
}

std::map<std::string, std::string> pair_inputs(const MukaiVector& v, const MukaiVector& w, const Integer& dv,
                                               const Integer& dw) {
  return {{"v", mukai::to_string(v)}, {"w", mukai::to_string(w)}, {"n", v.n().get_str()},
          {"d_v", dv.get_str()},      {"d_w", dw.get_str()}};
}

void require_orthogonal(const MukaiVector& v, const MukaiVector& w) {
  const Integer chi = mukai::euler_chi_tensor(v, w);
  if (chi != 0) {
    throw std::domain_error("v and w are not orthogonal: chi(v (x) w) = " + chi.get_str() + " (must be 0)");
  }
}

// ½·c1²/(d_v+d_w)·C(d_v+d_w, d_v) with c1 = c1(x⊗y), and the check of a
// degenerate branch against the number of points of the zero-dimensional
// moduli space.
ChiResult theta_shape(std::string id, const MukaiVector& v, const MukaiVector& w, const MukaiVector& x,
                      const MukaiVector& y, const std::string& point_label_v, const Integer& points_v,
                      const std::string& point_label_w, const Integer& points_w) {
  require_orthogonal(v, w);
  const Integer dv = mukai::dv(v);
  const Integer dw = mukai::dv(w);
  if (sgn(dv) < 0 || sgn(dw) < 0) {
    throw std::domain_error("empty moduli space: d_v = " + dv.get_str() + ", d_w = " + dw.get_str());
  }
  if (dv + dw == 0) throw std::domain_error("d_v + d_w = 0: the formula is undefined");

  const Integer c1_sq = mukai::c1_tensor(x, y).self_intersection();
  const Integer total = dv + dw;
  Rational value = Rational(c1_sq) / 2 / Rational(total) * Rational(binom(total, to_index(dv, "d_v")));
  auto inputs = pair_inputs(v, w, dv, dw);
  inputs["c1_squared"] = c1_sq.get_str();
  ChiResult out = make_result(std::move(id), std::move(value), std::move(inputs));

  if (dv == 0 || dw == 0) {
    out.branch = "special";
    out.cross_check = dv == 0 ? point_label_v : point_label_w;
    out.cross_value = Rational(dv == 0 ? points_v : points_w);
    if (*out.cross_value != out.value) {
      throw std::logic_error(out.formula_id + ": generic value " + to_string(out.value) + " disagrees with " +
                             *out.cross_check + " = " + to_string(*out.cross_value));
    }
  }
  return out;
}

Integer kummer_top(const KummerClass& kc) { return kc.chiD - (kc.r * kc.r - 1) * kc.n - 1; }

}  // namespace

Integer binom(const Integer& a, unsigned long b) {
  Integer out;
  mpz_bin_ui(out.get_mpz_t(), a.get_mpz_t(), b);  // GMP extends to negative a polynomially
  return out;
}

ChiResult chi_fixed_det(const MukaiVector& v, const MukaiVector& w) {
  return theta_shape("chi_fixed_det", v, w, v, w, "r^2", v.r * v.r, "r_w^2", w.r * w.r);
}

ChiResult chi_fixed_fm_det(const MukaiVector& v, const MukaiVector& w) {
  return theta_shape("chi_fixed_fm_det", v, w, mukai::fm_vector(v), mukai::fm_vector(w), "chi^2", v.chi * v.chi,
                     "chi_w^2", w.chi * w.chi);
}

ChiResult chi_albanese_fiber(const Integer& dv, const Integer& dw) {
  if (dv < 1) throw std::domain_error("chi_albanese_fiber needs d_v >= 1, got " + dv.get_str());
  if (dw < 0) throw std::domain_error("chi_albanese_fiber needs d_w >= 0, got " + dw.get_str());
  const Integer total = dv + dw;
  Rational value = Rational(dv * dv) / Rational(total) * Rational(binom(total, to_index(dv, "d_v")));
  return make_result("chi_albanese_fiber", std::move(value), {{"d_v", dv.get_str()}, {"d_w", dw.get_str()}});
}

ChiResult chi_kummer_lemma(const KummerClass& kc) {
  if (kc.n < 1) throw std::domain_error("chi_kummer_lemma needs n >= 1, got " + kc.n.get_str());
  const Integer value = kc.n * binom(kummer_top(kc), to_index(kc.n - 1, "n - 1"));
  return make_result("chi_kummer_lemma", Rational(value),
                     {{"n", kc.n.get_str()}, {"chiD", kc.chiD.get_str()}, {"r", kc.r.get_str()}});
}

ChiResult chi_hilbert_egl(const KummerClass& kc) {
  if (kc.n < 1) throw std::domain_error("chi_hilbert_egl needs n >= 1, got " + kc.n.get_str());
  Rational value = Rational(kc.chiD) / Rational(kc.n) * Rational(binom(kummer_top(kc), to_index(kc.n - 1, "n - 1")));
  return make_result("chi_hilbert_egl", std::move(value),
                     {{"n", kc.n.get_str()}, {"chiD", kc.chiD.get_str()}, {"r", kc.r.get_str()}});
}

ChiResult chi_k3_reference(const Integer& dv, const Integer& dw) {
  const Integer value = binom(dv + dw + 2, to_index(dv + 1, "d_v + 1"));
  return make_result("chi_k3_reference", Rational(value), {{"d_v", dv.get_str()}, {"d_w", dw.get_str()}});
}

ChiResult chi_arbitrary_det(const MukaiVector& v, const MukaiVector& w) {
  require_orthogonal(v, w);
  const Integer dv = mukai::dv(v);
  const Integer dw = mukai::dv(w);
  if (dw != 0) {
    ChiResult out = chi_albanese_fiber(dv, dw);
    out.formula_id = "chi_arbitrary_det";
    out.inputs = pair_inputs(v, w, dv, dw);
    return out;
  }

  if (sgn(dv) < 0) throw std::domain_error("empty moduli space: d_v = " + dv.get_str());
  ChiResult out = make_result("chi_arbitrary_det", Rational(dv), pair_inputs(v, w, dv, dw));
  out.branch = "special";
  if (w.chi != 0) {
    // Pull back along the isogeny A -> M_w of degree χ_w²:
    // c1 = -χ_w·λ_v - χ_v·λ_w, so χ = n(χ_w k_v + χ_v k_w)²/χ_w².
    const Integer s = w.chi * v.k() + v.chi * w.k();
    out.cross_check = "isogeny";
    out.cross_value = Rational(v.n() * s * s) / Rational(w.chi * w.chi);
  } else if (dv >= 1) {
    out.cross_check = "albanese";
    out.cross_value = chi_albanese_fiber(dv, dw).value;
  }
  if (out.cross_value && *out.cross_value != out.value) {
    throw std::logic_error("chi_arbitrary_det: d_v = " + dv.get_str() + " disagrees with " + *out.cross_check +
                           " value " + to_string(*out.cross_value));
  }
  return out;
}

Integer bb_form(const KummerClass& kc) {
  if (kc.n < 3) {
    throw std::domain_error("the Beauville-Bogomolov bookkeeping needs n >= 3, got " + kc.n.get_str());
  }
  return 2 * kc.chiD - 2 * kc.n * kc.r * kc.r;
}

Integer chi_from_bb(const KummerClass& kc) {
  const Integer half = bb_form(kc) / 2;
  return kc.n * binom(half + kc.n - 1, to_index(kc.n - 1, "n - 1"));
}

}  // namespace thetacalc::formulas
