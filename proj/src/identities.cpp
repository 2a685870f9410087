#include "identities.hpp"

#include <stdexcept>

#include "thetacalc/atlas.hpp"
#include "thetacalc/formulas.hpp"
#include "thetacalc/mukai.hpp"

namespace thetacalc::verify::detail {

namespace {

using abvar::Atlas;
using excoh::FactorKind;
using excoh::MorphismH1;
using excoh::Space;

template <class R>
using X = ExteriorClass<R>;

const Atlas& atlas() { return Atlas::standard(); }

Var offset(Var base, int i) { return static_cast<Var>(static_cast<int>(base) + i); }

std::vector<Var> with_form(std::vector<Var> vars, Var first) {
  for (int i = 0; i < 6; ++i) vars.push_back(offset(first, i));
  return vars;
}

template <class R>
R half(const R& x) {
  return R(x * Rational(1, 2));
}

/// d·g1g2 + e·g3g4 on factor `factor` of `space`.
template <class R>
X<R> diagonal_form(const Context<R>& c, Var d, Var e, const Space& space, std::size_t factor = 0) {
  return abvar::polarization_class(abvar::PolarizationClass<R>{c(d), c(e)}, space, factor);
}

template <class R>
X<R> lambda_on_a(const Context<R>& c) {
  return diagonal_form(c, Var::d, Var::e, atlas().surface());
}

/// Σ c(first+i)·(i-th basis 2-form).
template <class R>
X<R> general_form(const Context<R>& c, Var first, const Space& space, std::size_t factor = 0) {
  abvar::TwoFormCoords<R> coords;
  for (int i = 0; i < 6; ++i) coords[static_cast<std::size_t>(i)] = c(offset(first, i));
  return abvar::two_form<R>(space, factor, coords);
}

template <class R>
R integral_of_product(const X<R>& a, const X<R>& b) {
  return excoh::integrate(wedge(a, b));
}

template <class R>
X<R> scalar(const R& value) {
  return X<R>::constant(Space(), value);
}

template <class R>
X<R> push(const X<R>& c) {
  return excoh::fiber_integrate(c, 0);
}

template <class R>
X<R> omega(const Space& space, std::size_t factor = 0) {
  return abvar::point_class<R>(space, factor);
}

template <class R>
MorphismH1<R> phi_hat(const Context<R>& c, const X<R>& lambda) {
  const R sign = c.options().corrupt_sign ? R(-1L) : R(1L);
  return excoh::scale(abvar::contraction_map(abvar::hat(lambda)), sign);
}

template <class R>
MorphismH1<R> twisted_addition(const Context<R>& c, const X<R>& lambda) {
  return abvar::twisted_addition(lambda, c.options().corrupt_sign ? R(-1L) : R(1L));
}

template <class R>
X<R> exp_or_one(const X<R>& c) {
  return c.is_zero() ? X<R>::constant(c.space(), R(1L)) : excoh::exp_even(c);
}

// ---- sampling -------------------------------------------------------------

using Values = std::map<Var, Rational>;

void put(Values& values, Var v, long x) { values[v] = Rational(x); }

void put_form(Values& values, Rng& rng, Var first) {
  for (int i = 0; i < 6; ++i) put(values, offset(first, i), rng.uniform(-9, 9));
}

void put_polarization(Values& values, Rng& rng, Var d = Var::d, Var e = Var::e) {
  put(values, d, rng.nonzero(-9, 9));
  put(values, e, rng.nonzero(-9, 9));
}

Rational value_of(const Values& values, Var v) { return values.at(v); }

/// ∫λ∧λ' for λ = d·f12 + e·f34 and λ' with coordinates mu.
Rational lambda_dot_mu(const Values& values) {
  const Context<Rational> c(values, {});
  return integral_of_product(lambda_on_a(c), general_form(c, Var::mu12, atlas().surface()));
}

/// Draws r != 0, r', χ and the λ' coordinates until χ' = -(r'χ + λλ')/r is
/// an integer.
void put_orthogonal_pair(Values& values, Rng& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    put(values, Var::r, rng.nonzero(-9, 9));
    put(values, Var::r2, rng.uniform(-9, 9));
    put(values, Var::chi, rng.uniform(-9, 9));
    put_form(values, rng, Var::mu12);
    const Rational num = -(value_of(values, Var::r2) * value_of(values, Var::chi) + lambda_dot_mu(values));
    const Rational chi2 = num / value_of(values, Var::r);
    if (is_integral(chi2)) {
      values[Var::chi2] = chi2;
      return;
    }
  }
  throw std::runtime_error("sampler failed to find an orthogonal pair");
}

/// χ' := -(r'χ + λλ')/r, with λλ' built by the caller's closure.
template <class LambdaDot>
Elimination orthogonality(const Context<Poly>& c, LambdaDot lambda_dot) {
  return Elimination{Var::chi2, -(c(Var::r2) * c(Var::chi) + lambda_dot()), c(Var::r)};
}

// ---- engine identities ------------------------------------------------------

struct Sec4Table {
  static constexpr const char* kId = "sec4_table";
  static constexpr const char* kStatement =
      "on A x A -> A: p2!(m*l.p1*w) = l, p2!(m_r*l.p1*w) = r^2 l, p2!(m_r*w.m*l) = (r-1)^2 l, "
      "p2!(m_r*l.m*w) = (r-1)^2 l, p2!(m*w.p1*a) = a, p2!(m_r*w.p1*a) = r^2 a";
  static std::vector<Var> parameters() { return with_form({Var::d, Var::e, Var::r}, Var::alpha12); }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const Space& aa = atlas().surface_surface();
    const R r = c(Var::r);
    const X<R> lam = lambda_on_a(c);
    const X<R> alpha = general_form(c, Var::alpha12, atlas().surface());
    const X<R> w = omega<R>(atlas().surface());
    const auto m = abvar::make_addition<R>(R(1L));
    const auto mr = abvar::make_addition<R>(r);
    const X<R> m_lam = excoh::pullback(m, lam);
    const X<R> mr_lam = excoh::pullback(mr, lam);
    const X<R> m_w = excoh::pullback(m, w);
    const X<R> mr_w = excoh::pullback(mr, w);
    const X<R> p1_w = abvar::pull_from_factor(w, aa, 0);
    const X<R> p1_alpha = abvar::pull_from_factor(alpha, aa, 0);
    const R r_sq = R(r * r);
    const R r1_sq = R((r - R(1L)) * (r - R(1L)));
    return {
        {"p2!(m*l.p1*w) - l", push(wedge(m_lam, p1_w)) - lam},
        {"p2!(m_r*l.p1*w) - r^2 l", push(wedge(mr_lam, p1_w)) - lam * r_sq},
        {"p2!(m_r*w.m*l) - (r-1)^2 l", push(wedge(mr_w, m_lam)) - lam * r1_sq},
        {"p2!(m_r*l.m*w) - (r-1)^2 l", push(wedge(mr_lam, m_w)) - lam * r1_sq},
        {"p2!(m*w.p1*a) - a", push(wedge(m_w, p1_alpha)) - alpha},
        {"p2!(m_r*w.p1*a) - r^2 a", push(wedge(mr_w, p1_alpha)) - alpha * r_sq},
    };
  }

  static Values sample(Rng& rng) {
    Values v;
    put_polarization(v, rng);
    put(v, Var::r, rng.uniform(-9, 9));
    put_form(v, rng, Var::alpha12);
    return v;
  }
};

struct Sec4Lemma {
  static constexpr const char* kId = "sec4_lemma";
  static constexpr const char* kStatement =
      "p2!(m_r*l.m*l.p1*a) = (r-1)^2 (int a.l) l + r (int l^2) a for 2-forms l, a on A";
  static std::vector<Var> parameters() { return with_form({Var::d, Var::e, Var::r}, Var::alpha12); }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const Space& aa = atlas().surface_surface();
    const R r = c(Var::r);
    const X<R> lam = lambda_on_a(c);
    const X<R> alpha = general_form(c, Var::alpha12, atlas().surface());
    const X<R> lhs = push(excoh::wedge_all<R>({excoh::pullback(abvar::make_addition<R>(r), lam),
                                               excoh::pullback(abvar::make_addition<R>(R(1L)), lam),
                                               abvar::pull_from_factor(alpha, aa, 0)}));
    const R r1_sq = R((r - R(1L)) * (r - R(1L)));
    const X<R> rhs = lam * R(r1_sq * integral_of_product(alpha, lam)) + alpha * R(r * integral_of_product(lam, lam));
    return {{"lhs - rhs", lhs - rhs}};
  }

  static Values sample(Rng& rng) { return Sec4Table::sample(rng); }
};

struct MStar {
  static constexpr const char* kId = "mstar";
  static constexpr const char* kStatement =
      "m*l = p1*l + p2*l + (1 x Phi_L)*c1(P) on A x A, and the same on Ahat x Ahat for lhat";
  static std::vector<Var> parameters() { return {Var::d, Var::e}; }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const X<R> lam = lambda_on_a(c);
    const auto pol = abvar::PolarizationClass<R>{c(Var::d), c(Var::e)};
    const Space& aa = atlas().surface_surface();
    const X<R> poincare = abvar::poincare_class<R>(atlas().surface_dual(), 0, 1);
    const auto one_phi = excoh::product(MorphismH1<R>::identity(atlas().surface()),
                                        abvar::make_phi(pol, abvar::Direction::SurfaceToDual));
    const X<R> lhs = excoh::pullback(abvar::make_addition<R>(R(1L)), lam);
    const X<R> rhs = abvar::pull_from_factor(lam, aa, 0) + abvar::pull_from_factor(lam, aa, 1) +
                     excoh::pullback(one_phi, poincare);

    // Dual direction: Ahat x Ahat with the transposed Poincaré class on Ahat x A.
    const Space& hh = atlas().dual_dual();
    const X<R> lam_hat = abvar::hat(lam);
    const X<R> poincare_t = abvar::poincare_class<R>(atlas().dual_surface(), 1, 0);
    const auto one_phi_hat = excoh::product(MorphismH1<R>::identity(atlas().dual()), phi_hat(c, lam));
    const auto m_hat = abvar::weighted_sum_map<R>(hh, FactorKind::Dual, {R(1L), R(1L)});
    const X<R> lhs_hat = excoh::pullback(m_hat, lam_hat);
    const X<R> rhs_hat = abvar::pull_from_factor(lam_hat, hh, 0) + abvar::pull_from_factor(lam_hat, hh, 1) +
                         excoh::pullback(one_phi_hat, poincare_t);
    return {{"m*l - p1*l - p2*l - (1 x Phi_L)*c1(P)", lhs - rhs},
            {"m*lhat - p1*lhat - p2*lhat - (1 x Phi_Lhat)*c1(P^t)", lhs_hat - rhs_hat}};
  }

  static Values sample(Rng& rng) {
    Values v;
    put_polarization(v, rng);
    return v;
  }
};

struct Fmp {
  static constexpr const char* kId = "fmp";
  static constexpr const char* kStatement = "Phi_L*(p2!(p1*a.c1(P)^2/2)) = -(int a.l) l + (l^2/2) a";
  static std::vector<Var> parameters() { return with_form({Var::d, Var::e}, Var::alpha12); }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const X<R> lam = lambda_on_a(c);
    const X<R> alpha = general_form(c, Var::alpha12, atlas().surface());
    const Space& ah = atlas().surface_dual();
    const X<R> poincare = abvar::poincare_class<R>(ah, 0, 1);
    const X<R> p_sq_half = wedge(poincare, poincare) * R(Rational(1, 2));
    const X<R> pushed = push(wedge(abvar::pull_from_factor(alpha, ah, 0), p_sq_half));
    const auto phi = abvar::make_phi(abvar::PolarizationClass<R>{c(Var::d), c(Var::e)}, abvar::Direction::SurfaceToDual);
    const X<R> lhs = excoh::pullback(phi, pushed);
    const X<R> rhs = lam * R(-integral_of_product(alpha, lam)) + alpha * half(integral_of_product(lam, lam));
    return {{"lhs - rhs", lhs - rhs}};
  }

  static Values sample(Rng& rng) {
    Values v;
    put_polarization(v, rng);
    put_form(v, rng, Var::alpha12);
    return v;
  }
};

struct Phis {
  static constexpr const char* kId = "phis";
  static constexpr const char* kStatement = "Phi_L o Phi_Lhat = Phi_Lhat o Phi_L = -chi(L) id on H^1, chi(L) = de";
  static std::vector<Var> parameters() { return {Var::d, Var::e}; }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const auto pol = abvar::PolarizationClass<R>{c(Var::d), c(Var::e)};
    const auto phi = abvar::make_phi(pol, abvar::Direction::SurfaceToDual);
    const auto phi_h = phi_hat(c, lambda_on_a(c));
    const R minus_chi = R(-pol.euler_characteristic());
    std::vector<Residual<R>> out;
    const auto check = [&](const MorphismH1<R>& composite, const std::string& name) {
      for (std::size_t g = 0; g < composite.target().generator_count(); ++g) {
        out.push_back({name + " + de id on " + composite.target().generator_name(g),
                       composite.generator_image(g) - X<R>::generator(composite.source(), g) * minus_chi});
      }
    };
    check(excoh::compose(phi, phi_h), "Phi_L o Phi_Lhat");
    check(excoh::compose(phi_h, phi), "Phi_Lhat o Phi_L");
    return out;
  }

  static Values sample(Rng& rng) { return MStar::sample(rng); }
};

/// c1(L+) = -p2![m_r*v . m*exp(-l) . p1*(exp(l) w)]_(3) on A x A.
template <class R>
X<R> c1_l_plus(const Context<R>& c, const X<R>& lam, const X<R>& lam2) {
  const Space& aa = atlas().surface_surface();
  const R r = c(Var::r);
  const X<R> v = abvar::mukai_class(r, lam, c(Var::chi));
  const X<R> w = abvar::mukai_class(c(Var::r2), lam2, c(Var::chi2));
  const X<R> mr_v = excoh::pullback(abvar::make_addition<R>(r), v);
  const X<R> m_exp = excoh::pullback(abvar::make_addition<R>(R(1L)), exp_or_one(-lam));
  const X<R> twisted_w = abvar::pull_from_factor(wedge(exp_or_one(lam), w), aa, 0);
  const X<R> product = excoh::wedge_all<R>({mr_v, m_exp, twisted_w}, 6).homogeneous_part(6);
  return -push(product);
}

struct PropSplit {
  static constexpr const char* kId = "prop_split";
  static constexpr const char* kStatement =
      "-p2![m_r*v . m*e^(-l) . p1*(e^l w)]_(3) = d_v c1(v (x) w) when r chi' + l.l' + r' chi = 0; "
      "hence chi(L+) = d_v^2 c1(v (x) w)^2/2";
  static std::vector<Var> parameters() {
    return with_form({Var::d, Var::e, Var::r, Var::r2, Var::chi, Var::chi2}, Var::mu12);
  }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const X<R> lam = lambda_on_a(c);
    const X<R> lam2 = general_form(c, Var::mu12, atlas().surface());
    const X<R> c1 = c1_l_plus(c, lam, lam2);
    const R dv = R(half(integral_of_product(lam, lam)) - c(Var::r) * c(Var::chi));
    const X<R> c1_vw = lam2 * c(Var::r) + lam * c(Var::r2);
    return {{"c1(L+) - d_v c1(v (x) w)", c1 - c1_vw * dv},
            {"chi(L+) - d_v^2 c1(v (x) w)^2/2",
             scalar(R(half(integral_of_product(c1, c1)) - dv * dv * half(integral_of_product(c1_vw, c1_vw))))}};
  }

  static std::vector<Elimination> constraints(const Context<Poly>& c) {
    return {orthogonality(c, [&] { return integral_of_product(lambda_on_a(c), general_form(c, Var::mu12, atlas().surface())); })};
  }

  static Values sample(Rng& rng) {
    Values v;
    put_polarization(v, rng);
    put_orthogonal_pair(v, rng);
    return v;
  }
};

// ---- fixed FM determinant -------------------------------------------------

template <class R>
struct FmSetup {
  X<R> lam;
  X<R> lam2;
  X<R> lam_hat;
  X<R> lam2_hat;
  R lam_sq;
  MorphismH1<R> f;
  X<R> poincare;
};

template <class R>
FmSetup<R> fm_setup(const Context<R>& c, bool with_lambda2) {
  const X<R> lam = lambda_on_a(c);
  const X<R> lam2 = with_lambda2 ? general_form(c, Var::mu12, atlas().surface()) : X<R>(atlas().surface());
  return FmSetup<R>{lam,
                    lam2,
                    abvar::hat(lam),
                    abvar::hat(lam2),
                    integral_of_product(lam, lam),
                    twisted_addition(c, lam),
                    abvar::poincare_class<R>(atlas().surface_dual(), 0, 1)};
}

Values sample_lambda_mu(Rng& rng) {
  Values v;
  put_polarization(v, rng);
  put_form(v, rng, Var::mu12);
  return v;
}

struct Sec5Obs {
  static constexpr const char* kId = "sec5_obs";
  static constexpr const char* kStatement =
      "p2!(c1(P)^2/2 . p1*l') = lhat' and p2!(c1(P)^2/2 . f*l) = lhat, f = m o (1 x Phi_Lhat)";
  static std::vector<Var> parameters() { return with_form({Var::d, Var::e}, Var::mu12); }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const auto s = fm_setup(c, true);
    const Space& ah = atlas().surface_dual();
    const X<R> p_sq_half = wedge(s.poincare, s.poincare) * R(Rational(1, 2));
    return {{"p2!(c1(P)^2/2.p1*l') - lhat'", push(wedge(p_sq_half, abvar::pull_from_factor(s.lam2, ah, 0))) - s.lam2_hat},
            {"p2!(c1(P)^2/2.f*l) - lhat", push(wedge(p_sq_half, excoh::pullback(s.f, s.lam))) - s.lam_hat}};
  }

  static Values sample(Rng& rng) { return sample_lambda_mu(rng); }
};

struct Sec5A {
  static constexpr const char* kId = "sec5_a";
  static constexpr const char* kStatement = "p2!(f*w . p1*l') = (l^2/2) lhat' - (l.l') lhat";
  static std::vector<Var> parameters() { return Sec5Obs::parameters(); }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const auto s = fm_setup(c, true);
    const Space& ah = atlas().surface_dual();
    const X<R> lhs = push(wedge(excoh::pullback(s.f, omega<R>(atlas().surface())), abvar::pull_from_factor(s.lam2, ah, 0)));
    const X<R> rhs = s.lam2_hat * half(s.lam_sq) - s.lam_hat * integral_of_product(s.lam, s.lam2);
    return {{"lhs - rhs", lhs - rhs}};
  }

  static Values sample(Rng& rng) { return sample_lambda_mu(rng); }
};

struct Sec5B {
  static constexpr const char* kId = "sec5_b";
  static constexpr const char* kStatement = "p2!(f*l . p1*w) = -(l^2/2) lhat";
  static std::vector<Var> parameters() { return {Var::d, Var::e}; }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const auto s = fm_setup(c, false);
    const Space& ah = atlas().surface_dual();
    const X<R> lhs = push(wedge(excoh::pullback(s.f, s.lam), abvar::pull_from_factor(omega<R>(atlas().surface()), ah, 0)));
    return {{"lhs - rhs", lhs + s.lam_hat * half(s.lam_sq)}};
  }

  static Values sample(Rng& rng) { return MStar::sample(rng); }
};

struct Sec5C {
  static constexpr const char* kId = "sec5_c";
  static constexpr const char* kStatement = "p2!(f*w . c1(P)) = -2 lhat";
  static std::vector<Var> parameters() { return {Var::d, Var::e}; }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const auto s = fm_setup(c, false);
    const X<R> lhs = push(wedge(excoh::pullback(s.f, omega<R>(atlas().surface())), s.poincare));
    return {{"lhs - rhs", lhs + s.lam_hat * R(2L)}};
  }

  static Values sample(Rng& rng) { return MStar::sample(rng); }
};

struct Sec5D {
  static constexpr const char* kId = "sec5_d";
  static constexpr const char* kStatement = "p2!(f*l . p1*l' . c1(P)) = -l^2 lhat'";
  static std::vector<Var> parameters() { return Sec5Obs::parameters(); }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const auto s = fm_setup(c, true);
    const Space& ah = atlas().surface_dual();
    const X<R> lhs = push(excoh::wedge_all<R>(
        {excoh::pullback(s.f, s.lam), abvar::pull_from_factor(s.lam2, ah, 0), s.poincare}));
    return {{"lhs - rhs", lhs + s.lam2_hat * s.lam_sq}};
  }

  static Values sample(Rng& rng) { return sample_lambda_mu(rng); }
};

struct Fmtl {
  static constexpr const char* kId = "fmtl";
  static constexpr const char* kStatement =
      "p2!(f*w . c1(P)) = 2d f3^f4 + 2e f1^f2 = -2 lhat, with lhat = fm(l)_2 = -(d f3^f4 + e f1^f2)";
  static std::vector<Var> parameters() { return {Var::d, Var::e}; }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const auto s = fm_setup(c, false);
    const Space& h = atlas().dual();
    // Coordinates on Ahat: e f1^f2 + d f3^f4.
    const X<R> swapped = diagonal_form(c, Var::e, Var::d, h);
    const X<R> pushed = push(wedge(excoh::pullback(s.f, omega<R>(atlas().surface())), s.poincare));
    return {{"p2!(f*w.c1(P)) - (2d f3f4 + 2e f1f2)", pushed - swapped * R(2L)},
            {"lhat + (d f3f4 + e f1f2)", s.lam_hat + swapped},
            {"p2!(f*w.c1(P)) + 2 lhat", pushed + s.lam_hat * R(2L)}};
  }

  static Values sample(Rng& rng) { return MStar::sample(rng); }
};

/// c1(L-) = -p2![f*v . p1*w . exp(chi c1(P))]_(3) on A x Ahat.
template <class R>
X<R> c1_l_minus(const Context<R>& c, const FmSetup<R>& s) {
  const Space& ah = atlas().surface_dual();
  const X<R> v = abvar::mukai_class(c(Var::r), s.lam, c(Var::chi));
  const X<R> w = abvar::mukai_class(c(Var::r2), s.lam2, c(Var::chi2));
  const X<R> product = excoh::wedge_all<R>({excoh::pullback(s.f, v), abvar::pull_from_factor(w, ah, 0),
                                            exp_or_one(s.poincare * c(Var::chi))},
                                           6)
                           .homogeneous_part(6);
  return -push(product);
}

struct PropSplit1 {
  static constexpr const char* kId = "prop_split1";
  static constexpr const char* kStatement =
      "-p2![f*v . p1*w . e^(chi c1(P))]_(3) = d_v c1(vhat (x) what) = d_v (chi lhat' + chi' lhat) under "
      "orthogonality; hence chi(L-) = d_v^2 c1(vhat (x) what)^2/2";
  static std::vector<Var> parameters() { return PropSplit::parameters(); }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const auto s = fm_setup(c, true);
    const X<R> c1 = c1_l_minus(c, s);
    const R dv = R(half(s.lam_sq) - c(Var::r) * c(Var::chi));
    const X<R> c1_hat = s.lam2_hat * c(Var::chi) + s.lam_hat * c(Var::chi2);
    return {{"c1(L-) - d_v c1(vhat (x) what)", c1 - c1_hat * dv},
            {"chi(L-) - d_v^2 c1(vhat (x) what)^2/2",
             scalar(R(half(integral_of_product(c1, c1)) - dv * dv * half(integral_of_product(c1_hat, c1_hat))))}};
  }

  static std::vector<Elimination> constraints(const Context<Poly>& c) { return PropSplit::constraints(c); }
  static Values sample(Rng& rng) { return PropSplit::sample(rng); }
};

struct Llp {
  static constexpr const char* kId = "llp";
  static constexpr const char* kStatement = "int over A x Ahat of p1*l . p2*lhat . c1(P)^2/2 = l^2";
  static std::vector<Var> parameters() { return {Var::d, Var::e}; }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const Space& ah = atlas().surface_dual();
    const X<R> lam = lambda_on_a(c);
    const X<R> poincare = abvar::poincare_class<R>(ah, 0, 1);
    const R lhs = excoh::integrate(excoh::wedge_all<R>({abvar::pull_from_factor(lam, ah, 0),
                                                        abvar::pull_from_factor(abvar::hat(lam), ah, 1),
                                                        wedge(poincare, poincare) * R(Rational(1, 2))}));
    return {{"lhs - l^2", scalar(R(lhs - integral_of_product(lam, lam)))}};
  }

  static Values sample(Rng& rng) { return MStar::sample(rng); }
};

struct Bl {
  static constexpr const char* kId = "bl";
  static constexpr const char* kStatement =
      "(Phi_L x 1)* q23!(q12*c1(P) . q13*c1(P) . q1*l) = -(l^2/2) c1(P) on A x Ahat";
  static std::vector<Var> parameters() { return {Var::d, Var::e}; }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const Space& ahh = atlas().surface_dual_dual();
    const X<R> lam = lambda_on_a(c);
    const X<R> pushed = push(excoh::wedge_all<R>({abvar::poincare_class<R>(ahh, 0, 1),
                                                  abvar::poincare_class<R>(ahh, 0, 2),
                                                  abvar::pull_from_factor(lam, ahh, 0)}));
    const auto pol = abvar::PolarizationClass<R>{c(Var::d), c(Var::e)};
    const auto phi_one = excoh::product(abvar::make_phi(pol, abvar::Direction::SurfaceToDual),
                                        MorphismH1<R>::identity(atlas().dual()));
    const X<R> lhs = excoh::pullback(phi_one, pushed);
    const X<R> poincare = abvar::poincare_class<R>(atlas().surface_dual(), 0, 1);
    return {{"lhs + (l^2/2) c1(P)", lhs + poincare * half(integral_of_product(lam, lam))}};
  }

  static Values sample(Rng& rng) { return MStar::sample(rng); }
};

/// c1(L) = -p23![(r + m12*l + chi m12*w) . exp(p13*c1(P)) . p1*w'']_(3) on
/// A x Ahat, the first A factor integrated out.
template <class R>
X<R> c1_l_arbitrary(const Context<R>& c, const X<R>& lam, const X<R>& lam2) {
  const Space& aah = atlas().surface_surface_dual();
  const auto m12 = abvar::weighted_sum_map<R>(aah, FactorKind::Surface, {R(1L), R(1L), R(0L)});
  const X<R> v = abvar::mukai_class(c(Var::r), lam, c(Var::chi));
  const X<R> w = abvar::mukai_class(c(Var::r2), lam2, c(Var::chi2));
  const X<R> product = excoh::wedge_all<R>({excoh::pullback(m12, v), excoh::exp_even(abvar::poincare_class<R>(aah, 0, 2)),
                                            abvar::pull_from_factor(w, aah, 0)},
                                           6)
                           .homogeneous_part(6);
  return -push(product);
}

template <class R>
R chi_on_fourfold(const X<R>& c1) {
  const X<R> sq = wedge(c1, c1);
  return R(excoh::integrate(wedge(sq, sq)) * Rational(1, 24));
}

struct PropSplit2Zero {
  static constexpr const char* kId = "prop_split2_zero";
  static constexpr const char* kStatement =
      "case l' = 0: c1(L) = -chi' p1*l - r' p2*lhat - r chi' c1(P) and c1(L)^4/4! = d_v^2 d_w^2 "
      "when r chi' + r' chi = 0";
  static std::vector<Var> parameters() { return {Var::d, Var::e, Var::r, Var::r2, Var::chi, Var::chi2}; }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const Space& ah = atlas().surface_dual();
    const X<R> lam = lambda_on_a(c);
    const X<R> c1 = c1_l_arbitrary(c, lam, X<R>(atlas().surface()));
    const R r = c(Var::r), r2 = c(Var::r2), chi = c(Var::chi), chi2 = c(Var::chi2);
    const X<R> closed = abvar::pull_from_factor(lam, ah, 0) * R(-chi2) +
                        abvar::pull_from_factor(abvar::hat(lam), ah, 1) * R(-r2) +
                        abvar::poincare_class<R>(ah, 0, 1) * R(-(r * chi2));
    const R dv = R(half(integral_of_product(lam, lam)) - r * chi);
    const R dw = R(-(r2 * chi2));
    return {{"c1(L) - closed form", c1 - closed},
            {"c1(L)^4/4! - d_v^2 d_w^2", scalar(R(chi_on_fourfold(c1) - dv * dv * dw * dw))}};
  }

  static std::vector<Elimination> constraints(const Context<Poly>& c) {
    return {orthogonality(c, [] { return Poly(0L); })};
  }

  static Values sample(Rng& rng) {
    Values v;
    put_polarization(v, rng);
    for (;;) {
      put(v, Var::r, rng.nonzero(-9, 9));
      put(v, Var::r2, rng.uniform(-9, 9));
      put(v, Var::chi, rng.uniform(-9, 9));
      const Rational chi2 = -v[Var::r2] * v[Var::chi] / v[Var::r];
      if (is_integral(chi2)) {
        v[Var::chi2] = chi2;
        return v;
      }
    }
  }
};

struct PropSplit2Multiple {
  static constexpr const char* kId = "prop_split2_multiple";
  static constexpr const char* kStatement =
      "case l = a l': c1(L) = -(chi' a + chi) p1*l' - (r' a + r) p2*lhat' - (r chi' + a l'^2/2) c1(P) and "
      "c1(L)^4/4! = d_v^2 d_w^2 when r chi' + a l'^2 + r' chi = 0";
  static std::vector<Var> parameters() {
    return {Var::d2, Var::e2, Var::a, Var::r, Var::r2, Var::chi, Var::chi2};
  }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const Space& ah = atlas().surface_dual();
    const X<R> lam2 = diagonal_form(c, Var::d2, Var::e2, atlas().surface());
    const R a = c(Var::a);
    const X<R> lam = lam2 * a;
    const X<R> c1 = c1_l_arbitrary(c, lam, lam2);
    const R r = c(Var::r), r2 = c(Var::r2), chi = c(Var::chi), chi2 = c(Var::chi2);
    const R lam2_sq = integral_of_product(lam2, lam2);
    const X<R> closed = abvar::pull_from_factor(lam2, ah, 0) * R(-(chi2 * a + chi)) +
                        abvar::pull_from_factor(abvar::hat(lam2), ah, 1) * R(-(r2 * a + r)) +
                        abvar::poincare_class<R>(ah, 0, 1) * R(-(r * chi2 + a * half(lam2_sq)));
    const R dv = R(half(integral_of_product(lam, lam)) - r * chi);
    const R dw = R(half(lam2_sq) - r2 * chi2);
    return {{"c1(L) - closed form", c1 - closed},
            {"c1(L)^4/4! - d_v^2 d_w^2", scalar(R(chi_on_fourfold(c1) - dv * dv * dw * dw))}};
  }

  static std::vector<Elimination> constraints(const Context<Poly>& c) {
    return {orthogonality(c, [&] {
      const X<Poly> lam2 = diagonal_form(c, Var::d2, Var::e2, atlas().surface());
      return Poly(c(Var::a) * integral_of_product(lam2, lam2));
    })};
  }

  static Values sample(Rng& rng) {
    Values v;
    for (;;) {
      put(v, Var::d2, rng.nonzero(-9, 9));
      put(v, Var::e2, rng.nonzero(-9, 9));
      put(v, Var::a, rng.uniform(-3, 3));
      put(v, Var::r, rng.nonzero(-9, 9));
      put(v, Var::r2, rng.uniform(-9, 9));
      put(v, Var::chi, rng.uniform(-9, 9));
      const Rational lam2_sq = 2 * v[Var::d2] * v[Var::e2];
      const Rational chi2 = -(v[Var::r2] * v[Var::chi] + v[Var::a] * lam2_sq) / v[Var::r];
      if (is_integral(chi2)) {
        v[Var::chi2] = chi2;
        return v;
      }
    }
  }
};

struct Dw0Chern {
  static constexpr const char* kId = "dw0_chern";
  static constexpr const char* kStatement =
      "c1 = -p!(m*w . q*v)_(3) on A equals -chi' l - chi l', and int c1^2/2 = chi'^2 d_v when "
      "r chi' + l.l' + r' chi = 0 and d_w = 0";
  static std::vector<Var> parameters() { return PropSplit::parameters(); }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const Space& aa = atlas().surface_surface();
    const X<R> lam = lambda_on_a(c);
    const X<R> lam2 = general_form(c, Var::mu12, atlas().surface());
    const R r = c(Var::r), chi = c(Var::chi), chi2 = c(Var::chi2);
    const X<R> v = abvar::mukai_class(r, lam, chi);
    const X<R> w = abvar::mukai_class(c(Var::r2), lam2, chi2);
    const X<R> product =
        wedge(excoh::pullback(abvar::make_addition<R>(R(1L)), w), abvar::pull_from_factor(v, aa, 1), 6).homogeneous_part(6);
    const X<R> c1 = -excoh::fiber_integrate(product, 1);
    const R dv = R(half(integral_of_product(lam, lam)) - r * chi);
    return {{"c1 + chi' l + chi l'", c1 + lam * chi2 + lam2 * chi},
            {"int c1^2/2 - chi'^2 d_v", scalar(R(half(integral_of_product(c1, c1)) - chi2 * chi2 * dv))}};
  }

  static std::vector<Elimination> constraints(const Context<Poly>& c) {
    const X<Poly> lam = lambda_on_a(c);
    const X<Poly> lam2 = general_form(c, Var::mu12, atlas().surface());
    const Poly dot = integral_of_product(lam, lam2);
    const Poly lam2_sq_half = half(integral_of_product(lam2, lam2));
    // With χ' eliminated, d_w = 0 reads r'²χ = -(r·l'^2/2 + r'·l.l').
    return {orthogonality(c, [&] { return dot; }),
            Elimination{Var::chi, -(c(Var::r) * lam2_sq_half + c(Var::r2) * dot), c(Var::r2) * c(Var::r2)}};
  }

  static Values sample(Rng& rng) {
    Values v;
    for (int attempt = 0; attempt < 1000000; ++attempt) {
      put_polarization(v, rng);
      put(v, Var::r, rng.nonzero(-9, 9));
      put(v, Var::r2, rng.nonzero(-9, 9));
      put_form(v, rng, Var::mu12);
      const Context<Rational> c(v, {});
      const X<Rational> lam2 = general_form(c, Var::mu12, atlas().surface());
      const Rational chi2 = half(integral_of_product(lam2, lam2)) / v[Var::r2];
      if (!is_integral(chi2)) continue;
      const Rational chi = -(lambda_dot_mu(v) + v[Var::r] * chi2) / v[Var::r2];
      if (!is_integral(chi)) continue;
      v[Var::chi2] = chi2;
      v[Var::chi] = chi;
      return v;
    }
    throw std::runtime_error("dw0_chern sampler failed");
  }
};

struct FmIsometry {
  static constexpr const char* kId = "fm_isometry";
  static constexpr const char* kStatement =
      "<fm x, fm y> = <x, y> for even classes x, y on A, and fm^t(fm x) = x";
  static std::vector<Var> parameters() {
    auto vars = with_form({Var::r, Var::chi, Var::r2, Var::chi2}, Var::alpha12);
    for (int i = 0; i < 6; ++i) vars.push_back(offset(Var::mu12, i));
    return vars;
  }

  template <class R>
  static std::vector<Residual<R>> residuals(const Context<R>& c) {
    const Space& a = atlas().surface();
    const X<R> x = abvar::mukai_class(c(Var::r), general_form(c, Var::alpha12, a), c(Var::chi));
    const X<R> y = abvar::mukai_class(c(Var::r2), general_form(c, Var::mu12, a), c(Var::chi2));
    const X<R> fx = abvar::fm_transform(x);
    const X<R> fy = abvar::fm_transform(y);
    return {{"<fm x, fm y> - <x, y>", scalar(R(abvar::mukai_pairing(fx, fy) - abvar::mukai_pairing(x, y)))},
            {"fm^t(fm x) - x", abvar::fm_transform(fx) - x}};
  }

  static Values sample(Rng& rng) {
    Values v;
    for (Var var : {Var::r, Var::chi, Var::r2, Var::chi2}) put(v, var, rng.uniform(-9, 9));
    put_form(v, rng, Var::alpha12);
    put_form(v, rng, Var::mu12);
    return v;
  }
};

// ---- assembly checks (numeric only) ---------------------------------------

std::vector<Var> assembly_parameters() {
  return {Var::n, Var::d, Var::e, Var::r, Var::k, Var::chi, Var::r2, Var::k2, Var::chi2};
}

struct AssemblyInput {
  Context<Rational> context;
  X<Rational> lam;
  X<Rational> lam2;
  mukai::MukaiVector v;
  mukai::MukaiVector w;
  Integer dv;
  Integer dw;
};

Integer as_integer(const Rational& x, const char* name) {
  if (!is_integral(x)) throw std::domain_error(std::string(name) + " must be an integer");
  return x.get_num();
}

AssemblyInput assembly_input(const Context<Rational>& c) {
  const Integer n = as_integer(c(Var::n), "n");
  if (c(Var::d) * c(Var::e) != Rational(n)) throw std::domain_error("assembly checks need d e = n");
  const X<Rational> h = lambda_on_a(c);
  const X<Rational> lam = h * c(Var::k);
  const X<Rational> lam2 = h * c(Var::k2);
  const auto v = mukai::make_vector(as_integer(c(Var::r), "r"), as_integer(c(Var::k), "k"),
                                    as_integer(c(Var::chi), "chi"), n);
  const auto w = mukai::make_vector(as_integer(c(Var::r2), "r'"), as_integer(c(Var::k2), "k'"),
                                    as_integer(c(Var::chi2), "chi'"), n);
  // Dimensions from the engine, not from the lattice module.
  const Rational dv = half(integral_of_product(lam, lam)) - c(Var::r) * c(Var::chi);
  const Rational dw = half(integral_of_product(lam2, lam2)) - c(Var::r2) * c(Var::chi2);
  return AssemblyInput{c, lam, lam2, v, w, as_integer(dv, "d_v"), as_integer(dw, "d_w")};
}

Rational fourth_power(const Integer& x) {
  const Integer sq = x * x;
  return Rational(sq * sq);
}

std::vector<Residual<Rational>> assembly_main(const Context<Rational>& c) {
  const auto in = assembly_input(c);
  const X<Rational> c1 = c1_l_plus(c, in.lam, in.lam2);
  const Rational chi_l = half(integral_of_product(c1, c1));
  const Rational lhs = formulas::chi_albanese_fiber(in.dv, in.dw).value * chi_l / fourth_power(in.dv);
  const Rational rhs = formulas::chi_fixed_det(in.v, in.w).value;
  return {{"chi(K_v).chi(L+)/d_v^4 - chi_fixed_det", scalar(Rational(lhs - rhs))}};
}

std::vector<Residual<Rational>> assembly_two(const Context<Rational>& c) {
  const auto in = assembly_input(c);
  const FmSetup<Rational> s{in.lam,
                            in.lam2,
                            abvar::hat(in.lam),
                            abvar::hat(in.lam2),
                            integral_of_product(in.lam, in.lam),
                            twisted_addition(c, in.lam),
                            abvar::poincare_class<Rational>(atlas().surface_dual(), 0, 1)};
  const X<Rational> c1 = c1_l_minus(c, s);
  const Rational chi_l = half(integral_of_product(c1, c1));
  const Rational lhs = formulas::chi_albanese_fiber(in.dv, in.dw).value * chi_l / fourth_power(in.dv);
  const Rational rhs = formulas::chi_fixed_fm_det(in.v, in.w).value;
  return {{"chi(K_v).chi(L-)/d_v^4 - chi_fixed_fm_det", scalar(Rational(lhs - rhs))}};
}

std::vector<Residual<Rational>> assembly_three(const Context<Rational>& c) {
  const auto in = assembly_input(c);
  const X<Rational> c1 = c1_l_arbitrary(c, in.lam, in.lam2);
  const Rational chi_l = chi_on_fourfold(c1);
  const Rational lhs = formulas::chi_albanese_fiber(in.dw, in.dv).value * chi_l / fourth_power(in.dw);
  const Rational rhs = formulas::chi_arbitrary_det(in.v, in.w).value;
  return {{"chi(K_w).chi(L)/d_w^4 - chi_arbitrary_det", scalar(Rational(lhs - rhs))}};
}

/// Rank-one instance: n in 1..4, (d, e) a factorization of n, λ = kH,
/// λ' = k'H, χ' solved from orthogonality, d_v >= min_dv, d_w >= min_dw.
Values sample_assembly(Rng& rng, long min_dv, long min_dw) {
  Values v;
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const long n = rng.uniform(1, 4);
    std::vector<long> divisors;
    for (long q = 1; q <= n; ++q) {
      if (n % q == 0) divisors.push_back(q);
    }
    const long d = divisors[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(divisors.size()) - 1))];
    const long r = rng.nonzero(-9, 9), k = rng.uniform(-9, 9), chi = rng.uniform(-9, 9);
    const long r2 = rng.uniform(-9, 9), k2 = rng.uniform(-9, 9);
    const long num = -(r2 * chi + 2 * n * k * k2);
    if (num % r != 0) continue;
    const long chi2 = num / r;
    const long dv = n * k * k - r * chi;
    const long dw = n * k2 * k2 - r2 * chi2;
    if (dv < min_dv || dw < min_dw) continue;
    put(v, Var::n, n);
    put(v, Var::d, d);
    put(v, Var::e, n / d);
    put(v, Var::r, r);
    put(v, Var::k, k);
    put(v, Var::chi, chi);
    put(v, Var::r2, r2);
    put(v, Var::k2, k2);
    put(v, Var::chi2, chi2);
    return v;
  }
  throw std::runtime_error("assembly sampler failed");
}

// ---- registration -----------------------------------------------------------

template <class T>
IdentityDef engine_identity() {
  IdentityDef def;
  def.id = T::kId;
  def.statement = T::kStatement;
  def.parameters = T::parameters();
  def.numeric = [](const Context<Rational>& c) { return T::template residuals<Rational>(c); };
  def.symbolic = [](const Context<Poly>& c) { return T::template residuals<Poly>(c); };
  if constexpr (requires(const Context<Poly>& c) { T::constraints(c); }) {
    def.constraints = [](const Context<Poly>& c) { return T::constraints(c); };
  }
  def.sample = [](Rng& rng) { return T::sample(rng); };
  return def;
}

std::vector<Elimination> assembly_constraints(const Context<Poly>& c) {
  // Orthogonality r'χ + 2n k k' + rχ' = 0, as a side condition on numeric input.
  return {Elimination{Var::chi2, -(c(Var::r2) * c(Var::chi) + Poly(2L) * c(Var::n) * c(Var::k) * c(Var::k2)),
                      c(Var::r)}};
}

IdentityDef assembly_identity(const char* id, const char* statement,
                              std::vector<Residual<Rational>> (*body)(const Context<Rational>&), long min_dv,
                              long min_dw) {
  IdentityDef def;
  def.id = id;
  def.statement = statement;
  def.parameters = assembly_parameters();
  def.numeric = body;
  def.constraints = assembly_constraints;
  def.sample = [min_dv, min_dw](Rng& rng) { return sample_assembly(rng, min_dv, min_dw); };
  return def;
}

}  // namespace

const std::vector<IdentityDef>& identity_table() {
  static const std::vector<IdentityDef> table = [] {
    std::vector<IdentityDef> t;
    t.push_back(engine_identity<Sec4Table>());
    t.push_back(engine_identity<Sec4Lemma>());
    t.push_back(engine_identity<MStar>());
    t.push_back(engine_identity<Fmp>());
    t.push_back(engine_identity<Phis>());
    t.push_back(engine_identity<PropSplit>());
    t.push_back(engine_identity<Sec5Obs>());
    t.push_back(engine_identity<Sec5A>());
    t.push_back(engine_identity<Sec5B>());
    t.push_back(engine_identity<Sec5C>());
    t.push_back(engine_identity<Sec5D>());
    t.push_back(engine_identity<Fmtl>());
    t.push_back(engine_identity<PropSplit1>());
    t.push_back(engine_identity<Llp>());
    t.push_back(engine_identity<Bl>());
    t.push_back(engine_identity<PropSplit2Zero>());
    t.push_back(engine_identity<PropSplit2Multiple>());
    t.push_back(engine_identity<Dw0Chern>());
    t.push_back(engine_identity<FmIsometry>());
    t.push_back(assembly_identity(
        "assembly_main", "chi(K_v, Theta_w) . chi(A, L+) / d_v^4 = chi_fixed_det(v, w), L+ from the engine", assembly_main,
        1, 0));
    t.push_back(assembly_identity("assembly_two",
                                  "chi(K_v, Theta_w) . chi(Ahat, L-) / d_v^4 = chi_fixed_fm_det(v, w), L- from the engine",
                                  assembly_two, 1, 0));
    t.push_back(assembly_identity("assembly_three",
                                  "chi(K_w, Theta_v) . chi(A x Ahat, L) / d_w^4 = chi_arbitrary_det(v, w)",
                                  assembly_three, 1, 1));
    return t;
  }();
  return table;
}

}  // namespace thetacalc::verify::detail
