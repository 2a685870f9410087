#include "thetacalc/mukai.hpp"

#include <json.hpp>

#include <stdexcept>
#include <vector>

#include "thetacalc/atlas.hpp"

namespace thetacalc::mukai {

namespace {

void require_compatible(const MukaiVector& x, const MukaiVector& y) {
  if (x.side != y.side) throw std::invalid_argument("Mukai vectors live on different sides (A vs Ahat)");
  if (x.n() != y.n()) {
    throw std::invalid_argument("Mukai vectors have different ambient n: " + x.n().get_str() + " vs " +
                                y.n().get_str());
  }
}

Integer parse_integer(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ' && c != '\t') text += c;
  }
  if (!text.empty() && text[0] == '+') text.erase(0, 1);
  const std::size_t digits_from = (!text.empty() && text[0] == '-') ? 1 : 0;
  if (text.size() == digits_from) throw std::invalid_argument("empty integer in '" + raw + "'");
  for (std::size_t i = digits_from; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("not an integer: '" + raw + "'");
  }
  return Integer(text, 10);
}

Integer json_integer(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("missing key \"") + key + "\"");
  const auto& x = j.at(key);
  if (x.is_string()) return parse_integer(x.get<std::string>());
  if (x.is_number_integer()) return Integer(std::to_string(x.get<long long>()), 10);
  throw std::invalid_argument(std::string("key \"") + key + "\" must be an integer or a decimal string");
}

}  // namespace

std::string to_string(Side side) { return side == Side::Surface ? "A" : "Ahat"; }

Integer NSClass::dot(const NSClass& other) const {
  if (n != other.n) throw std::invalid_argument("NS classes with different ambient n");
  return 2 * n * k * other.k;
}

MukaiVector make_vector(const Integer& r, const Integer& k, const Integer& chi, const Integer& n, Side side) {
  if (n < 1) throw std::invalid_argument("ambient n must be >= 1, got " + n.get_str());
  return MukaiVector{r, NSClass{k, n}, chi, side};
}

std::string to_string(const MukaiVector& v) {
  return "(" + v.r.get_str() + ", " + v.k().get_str() + (v.side == Side::Surface ? "H" : "Hhat") + ", " +
         v.chi.get_str() + ")";
}

Integer mukai_pairing(const MukaiVector& x, const MukaiVector& y) {
  require_compatible(x, y);
  return x.c1.dot(y.c1) - x.r * y.chi - x.chi * y.r;
}

Integer dv(const MukaiVector& v) {
  const Integer self = mukai_pairing(v, v);
  return self / 2;
}

Integer euler_chi_tensor(const MukaiVector& v, const MukaiVector& w) {
  require_compatible(v, w);
  return w.r * v.chi + v.c1.dot(w.c1) + v.r * w.chi;
}

NSClass c1_tensor(const MukaiVector& v, const MukaiVector& w) {
  require_compatible(v, w);
  return NSClass{v.r * w.k() + w.r * v.k(), v.n()};
}

MukaiVector dual(const MukaiVector& v) { return MukaiVector{v.r, NSClass{-v.k(), v.n()}, v.chi, v.side}; }

MukaiVector fm_vector(const MukaiVector& v) {
  return MukaiVector{v.chi, NSClass{-v.k(), v.n()}, v.r, v.side == Side::Surface ? Side::Dual : Side::Surface};
}

MukaiVector fm_vector_engine(const MukaiVector& v) {
  using abvar::Atlas;
  using abvar::PolarizationClass;
  const Atlas& atlas = Atlas::standard();
  const Rational n(v.n());
  // H = f1v f2v + n f3v f4v on A; Ĥ = n f1 f2 + f3 f4 on Â.
  const PolarizationClass<Rational> on_surface{Rational(1), n};
  const PolarizationClass<Rational> on_dual{n, Rational(1)};
  const bool from_surface = v.side == Side::Surface;
  const auto& source = from_surface ? atlas.surface() : atlas.dual();
  const auto& target = from_surface ? atlas.dual() : atlas.surface();
  const auto h_source = abvar::polarization_class(from_surface ? on_surface : on_dual, source, 0);
  const auto h_target = abvar::polarization_class(from_surface ? on_dual : on_surface, target, 0);

  const auto image = abvar::fm_transform(abvar::mukai_class(Rational(v.r), h_source * Rational(v.k()), Rational(v.chi)));

  // Read the degree-2 part as a multiple of the target polarization; the
  // f3 f4 coefficient of h_target is 1 on Â and n on A.
  const auto deg2 = image.homogeneous_part(2);
  const Rational f34 = h_target.coefficient(0b1100);
  const Rational k = deg2.coefficient(0b1100) / f34;
  if (!(deg2 == h_target * k) || !is_integral(k)) {
    throw std::logic_error("engine transform left the rank-one Neron-Severi lattice: " + deg2.to_string());
  }
  const Rational r = image.coefficient(0);
  const Rational chi = image.coefficient(target.top_mask());
  return MukaiVector{r.get_num(), NSClass{k.get_num(), v.n()}, chi.get_num(),
                     from_surface ? Side::Dual : Side::Surface};
}

AdmissibilityReport check_assumptions(const MukaiVector& v, const std::optional<MukaiVector>& w) {
  AdmissibilityReport report;
  Integer g;
  mpz_gcd(g.get_mpz_t(), v.r.get_mpz_t(), v.k().get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.chi.get_mpz_t());
  report.primitive = g == 1;

  if (v.r > 0) {
    report.positive = true;
  } else if (v.r == 0) {
    const Integer self = mukai_pairing(v, v);
    report.positive = v.k() > 0 && v.chi != 0 && self != 0 && self != 4;
  }

  if (w) {
    const NSClass c1 = c1_tensor(v, *w);
    report.h2_vanishing_direction = sgn(NSClass{1, v.n()}.dot(c1));
  }
  return report;
}

MukaiVector parse_vector(const std::string& text, const Integer& n, Side side) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  if (parts.size() != 3) throw std::invalid_argument("expected \"r,k,chi\", got '" + text + "'");
  return make_vector(parse_integer(parts[0]), parse_integer(parts[1]), parse_integer(parts[2]), n, side);
}

MukaiVector parse_vector_json(const std::string& json_text, Side side) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON vector: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("JSON vector must be an object");
  return make_vector(json_integer(j, "r"), json_integer(j, "k"), json_integer(j, "chi"), json_integer(j, "n"), side);
}

}  // namespace thetacalc::mukai
