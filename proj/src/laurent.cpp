#include "metab/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "metab/error.hpp"

namespace metab {

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  long da = std::accumulate(a.begin(), a.end(), 0L);
  long db = std::accumulate(b.begin(), b.end(), 0L);
  if (da != db) return da < db;
  return a < b;
}

Exponent operator+(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw DimensionMismatch("exponent length mismatch");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponent operator-(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw DimensionMismatch("exponent length mismatch");
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Exponent operator-(const Exponent& a) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

Exponent zero_exponent(std::size_t n) { return Exponent(n, 0); }

Rational dot(std::span<const Rational> v, const Exponent& a) {
  if (v.size() != a.size()) throw DimensionMismatch("direction/exponent length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += v[i] * a[i];
  return s;
}

std::string exponent_to_string(const Exponent& a) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ')';
  return os.str();
}

Direction::Direction(std::vector<Rational> coords) : coords_(std::move(coords)) {
  for (auto& c : coords_) c.canonicalize();
  if (std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; }))
    throw PreconditionError("direction must be nonzero");
}

Direction Direction::from_integers(const std::vector<long>& coords) {
  std::vector<Rational> q(coords.begin(), coords.end());
  return Direction(std::move(q));
}

Direction Direction::scaled(const Rational& c) const {
  if (c <= 0) throw PreconditionError("directions may only be scaled by positive factors");
  auto q = coords_;
  for (auto& x : q) x *= c;
  return Direction(std::move(q));
}

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Rational& c) {
  LaurentPoly p(nvars);
  p.add_term(zero_exponent(nvars), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const Exponent& a, const Rational& c) {
  LaurentPoly p(a.size());
  p.add_term(a, c);
  return p;
}

LaurentPoly LaurentPoly::variable(std::size_t nvars, std::size_t index) {
  Exponent a(nvars, 0);
  a.at(index) = 1;
  return monomial(a);
}

LaurentPoly LaurentPoly::step_factor(const Exponent& a) {
  LaurentPoly p = monomial(a);
  p.add_term(zero_exponent(a.size()), -1);
  return p;
}

Rational LaurentPoly::coefficient(const Exponent& a) const {
  auto it = terms_.find(a);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Exponent& a, const Rational& c) {
  if (a.size() != nvars_) throw DimensionMismatch("monomial length differs from variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(a, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentPoly LaurentPoly::shifted(const Exponent& z) const {
  LaurentPoly r(nvars_);
  for (const auto& [a, c] : terms_) r.terms_.emplace(a + z, c);
  return r;
}

LaurentPoly LaurentPoly::substitute_monomials(const std::vector<Exponent>& images,
                                              std::size_t target_nvars) const {
  if (images.size() != nvars_) throw DimensionMismatch("substitution arity mismatch");
  LaurentPoly r(target_nvars);
  for (const auto& [a, c] : terms_) {
    Exponent b(target_nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::size_t k = 0; k < target_nvars; ++k) b[k] += a[i] * images[i].at(k);
    r.add_term(b, c);
  }
  return r;
}

bool LaurentPoly::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return is_integer(t.second); });
}

bool LaurentPoly::has_nonnegative_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second > 0; });
}

Exponent LaurentPoly::min_exponents() const {
  if (terms_.empty()) throw PreconditionError("min_exponents of the zero polynomial");
  Exponent m = terms_.begin()->first;
  for (const auto& [a, c] : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::min(m[i], a[i]);
  return m;
}

Exponent LaurentPoly::max_exponents() const {
  if (terms_.empty()) throw PreconditionError("max_exponents of the zero polynomial");
  Exponent m = terms_.begin()->first;
  for (const auto& [a, c] : terms_)
    for (std::size_t i = 0; i < nvars_; ++i) m[i] = std::max(m[i], a[i]);
  return m;
}

long LaurentPoly::max_abs_exponent() const {
  long m = 0;
  for (const auto& [a, c] : terms_)
    for (long x : a) m = std::max(m, std::labs(x));
  return m;
}

Rational LaurentPoly::max_abs_coefficient() const {
  Rational m = 0;
  for (const auto& [a, c] : terms_) m = std::max<Rational>(m, abs(c));
  return m;
}

void LaurentPoly::require_same(const LaurentPoly& other) const {
  if (nvars_ != other.nvars_)
    throw DimensionMismatch("Laurent polynomials over " + std::to_string(nvars_) + " and " +
                            std::to_string(other.nvars_) + " variables");
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
  require_same(other);
  for (const auto& [a, c] : other.terms_) add_term(a, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& other) {
  require_same(other);
  for (const auto& [a, c] : other.terms_) add_term(a, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, x] : terms_) x *= c;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [a, x] : r.terms_) x = -x;
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  a.require_same(b);
  LaurentPoly r(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

bool LaurentPoly::operator==(const LaurentPoly& other) const {
  return nvars_ == other.nvars_ && terms_ == other.terms_;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [a, c] = *it;
    bool is_one = std::all_of(a.begin(), a.end(), [](long x) { return x == 0; });
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (is_one || mag != 1) os << mag.get_str();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      os << "X" << (i + 1);
      if (a[i] != 1) os << '^' << a[i];
    }
  }
  return os.str();
}

LaurentPoly multiply(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

std::optional<Rational> weighted_degree(const LaurentPoly& p, const Direction& v) {
  if (v.size() != p.nvars()) throw DimensionMismatch("direction length differs from variable count");
  std::optional<Rational> best;
  for (const auto& [a, c] : p.terms()) {
    Rational d = v.dot(a);
    if (!best || d > *best) best = d;
  }
  return best;
}

LaurentPoly initial(const LaurentPoly& p, const Direction& v) {
  auto deg = weighted_degree(p, v);
  LaurentPoly r(p.nvars());
  if (!deg) return r;
  for (const auto& [a, c] : p.terms())
    if (v.dot(a) == *deg) r.add_term(a, c);
  return r;
}

Rational evaluate_positive(const LaurentPoly& p, std::span<const Rational> r) {
  if (r.size() != p.nvars()) throw DimensionMismatch("evaluation point length differs from variable count");
  for (const auto& x : r)
    if (x <= 0) throw PreconditionError("evaluate_positive needs strictly positive coordinates");
  Rational total = 0;
  for (const auto& [a, c] : p.terms()) {
    Rational term = c;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      Rational base = a[i] > 0 ? r[i] : 1 / r[i];
      base.canonicalize();
      mpz_class num, den;
      unsigned long e = static_cast<unsigned long>(std::labs(a[i]));
      mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
      mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
      term *= Rational(num, den);
    }
    total += term;
  }
  return total;
}

LaurentVector zero_vector(std::size_t nvars, std::size_t length) {
  return LaurentVector(length, LaurentPoly(nvars));
}

LaurentVector operator+(const LaurentVector& a, const LaurentVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector length mismatch");
  LaurentVector r = a;
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
  return r;
}

LaurentVector scale(const LaurentPoly& h, const LaurentVector& v) {
  LaurentVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(h * x);
  return r;
}

LaurentPoly dot(const LaurentVector& f, const LaurentVector& g) {
  if (f.size() != g.size() || f.empty()) {
    if (f.size() != g.size()) throw DimensionMismatch("vector length mismatch");
    return LaurentPoly();
  }
  LaurentPoly r(f.front().nvars());
  for (std::size_t i = 0; i < f.size(); ++i) r += f[i] * g[i];
  return r;
}

bool is_zero(const LaurentVector& v) {
  return std::all_of(v.begin(), v.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

nlohmann::json to_json(const LaurentPoly& p) {
  auto arr = nlohmann::json::array();
  for (const auto& [a, c] : p.terms()) arr.push_back({{"c", c.get_str()}, {"e", a}});
  return arr;
}

LaurentPoly laurent_from_json(const nlohmann::json& j, std::size_t nvars) {
  if (!j.is_array()) throw ParseError("polynomial must be a JSON array of terms");
  LaurentPoly p(nvars);
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("c") || !term.contains("e"))
      throw ParseError("polynomial term needs fields \"c\" and \"e\"");
    Rational c;
    const auto& jc = term.at("c");
    if (jc.is_string()) {
      c = parse_rational(jc.get<std::string>());
    } else if (jc.is_number_integer()) {
      c = Rational(Integer(jc.dump()));
    } else {
      throw ParseError("coefficient must be an integer or a rational string");
    }
    const auto& je = term.at("e");
    if (!je.is_array() || je.size() != nvars)
      throw ParseError("exponent vector must have length " + std::to_string(nvars));
    Exponent a;
    for (const auto& x : je) {
      if (!x.is_number_integer()) throw ParseError("exponents must be integers");
      a.push_back(x.get<long>());
    }
    p.add_term(a, c);
  }
  return p;
}

nlohmann::json to_json(const LaurentVector& v) {
  auto arr = nlohmann::json::array();
  for (const auto& p : v) arr.push_back(to_json(p));
  return arr;
}

LaurentVector laurent_vector_from_json(const nlohmann::json& j, std::size_t nvars) {
  if (!j.is_array()) throw ParseError("expected an array of polynomials");
  LaurentVector v;
  for (const auto& p : j) v.push_back(laurent_from_json(p, nvars));
  return v;
}

}  // namespace metab
