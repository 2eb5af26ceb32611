#include "metab/algebra.hpp"

#include <algorithm>
#include <utility>

#include "metab/error.hpp"

namespace metab {

namespace laurent_ring {

std::size_t ring_vars(std::size_t n) { return n == 0 ? 0 : n + 1; }

Exponent clearing_shift(const LaurentVector& v, std::size_t n) {
  Exponent s(n, 0);
  for (const auto& p : v)
    for (const auto& [a, c] : p.terms())
      for (std::size_t k = 0; k < n; ++k) s[k] = std::max(s[k], -a[k]);
  return s;
}

namespace {

gb::Monomial to_monomial(const Exponent& a, const Exponent& shift, std::size_t offset) {
  gb::Monomial m;
  for (std::size_t k = 0; k < a.size(); ++k) {
    long e = a[k] + shift[k];
    if (e < 0) throw Error("internal: monomial clearing left a negative exponent");
    m.e[offset + k] = static_cast<std::int32_t>(e);
  }
  return m;
}

Integer integral_coefficient(const Rational& c) {
  if (!is_integer(c)) throw PreconditionError("module computations need integer coefficients");
  return c.get_num();
}

std::vector<gb::Term> to_ring_at(const LaurentVector& v, const Exponent& shift, int first_comp,
                                 std::size_t offset) {
  std::vector<gb::Term> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const auto& [a, c] : v[i].terms())
      out.push_back(gb::Term{to_monomial(a, shift, offset), first_comp + static_cast<int>(i),
                             integral_coefficient(c)});
  return out;
}

}  // namespace

std::vector<gb::Term> to_ring(const LaurentVector& v, std::size_t n, const Exponent& shift,
                              int first_comp) {
  (void)n;
  return to_ring_at(v, shift, first_comp, 0);
}

std::vector<gb::Term> unit_relation(std::size_t n, int comp) {
  if (n == 0) return {};
  gb::Monomial all;
  for (std::size_t k = 0; k <= n; ++k) all.e[k] = 1;
  return {gb::Term{all, comp, Integer(1)}, gb::Term{gb::Monomial{}, comp, Integer(-1)}};
}

LaurentVector from_ring(const gb::Vec& v, std::size_t n, int first, std::size_t length) {
  LaurentVector out = zero_vector(n, length);
  for (const auto& t : v) {
    if (t.comp < first || t.comp >= first + static_cast<int>(length)) continue;
    Exponent a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = t.m.e[k] - t.m.e[n];
    out[static_cast<std::size_t>(t.comp - first)].add_term(a, Rational(t.c));
  }
  return out;
}

}  // namespace laurent_ring

namespace {

using namespace laurent_ring;

void check_vector(const LaurentVector& v, std::size_t n, std::size_t length, const char* what) {
  if (v.size() != length)
    throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(length));
  for (const auto& p : v)
    if (p.nvars() != n && !p.is_zero())
      throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(n) +
                              " variables");
}

// Multiply by a unit so that the minimal exponents are zero and the leading
// coefficient of the first nonzero entry is positive.
LaurentVector canonical_unit_multiple(LaurentVector v, std::size_t n) {
  if (is_zero(v)) return v;
  Exponent lo;
  for (const auto& p : v) {
    if (p.is_zero()) continue;
    Exponent m = p.min_exponents();
    if (lo.empty()) {
      lo = m;
    } else {
      for (std::size_t k = 0; k < n; ++k) lo[k] = std::min(lo[k], m[k]);
    }
  }
  if (lo.empty()) lo = zero_exponent(n);
  bool negate = false;
  for (const auto& p : v) {
    if (p.is_zero()) continue;
    negate = p.terms().rbegin()->second < 0;
    break;
  }
  for (auto& p : v) {
    p = p.shifted(-lo);
    if (negate) p = -p;
  }
  return v;
}

}  // namespace

LaurentSubmodule::LaurentSubmodule(std::size_t nvars, std::size_t rank,
                                   std::vector<LaurentVector> generators, gb::Limits limits)
    : nvars_(nvars), rank_(rank), generators_(std::move(generators)) {
  std::vector<gb::Vec> ring_gens;
  gb::Order order(ring_vars(nvars_), {}, 0);
  for (const auto& g : generators_) {
    check_vector(g, nvars_, rank_, "submodule generator");
    if (is_zero(g)) continue;
    ring_gens.push_back(gb::normalize(to_ring(g, nvars_, clearing_shift(g, nvars_), 0), order));
  }
  for (std::size_t c = 0; c < rank_; ++c) {
    auto rel = unit_relation(nvars_, static_cast<int>(c));
    if (!rel.empty()) ring_gens.push_back(gb::normalize(std::move(rel), order));
  }
  basis_ = std::make_unique<gb::Basis>(std::move(ring_gens), order, limits);
}

std::vector<LaurentVector> LaurentSubmodule::basis() const {
  std::vector<LaurentVector> out;
  for (const auto& e : basis_->elements()) {
    auto v = from_ring(e, nvars_, 0, rank_);
    if (!is_zero(v)) out.push_back(canonical_unit_multiple(std::move(v), nvars_));
  }
  return out;
}

bool LaurentSubmodule::contains(const LaurentVector& v) const {
  check_vector(v, nvars_, rank_, "membership query");
  if (is_zero(v)) return true;
  for (const auto& p : v)
    if (!p.is_integral()) return false;
  return basis_->contains(
      gb::normalize(to_ring(v, nvars_, clearing_shift(v, nvars_), 0), basis_->order()));
}

ModulePresentation::ModulePresentation(std::size_t n, std::size_t d,
                                       std::vector<LaurentVector> rels_N,
                                       std::vector<LaurentVector> gens_M)
    : n_(n), d_(d), rels_(std::move(rels_N)), gens_M_(std::move(gens_M)),
      state_(std::make_shared<Lazy>()) {
  for (auto* list : {&rels_, &gens_M_})
    for (const auto& v : *list) {
      check_vector(v, n_, d_, "module presentation");
      for (const auto& p : v)
        if (!p.is_integral()) throw PreconditionError("module vectors need integer coefficients");
    }
}

const LaurentSubmodule& ModulePresentation::relation_module() const {
  std::call_once(state_->n_once,
                 [&] { state_->n_module = std::make_unique<LaurentSubmodule>(n_, d_, rels_); });
  return *state_->n_module;
}

bool ModulePresentation::in_N(const LaurentVector& v) const {
  if (is_zero(v)) return true;
  if (rels_.empty()) {
    check_vector(v, n_, d_, "element");
    return false;
  }
  return relation_module().contains(v);
}

bool ModulePresentation::in_M(const LaurentVector& v) const {
  check_vector(v, n_, d_, "element");
  if (m_is_free()) return std::all_of(v.begin(), v.end(), [](auto& p) { return p.is_integral(); });
  std::call_once(state_->m_once, [&] {
    state_->m_module = std::make_unique<LaurentSubmodule>(n_, d_, gens_M_);
  });
  return state_->m_module->contains(v);
}

bool ModulePresentation::relations_inside_M() const {
  return std::all_of(rels_.begin(), rels_.end(), [&](const LaurentVector& r) { return in_M(r); });
}

ModuleElement::ModuleElement(LaurentVector rep,
                             std::shared_ptr<const ModulePresentation> presentation)
    : rep_(std::move(rep)), presentation_(std::move(presentation)) {
  if (!presentation_) throw PreconditionError("module element without a presentation");
  check_vector(rep_, presentation_->nvars(), presentation_->rank(), "module element");
}

ModuleElement ModuleElement::zero(std::shared_ptr<const ModulePresentation> presentation) {
  auto v = zero_vector(presentation->nvars(), presentation->rank());
  return ModuleElement(std::move(v), std::move(presentation));
}

ModuleElement ModuleElement::operator+(const ModuleElement& other) const {
  if (!presentation_->same_as(*other.presentation_))
    throw DimensionMismatch("module elements over different presentations");
  return ModuleElement(rep_ + other.rep_, presentation_);
}

ModuleElement ModuleElement::operator-() const {
  LaurentVector v = rep_;
  for (auto& p : v) p = -p;
  return ModuleElement(std::move(v), presentation_);
}

ModuleElement ModuleElement::times(const LaurentPoly& scalar) const {
  return ModuleElement(scale(scalar, rep_), presentation_);
}

bool is_zero_in_Y(const ModuleElement& e) { return e.presentation().in_N(e.rep()); }

namespace {

void check_instance(const SyzygyInstance& inst) {
  if (!inst.presentation) throw PreconditionError("syzygy instance without a presentation");
  if (inst.ys.size() != inst.steps.size())
    throw DimensionMismatch("syzygy instance: ys and steps differ in length");
  std::size_t n = inst.nvars(), d = inst.presentation->rank();
  for (const auto& y : inst.ys) check_vector(y, n, d, "generator module part");
  for (const auto& a : inst.steps)
    if (a.size() != n) throw DimensionMismatch("step has the wrong dimension");
}

}  // namespace

namespace {

// Divides f by the prime factors of its integer content as far as the
// quotient still satisfies both defining equations (a downward closed
// condition on the exponent, hence the bisection).
LaurentVector divide_content(LaurentVector f, const SyzygyInstance& instance) {
  Integer c = 0;
  for (const auto& p : f)
    for (const auto& [e, q] : p.terms()) mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), q.get_num_mpz_t());
  auto divided = [&](const Integer& d) {
    const Rational inverse = Rational(1) / Rational(d);
    LaurentVector g = f;
    for (auto& x : g) x *= inverse;
    return g;
  };
  auto strip = [&](const Integer& p) {
    unsigned long k = 0;
    Integer rest = c;
    while (mpz_divisible_p(rest.get_mpz_t(), p.get_mpz_t())) rest /= p, ++k;
    unsigned long lo = 0, hi = k;
    while (lo < hi) {
      unsigned long mid = (lo + hi + 1) / 2;
      Integer d;
      mpz_pow_ui(d.get_mpz_t(), p.get_mpz_t(), mid);
      if (residual(divided(d), instance).is_zero()) lo = mid; else hi = mid - 1;
    }
    if (lo > 0) {
      Integer d;
      mpz_pow_ui(d.get_mpz_t(), p.get_mpz_t(), lo);
      f = divided(d);
    }
    c = rest;
  };
  if (c > 1 && residual(divided(c), instance).is_zero()) return divided(c);
  for (Integer p = 2; p * p <= c && p < 10000; ++p)
    if (mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) strip(p);
  if (c > 1) strip(c);
  return f;
}

std::vector<gb::Vec> image_rows(const SyzygyInstance& instance, const gb::Order& order,
                                std::vector<Exponent>& shifts, bool cofactor_components) {
  const std::size_t n = instance.nvars();
  const int q = static_cast<int>(instance.presentation->rank() + 1);
  const std::size_t K = instance.size();
  std::vector<gb::Vec> rows;
  for (std::size_t i = 0; i < K; ++i) {
    LaurentVector c = instance.ys[i];
    c.push_back(LaurentPoly::step_factor(instance.steps[i]));
    Exponent s = clearing_shift(c, n);
    shifts.push_back(s);
    auto terms = to_ring(c, n, s, 0);
    if (cofactor_components) terms.push_back(gb::Term{gb::Monomial{}, q + static_cast<int>(i), Integer(1)});
    rows.push_back(gb::normalize(std::move(terms), order));
  }
  for (const auto& r : instance.presentation->relations()) {
    if (is_zero(r)) continue;
    rows.push_back(gb::normalize(to_ring(r, n, clearing_shift(r, n), 0), order));
  }
  // With cofactor components the unit relation goes there too, which keeps
  // their representatives reduced.
  const int comps = q + (cofactor_components ? static_cast<int>(K) : 0);
  for (int c = 0; c < comps; ++c) {
    auto rel = unit_relation(n, c);
    if (!rel.empty()) rows.push_back(gb::normalize(std::move(rel), order));
  }
  return rows;
}

// Elimination: cofactor components ranked below the image components. The
// basis elements free of image components generate the syzygies.
std::vector<LaurentVector> syzygies_by_elimination(const SyzygyInstance& instance, gb::Limits limits) {
  const std::size_t n = instance.nvars();
  const std::size_t K = instance.size();
  const int q = static_cast<int>(instance.presentation->rank() + 1);
  gb::Order order(ring_vars(n), {}, q);
  std::vector<Exponent> shifts;
  gb::Basis basis(image_rows(instance, order, shifts, true), order, limits);
  std::vector<LaurentVector> out;
  for (const auto& e : basis.elements()) {
    if (order.in_priority(e)) continue;
    LaurentVector f = from_ring(e, n, q, K);
    for (std::size_t i = 0; i < K; ++i) f[i] = f[i].shifted(shifts[i]);
    if (!is_zero(f)) out.push_back(std::move(f));
  }
  return out;
}

// Schreyer: a basis of the image alone, with cofactors tracked on the side.
std::vector<LaurentVector> syzygies_by_lifting(const SyzygyInstance& instance, gb::Limits limits) {
  const std::size_t n = instance.nvars();
  const std::size_t K = instance.size();
  gb::Order order(ring_vars(n), {}, 0);
  std::vector<Exponent> shifts;
  gb::Basis basis(image_rows(instance, order, shifts, false), order, limits, gb::Tracking{K, n});
  std::vector<LaurentVector> out;
  for (const auto& cof : basis.syzygies()) {
    LaurentVector f = zero_vector(n, K);
    for (const auto& t : cof) {
      Exponent a(n);
      for (std::size_t k = 0; k < n; ++k)
        a[k] = t.m.e[k] + shifts[static_cast<std::size_t>(t.comp)][k];
      f[static_cast<std::size_t>(t.comp)].add_term(a, Rational(t.c));
    }
    if (!is_zero(f)) out.push_back(divide_content(std::move(f), instance));
  }
  return out;
}

}  // namespace

SyzygyBasis syzygy_MZ(const SyzygyInstance& instance, const SyzygyOptions& options) {
  check_instance(instance);
  const std::size_t n = instance.nvars();
  const std::size_t K = instance.size();
  std::vector<LaurentVector> raw;
  try {
    raw = syzygies_by_elimination(instance, options.elimination_limits);
  } catch (const BudgetExhausted&) {
    raw = syzygies_by_lifting(instance, options.limits);
  }
  SyzygyBasis out;
  for (auto& f : raw) {
    f = canonical_unit_multiple(std::move(f), n);
    if (std::find(out.generators.begin(), out.generators.end(), f) == out.generators.end())
      out.generators.push_back(std::move(f));
  }

  // Small generators first; keep one only if the span so far misses it. A
  // membership test that runs out of budget keeps the candidate.
  auto weight = [](const LaurentVector& f) {
    std::size_t terms = 0, bits = 0;
    for (const auto& p : f)
      for (const auto& [e, c] : p.terms()) {
        ++terms;
        bits += mpz_sizeinbase(c.get_num_mpz_t(), 2);
      }
    return std::make_pair(terms, bits);
  };
  std::stable_sort(out.generators.begin(), out.generators.end(),
                   [&](const LaurentVector& x, const LaurentVector& y) { return weight(x) < weight(y); });
  if (out.generators.size() > 1 && out.generators.size() <= options.minimize_up_to) {
    std::vector<LaurentVector> kept{out.generators.front()};
    for (std::size_t j = 1; j < out.generators.size(); ++j) {
      bool redundant = false;
      try {
        redundant = LaurentSubmodule(n, K, kept, options.minimize_limits).contains(out.generators[j]);
      } catch (const BudgetExhausted&) {
      }
      if (!redundant) kept.push_back(out.generators[j]);
    }
    out.generators = std::move(kept);
  }
  return out;
}

Residual residual(const LaurentVector& f, const SyzygyInstance& instance) {
  check_instance(instance);
  const std::size_t n = instance.nvars();
  const std::size_t d = instance.presentation->rank();
  check_vector(f, n, instance.size(), "syzygy candidate");
  Residual r{LaurentPoly(n), zero_vector(n, d), true};
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    r.symmetry += f[i] * LaurentPoly::step_factor(instance.steps[i]);
    r.neutral = r.neutral + scale(f[i], instance.ys[i]);
  }
  r.neutral_is_zero = instance.presentation->in_N(r.neutral);
  return r;
}

std::vector<LaurentVector> restrict_to_sublattice(const std::vector<LaurentVector>& generators,
                                                  std::size_t nvars, std::size_t length,
                                                  const std::vector<Exponent>& lattice_basis,
                                                  gb::Limits limits) {
  const std::size_t r = lattice_basis.size();
  const std::size_t tw = ring_vars(r);  // T_1..T_r, w
  const std::size_t x0 = tw;            // x_1..x_n, then u
  const std::size_t total = tw + ring_vars(nvars);
  if (total > gb::kMaxVars) throw Error("too many variables for sublattice restriction");
  for (const auto& b : lattice_basis)
    if (b.size() != nvars) throw DimensionMismatch("lattice basis vector has wrong dimension");

  std::vector<bool> eliminated(total, false);
  for (std::size_t k = x0; k < total; ++k) eliminated[k] = true;
  gb::Order order(total, eliminated, 0);

  std::vector<gb::Vec> rows;
  for (const auto& g : generators) {
    check_vector(g, nvars, length, "generator");
    if (is_zero(g)) continue;
    rows.push_back(gb::normalize(
        laurent_ring::to_ring_at(g, clearing_shift(g, nvars), 0, x0), order));
  }
  std::vector<std::vector<gb::Term>> ideal;
  if (nvars > 0) {
    gb::Monomial all;
    for (std::size_t k = x0; k < total; ++k) all.e[k] = 1;
    ideal.push_back({gb::Term{all, 0, Integer(1)}, gb::Term{gb::Monomial{}, 0, Integer(-1)}});
  }
  for (std::size_t k = 0; k < r; ++k) {
    gb::Monomial lhs, rhs;
    lhs.e[k] = 1;
    for (std::size_t j = 0; j < nvars; ++j) {
      long b = lattice_basis[k][j];
      if (b < 0) lhs.e[x0 + j] = static_cast<std::int32_t>(-b);
      if (b > 0) rhs.e[x0 + j] = static_cast<std::int32_t>(b);
    }
    ideal.push_back({gb::Term{lhs, 0, Integer(1)}, gb::Term{rhs, 0, Integer(-1)}});
  }
  if (r > 0) {
    gb::Monomial all;
    for (std::size_t k = 0; k <= r; ++k) all.e[k] = 1;
    ideal.push_back({gb::Term{all, 0, Integer(1)}, gb::Term{gb::Monomial{}, 0, Integer(-1)}});
  }
  for (std::size_t c = 0; c < length; ++c)
    for (auto rel : ideal) {
      for (auto& t : rel) t.comp = static_cast<int>(c);
      rows.push_back(gb::normalize(std::move(rel), order));
    }

  gb::Basis basis(std::move(rows), order, limits);
  std::vector<LaurentVector> out;
  for (const auto& e : basis.elements()) {
    if (order.involves_eliminated(e)) continue;
    auto v = from_ring(e, r, 0, length);
    if (is_zero(v)) continue;
    v = canonical_unit_multiple(std::move(v), r);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }
  return out;
}

nlohmann::json to_json(const ModulePresentation& p) {
  nlohmann::json j;
  j["n"] = p.nvars();
  j["d"] = p.rank();
  if (!p.m_is_free()) {
    auto gens = nlohmann::json::array();
    for (const auto& v : p.generators_M()) gens.push_back(to_json(v));
    j["gens_M"] = gens;
  }
  auto rels = nlohmann::json::array();
  for (const auto& v : p.relations()) rels.push_back(to_json(v));
  j["rels_N"] = rels;
  return j;
}

ModulePresentation module_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("module presentation must be a JSON object");
  auto read_count = [&](const char* key) -> std::size_t {
    if (!j.contains(key) || !j.at(key).is_number_integer() || j.at(key).get<long>() < 0)
      throw ParseError(std::string("module presentation needs a nonnegative integer \"") + key +
                       "\"");
    return j.at(key).get<std::size_t>();
  };
  std::size_t n = read_count("n"), d = read_count("d");
  auto read_list = [&](const char* key) {
    std::vector<LaurentVector> out;
    if (!j.contains(key)) return out;
    if (!j.at(key).is_array()) throw ParseError(std::string("\"") + key + "\" must be an array");
    for (const auto& v : j.at(key)) {
      auto vec = laurent_vector_from_json(v, n);
      if (vec.size() != d)
        throw ParseError(std::string("\"") + key + "\" vectors must have length " +
                         std::to_string(d));
      out.push_back(std::move(vec));
    }
    return out;
  };
  auto rels = read_list("rels_N");
  auto gens = read_list("gens_M");
  try {
    return ModulePresentation(n, d, std::move(rels), std::move(gens));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace metab
