#pragma once

// Strong Groebner bases of submodules of Z[x_1..x_k]^r.
//
// Coefficients stay in Z throughout: pairs produce both S-polynomials (lcm of
// leading coefficients) and G-polynomials (Bezout combination reaching their
// gcd), and reduction uses Euclidean division of leading coefficients. The
// result is a strong basis: every leading term of the module is divisible,
// coefficient included, by a leading term of the basis.

#include <array>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

#include "metab/numeric.hpp"

namespace metab::gb {

inline constexpr std::size_t kMaxVars = 14;

struct Monomial {
  std::array<std::int32_t, kMaxVars> e{};

  bool operator==(const Monomial&) const = default;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  Monomial operator/(const Monomial& other) const;  // requires divides
  static Monomial lcm(const Monomial& a, const Monomial& b);
};

struct Term {
  Monomial m;
  int comp = 0;
  Integer c;
};

/// A module element: terms sorted strictly decreasing in the active order.
using Vec = std::vector<Term>;

/// Module term order.
///
/// Terms compare first by a degrevlex order on the eliminated variables, then
/// by component group (components below `priority_components` dominate all
/// others), then degrevlex on the remaining variables, then component index.
class Order {
 public:
  Order(std::size_t nvars, std::vector<bool> eliminated, int priority_components = 0);

  std::size_t nvars() const { return nvars_; }
  int compare(const Monomial& a, int ca, const Monomial& b, int cb) const;
  int compare(const Term& a, const Term& b) const { return compare(a.m, a.comp, b.m, b.comp); }
  bool involves_eliminated(const Vec& v) const;
  bool in_priority(const Vec& v) const;  // any term lives in a priority component
  int priority_components() const { return priority_; }

 private:
  int degrevlex(const Monomial& a, const Monomial& b, bool elim_block) const;

  std::size_t nvars_;
  std::vector<bool> eliminated_;
  std::vector<std::size_t> elim_vars_, rest_vars_;
  int priority_;
};

/// Sorts and merges an unsorted term list into a canonical Vec.
Vec normalize(std::vector<Term> terms, const Order& order);

/// f - q * x^shift * g
Vec sub_scaled(const Vec& f, const Integer& q, const Monomial& shift, const Vec& g,
               const Order& order);

struct Limits {
  std::size_t max_basis_size = 4000;
  std::size_t max_pairs_processed = 200000;
  std::size_t max_coefficient_bits = 4096;
};

/// A combination of the input generators: comp is the generator index and the
/// monomial holds signed Laurent exponents. Terms are sorted by (comp, m).
using Cofactor = std::vector<Term>;

/// Cofactor tracking for syzygy computations. The first `tracked` generators
/// carry unit cofactors; the rest (relations) carry none. Ring monomials in
/// x_1..x_n, u with x_1...x_n u = 1 map to Laurent exponents, n = laurent_vars.
struct Tracking {
  std::size_t tracked = 0;
  std::size_t laurent_vars = 0;
};

class Basis {
 public:
  /// Buchberger completion over Z. Throws BudgetExhausted past the limits.
  Basis(std::vector<Vec> generators, Order order, Limits limits = {},
        std::optional<Tracking> tracking = std::nullopt);

  const std::vector<Vec>& elements() const { return elements_; }
  const Order& order() const { return order_; }

  /// With tracking: generators of the module of relations among the tracked
  /// generators modulo the untracked ones.
  const std::vector<Cofactor>& syzygies() const { return syzygies_; }

  /// Euclidean reduction of the leading terms, and of all terms when `full`;
  /// zero iff f is a member.
  Vec reduce(const Vec& f, bool full = true) const;
  bool contains(const Vec& f) const { return reduce(f, false).empty(); }

 private:
  struct Element {
    Vec v;
    Cofactor cof;
  };
  Element reduce_element(Element f, bool full) const;
  Element sub_scaled_element(const Element& f, const Integer& q, const Monomial& shift,
                             const Element& g) const;
  Monomial laurent_shift(const Monomial& ring) const;
  void minimize();

  Order order_;
  std::optional<Tracking> tracking_;
  std::vector<Element> all_;
  std::vector<bool> live_;
  std::size_t live_count_ = 0;
  std::vector<Vec> elements_;
  std::vector<Cofactor> syzygies_;
};

}  // namespace metab::gb
