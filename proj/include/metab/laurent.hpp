#pragma once

// Sparse multivariate Laurent polynomials with exact rational coefficients.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "metab/numeric.hpp"

namespace metab {

/// Exponent vector of a monomial X^a; entries may be negative.
using Exponent = std::vector<long>;

/// Graded-lexicographic comparison of exponent vectors of equal length.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

Exponent operator+(const Exponent& a, const Exponent& b);
Exponent operator-(const Exponent& a, const Exponent& b);
Exponent operator-(const Exponent& a);
Exponent zero_exponent(std::size_t n);
Rational dot(std::span<const Rational> v, const Exponent& a);
std::string exponent_to_string(const Exponent& a);

/// A nonzero rational direction v in the dual space.
class Direction {
 public:
  explicit Direction(std::vector<Rational> coords);
  static Direction from_integers(const std::vector<long>& coords);

  std::size_t size() const { return coords_.size(); }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](std::size_t i) const { return coords_[i]; }
  Rational dot(const Exponent& a) const { return metab::dot(coords_, a); }
  Direction scaled(const Rational& c) const;

  bool operator==(const Direction&) const = default;

 private:
  std::vector<Rational> coords_;
};

class LaurentPoly {
 public:
  using TermMap = std::map<Exponent, Rational, GrlexLess>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars) : nvars_(nvars) {}

  static LaurentPoly constant(std::size_t nvars, const Rational& c);
  static LaurentPoly monomial(const Exponent& a, const Rational& c = 1);
  static LaurentPoly variable(std::size_t nvars, std::size_t index);
  /// X^a - 1, the symmetry factor attached to a step a.
  static LaurentPoly step_factor(const Exponent& a);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  Rational coefficient(const Exponent& a) const;

  /// Adds c X^a, dropping the term if it cancels.
  void add_term(const Exponent& a, const Rational& c);

  /// Multiplication by the unit X^z.
  LaurentPoly shifted(const Exponent& z) const;
  /// Substitutes X_i -> X^{images[i]} (a monomial change of variables).
  LaurentPoly substitute_monomials(const std::vector<Exponent>& images,
                                   std::size_t target_nvars) const;

  bool is_integral() const;
  bool has_nonnegative_coefficients() const;
  Exponent min_exponents() const;  // componentwise; requires nonzero
  Exponent max_exponents() const;  // componentwise; requires nonzero
  long max_abs_exponent() const;   // 0 for the zero polynomial
  Rational max_abs_coefficient() const;

  LaurentPoly& operator+=(const LaurentPoly& other);
  LaurentPoly& operator-=(const LaurentPoly& other);
  LaurentPoly& operator*=(const Rational& c);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
  friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  bool operator==(const LaurentPoly& other) const;

  std::string to_string() const;

 private:
  void require_same(const LaurentPoly& other) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

LaurentPoly multiply(const LaurentPoly& p, const LaurentPoly& q);

/// deg_v(p) = max of v.a over the support; std::nullopt encodes -infinity.
std::optional<Rational> weighted_degree(const LaurentPoly& p, const Direction& v);

/// Sum of the terms of p attaining deg_v(p); in_v(0) = 0.
LaurentPoly initial(const LaurentPoly& p, const Direction& v);

/// Exact value at a point with strictly positive coordinates.
Rational evaluate_positive(const LaurentPoly& p, std::span<const Rational> r);

/// A vector of Laurent polynomials over a common variable count.
using LaurentVector = std::vector<LaurentPoly>;

LaurentVector zero_vector(std::size_t nvars, std::size_t length);
LaurentVector operator+(const LaurentVector& a, const LaurentVector& b);
LaurentVector scale(const LaurentPoly& h, const LaurentVector& v);
LaurentPoly dot(const LaurentVector& f, const LaurentVector& g);
bool is_zero(const LaurentVector& v);

// JSON: [{"c": "3/4", "e": [1,-2]}, ...]; the zero polynomial is [].
nlohmann::json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const nlohmann::json& j, std::size_t nvars);
nlohmann::json to_json(const LaurentVector& v);
LaurentVector laurent_vector_from_json(const nlohmann::json& j, std::size_t nvars);

}  // namespace metab
