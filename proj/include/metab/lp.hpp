#pragma once

// Exact linear programming over the rationals (two-phase simplex) and the
// strict positivity alternative used by the LocR refuter.

#include <cstddef>
#include <vector>

#include "metab/numeric.hpp"

namespace metab {

struct LinearConstraint {
  enum class Sense { Le, Ge, Eq };
  std::vector<Rational> a;
  Sense sense = Sense::Le;
  Rational b;
};

/// maximize objective . x subject to the constraints; variables are
/// nonnegative unless marked free.
struct LinearProgram {
  std::size_t nvars = 0;
  std::vector<bool> free_var;
  std::vector<LinearConstraint> constraints;
  std::vector<Rational> objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  Rational value;
};

LpResult solve_lp(const LinearProgram& lp);

/// Either x with sum_j x_j g_j > 0 in every coordinate, or (Gordan) a
/// nonnegative lambda with sum lambda = 1 and g_j . lambda = 0 for every j.
struct PositivityResult {
  bool feasible = false;
  std::vector<Rational> x;
  std::vector<Rational> lambda;
};

/// `rows` are the vectors g_j, each of length k.
PositivityResult strictly_positive_combination(const std::vector<std::vector<Rational>>& rows,
                                               std::size_t k);

/// Checks a Gordan certificate exactly.
bool verify_gordan(const std::vector<std::vector<Rational>>& rows,
                   const std::vector<Rational>& lambda);

}  // namespace metab
