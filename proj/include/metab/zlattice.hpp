#pragma once

// Integer lattices: Hermite and Smith normal forms over Z.

#include <cstddef>
#include <optional>
#include <vector>

#include "metab/laurent.hpp"
#include "metab/numeric.hpp"

namespace metab {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

IntVector to_int_vector(const Exponent& a);
Exponent to_exponent(const IntVector& v);

/// Row-style Hermite normal form of the lattice spanned by the rows: nonzero
/// rows only, strictly increasing pivot columns, positive pivots, entries above
/// each pivot reduced into [0, pivot).
IntMatrix hermite_normal_form(IntMatrix rows);

std::size_t lattice_rank(const std::vector<Exponent>& generators, std::size_t n);

/// True iff the vectors generate Z^n as a group.
bool generates_full_lattice(const std::vector<Exponent>& generators, std::size_t n);

/// Coordinates c with sum c_i basis_i = target, if target lies in the lattice.
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, const IntVector& target);

struct SmithForm {
  IntMatrix left;      // unimodular, rows x rows
  IntMatrix diagonal;  // same shape as the input
  IntMatrix right;     // unimodular, cols x cols
};

/// left * A * right = diagonal with d_1 | d_2 | ... >= 0.
SmithForm smith_normal_form(const IntMatrix& a);

/// Basis of the integer kernel {x in Z^cols : A x = 0}.
IntMatrix integer_kernel(const IntMatrix& a, std::size_t cols);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

}  // namespace metab
