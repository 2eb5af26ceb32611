#pragma once

// Position polynomials of G-graphs and the polynomial-side criteria for
// full image, symmetry, face-accessibility and neutrality.

#include <optional>
#include <vector>

#include "metab/ggraph.hpp"
#include "metab/group.hpp"
#include "metab/laurent.hpp"

namespace metab {

/// 1-based generator indices, sorted and distinct.
using IndexSet = std::vector<int>;

/// f_i = sum of X^{s(e)} over edges with label i.
LaurentVector position_polynomials(const GGraph& g);

/// Coefficient-many parallel edges per monomial. Throws PreconditionError on a
/// negative or fractional coefficient.
GGraph graph_from_positions(const LaurentVector& f, const std::vector<Exponent>& steps);

IndexSet Mv(const IndexSet& I, const LaurentVector& f, const Direction& v);
IndexSet Ov(const std::vector<Exponent>& steps, const Direction& v);

bool check_full_image(const LaurentVector& f);
bool check_symmetry(const LaurentVector& f, const std::vector<Exponent>& steps);
/// Requires symmetry; throws PreconditionError otherwise.
bool check_neutral(const LaurentVector& f, const Instance& inst);

struct ConditionResult {
  bool holds = true;
  std::optional<Direction> violating;
};

/// (O_v u J) n M_v(I, f) nonempty for every nonzero v, decided on the refined
/// fan of the support hull and the hyperplanes a_i^perp.
ConditionResult check_condition(const LaurentVector& f, const IndexSet& I, const IndexSet& J,
                                const std::vector<Exponent>& steps);

IndexSet all_indices(std::size_t K);

}  // namespace metab
