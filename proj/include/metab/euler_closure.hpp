#pragma once
// Unions of translates of a symmetric face-accessible graph that become
// connected, hence Eulerian.
#include <vector>

#include "json.hpp"
#include "metab/ggraph.hpp"

namespace metab {

struct ClosureResult {
  std::vector<Exponent> translations;  // sorted
  GGraph graph;
  long N = 1;
};

/// z with z + C contained in N * C, where C = conv(V(g)); sorted.
std::vector<Exponent> scaled_translations(const GGraph& g, long N);

/// Tries N = 1, 2, ..., max_N and returns the first connected union of
/// g + z over z in S_N. Throws PreconditionError naming the failed predicate
/// and BudgetExhausted past max_N.
ClosureResult eulerian_closure(const GGraph& g, long max_N = 16);

nlohmann::json to_json(const ClosureResult& r);

}  // namespace metab
