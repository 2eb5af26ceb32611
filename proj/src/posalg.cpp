#include "metab/posalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "metab/error.hpp"
#include "metab/geometry.hpp"

namespace metab {

IndexSet all_indices(std::size_t K) {
  IndexSet I;
  for (std::size_t i = 1; i <= K; ++i) I.push_back(static_cast<int>(i));
  return I;
}

LaurentVector position_polynomials(const GGraph& g) {
  LaurentVector f = zero_vector(g.nvars(), g.labels());
  for (const auto& e : g.edges()) f[static_cast<std::size_t>(e.label) - 1].add_term(e.s, Rational(1));
  return f;
}

GGraph graph_from_positions(const LaurentVector& f, const std::vector<Exponent>& steps) {
  if (f.size() != steps.size()) throw DimensionMismatch("one position polynomial per generator");
  GGraph g(steps);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (const auto& [a, c] : f[i].terms()) {
      if (c < 0 || !is_integer(c))
        throw PreconditionError("position polynomials need nonnegative integer coefficients");
      if (a.size() != g.nvars()) throw DimensionMismatch("monomial has the wrong dimension");
      for (Integer k = 0; k < c.get_num(); ++k) edges.push_back(Edge{a, static_cast<int>(i + 1)});
    }
  return GGraph(steps, std::move(edges));
}

IndexSet Mv(const IndexSet& I, const LaurentVector& f, const Direction& v) {
  std::optional<Rational> best;
  for (int i : I) {
    if (i < 1 || static_cast<std::size_t>(i) > f.size()) throw PreconditionError("index out of range");
    auto d = weighted_degree(f[static_cast<std::size_t>(i) - 1], v);
    if (d && (!best || *d > *best)) best = d;
  }
  if (!best) return I;  // every f_i is zero: all attain -infinity
  IndexSet out;
  for (int i : I) {
    auto d = weighted_degree(f[static_cast<std::size_t>(i) - 1], v);
    if (d && *d == *best) out.push_back(i);
  }
  return out;
}

IndexSet Ov(const std::vector<Exponent>& steps, const Direction& v) {
  IndexSet out;
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (v.dot(steps[i]) != 0) out.push_back(static_cast<int>(i + 1));
  return out;
}

bool check_full_image(const LaurentVector& f) {
  return std::none_of(f.begin(), f.end(), [](const LaurentPoly& p) { return p.is_zero(); });
}

bool check_symmetry(const LaurentVector& f, const std::vector<Exponent>& steps) {
  if (f.size() != steps.size()) throw DimensionMismatch("one position polynomial per generator");
  if (f.empty()) return true;
  LaurentPoly s(steps.front().size());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f[i].is_zero()) s += f[i] * LaurentPoly::step_factor(steps[i]);
  return s.is_zero();
}

bool check_neutral(const LaurentVector& f, const Instance& inst) {
  if (!check_symmetry(f, inst.steps))
    throw PreconditionError("the neutrality criterion applies to symmetric graphs only");
  LaurentVector sum = zero_vector(inst.nvars(), inst.rank());
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!f[i].is_zero()) sum = sum + scale(f[i], inst.ys[i]);
  return inst.module->in_N(sum);
}

ConditionResult check_condition(const LaurentVector& f, const IndexSet& I, const IndexSet& J,
                                const std::vector<Exponent>& steps) {
  if (f.size() != steps.size()) throw DimensionMismatch("one position polynomial per generator");
  std::vector<Exponent> support;
  for (int i : I) {
    if (i < 1 || static_cast<std::size_t>(i) > f.size()) throw PreconditionError("index out of range");
    for (const auto& [a, c] : f[static_cast<std::size_t>(i) - 1].terms()) support.push_back(a);
  }
  if (support.empty())
    throw PreconditionError("check_condition needs some f_i, i in I, to be nonzero");
  const std::size_t n = support.front().size();
  ConditionResult result;
  if (n == 0) {
    // No directions exist, so the condition holds vacuously.
    return result;
  }
  std::set<int> jset(J.begin(), J.end());
  // Only steps of indices in I \ J can matter; hyperplanes deduplicated up to scale.
  std::set<Exponent> planes;
  for (int i : I) {
    if (jset.count(i)) continue;
    Exponent a = steps[static_cast<std::size_t>(i) - 1];
    if (std::all_of(a.begin(), a.end(), [](long x) { return x == 0; })) continue;
    long g = 0;
    for (long x : a) g = std::gcd(g, std::labs(x));
    for (auto& x : a) x /= g;
    auto first = std::find_if(a.begin(), a.end(), [](long x) { return x != 0; });
    if (*first < 0)
      for (auto& x : a) x = -x;
    planes.insert(a);
  }
  auto cells = refined_fan({convex_hull(support)},
                           std::vector<Exponent>(planes.begin(), planes.end()));
  auto O_or_J = [&](const Direction& v, int i) {
    return jset.count(i) || v.dot(steps[static_cast<std::size_t>(i) - 1]) != 0;
  };
  for (const auto& cell : cells) {
    const Direction& v = cell.representative;
    auto m = Mv(I, f, v);
    if (std::none_of(m.begin(), m.end(), [&](int i) { return O_or_J(v, i); })) {
      result.holds = false;
      result.violating = v;
      return result;
    }
  }
  return result;
}

}  // namespace metab
