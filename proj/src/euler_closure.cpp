#include "metab/euler_closure.hpp"

#include <algorithm>
#include <string>

#include "metab/error.hpp"
#include "metab/geometry.hpp"

namespace metab {

std::vector<Exponent> scaled_translations(const GGraph& g, long N) {
  if (g.empty()) throw PreconditionError("empty graph has no hull");
  if (N < 1) throw PreconditionError("scale must be positive");
  auto hull = convex_hull(g.vertices());
  const auto& vs = hull.vertices();
  const std::size_t n = g.nvars();
  Exponent lo(n), hi(n);
  for (std::size_t k = 0; k < n; ++k) {
    long mn = vs.front()[k], mx = vs.front()[k];
    for (const auto& u : vs) {
      mn = std::min(mn, u[k]);
      mx = std::max(mx, u[k]);
    }
    // z + u in N*C for every vertex u bounds each coordinate.
    lo[k] = (N - 1) * mn;
    hi[k] = (N - 1) * mx;
  }
  std::vector<Exponent> out;
  Exponent z = lo;
  Rational scale(N);
  while (true) {
    bool inside = true;
    for (const auto& u : vs)
      if (!hull.contains_scaled(to_rational(z + u), scale)) {
        inside = false;
        break;
      }
    if (inside) out.push_back(z);
    std::size_t k = 0;
    while (k < n && z[k] == hi[k]) z[k] = lo[k], ++k;
    if (k == n) break;
    ++z[k];
  }
  std::sort(out.begin(), out.end());
  return out;
}

ClosureResult eulerian_closure(const GGraph& g, long max_N) {
  if (g.empty()) throw PreconditionError("eulerian_closure: graph is empty");
  if (!is_symmetric(g)) throw PreconditionError("eulerian_closure: graph is not symmetric");
  if (!is_face_accessible(g).accessible)
    throw PreconditionError("eulerian_closure: graph is not face-accessible");
  if (!is_zn_generating(g)) throw PreconditionError("eulerian_closure: graph is not Z^n-generating");
  for (long N = 1; N <= max_N; ++N) {
    auto zs = scaled_translations(g, N);
    std::vector<GGraph> parts;
    for (const auto& z : zs) parts.push_back(translate(g, z));
    GGraph u = graph_union(parts);
    if (is_connected(u)) return ClosureResult{std::move(zs), std::move(u), N};
  }
  throw BudgetExhausted("eulerian_closure: no connected union up to N = " + std::to_string(max_N));
}

nlohmann::json to_json(const ClosureResult& r) {
  nlohmann::json zs = nlohmann::json::array();
  for (const auto& z : r.translations) zs.push_back(z);
  return {{"N", r.N}, {"translations", zs}, {"graph", to_json(r.graph)}};
}

}  // namespace metab
