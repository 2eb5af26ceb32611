#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "metab/error.hpp"
#include "metab/geometry.hpp"
#include "metab/posalg.hpp"

using namespace metab;
using testutil::poly;

namespace {

const std::vector<Exponent> kSteps{{-2, 3}, {2, 0}, {0, -2}};

LaurentVector fig7() {
  return {poly(2, {{1, {0, 0}}, {1, {2, -1}}}), poly(2, {{1, {-2, 3}}}),
          poly(2, {{1, {2, 3}}, {1, {3, 1}}})};
}

}  // namespace

TEST_CASE("position polynomials") {
  auto g = graph_from_positions(fig7(), kSteps);
  CHECK(g.size() == 5);
  CHECK(position_polynomials(g) == fig7());
  GGraph one({{1}}, {{{0}, 1}});
  CHECK(position_polynomials(one) == LaurentVector{poly(1, {{1, {0}}})});
  GGraph ip({{1}, {-1}}, {{{0}, 1}, {{1}, 2}});
  LaurentVector fip{poly(1, {{1, {0}}}), poly(1, {{1, {1}}})};
  CHECK(position_polynomials(ip) == fip);
  CHECK(graph_from_positions(fip, {{1}, {-1}}) == ip);
  auto doubled = graph_from_positions({poly(1, {{2, {3}}})}, {{1}});
  CHECK(doubled.size() == 2);
  CHECK_THROWS_AS(graph_from_positions({poly(1, {{-1, {0}}})}, {{1}}), PreconditionError);
}

TEST_CASE("Mv and Ov") {
  auto up = Direction::from_integers({0, 1});
  CHECK(Mv({1, 2, 3}, fig7(), up) == IndexSet{2, 3});
  CHECK(Ov(kSteps, up) == IndexSet{1, 3});
  auto up7 = Direction::from_integers({0, 7});
  CHECK(Mv({1, 2, 3}, fig7(), up7) == IndexSet{2, 3});
  CHECK(Ov(kSteps, up7) == IndexSet{1, 3});
  CHECK(Mv({1}, fig7(), Direction::from_integers({4, -1})) == IndexSet{1});
  LaurentVector zeros{LaurentPoly(2), LaurentPoly(2)};
  CHECK(Mv({1, 2}, zeros, up) == IndexSet{1, 2});
}

TEST_CASE("symmetry, full image and neutrality") {
  LaurentVector f{poly(1, {{1, {0}}}), poly(1, {{1, {1}}})};
  CHECK(check_symmetry(f, {{1}, {-1}}));
  CHECK(check_full_image(f));
  CHECK_FALSE(check_full_image({poly(1, {{1, {0}}}), LaurentPoly(1)}));
  auto m = std::make_shared<const ModulePresentation>(ModulePresentation::free(1, 1));
  Instance inst(m, {{poly(1, {{1, {0}}})}, {poly(1, {{-1, {-1}}})}}, {{1}, {-1}});
  CHECK(check_neutral(f, inst));
  CHECK_THROWS_AS(check_neutral({poly(1, {{1, {0}}}), LaurentPoly(1)}, inst), PreconditionError);
}

TEST_CASE("the accessibility condition") {
  LaurentVector f{poly(1, {{1, {0}}}), poly(1, {{1, {1}}})};
  CHECK(check_condition(f, {1, 2}, {}, {{1}, {-1}}).holds);
  auto loop = check_condition({poly(1, {{1, {0}}})}, {1}, {}, {{0}});
  CHECK_FALSE(loop.holds);
  CHECK(loop.violating.has_value());
  CHECK(check_condition({poly(1, {{1, {0}}})}, {1}, {1}, {{0}}).holds);
  CHECK_THROWS_AS(check_condition({LaurentPoly(1)}, {1}, {}, {{0}}), PreconditionError);
}

TEST_CASE("condition invariances and agreement with the graph side") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> st(-2, 2), pos(-2, 2);
  std::uniform_int_distribution<int> edges(1, 7), sc(1, 4);
  int checked = 0;
  for (int t = 0; t < 150; ++t) {
    std::size_t K = 2 + t % 2;
    std::vector<Exponent> steps;
    for (std::size_t i = 0; i < K; ++i) steps.push_back({st(rng), st(rng)});
    // The last label is a loop; it closes vertices that have no other way out.
    steps.push_back({0, 0});
    GGraph g(steps);
    for (int k = edges(rng); k > 0; --k)
      g.add_edge({pos(rng), pos(rng)}, 1 + static_cast<int>(rng() % K));
    // Every vertex gets an outgoing edge, so both sides use the same hull.
    auto verts = g.vertices();
    for (const auto& v : verts) {
      bool has_out = false;
      for (const auto& e : g.edges()) has_out = has_out || e.s == v;
      if (has_out) continue;
      int label = static_cast<int>(K) + 1;
      for (std::size_t i = 0; i < K; ++i) {
        Exponent d{v[0] + steps[i][0], v[1] + steps[i][1]};
        if (std::binary_search(verts.begin(), verts.end(), d)) label = static_cast<int>(i) + 1;
      }
      g.add_edge(v, label);
    }
    // The two sides only agree on full-dimensional hulls: a direction normal
    // to a lower-dimensional hull selects the whole hull, which is no strict face.
    if (convex_hull(g.vertices()).dimension() < 2) continue;
    K = steps.size();
    auto f = position_polynomials(g);
    auto I = all_indices(K);
    bool poly_side = check_condition(f, I, {}, steps).holds;
    CHECK(poly_side == is_face_accessible(g).accessible);
    LaurentVector scaled = f;
    long c = sc(rng);
    for (auto& p : scaled) p *= Rational(c);
    CHECK(check_condition(scaled, I, {}, steps).holds == poly_side);
    Exponent z{pos(rng), pos(rng)};
    LaurentVector moved = f;
    for (auto& p : moved) p = p.shifted(z);
    CHECK(check_condition(moved, I, {}, steps).holds == poly_side);
    ++checked;
  }
  CHECK(checked > 100);
}
