#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "metab/algebra.hpp"
#include "metab/error.hpp"
#include "metab/zlattice.hpp"

using namespace metab;
using testutil::poly;

namespace {

std::shared_ptr<const ModulePresentation> free_module(std::size_t n, std::size_t d) {
  return std::make_shared<const ModulePresentation>(ModulePresentation::free(n, d));
}

// f and g differ by a unit +-X^z.
bool unit_equivalent(const LaurentVector& f, const LaurentVector& g) {
  if (f.size() != g.size()) return false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero() != g[i].is_zero()) return false;
    if (f[i].is_zero()) continue;
    Exponent z = g[i].min_exponents() - f[i].min_exponents();
    for (int sign : {1, -1}) {
      bool ok = true;
      for (std::size_t k = 0; k < f.size() && ok; ++k)
        ok = f[k].shifted(z) * Rational(sign) == g[k];
      if (ok) return true;
    }
    return false;
  }
  return true;
}

}  // namespace

TEST_CASE("submodule membership over the Laurent ring") {
  LaurentSubmodule ideal(1, 1, {{poly(1, {{1, {1}}, {-1, {0}}})}});
  CHECK(ideal.contains({poly(1, {{1, {2}}, {-1, {0}}})}));
  CHECK(ideal.contains({poly(1, {{1, {-3}}, {-1, {0}}})}));
  CHECK_FALSE(ideal.contains({poly(1, {{1, {0}}})}));

  LaurentSubmodule two_x(1, 1, {{poly(1, {{2, {0}}})}, {poly(1, {{1, {1}}})}});
  CHECK(two_x.contains({poly(1, {{1, {0}}})}));

  LaurentSubmodule std_basis(2, 2, {{poly(2, {{1, {0, 0}}}), LaurentPoly(2)},
                                    {LaurentPoly(2), poly(2, {{1, {0, 0}}})}});
  CHECK(std_basis.contains({poly(2, {{5, {-1, 3}}}), poly(2, {{-2, {4, 0}}})}));
  auto b = std_basis.basis();
  CHECK(b.size() == 2);

  LaurentSubmodule two(0, 1, {{poly(0, {{2, {}}})}});
  CHECK(two.contains({poly(0, {{6, {}}})}));
  CHECK_FALSE(two.contains({poly(0, {{3, {}}})}));
}

TEST_CASE("membership is invariant under monomial units") {
  std::mt19937_64 rng(11);
  LaurentSubmodule m(2, 2,
                     {{poly(2, {{1, {1, 0}}, {-1, {0, 0}}}), poly(2, {{2, {0, 1}}})},
                      {poly(2, {{3, {0, 0}}}), poly(2, {{1, {0, -1}}, {1, {1, 1}}})}});
  std::uniform_int_distribution<long> z(-3, 3);
  for (int t = 0; t < 20; ++t) {
    auto h1 = testutil::random_poly(rng, 2, 2, 2, 3), h2 = testutil::random_poly(rng, 2, 2, 2, 3);
    LaurentVector v = scale(h1, m.generators()[0]) + scale(h2, m.generators()[1]);
    CHECK(m.contains(v));
    Exponent s{z(rng), z(rng)};
    LaurentVector w = v;
    for (auto& p : w) p = p.shifted(s);
    CHECK(m.contains(w));
    LaurentVector off = w;
    off[0] += poly(2, {{1, {0, 0}}});
    // Adding 1 to the first entry leaves M iff (1, 0) is not in M.
    CHECK(m.contains(off) == m.contains({poly(2, {{1, {0, 0}}}), LaurentPoly(2)}));
  }
}

TEST_CASE("zero test in a quotient") {
  auto y = std::make_shared<const ModulePresentation>(
      1, 1, std::vector<LaurentVector>{{poly(1, {{1, {1}}, {-1, {0}}})}});
  CHECK(is_zero_in_Y(ModuleElement::zero(y)));
  CHECK(is_zero_in_Y(ModuleElement({poly(1, {{1, {3}}, {-1, {0}}})}, y)));
  CHECK_FALSE(is_zero_in_Y(ModuleElement({poly(1, {{1, {0}}})}, y)));
  auto f = free_module(1, 1);
  CHECK_FALSE(is_zero_in_Y(ModuleElement({poly(1, {{1, {0}}})}, f)));
  CHECK_THROWS_AS(ModuleElement({poly(1, {{1, {0}}})}, y) + ModuleElement::zero(f),
                  DimensionMismatch);
}

TEST_CASE("syzygies of small instances") {
  auto f = free_module(1, 1);
  SyzygyInstance inverse_pair{f, {{poly(1, {{1, {0}}})}, {poly(1, {{-1, {-1}}})}}, {{1}, {-1}}};
  auto basis = syzygy_MZ(inverse_pair);
  REQUIRE(basis.generators.size() == 1);
  CHECK(unit_equivalent(basis.generators[0], {poly(1, {{1, {-1}}}), poly(1, {{1, {0}}})}));

  auto r = residual({poly(1, {{1, {-1}}}), poly(1, {{1, {0}}})}, inverse_pair);
  CHECK(r.is_zero());
  auto r2 = residual({poly(1, {{1, {0}}}), LaurentPoly(1)}, inverse_pair);
  CHECK(r2.symmetry == poly(1, {{1, {1}}, {-1, {0}}}));
  CHECK_FALSE(r2.neutral_is_zero);
  CHECK(residual(zero_vector(1, 2), inverse_pair).is_zero());

  SyzygyInstance trivial{f, {{LaurentPoly(1)}}, {{0}}};
  auto tb = syzygy_MZ(trivial);
  REQUIRE(tb.generators.size() == 1);
  CHECK(unit_equivalent(tb.generators[0], {poly(1, {{1, {0}}})}));

  SyzygyInstance one_way{f, {{poly(1, {{1, {0}}})}}, {{1}}};
  CHECK(syzygy_MZ(one_way).generators.empty());
}

TEST_CASE("syzygies in a quotient module") {
  // Y = Z[X^+-1] / (X - 1): generator (1, 1) and (0, -1).
  auto y = std::make_shared<const ModulePresentation>(
      1, 1, std::vector<LaurentVector>{{poly(1, {{1, {1}}, {-1, {0}}})}});
  SyzygyInstance inst{y, {{poly(1, {{1, {0}}})}, {LaurentPoly(1)}}, {{1}, {-1}}};
  auto basis = syzygy_MZ(inst);
  CHECK_FALSE(basis.generators.empty());
  for (const auto& g : basis.generators) CHECK(residual(g, inst).is_zero());
  // f = (1, X) has sum f_i y_i = 1, not in N, so not a syzygy; (X-1, X^2-X) is.
  CHECK_FALSE(residual({poly(1, {{1, {0}}}), poly(1, {{1, {1}}})}, inst).is_zero());
  LaurentVector g{poly(1, {{1, {1}}, {-1, {0}}}), poly(1, {{1, {2}}, {-1, {1}}})};
  CHECK(residual(g, inst).is_zero());
  LaurentSubmodule span(1, 2, basis.generators);
  CHECK(span.contains(g));
}

TEST_CASE("random syzygy bases have zero residual and are closed") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> step(-2, 2);
  for (int trial = 0; trial < 6; ++trial) {
    std::size_t n = 1 + trial % 2, d = 1 + (trial / 2) % 2, K = 2 + trial % 3;
    std::vector<LaurentVector> rels;
    if (trial % 3 == 0) {
      LaurentVector rel;
      for (std::size_t c = 0; c < d; ++c) rel.push_back(testutil::random_poly(rng, n, 2, 1, 2));
      rels.push_back(rel);
    }
    auto pres = std::make_shared<const ModulePresentation>(n, d, rels);
    SyzygyInstance inst{pres, {}, {}};
    for (std::size_t i = 0; i < K; ++i) {
      LaurentVector y;
      for (std::size_t c = 0; c < d; ++c) y.push_back(testutil::random_poly(rng, n, 2, 1, 2));
      inst.ys.push_back(y);
      Exponent a(n);
      for (auto& x : a) x = step(rng);
      inst.steps.push_back(a);
    }
    auto basis = syzygy_MZ(inst);
    for (const auto& g : basis.generators) CHECK(residual(g, inst).is_zero());
    for (int k = 0; k < 5 && !basis.generators.empty(); ++k) {
      LaurentVector sum = zero_vector(n, K);
      for (const auto& g : basis.generators)
        sum = sum + scale(testutil::random_poly(rng, n, 2, 2, 3), g);
      CHECK(residual(sum, inst).is_zero());
    }
  }
}

TEST_CASE("lifted syzygies span the module found by elimination") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> step(-2, 2);
  SyzygyOptions lifted;
  lifted.elimination_limits.max_basis_size = 0;
  for (int trial = 0; trial < 8; ++trial) {
    std::size_t n = 1 + trial % 2, d = 1 + (trial / 4), K = 2 + trial % 2;
    std::vector<LaurentVector> rels;
    if (trial % 3 == 1) {
      LaurentVector rel;
      for (std::size_t c = 0; c < d; ++c) rel.push_back(testutil::random_poly(rng, n, 2, 1, 2));
      rels.push_back(rel);
    }
    auto pres = std::make_shared<const ModulePresentation>(n, d, rels);
    SyzygyInstance inst{pres, {}, {}};
    for (std::size_t i = 0; i < K; ++i) {
      LaurentVector y;
      for (std::size_t c = 0; c < d; ++c) y.push_back(testutil::random_poly(rng, n, 2, 1, 2));
      inst.ys.push_back(y);
      Exponent a(n);
      for (auto& x : a) x = step(rng);
      inst.steps.push_back(a);
    }
    auto a = syzygy_MZ(inst).generators;
    auto b = syzygy_MZ(inst, lifted).generators;
    for (const auto& g : b) CHECK(residual(g, inst).is_zero());
    CHECK(a.empty() == b.empty());
    if (a.empty() || b.empty()) continue;
    LaurentSubmodule span_a(n, K, a), span_b(n, K, b);
    for (const auto& g : a) CHECK(span_b.contains(g));
    for (const auto& g : b) CHECK(span_a.contains(g));
  }
}

TEST_CASE("a free module syzygy with a single generator") {
  // Three generators in rank one over two variables; the module is cyclic.
  auto pres = free_module(2, 1);
  SyzygyInstance inst{pres,
                      {{poly(2, {{1, {1, 0}}})},
                       {poly(2, {{2, {-1, -1}}, {2, {1, -1}}})},
                       {poly(2, {{1, {0, -1}}, {-2, {1, -1}}})}},
                      {{-2, -2}, {-2, 0}, {-2, 1}}};
  auto basis = syzygy_MZ(inst);
  REQUIRE(basis.generators.size() == 1);
  CHECK(residual(basis.generators[0], inst).is_zero());
}

TEST_CASE("syzygies without variables match the integer kernel") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> co(-3, 3);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t d = 1 + trial % 2, K = 2 + trial % 3;
    auto pres = std::make_shared<const ModulePresentation>(ModulePresentation::free(0, d));
    SyzygyInstance inst{pres, {}, {}};
    IntMatrix a(d, IntVector(K));
    for (std::size_t i = 0; i < K; ++i) {
      LaurentVector y;
      for (std::size_t c = 0; c < d; ++c) {
        long v = co(rng);
        a[c][i] = v;
        y.push_back(poly(0, {{v, {}}}));
      }
      inst.ys.push_back(y);
      inst.steps.push_back({});
    }
    auto basis = syzygy_MZ(inst);
    IntMatrix kernel = integer_kernel(a, K);
    // Same lattice: each side lies in the other's span.
    IntMatrix ours;
    for (const auto& g : basis.generators) {
      IntVector row;
      for (const auto& p : g) row.push_back(p.coefficient({}).get_num());
      ours.push_back(row);
    }
    CHECK(hermite_normal_form(ours) == hermite_normal_form(kernel));
  }
}

TEST_CASE("restriction to a sublattice") {
  // M = <(X - 1)> in rank 1, L = 2Z: M cap Z[X^+-2] = <X^2 - 1>.
  std::vector<LaurentVector> gens{{poly(1, {{1, {1}}, {-1, {0}}})}};
  auto r = restrict_to_sublattice(gens, 1, 1, {{2}});
  LaurentSubmodule restricted(1, 1, r);
  CHECK(restricted.contains({poly(1, {{1, {1}}, {-1, {0}}})}));  // T - 1 = X^2 - 1
  CHECK_FALSE(restricted.contains({poly(1, {{1, {0}}})}));
  CHECK_FALSE(restricted.contains({poly(1, {{2, {0}}})}));

  // L = 0: M cap Z = Z * (value set); (X - 1) contains no nonzero constant.
  CHECK(restrict_to_sublattice(gens, 1, 1, {}).empty());
  std::vector<LaurentVector> two_x{{poly(1, {{2, {0}}, {1, {1}}})}};
  auto c = restrict_to_sublattice({{poly(1, {{2, {0}}})}}, 1, 1, {});
  REQUIRE(c.size() == 1);
  CHECK(c[0][0] == poly(0, {{2, {}}}));
  (void)two_x;
}

TEST_CASE("module presentation json") {
  auto j = nlohmann::json::parse(R"({"n":1,"d":1,"rels_N":[[[{"c":1,"e":[1]},{"c":-1,"e":[0]}]]]})");
  auto p = module_from_json(j);
  CHECK(p.rank() == 1);
  CHECK(p.relations().size() == 1);
  CHECK(module_from_json(to_json(p)).relations() == p.relations());
  CHECK_THROWS_AS(module_from_json(nlohmann::json::parse(R"({"n":1})")), ParseError);
  CHECK_THROWS_AS(module_from_json(nlohmann::json::parse(R"({"n":1,"d":2,"rels_N":[[[]]]})")),
                  ParseError);
}
