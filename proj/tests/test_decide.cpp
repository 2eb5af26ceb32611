#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "helpers.hpp"
#include "metab/decide.hpp"
#include "metab/error.hpp"
#include "metab/zlattice.hpp"
#include "oracles.hpp"

using namespace metab;
using testutil::load_instance;
using testutil::poly;

namespace {

Instance free_instance(std::size_t n, std::size_t d, std::vector<LaurentVector> ys,
                       std::vector<Exponent> steps) {
  auto m = std::make_shared<const ModulePresentation>(ModulePresentation::free(n, d));
  return Instance(m, std::move(ys), std::move(steps));
}

// Independent check of a refutation: the strict system in x is infeasible.
bool oracle_confirms(const Refutation& r) {
  std::size_t K = r.lambda.size();
  std::vector<oracle::Row> rows(K);
  for (std::size_t i = 0; i < K; ++i)
    for (const auto& g : r.rows) rows[i].push_back(g[i]);
  return !oracle::strict_system_feasible(rows, r.rows.size());
}

}  // namespace

TEST_CASE("procedure A") {
  auto ip = load_instance("inverse_pair");
  auto v = procedure_A(ip, Budget{});
  REQUIRE(v.kind == Verdict::Kind::Yes);
  CHECK(v.f == LaurentVector{poly(1, {{1, {0}}}), poly(1, {{1, {1}}})});
  CHECK(verify_witness(v.word, ip));
  CHECK(verify_witness(*v.graph, ip));

  auto one = free_instance(1, 1, {{poly(1, {{1, {0}}})}}, {{0}});
  auto u = procedure_A(one, Budget{});
  CHECK(u.kind == Verdict::Kind::Unknown);
  CHECK(u.report["reason"] == "syzygy module is zero");

  // Explicit inverse pairs in two variables.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 3; ++t) {
    LaurentVector y{testutil::random_poly(rng, 2, 2, 1, 2)};
    LaurentVector z{testutil::random_poly(rng, 2, 2, 1, 2)};
    auto base = free_instance(2, 1, {y, z}, {{1, 0}, {0, 1}});
    auto gi = base.generator(0).inverse(), hi = base.generator(1).inverse();
    auto inst = free_instance(2, 1, {y, gi.y().rep(), z, hi.y().rep()},
                              {{1, 0}, gi.a(), {0, 1}, hi.a()});
    auto w = procedure_A(inst, Budget{});
    REQUIRE(w.kind == Verdict::Kind::Yes);
    CHECK(verify_witness(w.word, inst));
  }
}

TEST_CASE("LocR refuter") {
  auto conflict = load_instance("no_sign_conflict");
  auto v = locr_refute(conflict, Budget{});
  REQUIRE(v.kind == Verdict::Kind::No);
  REQUIRE(v.refutations.size() == 1);
  CHECK(v.refutations[0].point == std::vector<Rational>{1});
  CHECK(verify_refutation(v.refutations[0], conflict));
  CHECK(oracle_confirms(v.refutations[0]));

  auto ip = load_instance("inverse_pair");
  CHECK(locr_refute(ip, Budget{}).kind == Verdict::Kind::Unknown);

  auto one_way = load_instance("one_way");
  auto w = locr_refute(one_way, Budget{});
  REQUIRE(w.kind == Verdict::Kind::No);
  CHECK(w.refutations[0].rows.empty());
  CHECK(oracle_confirms(w.refutations[0]));

  // A tampered certificate is rejected.
  auto bad = v.refutations[0];
  bad.lambda = {Rational(1), Rational(0)};
  CHECK_FALSE(verify_refutation(bad, conflict));
}

TEST_CASE("LocR samples") {
  auto s = locr_samples(2, 9, 0);
  REQUIRE(s.size() == 9);
  CHECK(s[0] == std::vector<Rational>{1, 1});
  CHECK(s == locr_samples(2, 9, 0));
  for (const auto& pt : s)
    for (const auto& q : pt) CHECK(q > 0);
  CHECK(locr_samples(3, 0, 0).empty());
  CHECK(locr_samples(0, 5, 0).size() == 1);
}

TEST_CASE("decide_group") {
  auto ip = load_instance("inverse_pair");
  auto v = decide_group(ip, Budget{});
  REQUIRE(v.kind == Verdict::Kind::Yes);
  CHECK(v.word.size() == 2);
  CHECK(verify_witness(v.word, ip));

  auto one_way = load_instance("one_way");
  CHECK(decide_group(one_way, Budget{}).kind == Verdict::Kind::No);

  Budget tiny;
  tiny.samples = 0;
  tiny.max_degree = 0;
  CHECK(decide_group(load_instance("yes_closing_word_00"), tiny).kind != Verdict::Kind::No);
  CHECK(decide_group(one_way, tiny).kind == Verdict::Kind::Unknown);

  auto even = free_instance(1, 1, {{poly(1, {{1, {0}}})}, {LaurentPoly(1)}}, {{2}, {-2}});
  CHECK_THROWS_WITH_AS(decide_group(even, Budget{}), doctest::Contains("(2)"), PreconditionError);

  // Deterministic output.
  // Fig. 2's steps only span 2Z x Z, so the group problem is posed per subset.
  auto fig2 = load_instance("fig2");
  CHECK_THROWS_AS(decide_group(fig2, Budget{}), PreconditionError);
  auto a = to_json(decide_identity(fig2, Budget{})).dump();
  auto b = to_json(decide_identity(fig2, Budget{})).dump();
  CHECK(a == b);
  CHECK(a.find("\"yes\"") != std::string::npos);
}

TEST_CASE("identity and inverse problems") {
  // g, g^-1 and a non-invertible h.
  auto inst = free_instance(1, 1, {{poly(1, {{1, {0}}})}, {poly(1, {{-1, {-1}}})}, {LaurentPoly(1)}},
                            {{1}, {-1}, {1}});
  auto v = decide_identity(inst, Budget{});
  REQUIRE(v.kind == Verdict::Kind::Yes);
  CHECK(v.subset == std::vector<int>{1, 2});
  CHECK(evaluate_word(inst, v.word).is_neutral());

  auto one_way = load_instance("one_way");
  auto n = decide_identity(one_way, Budget{});
  CHECK(n.kind == Verdict::Kind::No);
  CHECK(n.refutations.size() == 1);

  auto ip = load_instance("inverse_pair");
  CHECK(decide_inverse(ip, 1, Budget{}).kind == Verdict::Kind::Yes);
  CHECK_THROWS_AS(decide_inverse(ip, 3, Budget{}), PreconditionError);
  // Every subset containing h has a syzygy module without positive elements.
  auto h = decide_inverse(inst, 3, Budget{});
  CHECK(h.kind == Verdict::Kind::No);
  CHECK(h.refutations.size() == 4);

  // Subsets spanning a proper sublattice are decided by restriction.
  auto even = free_instance(1, 1, {{poly(1, {{1, {0}}})}, {poly(1, {{-1, {-2}}})}}, {{2}, {-2}});
  auto e = decide_identity(even, Budget{});
  REQUIRE(e.kind == Verdict::Kind::Yes);
  CHECK(evaluate_word(even, e.word).is_neutral());
  auto flat = free_instance(2, 1, {{poly(2, {{1, {0, 0}}})}, {poly(2, {{-1, {0, 0}}})}}, {{0, 0}, {0, 0}});
  CHECK(decide_identity(flat, Budget{}).kind == Verdict::Kind::Yes);
  auto flat_no = free_instance(2, 1, {{poly(2, {{1, {0, 0}}})}, {poly(2, {{1, {0, 0}}})}}, {{0, 0}, {0, 0}});
  auto fn = decide_identity(flat_no, Budget{});
  CHECK(fn.kind == Verdict::Kind::No);
  for (const auto& r : fn.refutations) CHECK(verify_refutation(r, flat_no));
}

TEST_CASE("witness verification") {
  auto ip = load_instance("inverse_pair");
  CHECK(verify_witness(Word{1, 2}, ip));
  CHECK(verify_witness(Word{2, 1}, ip));
  CHECK_FALSE(verify_witness(Word{1}, ip));
  CHECK_FALSE(verify_witness(Word{}, ip));
  CHECK_FALSE(verify_witness(Word{1, -1}, ip));
  auto fig2 = load_instance("fig2");
  auto g = graph_of_word(fig2.steps, parse_word("1 2 2 3 3 1 3"));
  CHECK(g.size() == 7);
  CHECK(verify_witness(g, fig2));
  CHECK(verify_witness(parse_word("1 2 2 3 3 1 3"), fig2));
}

TEST_CASE("brute-force oracle") {
  auto ip = load_instance("inverse_pair");
  CHECK(oracle_bfs(ip, 2) == Word{1, 2});
  CHECK_FALSE(oracle_bfs(ip, 1).has_value());
  CHECK_FALSE(oracle_bfs(ip, 0).has_value());
  CHECK_FALSE(oracle_bfs(load_instance("one_way"), 8).has_value());
  auto w = oracle_bfs(load_instance("fig2"), 7);
  REQUIRE(w.has_value());
  CHECK(w->size() == 7);
  CHECK(verify_witness(*w, load_instance("fig2")));
}

TEST_CASE("soundness on random instances") {
  std::mt19937_64 rng(91);
  std::uniform_int_distribution<long> st(-2, 2);
  int yes = 0, no = 0;
  Budget b;
  b.max_degree = 1;
  b.samples = 8;
  for (int t = 0; t < 25; ++t) {
    std::size_t K = 2 + t % 2;
    std::vector<LaurentVector> ys;
    std::vector<Exponent> steps;
    for (std::size_t i = 0; i < K; ++i) {
      ys.push_back({testutil::random_poly(rng, 1, 2, 1, 1)});
      steps.push_back({st(rng)});
    }
    if (!generates_full_lattice(steps, 1)) continue;
    auto inst = free_instance(1, 1, ys, steps);
    auto v = decide_group(inst, b);
    auto oracle = oracle_bfs(inst, 6);
    if (v.kind == Verdict::Kind::Yes) {
      ++yes;
      CHECK(verify_witness(v.word, inst));
    }
    if (v.kind == Verdict::Kind::No) {
      ++no;
      CHECK_FALSE(oracle.has_value());
      for (const auto& r : v.refutations) {
        CHECK(verify_refutation(r, inst));
        CHECK(oracle_confirms(r));
      }
    }
  }
  CHECK(yes + no > 0);
}
