#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "metab/error.hpp"
#include "metab/group.hpp"
#include "metab/zlattice.hpp"

using namespace metab;
using testutil::poly;

namespace {

Instance inverse_pair() {
  auto m = std::make_shared<const ModulePresentation>(ModulePresentation::free(1, 1));
  return Instance(m, {{poly(1, {{1, {0}}})}, {poly(1, {{-1, {-1}}})}}, {{1}, {-1}});
}

// Module part of a word under x_i -> (e_i, e_i), collected letter by letter.
LaurentVector fox_image(std::size_t s, const Word& w) {
  LaurentVector y = zero_vector(s, s);
  Exponent prefix = zero_exponent(s);
  for (int letter : w) {
    std::size_t i = static_cast<std::size_t>(std::abs(letter)) - 1;
    if (letter > 0) {
      y[i].add_term(prefix, Rational(1));
      prefix[i] += 1;
    } else {
      prefix[i] -= 1;
      y[i].add_term(prefix, Rational(-1));
    }
  }
  return y;
}

}  // namespace

TEST_CASE("multiplication and inversion") {
  auto g = inverse_pair();
  auto e = GroupElement::neutral(g.module);
  auto x = g.generator(0);
  CHECK((e * x).equals(x));
  auto xi = x.inverse();
  CHECK(xi.a() == Exponent{-1});
  CHECK(xi.y().rep()[0] == poly(1, {{-1, {-1}}}));
  CHECK((x * xi).is_neutral());
  CHECK((x * g.generator(1)).is_neutral());
}

TEST_CASE("word evaluation") {
  auto g = inverse_pair();
  CHECK(evaluate_word(g, {}).is_neutral());
  CHECK(evaluate_word(g, {1, 2}).is_neutral());
  CHECK(evaluate_word(g, {1, -1}).is_neutral());
  CHECK_FALSE(evaluate_word(g, {1}).is_neutral());
  CHECK_THROWS_AS(evaluate_word(g, {3}), PreconditionError);

  auto m = std::make_shared<const ModulePresentation>(ModulePresentation::free(2, 1));
  Instance fig2(m, {zero_vector(2, 1), zero_vector(2, 1), zero_vector(2, 1)},
                {{-2, 3}, {2, 0}, {0, -2}});
  CHECK(evaluate_word(fig2, {1, 2, 2, 3, 3, 1, 3}).a() == Exponent{0, 0});
}

TEST_CASE("group laws on random elements") {
  std::mt19937_64 rng(99);
  auto m = std::make_shared<const ModulePresentation>(
      2, 2, std::vector<LaurentVector>{{poly(2, {{1, {1, 0}}, {-1, {0, 0}}}), LaurentPoly(2)}});
  std::uniform_int_distribution<long> st(-2, 2);
  auto rand_el = [&] {
    LaurentVector y{testutil::random_poly(rng, 2, 3, 2, 3), testutil::random_poly(rng, 2, 3, 2, 3)};
    return GroupElement(ModuleElement(y, m), Exponent{st(rng), st(rng)});
  };
  for (int t = 0; t < 40; ++t) {
    auto a = rand_el(), b = rand_el(), c = rand_el();
    CHECK(((a * b) * c).equals(a * (b * c)));
    CHECK((a * a.inverse()).is_neutral());
    CHECK((a.inverse() * a).is_neutral());
  }
  Instance inst(m, {}, {});
  for (int k = 0; k < 3; ++k) {
    auto el = rand_el();
    inst.ys.push_back(el.y().rep());
    inst.steps.push_back(el.a());
  }
  std::uniform_int_distribution<int> letter(1, 3), sign(0, 1), len(0, 5);
  for (int t = 0; t < 40; ++t) {
    Word w1, w2;
    for (int k = len(rng); k > 0; --k) w1.push_back(sign(rng) ? letter(rng) : -letter(rng));
    for (int k = len(rng); k > 0; --k) w2.push_back(sign(rng) ? letter(rng) : -letter(rng));
    Word w = w1;
    w.insert(w.end(), w2.begin(), w2.end());
    CHECK(evaluate_word(inst, w).equals(evaluate_word(inst, w1) * evaluate_word(inst, w2)));
  }
}

TEST_CASE("word parsing") {
  CHECK(parse_word("1 2 -2  3") == Word{1, 2, -2, 3});
  CHECK(parse_word("") == Word{});
  CHECK_THROWS_AS(parse_word("1 x"), ParseError);
  CHECK_THROWS_AS(parse_word("0"), ParseError);
  CHECK(word_to_string({1, -2}) == "1 -2");
}

TEST_CASE("instance json round trip") {
  auto g = inverse_pair();
  auto j = to_json(g);
  auto back = instance_from_json(j);
  CHECK(back.size() == 2);
  CHECK(back.ys == g.ys);
  CHECK(back.steps == g.steps);
  CHECK(to_json(back).dump() == j.dump());
  CHECK_THROWS_AS(instance_from_json(nlohmann::json::parse(R"({"module":{"n":1,"d":1}})")),
                  ParseError);
}

TEST_CASE("front-end for the free metabelian group") {
  MetabelianPresentation p{2, {}, {}};
  auto r = magnus_frontend(p, {{1}, {2}, {-1}, {-2}});
  CHECK(r.h_basis.empty());
  CHECK(r.instance.size() == 4);
  CHECK(r.instance.module->relations().empty());
  std::vector<Exponent> steps = r.instance.steps;
  CHECK(generates_full_lattice(steps, 2));

  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> letter(1, 2), sign(0, 1), len(0, 6);
  Instance letters = magnus_frontend(p, {{1}, {2}}).instance;
  for (int t = 0; t < 200; ++t) {
    Word u, v;
    for (int k = len(rng); k > 0; --k) u.push_back(sign(rng) ? letter(rng) : -letter(rng));
    for (int k = len(rng); k > 0; --k) v.push_back(sign(rng) ? letter(rng) : -letter(rng));
    auto gu = evaluate_word(letters, u), gv = evaluate_word(letters, v);
    CHECK(gu.y().rep() == fox_image(2, u));
    bool same_normal_form = fox_image(2, u) == fox_image(2, v) &&
                            gu.a() == gv.a();
    CHECK(gu.equals(gv) == same_normal_form);
  }
}

TEST_CASE("front-end with relators") {
  MetabelianPresentation killed{2, {{1}}, {}};
  auto r = magnus_frontend(killed, {{1}, {2}, {-2}});
  REQUIRE(r.h_basis.size() == 1);
  CHECK(r.h_basis[0] == Exponent{1, 0});
  REQUIRE(r.instance.size() == 5);
  CHECK(r.instance.steps[3] == Exponent{1, 0});
  CHECK(r.instance.steps[4] == Exponent{-1, 0});
  CHECK(is_zero(r.instance.ys[3]));

  MetabelianPresentation comm{2, {{1, 2, -1, -2}}, {}};
  auto c = magnus_frontend(comm, {{1}, {2}, {-1}, {-2}});
  CHECK(c.h_basis.empty());
  REQUIRE(c.instance.module->relations().size() == 1);
  LaurentVector expect{poly(2, {{1, {0, 0}}, {-1, {0, 1}}}), poly(2, {{1, {1, 0}}, {-1, {0, 0}}})};
  CHECK(c.instance.module->relations()[0] == expect);
  // In the abelianized quotient x1 x2 and x2 x1 agree.
  Instance gens = c.instance;
  CHECK(evaluate_word(gens, {1, 2}).equals(evaluate_word(gens, {2, 1})));
  CHECK_THROWS_AS(magnus_frontend(comm, {}), PreconditionError);
}
