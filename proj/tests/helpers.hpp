#pragma once

#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "metab/laurent.hpp"

namespace testutil {

using metab::Exponent;
using metab::LaurentPoly;
using metab::Rational;

struct T {
  long c;
  Exponent e;
};

inline LaurentPoly poly(std::size_t n, std::initializer_list<T> terms) {
  LaurentPoly p(n);
  for (const auto& t : terms) p.add_term(t.e, Rational(t.c));
  return p;
}

inline LaurentPoly random_poly(std::mt19937_64& rng, std::size_t n, int terms, int max_exp,
                               int max_coef) {
  std::uniform_int_distribution<long> ex(-max_exp, max_exp), co(-max_coef, max_coef);
  LaurentPoly p(n);
  for (int k = 0; k < terms; ++k) {
    Exponent a(n);
    for (auto& x : a) x = ex(rng);
    p.add_term(a, Rational(co(rng)));
  }
  return p;
}

}  // namespace testutil
