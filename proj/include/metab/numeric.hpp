#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace metab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "7", "-3/4" or "+2" into a canonical rational. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical decimal text: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer lcm_of_denominators(const std::vector<Rational>& values);

}  // namespace metab
