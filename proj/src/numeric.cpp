#include "metab/numeric.hpp"

#include <cctype>

#include "metab/error.hpp"

namespace metab {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) throw ParseError("empty rational literal");
  auto slash = s.find('/');
  auto digits_ok = [](std::string_view part) {
    std::size_t i = 0;
    if (i < part.size() && part[i] == '-') ++i;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits_ok(s)) throw ParseError("invalid rational literal '" + s + "'");
    return Rational(Integer(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den) || den.front() == '-')
    throw ParseError("invalid rational literal '" + s + "'");
  Integer d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

}  // namespace metab
