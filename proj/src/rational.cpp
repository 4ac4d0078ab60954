#include "cmstoch/rational.hpp"

#include <algorithm>
#include <cctype>

#include "cmstoch/errors.hpp"

namespace cmstoch {
namespace {

bool is_integer_literal(std::string_view text) {
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  return !text.empty() &&
         std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

bool is_unsigned_literal(std::string_view text) {
  return !text.empty() &&
         std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isdigit(c); });
}

// Simplest rational in [lo, hi] for 0 < lo <= hi, by continued fractions.
Rational simplest_positive(const Rational& lo, const Rational& hi) {
  mpz_class floor_lo;
  mpz_fdiv_q(floor_lo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (floor_lo == lo) return Rational(floor_lo);
  if (Rational(floor_lo + 1) <= hi) return Rational(floor_lo + 1);
  // lo and hi share the integer part; recurse on the reciprocals of the
  // fractional parts (note the order swap).
  Rational lo_frac = lo - floor_lo;
  Rational hi_frac = hi - floor_lo;
  Rational inner = simplest_positive(1 / hi_frac, 1 / lo_frac);
  Rational result = Rational(floor_lo) + 1 / inner;
  result.canonicalize();
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto first = text.find_first_not_of(" \t");
  text = first == std::string_view::npos
             ? std::string_view()
             : text.substr(first, text.find_last_not_of(" \t") - first + 1);
  if (text.empty()) throw ParseError("empty rational", 0);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw ParseError("malformed rational '" + std::string(text) + "'", 0);
  }
  std::string num_str(num.front() == '+' ? num.substr(1) : num);
  if (slash == std::string_view::npos) {
    return Rational(mpz_class(num_str));
  }
  std::string_view den = text.substr(slash + 1);
  if (!is_unsigned_literal(den)) {
    throw ParseError("malformed rational '" + std::string(text) + "'", 0);
  }
  mpz_class d{std::string(den)};
  if (d == 0) {
    throw ParseError("zero denominator in '" + std::string(text) + "'", 0);
  }
  Rational r(mpz_class(num_str), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::vector<std::string> to_strings(const Vec& values) {
  std::vector<std::string> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

Rational pow2_neg(unsigned n) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
  return Rational(1, den);
}

Rational simplest_in_interval(const Rational& lo, const Rational& hi) {
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_positive(-hi, -lo);
  return simplest_positive(lo, hi);
}

Rational sum(const Vec& values) {
  Rational total = 0;
  for (const auto& v : values) total += v;
  return total;
}

Rational dot(const Vec& a, const Vec& b) {
  Rational total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += a[i] * b[i];
  return total;
}

Rational max_abs_diff(const Vec& a, const Vec& b) {
  Rational worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = abs(a[i] - b[i]);
    if (d > worst) worst = d;
  }
  return worst;
}

}  // namespace cmstoch
