#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace cmstoch {

// Exact arbitrary-precision rational. GMP keeps every value canonical
// (positive denominator, reduced fraction) after each arithmetic operation.
using Rational = mpq_class;
using Vec = std::vector<Rational>;

// Parses "p/q", "p", or "-p/q". Whitespace is not accepted. Throws
// ParseError on malformed text or zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

std::vector<std::string> to_strings(const Vec& values);

// 2^-n, exactly.
Rational pow2_neg(unsigned n);

// The rational with the smallest denominator (then smallest absolute
// numerator) in the closed interval [lo, hi]. Requires lo <= hi.
Rational simplest_in_interval(const Rational& lo, const Rational& hi);

Rational sum(const Vec& values);
Rational dot(const Vec& a, const Vec& b);
Rational max_abs_diff(const Vec& a, const Vec& b);

}  // namespace cmstoch
