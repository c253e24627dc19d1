#pragma once

// Exact integer / rational helpers on top of GMP.

#include <gmpxx.h>

#include <compare>
#include <string>

namespace seshadri {

using Integer = mpz_class;
using Rational = mpq_class;

/// floor(sqrt(x)) for x >= 0.
Integer isqrt(const Integer& x);

/// Smallest y >= 0 with y*y >= x (x >= 0).
Integer ceil_sqrt(const Integer& x);

Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);

/// Canonicalized num/den; throws DomainError on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

std::strong_ordering compare(const Integer& a, const Integer& b);
std::strong_ordering compare(const Rational& a, const Rational& b);

/// Decimal string of an integer count of hundredths (or any 10^places scale):
/// `scaled` = floor(x * 10^places). With `trim`, trailing fractional zeros and a
/// bare decimal point are removed ("36.10" -> "36.1", "1.00" -> "1").
std::string format_scaled(const Integer& scaled, int places, bool trim);

/// floor(x * 10^places) rendered by format_scaled.
std::string truncate_decimal(const Rational& x, int places = 2, bool trim = true);

/// "num/den" in lowest terms, or "num" when den == 1.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

Rational parse_rational(const std::string& text);

} // namespace seshadri
