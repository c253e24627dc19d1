#include "seshadri/arith.hpp"

#include "seshadri/errors.hpp"

namespace seshadri {

Integer isqrt(const Integer& x)
{
    if (sgn(x) < 0)
        throw DomainError("isqrt of a negative integer");
    Integer r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

Integer ceil_sqrt(const Integer& x)
{
    Integer r = isqrt(x);
    if (r * r < x)
        ++r;
    return r;
}

Integer floor_div(const Integer& a, const Integer& b)
{
    if (sgn(b) == 0)
        throw DomainError("division by zero");
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer ceil_div(const Integer& a, const Integer& b)
{
    if (sgn(b) == 0)
        throw DomainError("division by zero");
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer floor(const Rational& x)
{
    return floor_div(x.get_num(), x.get_den());
}

Integer ceil(const Rational& x)
{
    return ceil_div(x.get_num(), x.get_den());
}

Rational make_rational(const Integer& num, const Integer& den)
{
    if (sgn(den) == 0)
        throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::strong_ordering compare(const Integer& a, const Integer& b)
{
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering compare(const Rational& a, const Rational& b)
{
    int c = cmp(a, b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string format_scaled(const Integer& scaled, int places, bool trim)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    const bool negative = sgn(scaled) < 0;
    Integer magnitude = abs(scaled);
    Integer whole = magnitude / scale;
    Integer frac = magnitude % scale;

    std::string out = negative ? "-" : "";
    out += whole.get_str();
    if (places == 0)
        return out;

    std::string digits = frac.get_str();
    digits.insert(0, static_cast<std::size_t>(places) - digits.size(), '0');
    if (trim) {
        while (!digits.empty() && digits.back() == '0')
            digits.pop_back();
    }
    if (!digits.empty())
        out += "." + digits;
    return out;
}

std::string truncate_decimal(const Rational& x, int places, bool trim)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    return format_scaled(floor(Rational(x * scale)), places, trim);
}

std::string to_string(const Rational& x)
{
    if (x.get_den() == 1)
        return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_string(const Integer& x)
{
    return x.get_str();
}

Rational parse_rational(const std::string& text)
{
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0)
        throw InvalidInput("not a rational number: '" + text + "'");
    if (sgn(r.get_den()) == 0)
        throw InvalidInput("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

} // namespace seshadri
