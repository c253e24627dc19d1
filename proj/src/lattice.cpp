#include "seshadri/lattice.hpp"

#include "seshadri/errors.hpp"

#include <algorithm>
#include <cmath>

namespace seshadri {

DivisorClass::DivisorClass(Integer degree, std::vector<Integer> mults)
    : degree_(std::move(degree)), mults_(std::move(mults))
{
    if (mults_.empty())
        throw InvalidInput("a divisor class needs at least one point");
}

DivisorClass DivisorClass::multiple_of_line(std::size_t n, Integer degree)
{
    return DivisorClass(std::move(degree), std::vector<Integer>(n, Integer(0)));
}

DivisorClass DivisorClass::exceptional(std::size_t n, std::size_t index)
{
    if (index >= n)
        throw InvalidInput("exceptional index out of range");
    std::vector<Integer> mults(n, Integer(0));
    mults[index] = -1;
    return DivisorClass(0, std::move(mults));
}

DivisorClass DivisorClass::uniform(std::size_t n, Integer degree, const Integer& m)
{
    return DivisorClass(std::move(degree), std::vector<Integer>(n, m));
}

Integer DivisorClass::mult_sum() const
{
    return leading_mult_sum(mults_.size());
}

Integer DivisorClass::leading_mult_sum(std::size_t count) const
{
    Integer s = 0;
    const std::size_t end = std::min(count, mults_.size());
    for (std::size_t i = 0; i < end; ++i)
        s += mults_[i];
    return s;
}

bool DivisorClass::is_nonincreasing() const
{
    return std::is_sorted(mults_.begin(), mults_.end(),
                          [](const Integer& x, const Integer& y) { return x > y; });
}

bool DivisorClass::is_nonnegative() const
{
    return std::all_of(mults_.begin(), mults_.end(), [](const Integer& x) { return sgn(x) >= 0; });
}

bool DivisorClass::all_mults_zero() const
{
    return std::all_of(mults_.begin(), mults_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

DivisorClass DivisorClass::operator+(const DivisorClass& other) const
{
    if (points() != other.points())
        throw DimensionError("adding classes on different blow-ups");
    std::vector<Integer> mults(mults_.size());
    for (std::size_t i = 0; i < mults.size(); ++i)
        mults[i] = mults_[i] + other.mults_[i];
    return DivisorClass(degree_ + other.degree_, std::move(mults));
}

DivisorClass DivisorClass::operator-(const DivisorClass& other) const
{
    if (points() != other.points())
        throw DimensionError("subtracting classes on different blow-ups");
    std::vector<Integer> mults(mults_.size());
    for (std::size_t i = 0; i < mults.size(); ++i)
        mults[i] = mults_[i] - other.mults_[i];
    return DivisorClass(degree_ - other.degree_, std::move(mults));
}

bool DivisorClass::operator==(const DivisorClass& other) const
{
    return degree_ == other.degree_ && mults_ == other.mults_;
}

std::string DivisorClass::to_string() const
{
    std::string out = degree_.get_str() + "L - (";
    for (std::size_t i = 0; i < mults_.size(); ++i) {
        if (i)
            out += ",";
        out += mults_[i].get_str();
    }
    return out + ")E";
}

Integer intersect(const DivisorClass& a, const DivisorClass& b)
{
    if (a.points() != b.points())
        throw DimensionError("intersecting classes on blow-ups of " + std::to_string(a.points()) +
                             " and " + std::to_string(b.points()) + " points");
    Integer value = a.degree() * b.degree();
    auto ma = a.mults();
    auto mb = b.mults();
    for (std::size_t i = 0; i < ma.size(); ++i)
        value -= ma[i] * mb[i];
    return value;
}

std::string to_string(Sign s)
{
    switch (s) {
    case Sign::negative:
        return "negative";
    case Sign::zero:
        return "zero";
    case Sign::positive:
        return "positive";
    }
    return "?";
}

QuadraticExpr::QuadraticExpr(Rational a_, Rational b_, Rational q_)
    : a(std::move(a_)), b(std::move(b_)), q(std::move(q_))
{
    if (sgn(q) < 0)
        throw DomainError("negative radicand in a + b*sqrt(q)");
}

QuadraticExpr QuadraticExpr::operator+(const QuadraticExpr& o) const
{
    if (o.is_rational())
        return {a + o.a, b, q};
    if (is_rational())
        return {a + o.a, o.b, o.q};
    if (q != o.q)
        throw DomainError("adding surds with different radicands");
    return {a + o.a, b + o.b, q};
}

double QuadraticExpr::approx() const
{
    return a.get_d() + b.get_d() * std::sqrt(q.get_d());
}

std::string QuadraticExpr::to_string() const
{
    if (is_rational())
        return seshadri::to_string(a);
    return seshadri::to_string(a) + (sgn(b) < 0 ? " - " : " + ") + seshadri::to_string(Rational(abs(b))) +
           "*sqrt(" + seshadri::to_string(q) + ")";
}

namespace {

Sign sign_from(int s)
{
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
}

} // namespace

Sign sign_of(const QuadraticExpr& x)
{
    const int sa = sgn(x.a);
    const int sb = sgn(x.q) == 0 ? 0 : sgn(x.b);
    if (sb == 0)
        return sign_from(sa);
    if (sa == 0 || sa == sb)
        return sign_from(sb);
    // Opposite signs: the term with the larger square wins.
    const int c = cmp(Rational(x.a * x.a), Rational(x.b * x.b * x.q));
    if (c == 0)
        return Sign::zero;
    return c > 0 ? sign_from(sa) : sign_from(sb);
}

std::strong_ordering compare_rational_sqrt(const Rational& p, const Rational& a)
{
    if (sgn(a) < 0)
        throw DomainError("square root of a negative rational");
    if (sgn(p) < 0)
        return std::strong_ordering::less;
    return compare(Rational(p * p), a);
}

std::strong_ordering compare(const QuadraticExpr& x, const QuadraticExpr& y)
{
    switch (sign_of(x - y)) {
    case Sign::negative:
        return std::strong_ordering::less;
    case Sign::positive:
        return std::strong_ordering::greater;
    case Sign::zero:
        break;
    }
    return std::strong_ordering::equal;
}

Integer floor(const QuadraticExpr& x)
{
    if (x.is_rational())
        return floor(x.a);
    // Start from a high-precision estimate, then settle the exact floor with sign_of.
    mpf_class root(0, 256);
    mpf_class radicand(x.q, 256);
    mpf_sqrt(root.get_mpf_t(), radicand.get_mpf_t());
    mpf_class value = mpf_class(x.a, 256) + mpf_class(x.b, 256) * root;
    mpf_class fl(0, 256);
    mpf_floor(fl.get_mpf_t(), value.get_mpf_t());
    Integer guess(fl);
    auto below = [&](const Integer& k) { return sign_of(x - QuadraticExpr::rational(Rational(k))) != Sign::negative; };
    while (!below(guess))
        --guess;
    while (below(guess + 1))
        ++guess;
    return guess;
}

std::string truncate_decimal(const QuadraticExpr& x, int places, bool trim)
{
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    return format_scaled(floor(x.scaled(Rational(scale))), places, trim);
}

} // namespace seshadri
