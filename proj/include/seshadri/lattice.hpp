#pragma once

// Divisor classes on the blow-up of the plane at n points, the intersection
// pairing, and exact sign decisions for numbers of the form a + b*sqrt(q).

#include "seshadri/arith.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace seshadri {

/// The class degree*L - (m_1 E_1 + ... + m_n E_n).
///
/// The pairing is L^2 = 1, E_i^2 = -1, all mixed products zero. Multiplicities
/// are stored with the sign convention above, so E_i itself has m_i = -1.
/// Multiplicities may be negative (intermediate unloading states).
class DivisorClass {
public:
    DivisorClass(Integer degree, std::vector<Integer> mults);

    /// degree*L with all multiplicities zero.
    static DivisorClass multiple_of_line(std::size_t n, Integer degree);
    static DivisorClass line(std::size_t n) { return multiple_of_line(n, 1); }
    /// E_i, 0-based index.
    static DivisorClass exceptional(std::size_t n, std::size_t index);
    /// degree*L - m*(E_1 + ... + E_n).
    static DivisorClass uniform(std::size_t n, Integer degree, const Integer& m);

    std::size_t points() const { return mults_.size(); }
    const Integer& degree() const { return degree_; }
    std::span<const Integer> mults() const { return mults_; }
    const Integer& mult(std::size_t i) const { return mults_.at(i); }

    Integer mult_sum() const;
    /// Sum of the first `count` multiplicities.
    Integer leading_mult_sum(std::size_t count) const;
    bool is_nonincreasing() const;
    bool is_nonnegative() const;
    bool all_mults_zero() const;

    DivisorClass operator+(const DivisorClass& other) const;
    DivisorClass operator-(const DivisorClass& other) const;
    bool operator==(const DivisorClass& other) const;

    std::string to_string() const;

private:
    Integer degree_;
    std::vector<Integer> mults_;
};

/// t1*t2 - sum(m_i * m'_i). Throws DimensionError when the point counts differ.
Integer intersect(const DivisorClass& a, const DivisorClass& b);

enum class Sign { negative = -1, zero = 0, positive = 1 };

std::string to_string(Sign s);

/// The real number a + b*sqrt(q) with rational a, b and q >= 0.
/// q is not reduced to squarefree form; it is usually a rational like n - 1/mu.
struct QuadraticExpr {
    Rational a;
    Rational b;
    Rational q;

    QuadraticExpr() = default;
    QuadraticExpr(Rational a_, Rational b_, Rational q_);
    static QuadraticExpr rational(Rational value) { return {std::move(value), 0, 0}; }

    bool is_rational() const { return sgn(b) == 0 || sgn(q) == 0; }

    QuadraticExpr operator-() const { return {-a, -b, q}; }
    /// Defined when both operands share q (or one of them is rational).
    QuadraticExpr operator+(const QuadraticExpr& o) const;
    QuadraticExpr operator-(const QuadraticExpr& o) const { return *this + (-o); }
    QuadraticExpr scaled(const Rational& c) const { return {a * c, b * c, q}; }

    /// Approximate value for display only.
    double approx() const;
    std::string to_string() const;
};

/// Exact sign of a + b*sqrt(q); no square roots are extracted.
Sign sign_of(const QuadraticExpr& x);

/// Ordering of p against sqrt(a), a >= 0.
std::strong_ordering compare_rational_sqrt(const Rational& p, const Rational& a);

/// Exact ordering of two expressions that share the same radicand (or are rational).
std::strong_ordering compare(const QuadraticExpr& x, const QuadraticExpr& y);

/// floor(x) computed exactly.
Integer floor(const QuadraticExpr& x);

/// Truncated decimal rendering, see truncate_decimal.
std::string truncate_decimal(const QuadraticExpr& x, int places = 2, bool trim = true);

} // namespace seshadri
