#pragma once

// Prospective abnormal classes C(t,m,k) = tL - m(E_1+...+E_n) - kE_1 and their
// e/f values.

#include "seshadri/arith.hpp"
#include "seshadri/lattice.hpp"

#include <span>
#include <string>
#include <vector>

namespace seshadri {

struct CandidateTriple {
    int n = 0;
    Integer t;
    Integer m;
    Integer k;

    /// Multiplicities (m+k, m, ..., m): the extra k sits on E_1.
    std::vector<Integer> mults() const;
    DivisorClass as_class() const;
    /// t^2 n < (mn+k)^2, i.e. t*sqrt(n) < mn + k.
    bool is_abnormal() const;

    std::string to_string() const; // "C(t,m,k)"
    bool operator==(const CandidateTriple& o) const { return n == o.n && t == o.t && m == o.m && k == o.k; }
};

/// Ascending (m, k, t); used both for enumeration output and blocker tie-breaks.
bool mkt_less(const CandidateTriple& a, const CandidateTriple& b);

/// e = (mn+k)^2 / (n((mn+k)^2 - n t^2)), f = n*e.
///
/// `f_numerator`/`f_denominator` keep the defining (unreduced) fraction
/// (mn+k)^2 / ((mn+k)^2 - n t^2) for display.
struct EValue {
    Rational e;
    Rational f;
    Integer f_numerator;
    Integer f_denominator;
};

/// Throws DomainError when the triple is not abnormal.
EValue e_value(const CandidateTriple& c);

/// Necessary conditions on an F(delta)-abnormal class tL - sum h_i E_i:
///   sum h_i^2 < (1 + n/delta)^2 / gamma   and
///   sum h_i^2 - a <= t^2 < (sum h_i)^2 / (n + delta),
/// gamma the number of nonzero h_i and a the least positive h_i.
/// Throws InvalidInput for an all-zero h and DomainError for delta <= 0.
bool passes_testlem(std::span<const Integer> h, const Integer& t, const Rational& delta);

/// Every (t, m, k) with 1 <= m <= m_max satisfying the almost-uniform
/// necessary conditions for an abnormal curve (with the sharper k != 0
/// constraints when m < n). Sorted by (m, k, t) with k = 0 first at equal m.
std::vector<CandidateTriple> enumerate_szcor(int n, const Integer& m_max);

/// Same conditions restricted to m_lo <= m <= m_hi; concatenating ranges in
/// order reproduces enumerate_szcor.
std::vector<CandidateTriple> enumerate_szcor_range(int n, const Integer& m_lo, const Integer& m_hi);

/// Keeps 0 < m < mu and (k == 0 or m(n-1) < mu), in input order.
std::vector<CandidateTriple> almunif_filter(std::span<const CandidateTriple> cands, const Rational& mu);

} // namespace seshadri
