#include "seshadri/candidates.hpp"

#include "seshadri/errors.hpp"

#include <algorithm>

namespace seshadri {

std::vector<Integer> CandidateTriple::mults() const
{
    std::vector<Integer> v(static_cast<std::size_t>(n), m);
    v.front() += k;
    return v;
}

DivisorClass CandidateTriple::as_class() const
{
    return DivisorClass(t, mults());
}

bool CandidateTriple::is_abnormal() const
{
    const Integer s = m * n + k;
    return sgn(s) > 0 && t * t * n < s * s;
}

std::string CandidateTriple::to_string() const
{
    return "C(" + t.get_str() + "," + m.get_str() + "," + k.get_str() + ")";
}

bool mkt_less(const CandidateTriple& a, const CandidateTriple& b)
{
    if (a.m != b.m)
        return a.m < b.m;
    const bool az = sgn(a.k) == 0;
    const bool bz = sgn(b.k) == 0;
    if (az != bz)
        return az;
    if (a.k != b.k)
        return a.k < b.k;
    return a.t < b.t;
}

EValue e_value(const CandidateTriple& c)
{
    if (!c.is_abnormal())
        throw DomainError(c.to_string() + " is not abnormal for n = " + std::to_string(c.n));
    const Integer s = c.m * c.n + c.k;
    const Integer s2 = s * s;
    const Integer gap = s2 - c.n * c.t * c.t;
    EValue v;
    v.f_numerator = s2;
    v.f_denominator = gap;
    v.f = make_rational(s2, gap);
    v.e = make_rational(s2, gap * c.n);
    return v;
}

bool passes_testlem(std::span<const Integer> h, const Integer& t, const Rational& delta)
{
    if (sgn(delta) <= 0)
        throw DomainError("passes_testlem needs delta > 0");
    Integer sum = 0;
    Integer sum_sq = 0;
    Integer gamma = 0;
    Integer least_positive = 0;
    for (const Integer& x : h) {
        if (sgn(x) < 0)
            throw InvalidInput("passes_testlem needs non-negative coefficients");
        if (sgn(x) == 0)
            continue;
        sum += x;
        sum_sq += x * x;
        ++gamma;
        if (sgn(least_positive) == 0 || x < least_positive)
            least_positive = x;
    }
    if (sgn(gamma) == 0)
        throw InvalidInput("passes_testlem needs a nonzero coefficient vector");

    const int n = static_cast<int>(h.size());
    const Rational one_plus = 1 + Rational(n) / delta;
    const bool cond_a = Rational(gamma * sum_sq) < one_plus * one_plus;
    const Integer t2 = t * t;
    const bool cond_b = sum_sq - least_positive <= t2 && Rational(t2) * (n + delta) < Rational(sum * sum);
    return cond_a && cond_b;
}

namespace {

/// Conditions for a fixed (m, k): appends every admissible t in ascending order.
void append_for_mk(int n, const Integer& m, const Integer& k, std::vector<CandidateTriple>& out)
{
    const Integer m2n = m * m * n;
    Integer lo;
    if (sgn(k) == 0) {
        lo = m2n - m;
    } else {
        const Integer k2 = k * k;
        Integer extra = std::max({Integer(k2 - m), Integer(k2 - (m + k)), Integer(0)});
        lo = m2n + 2 * m * k + extra;
    }
    Integer t = std::max(Integer(1), ceil_sqrt(std::max(lo, Integer(0))));
    const Integer base = m2n + 2 * m * k;
    for (;; ++t) {
        const Integer t2 = t * t;
        if (sgn(k) == 0) {
            if (t2 >= m2n)
                break;
        } else if (n * t2 >= n * base + k * k) {
            // t^2 < m^2 n + 2mk + k^2/n, cross-multiplied by n.
            break;
        }
        const Integer mk = m + k;
        const Integer cond_d = t2 - mk * mk - (n - 1) * m * m - 3 * t + m * n + k;
        if (cond_d < -2)
            continue;
        if (sgn(k) != 0 && m < n) {
            // Sharper constraints for m < n, k != 0.
            if (sgn(mk) <= 0 || k * k > m)
                continue;
            if (2 * m * k != t2 - m2n)
                continue;
            const Integer up = t + 1;
            const Integer down = t - 1;
            if (!(m2n < up * up))
                continue;
            if (sgn(down) >= 0 && !(down * down < m2n))
                continue;
        }
        out.push_back(CandidateTriple{n, t, m, k});
    }
}

} // namespace

std::vector<CandidateTriple> enumerate_szcor_range(int n, const Integer& m_lo, const Integer& m_hi)
{
    if (n < 10)
        throw DomainError("candidate enumeration needs n >= 10");
    std::vector<CandidateTriple> out;
    for (Integer m = std::max(m_lo, Integer(1)); m <= m_hi; ++m) {
        // k^2 < (n/(n-1)) min(m, m+k) bounds |k| by sqrt(nm/(n-1)).
        const Integer k_bound = isqrt(Integer(n * m) / (n - 1)) + 1;
        const Integer k_first = std::max(Integer(-m + 1), Integer(-k_bound));
        std::vector<CandidateTriple> row;
        for (Integer k = k_first; k <= k_bound; ++k) {
            const Integer lhs = (n - 1) * k * k;
            const Integer rhs = n * std::min(m, Integer(m + k));
            if (!(lhs < rhs))
                continue;
            append_for_mk(n, m, k, row);
        }
        std::sort(row.begin(), row.end(), mkt_less);
        out.insert(out.end(), std::make_move_iterator(row.begin()), std::make_move_iterator(row.end()));
    }
    return out;
}

std::vector<CandidateTriple> enumerate_szcor(int n, const Integer& m_max)
{
    return enumerate_szcor_range(n, 1, m_max);
}

std::vector<CandidateTriple> almunif_filter(std::span<const CandidateTriple> cands, const Rational& mu)
{
    std::vector<CandidateTriple> out;
    for (const auto& c : cands) {
        if (sgn(c.m) <= 0 || !(Rational(c.m) < mu))
            continue;
        if (sgn(c.k) != 0 && !(Rational(c.m * (c.n - 1)) < mu))
            continue;
        out.push_back(c);
    }
    return out;
}

} // namespace seshadri
