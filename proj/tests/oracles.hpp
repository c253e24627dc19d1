#pragma once

// Slow, literal reimplementations used as test oracles. None of these call the
// optimized library routines they are compared against; they only share the
// value types and the intersection pairing.

#include "seshadri/candidates.hpp"
#include "seshadri/effectivity.hpp"
#include "seshadri/lattice.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

namespace oracle {

using seshadri::DivisorClass;
using seshadri::Integer;
using seshadri::Rational;

/// Candidate conditions checked one by one with rationals, over a box that
/// strictly contains every admissible triple.
inline std::vector<std::tuple<long, long, long>> enumerate(int n, long m_max)
{
    std::vector<std::tuple<long, long, long>> out;
    long root_ceil = 1;
    while (root_ceil * root_ceil < n)
        ++root_ceil;
    const Rational nq(n);
    for (long m = 1; m <= m_max; ++m) {
        for (long k = -m; k <= m; ++k) {
            for (long t = 1; t <= (m + 1) * root_ceil; ++t) {
                const Rational T(t), M(m), K(k);
                // (b)
                if (!(-m < k))
                    continue;
                const Rational mk = M + K;
                if (!(K * K < nq / (n - 1) * std::min<Rational>(M, mk)))
                    continue;
                // (c)
                if (k == 0) {
                    if (!(M * M * n - M <= T * T && T * T < M * M * n))
                        continue;
                } else {
                    const Rational base = M * M * n + 2 * M * K;
                    const Rational lo = base + std::max<Rational>({K * K - M, K * K - (M + K), Rational(0)});
                    if (!(lo <= T * T && T * T < base + K * K / n))
                        continue;
                }
                // (d)
                if (!(T * T - (M + K) * (M + K) - (n - 1) * M * M - 3 * T + M * n + K >= -2))
                    continue;
                // Tightenings for k != 0 and m < n, taken literally: m + k > 0,
                // k^2 <= m, 2mk = t^2 - m^2 n, m sqrt n - 1 < t < m sqrt n + 1.
                if (k != 0 && m < n) {
                    if (!(m + k > 0) || !(k * k <= m) || !(2 * m * k == t * t - m * m * n))
                        continue;
                    const long lo = t - 1;
                    const long hi = t + 1;
                    const bool below = lo < 0 || Integer(lo) * lo < Integer(m) * m * n;
                    const bool above = Integer(m) * m * n < Integer(hi) * hi;
                    if (!below || !above)
                        continue;
                }
                out.emplace_back(t, m, k);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const auto& [ta, ma, ka] = a;
        const auto& [tb, mb, kb] = b;
        return std::make_tuple(ma, ka != 0, ka, ta) < std::make_tuple(mb, kb != 0, kb, tb);
    });
    return out;
}

inline Rational e_value(int n, long t, long m, long k)
{
    const Integer s = Integer(m) * n + k;
    Rational e(s * s, n * (s * s - Integer(n) * t * t));
    e.canonicalize();
    return e;
}

/// N_j = E_j - E_{j+1} for j < n, N_n = E_n, as classes (0-based j).
inline DivisorClass unloading_class(std::size_t n, std::size_t j)
{
    std::vector<Integer> mults(n, Integer(0));
    if (j + 1 < n) {
        mults[j] = -1;     // +E_j
        mults[j + 1] = 1;  // -E_{j+1}
    } else {
        mults[j] = -1;
    }
    return DivisorClass(0, std::move(mults));
}

/// Restart-from-the-left unloading with F.N_j evaluated by the pairing.
inline DivisorClass unload(DivisorClass f)
{
    const std::size_t n = f.points();
    for (;;) {
        bool moved = false;
        for (std::size_t j = 0; j < n; ++j) {
            const DivisorClass nj = unloading_class(n, j);
            if (seshadri::intersect(f, nj) < 0) {
                f = f - nj;
                moved = true;
                break;
            }
        }
        if (!moved)
            return f;
    }
}

struct Step {
    Integer t;
    Integer dot;
    DivisorClass d;
};

/// D_0, ..., D_j with j the first index where the degree drops below d.
inline std::vector<Step> trace(const DivisorClass& d0, const seshadri::SpecializationConfig& cfg)
{
    const DivisorClass c = cfg.curve_class();
    std::vector<Step> steps;
    DivisorClass cur = d0;
    for (;;) {
        steps.push_back(Step{cur.degree(), seshadri::intersect(cur, c), cur});
        if (cur.degree() < cfg.d)
            return steps;
        cur = oracle::unload(cur - c);
    }
}

inline bool criterion(const DivisorClass& d0, const seshadri::SpecializationConfig& cfg)
{
    const std::vector<Step> steps = trace(d0, cfg);
    for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        if (steps[i].dot > cfg.g - 1)
            return false;
    }
    const Step& last = steps.back();
    return (last.t + 1) * (last.t + 2) <= 2 * (Integer(cfg.d) * last.t - last.dot);
}

/// 1 + largest t in [0, top] passing the literal criterion, or 1; top is the
/// least integer >= sum/sqrt(n), plus d.
inline Integer alpha(const std::vector<Integer>& mults, const seshadri::SpecializationConfig& cfg)
{
    Integer sum = 0;
    for (const Integer& x : mults)
        sum += x;
    Integer top = 0;
    while (Integer(cfg.n) * top * top < sum * sum)
        ++top;
    top += cfg.d;
    Integer best = 0;
    bool any = false;
    for (Integer t = 0; t <= top; ++t) {
        if (criterion(DivisorClass(t, mults), cfg)) {
            best = t;
            any = true;
        }
    }
    return any ? best + 1 : Integer(1);
}

/// The mu_n formula with numerator and denominator accumulated as integers.
inline Integer mu_n(int n)
{
    long d = 0;
    while ((d + 1) * (d + 1) <= n)
        ++d;
    const long big_delta = n - d * d;
    const long delta = big_delta / 2;
    Integer num, den;
    if (big_delta % 2 == 1) {
        // d * (d-3 + (d(d-3)-1)/((d-3)(d^2+delta+1))) * (d^2+delta)/(d^2-delta^2)
        const Integer q = Integer(d - 3) * (d * d + delta + 1);
        const Integer inner_num = Integer(d - 3) * q + (d * (d - 3) - 1);
        num = Integer(d) * inner_num * (d * d + delta);
        den = q * (d * d - delta * delta);
    } else {
        const Integer q = Integer(d - 3) * (d * d + delta);
        const Integer inner_num = Integer(d - 3) * q + (d * (d - 3) - 1);
        num = Integer(d) * inner_num * (d * d + delta - 1);
        den = q * (2 * d * d - (delta - 1) * (delta - 1));
    }
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return fl + 1;
}

/// a + b sqrt(q) at 512 bits.
inline mpf_class approx(const Rational& a, const Rational& b, const Rational& q)
{
    mpf_class root(0, 512), rq(q, 512);
    mpf_sqrt(root.get_mpf_t(), rq.get_mpf_t());
    return mpf_class(a, 512) + mpf_class(b, 512) * root;
}

inline Rational random_rational(std::mt19937_64& rng, long span, long den_span)
{
    std::uniform_int_distribution<long> num(-span, span);
    std::uniform_int_distribution<long> den(1, den_span);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

} // namespace oracle
