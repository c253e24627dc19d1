#include "seshadri/driver.hpp"

#include "seshadri/errors.hpp"
#include "seshadri/fixtures.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

namespace seshadri {

bool is_perfect_square(int n)
{
    if (n < 0)
        return false;
    const Integer root = isqrt(Integer(n));
    return root * root == n;
}

bool operator==(const ExclusionRecord& a, const ExclusionRecord& b)
{
    return a.candidate == b.candidate && a.e == b.e && a.reason == b.reason;
}

namespace {

bool same_value(const std::optional<EValue>& a, const std::optional<EValue>& b)
{
    if (a.has_value() != b.has_value())
        return false;
    if (!a)
        return true;
    return a->e == b->e && a->f == b->f && a->f_numerator == b->f_numerator && a->f_denominator == b->f_denominator;
}

void require_nonsquare(int n, const char* where)
{
    if (n < 10)
        throw DomainError(std::string(where) + ": n must be at least 10");
    if (is_perfect_square(n))
        throw DomainError(std::string(where) + ": n is a square, eps(n) = 1/sqrt(n) exactly");
}

struct Examined {
    CandidateTriple candidate;
    EValue value;
    std::optional<ExclusionDecision> decision; // filled on first visit
};

} // namespace

bool operator==(const BoundReport& a, const BoundReport& b)
{
    return a.n == b.n && a.f == b.f && a.mu == b.mu && a.blocker == b.blocker &&
           same_value(a.blocker_value, b.blocker_value) && a.exclusions_used == b.exclusions_used &&
           a.coverage.m_checked_k0 == b.coverage.m_checked_k0 &&
           a.coverage.m_checked_knz == b.coverage.m_checked_knz && a.cfg == b.cfg &&
           a.m_budget_cap == b.m_budget_cap && a.budget_limited == b.budget_limited;
}

// --------------------------------------------------------------------------
// Fixpoint

BoundReport compute_bound(int n, const ExclusionDb& db, const SpecializationConfig& cfg, const Integer& m_budget_cap)
{
    require_nonsquare(n, "compute_bound");
    if (cfg.n != n)
        throw DimensionError("compute_bound: configuration is for a different n");
    if (m_budget_cap < 1)
        throw DomainError("compute_bound: m_budget_cap must be at least 1");

    std::vector<Examined> pool;
    std::vector<std::size_t> order; // pool indices by ascending (e, m, k, t)
    Integer enumerated = 0;
    Integer m_max = std::min(Integer(32), m_budget_cap);

    BoundReport report;
    report.n = n;
    report.cfg = cfg;
    report.m_budget_cap = m_budget_cap;

    for (;;) {
        if (enumerated < m_max) {
            for (CandidateTriple& c : enumerate_szcor_range(n, enumerated + 1, m_max)) {
                EValue v = e_value(c);
                pool.push_back(Examined{std::move(c), std::move(v), std::nullopt});
            }
            enumerated = m_max;
            order.resize(pool.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::sort(order.begin(), order.end(), [&pool](std::size_t x, std::size_t y) {
                const int c = cmp(pool[x].value.e, pool[y].value.e);
                if (c != 0)
                    return c < 0;
                return mkt_less(pool[x].candidate, pool[y].candidate);
            });
        }

        std::optional<std::size_t> blocker;
        for (std::size_t idx : order) {
            Examined& ex = pool[idx];
            if (!ex.decision)
                ex.decision = is_excluded(ex.candidate, cfg, db);
            if (!ex.decision->excluded) {
                blocker = idx;
                break;
            }
        }

        if (blocker) {
            // Every abnormal class with e < mu has m < mu (and m(n-1) < mu when k != 0).
            const Rational& mu = pool[*blocker].value.e;
            const Integer needed = ceil(mu) - 1;
            if (m_max >= needed) {
                report.mu = mu;
                report.blocker = pool[*blocker].candidate;
                report.blocker_value = pool[*blocker].value;
                break;
            }
            if (m_max == m_budget_cap) {
                report.budget_limited = true;
                break;
            }
            m_max = std::min({m_budget_cap, needed, Integer(2 * m_max)});
        } else {
            if (m_max == m_budget_cap) {
                report.budget_limited = true;
                break;
            }
            m_max = std::min(m_budget_cap, Integer(2 * m_max));
        }
    }

    if (report.budget_limited)
        report.mu = Rational(m_budget_cap + 1);
    report.f = report.mu * n;
    report.coverage = Coverage{m_max, m_max};

    // Everything ahead of the blocker (or below the covered mu) was visited and excluded.
    for (std::size_t idx : order) {
        const Examined& ex = pool[idx];
        if (!ex.decision || !ex.decision->excluded || !(ex.value.e < report.mu || ex.value.e == report.mu))
            break;
        report.exclusions_used.push_back(ExclusionRecord{ex.candidate, ex.value.e, ex.decision->reason});
    }
    return report;
}

void parallel_for_index(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn)
{
    if (jobs == 0)
        jobs = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min<std::size_t>(jobs, count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (std::thread& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::vector<BoundReport> compute_bounds(std::span<const int> ns, const ExclusionDb& db,
                                        const Integer& m_budget_cap, unsigned jobs)
{
    std::vector<BoundReport> out(ns.size());
    parallel_for_index(ns.size(), jobs, [&](std::size_t i) {
        out[i] = compute_bound(ns[i], db, SpecializationConfig::defaults(ns[i]), m_budget_cap);
    });
    return out;
}

// --------------------------------------------------------------------------
// Closed forms

namespace {

FormulaBound formula(std::string name, bool applicable, QuadraticExpr value, std::string source,
                     std::string note = {})
{
    FormulaBound fb{std::move(name), applicable, std::nullopt, std::move(source), std::move(note), {}};
    if (applicable)
        fb.value = std::move(value);
    return fb;
}

QuadraticExpr surd(const Rational& a, const Rational& b, int n)
{
    return QuadraticExpr(a, b, Rational(n));
}

} // namespace

std::vector<FormulaBound> formula_theoremone(int n)
{
    if (n < 10)
        throw DomainError("formula_theoremone: n must be at least 10");
    if (is_perfect_square(n))
        return {};

    const long d = isqrt(Integer(n)).get_si();
    const long delta = n - d * d;
    const Rational nq(n);
    const std::string src = "refHR criterion, almost-uniform analysis";

    const bool odd = delta % 2 == 1;
    const bool a = delta == 1;
    const bool b = delta == 2;
    const bool c = delta > 2 && odd;
    const bool dd = delta > 3 && !odd;
    // 4 n^(1/4) + 1 <= Delta  <=>  (Delta - 1)^4 >= 256 n, exactly.
    const Integer dm1 = delta - 1;
    const bool e = odd && 2 * d - 1 > delta && dm1 * dm1 * dm1 * dm1 >= 256 * Integer(n);
    const bool f = delta == 2 * d - 1;

    const Rational n2 = nq * nq;
    std::vector<FormulaBound> out;
    out.push_back(formula("theoremone-a", a, QuadraticExpr::rational((2 * nq - 1) * (2 * nq - 1)), src));
    out.push_back(formula("theoremone-b", b, QuadraticExpr::rational(nq * (nq - 1)), src));
    out.push_back(formula("theoremone-c", c, QuadraticExpr::rational(nq * (d * (d - 3) + 1)), src));
    out.push_back(formula("theoremone-c-weak", c, surd(n2 + nq, -5 * nq, n), src, "n(n - 5 sqrt n + 1)"));
    out.push_back(formula("theoremone-d", dd, QuadraticExpr::rational(nq * (d * (d - 3) + 2) / 2), src));
    out.push_back(
        formula("theoremone-d-weak", dd, surd((n2 + 2 * nq) / 2, -5 * nq / 2, n), src, "n(n - 5 sqrt n + 2)/2"));
    out.push_back(formula("theoremone-e", e, QuadraticExpr::rational(n2), src + " via mu_n"));
    out.push_back(formula("theoremone-f", f, surd((-5 * n2 - nq) / 2, (n2 + 5 * nq) / 2, n), src + " via mu_n",
                          "n(n sqrt n - 5n + 5 sqrt n - 1)/2"));
    return out;
}

std::vector<FormulaBound> formula_correm_and_circ(int n)
{
    if (n < 10)
        throw DomainError("formula_correm_and_circ: n must be at least 10");
    const Rational nq(n);
    std::vector<FormulaBound> out;
    out.push_back(formula("correm-21", true, QuadraticExpr::rational(21 * (nq - 2)), "refCCMO"));
    out.back().requires_source = "refCCMO";
    out.push_back(formula("correm-42", true, QuadraticExpr::rational(42 * (nq - 2)), "refDu"));
    out.back().requires_source = "refDu";
    const QuadraticExpr quad = surd(nq * nq / 2, -5 * nq / 2, n);
    const bool quad_ok = sign_of(quad - QuadraticExpr::rational(1)) != Sign::negative;
    out.push_back(formula("correm-quad", quad_ok, quad, "refHR uniform bound",
                          quad_ok ? std::string{} : "(n^2 - 5n sqrt n)/2 < 1"));
    out.push_back(formula("circ", true, QuadraticExpr::rational(21 * nq), "refCCMO, no abnormal class of degree 1"));
    out.back().requires_source = "refCCMO";
    return out;
}

namespace {

void require_mu_range(int n, const Integer& mu, const char* where)
{
    if (mu < 1 || mu > Integer(n) * (n - 1))
        throw DomainError(std::string(where) + ": mu must lie in [1, n(n-1)]");
}

} // namespace

bool lemcc_hypothesis(int n, const Integer& mu)
{
    require_nonsquare(n, "lemcc_hypothesis");
    require_mu_range(n, mu, "lemcc_hypothesis");
    const SpecializationConfig cfg = SpecializationConfig::defaults(n);
    const Rational x(mu - 1);
    const Rational lhs = (x * cfg.r + cfg.g - 1) / cfg.d;
    const Rational radicand = Rational(n) - Rational(1, 1) / Rational(mu);
    return sign_of(QuadraticExpr(lhs, -x, radicand)) != Sign::negative;
}

bool theoremunif_hypothesis(int n, const Integer& mu)
{
    require_nonsquare(n, "theoremunif_hypothesis");
    require_mu_range(n, mu, "theoremunif_hypothesis");
    if (mu <= 6 * Integer(n - 1))
        return true;
    const SpecializationConfig cfg = SpecializationConfig::defaults(n);
    const Rational nu = Rational(mu - 1) / (n - 1);
    const Rational lhs = (nu * cfg.r + cfg.g - 1) / cfg.d - 1;
    const Rational coeff = nu - Rational(cfg.d) / n;
    const Rational radicand = Rational(n) - Rational(1) / Rational(mu);
    return sign_of(QuadraticExpr(lhs, -coeff, radicand)) != Sign::negative;
}

FormulaBound formula_lemcc(int n)
{
    require_nonsquare(n, "formula_lemcc");
    // The admissible mu form an initial segment: the right side minus the left is
    // (mu-1)(sqrt(n - 1/mu) - r/d) - (g-1)/d, nondecreasing once positive.
    Integer lo = 1;
    Integer hi = Integer(n) * (n - 1);
    if (!lemcc_hypothesis(n, lo))
        return formula("lemcc", false, {}, "refHR criterion, uniform analysis", "hypothesis fails at mu = 1");
    while (lo < hi) {
        const Integer mid = (lo + hi + 1) / 2;
        if (lemcc_hypothesis(n, mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    return formula("lemcc", true, QuadraticExpr::rational(Rational(lo * n)), "refHR criterion, uniform analysis",
                   "mu = " + lo.get_str());
}

FormulaBound formula_reference(int n)
{
    if (auto ref = fixtures::reference_value(n))
        return formula("reference-table", true, QuadraticExpr::rational(ref->f), ref->source);
    return formula("reference-table", false, {}, "", "no literature value for this n");
}

std::vector<FormulaBound> all_formulas(int n)
{
    if (n < 10)
        throw DomainError("all_formulas: n must be at least 10");
    if (is_perfect_square(n))
        return {};
    std::vector<FormulaBound> out = formula_theoremone(n);
    for (FormulaBound& fb : formula_correm_and_circ(n))
        out.push_back(std::move(fb));
    out.push_back(formula_lemcc(n));
    out.push_back(formula_reference(n));
    return out;
}

Integer mu_n(int n)
{
    if (n < 17)
        throw DomainError("mu_n: n must be at least 17");
    if (is_perfect_square(n))
        throw DomainError("mu_n: n must not be a square");
    const long d = isqrt(Integer(n)).get_si();
    const long delta_full = n - d * d;
    const long delta = delta_full / 2;
    const Rational dq(d);
    const Rational base = dq * (dq - 3);
    Rational value;
    if (delta_full % 2 == 1) {
        const Rational inner = dq - 3 + (base - 1) / ((dq - 3) * (dq * dq + delta + 1));
        value = dq * inner * (dq * dq + delta) / (dq * dq - Rational(delta * delta));
    } else {
        const Rational inner = dq - 3 + (base - 1) / ((dq - 3) * (dq * dq + delta));
        value = dq * inner * (dq * dq + delta - 1) / (2 * dq * dq - Rational((delta - 1) * (delta - 1)));
    }
    return floor(value) + 1;
}

BestKnown best_known(int n, const BoundReport& report, const ExclusionDb& db)
{
    require_nonsquare(n, "best_known");
    BestKnown best{QuadraticExpr::rational(report.f), "algorithm"};
    for (const FormulaBound& fb : all_formulas(n)) {
        if (!fb.applicable || !fb.value)
            continue;
        if (!fb.requires_source.empty() && !db.is_enabled(fb.requires_source))
            continue;
        if (compare(*fb.value, best.f_best) == std::strong_ordering::greater) {
            best.f_best = *fb.value;
            best.source = fb.name == "reference-table" ? "reference-table:" + fb.source : fb.name;
        }
    }
    return best;
}

} // namespace seshadri
