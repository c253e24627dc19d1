#include "oracles.hpp"

#include "seshadri/driver.hpp"
#include "seshadri/fixtures.hpp"

#include <doctest.h>

#include <random>

using namespace seshadri;

namespace {

/// (m+1)^k m^(n-k) for k >= 0, (m^(n-1), m+k) for k < 0.
std::vector<Integer> semiuniform_vector(int n, long m, long k)
{
    std::vector<Integer> v(n, Integer(m));
    if (k >= 0) {
        for (long i = 0; i < k; ++i)
            v[i] += 1;
    } else {
        v.back() += k;
    }
    return v;
}

template <typename Fn>
void for_almost_uniform(Fn&& fn)
{
    for (int n = 10; n <= 40; ++n) {
        if (is_perfect_square(n))
            continue;
        for (long m = 1; m <= 30; ++m)
            for (long k = -m; k <= m; ++k)
                if (k * k <= m)
                    fn(n, m, k);
    }
}

} // namespace

TEST_SUITE("properties")
{
    TEST_CASE("unload is idempotent and lands in normal form")
    {
        std::mt19937_64 rng(2024);
        std::uniform_int_distribution<int> points(1, 20);
        std::uniform_int_distribution<long> mult(-15, 25);
        for (int rep = 0; rep < 5000; ++rep) {
            const int n = points(rng);
            std::vector<Integer> m(n);
            for (auto& x : m)
                x = mult(rng);
            const DivisorClass f(mult(rng), m);
            const DivisorClass u = unload(f);
            CAPTURE(f.to_string());
            CHECK(u.degree() == f.degree());
            CHECK(u.is_nonincreasing());
            CHECK(sgn(u.mults().back()) >= 0);
            CHECK(unload(u) == u);
        }
    }

    TEST_CASE("trace steps keep their shape")
    {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<int> points(10, 60);
        std::uniform_int_distribution<long> mult(0, 20);
        for (int rep = 0; rep < 1000; ++rep) {
            const int n = points(rng);
            if (is_perfect_square(n))
                continue;
            std::vector<Integer> m(n);
            for (auto& x : m)
                x = mult(rng);
            std::sort(m.begin(), m.end(), [](const Integer& a, const Integer& b) { return a > b; });
            const auto cfg = SpecializationConfig::defaults(n);
            const auto tr = d_sequence(DivisorClass(alpha_search_top(m, cfg), m), cfg);
            for (std::size_t i = 0; i < tr.steps.size(); ++i) {
                const auto& s = tr.steps[i];
                CHECK(s.divisor.is_nonincreasing());
                CHECK(s.divisor.is_nonnegative());
                CHECK(s.dot_curve == cfg.d * s.degree - s.divisor.leading_mult_sum(cfg.r));
                if (i + 1 < tr.steps.size())
                    CHECK(tr.steps[i + 1].degree == s.degree - cfg.d);
            }
            CHECK(tr.steps[tr.j].degree < cfg.d);
        }
    }

    TEST_CASE("trace inequalities and omega' on almost-uniform inputs")
    {
        long cases = 0;
        for_almost_uniform([&](int n, long m, long k) {
            if (k * k > n)
                return;
            const auto cfg = SpecializationConfig::defaults(n);
            const std::vector<Integer> v = semiuniform_vector(n, m, k);
            const Integer omega = ceil_div(Integer(m) * n + k, cfg.r);
            // Start high enough that the trace runs past omega'.
            const Integer t0 = cfg.d * (omega + 2);
            const auto tr = d_sequence(DivisorClass(t0, v), cfg);
            CAPTURE(n);
            CAPTURE(m);
            CAPTURE(k);
            REQUIRE(tr.omega_prime.has_value());
            CHECK(Integer(static_cast<unsigned long>(*tr.omega_prime)) == omega);

            const Integer bound = cfg.d * t0 - (Integer(m) * cfg.r + k);
            const int delta = n - cfg.d * cfg.d;
            const bool sharper = k < 0 && delta > 0 && delta % 2 == 0;
            for (std::size_t i = 0; i < *tr.omega_prime; ++i) {
                CHECK(tr.steps[i].dot_curve <= bound);
                if (sharper)
                    CHECK(tr.steps[i].dot_curve <= cfg.d * t0 - Integer(m) * cfg.r);
            }
            ++cases;
        });
        CHECK(cases >= 1000);
    }

    TEST_CASE("the criterion search dominates the closed form")
    {
        long cases = 0;
        for_almost_uniform([&](int n, long m, long k) {
            if (k != 0 && m >= n)
                return;
            const auto cfg = SpecializationConfig::defaults(n);
            CAPTURE(n);
            CAPTURE(m);
            CAPTURE(k);
            CHECK(alpha_lower_bound(semiuniformize(n, m, k), cfg) >= alpha_lb_closed(n, m, k, cfg));
            ++cases;
        });
        CHECK(cases >= 1000);
    }

    TEST_CASE("strong forms of cases c and d dominate their sqrt forms")
    {
        int checked = 0;
        for (int n = 10; n <= 999; ++n) {
            if (is_perfect_square(n))
                continue;
            const auto list = formula_theoremone(n);
            auto find = [&](const std::string& name) -> const FormulaBound& {
                return *std::find_if(list.begin(), list.end(), [&](const FormulaBound& f) { return f.name == name; });
            };
            for (const char* c : {"theoremone-c", "theoremone-d"}) {
                const FormulaBound& strong = find(c);
                const FormulaBound& weak = find(std::string(c) + "-weak");
                CHECK(strong.applicable == weak.applicable);
                if (!strong.applicable)
                    continue;
                CAPTURE(n);
                CAPTURE(c);
                CHECK(compare(*strong.value, *weak.value) != std::strong_ordering::less);
                ++checked;
            }
        }
        CHECK(checked > 0);
    }

    TEST_CASE("mu_n satisfies the lemcc hypothesis")
    {
        for (int n = 17; n <= 999; ++n) {
            if (is_perfect_square(n))
                continue;
            CAPTURE(n);
            CHECK(lemcc_hypothesis(n, mu_n(n)));
        }
    }

    TEST_CASE("the lemcc hypothesis holds on an initial segment of mu")
    {
        for (int n = 10; n <= 60; ++n) {
            if (is_perfect_square(n))
                continue;
            CAPTURE(n);
            Integer last = 0;
            bool seen_false = false;
            for (Integer mu = 1; mu <= n * (n - 1); ++mu) {
                const bool ok = lemcc_hypothesis(n, mu);
                CHECK_FALSE((ok && seen_false));
                seen_false = seen_false || !ok;
                if (ok)
                    last = mu;
            }
            const auto f = formula_lemcc(n);
            REQUIRE(f.value.has_value());
            CHECK(compare(*f.value, QuadraticExpr::rational(Rational(last * n))) == std::strong_ordering::equal);
        }
    }

    TEST_CASE("bound reports carry sound coverage certificates")
    {
        const auto db = ExclusionDb::defaults();
        for (int n = 10; n <= 50; ++n) {
            if (is_perfect_square(n))
                continue;
            CAPTURE(n);
            const auto cfg = SpecializationConfig::defaults(n);
            const auto r = compute_bound(n, db, cfg);
            REQUIRE_FALSE(r.budget_limited);
            REQUIRE(r.blocker.has_value());
            CHECK(r.mu == e_value(*r.blocker).e);
            CHECK(r.f == r.mu * n);
            CHECK(r.coverage.m_checked_k0 >= ceil(r.mu) - 1);
            CHECK(r.coverage.m_checked_knz >= ceil(r.mu / (n - 1)) - 1);
            CHECK_FALSE(is_excluded(*r.blocker, cfg, db).excluded);

            const auto cands = enumerate_szcor(n, r.coverage.m_checked_k0);
            for (const CandidateTriple& c : cands) {
                if (e_value(c).e >= r.mu)
                    continue;
                const bool listed = std::any_of(r.exclusions_used.begin(), r.exclusions_used.end(),
                                                [&](const ExclusionRecord& x) { return x.candidate == c; });
                CAPTURE(c.to_string());
                CHECK(listed);
            }
        }
    }

    TEST_CASE("enabling exclusions never lowers f")
    {
        const auto full = ExclusionDb::defaults();
        const ExclusionDb none(full.entries(), {});
        const auto ccmo = none.with_source("refCCMO", true);
        const auto du = full.with_source("refDu", true);
        for (int n = 10; n <= 60; ++n) {
            if (is_perfect_square(n))
                continue;
            CAPTURE(n);
            const auto cfg = SpecializationConfig::defaults(n);
            const Rational f0 = compute_bound(n, none, cfg).f;
            const Rational f1 = compute_bound(n, ccmo, cfg).f;
            const Rational f2 = compute_bound(n, full, cfg).f;
            const Rational f3 = compute_bound(n, du, cfg).f;
            CHECK(f0 <= f1);
            CHECK(f1 <= f2);
            CHECK(f2 <= f3);
        }
    }

    TEST_CASE("tabulated blockers are never excluded")
    {
        const auto db = ExclusionDb::defaults();
        for (const auto& row : fixtures::table_b()) {
            if (!row.source.empty())
                continue;
            const CandidateTriple c{row.n, row.t, row.m, 0};
            if (!c.is_abnormal())
                continue;
            CAPTURE(c.to_string());
            CHECK_FALSE(is_excluded(c, SpecializationConfig::defaults(row.n), db).excluded);
        }
    }
}
