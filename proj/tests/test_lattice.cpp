#include "oracles.hpp"

#include "seshadri/arith.hpp"
#include "seshadri/errors.hpp"
#include "seshadri/lattice.hpp"

#include <doctest.h>

#include <random>

using namespace seshadri;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs)
{
    std::vector<Integer> out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST_SUITE("lattice")
{
    TEST_CASE("integer helpers round the right way")
    {
        CHECK(isqrt(Integer(99)) == 9);
        CHECK(isqrt(Integer(100)) == 10);
        CHECK(ceil_sqrt(Integer(99)) == 10);
        CHECK(ceil_sqrt(Integer(100)) == 10);
        CHECK(ceil_sqrt(Integer(0)) == 0);
        CHECK(floor_div(Integer(-7), Integer(2)) == -4);
        CHECK(ceil_div(Integer(-7), Integer(2)) == -3);
        CHECK(ceil_div(Integer(7), Integer(2)) == 4);
        CHECK(floor(Rational(-7, 2)) == -4);
        CHECK(ceil(Rational(-7, 2)) == -3);
        CHECK_THROWS_AS(make_rational(1, 0), DomainError);
    }

    TEST_CASE("decimal truncation trims like the printed tables")
    {
        CHECK(truncate_decimal(Rational(361, 10)) == "36.1");
        CHECK(truncate_decimal(make_rational(313600, 310)) == "1011.61");
        CHECK(truncate_decimal(Rational(1)) == "1");
        CHECK(truncate_decimal(Rational(49, 6)) == "8.16");
        CHECK(truncate_decimal(Rational(361, 10), 2, false) == "36.10");
        CHECK(truncate_decimal(Rational(-1, 3)) == "-0.34");
        CHECK(to_string(make_rational(313600, 310)) == "31360/31");
        CHECK(parse_rational("10/4") == Rational(5, 2));
        CHECK_THROWS_AS(parse_rational("x"), InvalidInput);
        CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
    }

    TEST_CASE("intersection pairing examples")
    {
        const DivisorClass cubic10 = DivisorClass::uniform(10, 3, 1);
        const DivisorClass cubic9(3, ints({1, 1, 1, 1, 1, 1, 1, 1, 1, 0}));
        CHECK(intersect(cubic10, cubic9) == 0);
        CHECK(intersect(DivisorClass::line(10), DivisorClass::line(10)) == 1);
        const DivisorClass c(6, ints({2, 2, 2, 2, 2, 2, 2, 2, 2, 1}));
        CHECK(intersect(c, c) == -1);
        CHECK_THROWS_AS(intersect(DivisorClass::line(3), DivisorClass::line(4)), DimensionError);
        CHECK_THROWS_AS(DivisorClass(1, {}), InvalidInput);
    }

    TEST_CASE("basis signature")
    {
        const std::size_t n = 6;
        CHECK(intersect(DivisorClass::line(n), DivisorClass::line(n)) == 1);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(intersect(DivisorClass::line(n), DivisorClass::exceptional(n, i)) == 0);
            for (std::size_t j = 0; j < n; ++j)
                CHECK(intersect(DivisorClass::exceptional(n, i), DivisorClass::exceptional(n, j)) == (i == j ? -1 : 0));
        }
    }

    TEST_CASE("bilinearity on random classes")
    {
        std::mt19937_64 rng(0x5e5);
        std::uniform_int_distribution<long> coef(-1000, 1000);
        std::uniform_int_distribution<std::size_t> size(1, 12);
        for (int iter = 0; iter < 1000; ++iter) {
            const std::size_t n = size(rng);
            auto random_class = [&] {
                std::vector<Integer> m;
                for (std::size_t i = 0; i < n; ++i)
                    m.emplace_back(coef(rng));
                return DivisorClass(coef(rng), std::move(m));
            };
            const DivisorClass a = random_class(), b = random_class(), c = random_class();
            CHECK(intersect(a + b, c) == intersect(a, c) + intersect(b, c));
            CHECK(intersect(a, b) == intersect(b, a));
            CHECK(intersect(a - b, c) == intersect(a, c) - intersect(b, c));
        }
    }

    TEST_CASE("sign_of examples")
    {
        CHECK(sign_of(QuadraticExpr(0, 0, 7)) == Sign::zero);
        CHECK(sign_of(QuadraticExpr(-3, 1, 10)) == Sign::positive);
        CHECK(sign_of(QuadraticExpr(3, -1, 9)) == Sign::zero);
        CHECK(sign_of(QuadraticExpr(-3, 1, 8)) == Sign::negative);
        // For e = e(177,56,0), sqrt(n(1 - 1/(e n))) = n t/(mn+k) exactly.
        const Rational e = make_rational(313600, 3100);
        CHECK(sign_of(QuadraticExpr(Rational(177, 56), -1, 10 * (1 - 1 / (10 * e)))) == Sign::zero);
        CHECK_THROWS_AS(QuadraticExpr(0, 1, -1), DomainError);
    }

    TEST_CASE("compare_rational_sqrt examples")
    {
        CHECK(compare_rational_sqrt(3, 9) == std::strong_ordering::equal);
        CHECK(compare_rational_sqrt(Rational(22, 7), 10) == std::strong_ordering::less);
        CHECK(compare_rational_sqrt(Rational(177, 56), 10) == std::strong_ordering::less);
        CHECK(compare_rational_sqrt(-3, 9) == std::strong_ordering::less);
        CHECK(compare_rational_sqrt(0, 0) == std::strong_ordering::equal);
    }

    TEST_CASE("compare_rational_sqrt is equal exactly on perfect squares")
    {
        std::mt19937_64 rng(17);
        for (int iter = 0; iter < 2000; ++iter) {
            const Rational p = oracle::random_rational(rng, 50, 9);
            const Rational a = iter % 3 == 0 ? Rational(p * p) : Rational(abs(oracle::random_rational(rng, 2500, 81)));
            const bool eq = compare_rational_sqrt(p, a) == std::strong_ordering::equal;
            CHECK(eq == (sgn(p) >= 0 && p * p == a));
        }
    }

    TEST_CASE("sign_of agrees with a 512-bit evaluation")
    {
        std::mt19937_64 rng(20240601);
        const mpf_class tiny("1e-30", 512);
        int checked = 0;
        for (int iter = 0; iter < 10000; ++iter) {
            const Rational q = abs(oracle::random_rational(rng, 400, 25));
            Rational a = oracle::random_rational(rng, 1000, 50);
            const Rational b = oracle::random_rational(rng, 100, 50);
            // A quarter of the cases sit on or right next to the boundary a = -b sqrt(q).
            if (iter % 4 == 0) {
                const Rational shift = oracle::random_rational(rng, 1, 1000000);
                mpf_class root(0, 512), rq(q, 512);
                mpf_sqrt(root.get_mpf_t(), rq.get_mpf_t());
                mpf_class target = -mpf_class(b, 512) * root;
                a = Rational(target) + shift;
            }
            const mpf_class v = oracle::approx(a, b, q);
            const Sign s = sign_of(QuadraticExpr(a, b, q));
            if (abs(v) > tiny) {
                ++checked;
                CHECK(s == (sgn(v) > 0 ? Sign::positive : Sign::negative));
            }
        }
        CHECK(checked > 9000);
    }

    TEST_CASE("exact floor of surds")
    {
        CHECK(floor(QuadraticExpr(0, 1, 10)) == 3);
        CHECK(floor(QuadraticExpr(0, -1, 10)) == -4);
        CHECK(floor(QuadraticExpr(0, 1, 9)) == 3);
        CHECK(floor(QuadraticExpr(Rational(1, 2), 1, 4)) == 2);
        CHECK(truncate_decimal(QuadraticExpr(0, 1, 2)) == "1.41");
    }
}
