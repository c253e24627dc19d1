#include "seshadri/errors.hpp"
#include "seshadri/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace seshadri;
using nlohmann::json;

namespace {

bool has_line(const std::string& text, const std::string& line)
{
    return ("\n" + text).find("\n" + line + "\n") != std::string::npos;
}

std::size_t count_lines(const std::string& text)
{
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::filesystem::path temp_file(const std::string& name)
{
    const auto p = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove(p);
    return p;
}

} // namespace

TEST_SUITE("report")
{
    TEST_CASE("formats")
    {
        CHECK(parse_format("text") == Format::text);
        CHECK(parse_format("csv") == Format::csv);
        CHECK(parse_format("json") == Format::json);
        CHECK_THROWS_AS(parse_format("xml"), InvalidInput);
    }

    TEST_CASE("rationals serialize as decimal strings")
    {
        const Rational big = make_rational(Integer("123456789012345678901234567891"), Integer(7));
        const json j = rational_to_json(big);
        CHECK(j["num"] == "123456789012345678901234567891");
        CHECK(j["den"] == "7");
        CHECK(rational_from_json(j) == big);
        CHECK_THROWS_AS(rational_from_json(json{{"num", "1"}}), InvalidInput);
        CHECK_THROWS_AS(rational_from_json(json{{"num", "x"}, {"den", "2"}}), InvalidInput);
        CHECK_THROWS_AS(rational_from_json(json{{"num", "1"}, {"den", "0"}}), DomainError);
    }

    TEST_CASE("bound reports round-trip through JSON")
    {
        const auto db = ExclusionDb::defaults();
        for (int n : {10, 11, 41}) {
            const auto r = compute_bound(n, db, SpecializationConfig::defaults(n));
            const json j = r;
            CHECK(j.get<BoundReport>() == r);
            CHECK(json::parse(j.dump()).get<BoundReport>() == r);
        }
        const json ten = compute_bound(10, db, SpecializationConfig::defaults(10));
        CHECK(ten["f"]["num"] == "313600");
        CHECK(ten["f"]["den"] == "310");
        CHECK(ten["mu"]["num"] == "3136");
        CHECK(ten["mu"]["den"] == "31");
        CHECK(ten["blocker"]["t"] == "177");

        const auto limited = compute_bound(10, db, SpecializationConfig::defaults(10), 30);
        const json lj = limited;
        CHECK(lj["blocker"].is_null());
        CHECK(lj["f"]["num"] == "310");
        CHECK(lj.get<BoundReport>() == limited);

        CHECK_THROWS_AS(json::parse(R"({"n":10})").get<BoundReport>(), InvalidInput);
    }

    TEST_CASE("bound rendering")
    {
        const auto r = compute_bound(10, ExclusionDb::defaults(), SpecializationConfig::defaults(10));
        const std::string text = render_bounds({r}, Format::text);
        CHECK(has_line(text, "n = 10"));
        CHECK(has_line(text, "f = 1011.61 (exact 313600/310), blocker C(177,56,0)"));
        CHECK(has_line(text, "specialization: d = 3, r = 9, g = 1"));

        const std::string csv = render_bounds({r}, Format::csv);
        CHECK(csv.rfind("n,f_num,f_den,f_trunc,mu_num,mu_den,blocker_t,blocker_m,blocker_k,d,r,", 0) == 0);
        CHECK(csv.find("\n10,313600,310,1011.61,3136,31,177,56,0,3,9,") != std::string::npos);
        CHECK(count_lines(csv) == 2);

        CHECK(json::parse(render_bounds({r}, Format::json)).is_object());
        CHECK(json::parse(render_bounds({r, r}, Format::json)).is_array());
    }

    TEST_CASE("candidate rendering")
    {
        const auto cands = enumerate_szcor(10, 182);
        const std::string csv = render_candidates(10, cands, Format::csv);
        CHECK(count_lines(csv) == 33);
        CHECK(csv.rfind("n,t,m,k,e_num,e_den,e_trunc\n10,3,1,0,", 0) == 0);
        CHECK(csv.find("\n10,177,56,0,3136,31,101.16\n") != std::string::npos);
        const json j = json::parse(render_candidates(10, cands, Format::json));
        CHECK(j["n"] == 10);
        CHECK(j["candidates"].size() == 32);
        CHECK(count_lines(render_candidates(10, cands, Format::text)) == 33);
    }

    TEST_CASE("formula rendering")
    {
        std::map<int, std::vector<FormulaBound>> rows;
        rows[17] = all_formulas(17);
        rows[16] = all_formulas(16);
        const std::string text = render_formulas(rows, Format::text);
        CHECK(text.find("  theoremone-a: f = 1089") != std::string::npos);
        CHECK(text.find("square n") != std::string::npos);
        const std::string csv = render_formulas(rows, Format::csv);
        CHECK(csv.rfind("n,name,applicable,f_trunc,f_exact,source,note\n", 0) == 0);
        CHECK(csv.find("\n17,theoremone-a,true,1089,") != std::string::npos);
    }

    TEST_CASE("alpha rendering")
    {
        const auto cfg = SpecializationConfig::defaults(10);
        AlphaResult a{semiuniformize(10, 56, 0), cfg, 169, Integer(169), std::nullopt};
        const std::string text = render_alpha(a, Format::text);
        CHECK(has_line(text, "alpha >= 169 (criterion search)"));
        CHECK(has_line(text, "alpha >= 169 (closed form)"));
        a.trace = d_sequence(DivisorClass::uniform(10, 3, 1), cfg);
        CHECK(render_alpha(a, Format::text).find("trace for t = 3: j = 1") != std::string::npos);
        CHECK(render_alpha(a, Format::csv).find("\n10,3,9,") != std::string::npos);
    }

    TEST_CASE("the cache is transparent")
    {
        const auto path = temp_file("seshadri-cache-test.json");
        const auto db = ExclusionDb::defaults();
        const std::vector<int> ns = {10, 12, 13};
        const auto direct = compute_bounds(ns, db, default_m_budget_cap, 1);
        {
            ResultCache cache(path.string());
            CHECK(compute_bounds_cached(ns, db, default_m_budget_cap, 1, &cache) == direct);
            cache.flush();
        }
        REQUIRE(std::filesystem::exists(path));
        {
            ResultCache cache(path.string());
            const auto key = ResultCache::key(SpecializationConfig::defaults(12), db, default_m_budget_cap);
            REQUIRE(cache.lookup(key).has_value());
            CHECK(*cache.lookup(key) == direct[1]);
            CHECK(compute_bounds_cached(ns, db, default_m_budget_cap, 2, &cache) == direct);
            // Different database or budget means a different key.
            CHECK(ResultCache::key(SpecializationConfig::defaults(12), db.with_source("Miranda", false),
                                   default_m_budget_cap) != key);
            CHECK(ResultCache::key(SpecializationConfig::defaults(12), db, 100) != key);
        }
        std::filesystem::remove(path);

        {
            std::ofstream(path) << "not json";
        }
        CHECK_THROWS_AS(ResultCache(path.string()), InvalidInput);
        std::filesystem::remove(path);
    }

    TEST_CASE("Table A verification")
    {
        const auto v = verify_table_a();
        CHECK(v.passed);
        CHECK(v.matches == 32);
        CHECK(v.rows == 32);
    }
}
