// Command-line front end: candidates, alpha, bound, formulas, verify.

#include "seshadri/driver.hpp"
#include "seshadri/errors.hpp"
#include "seshadri/report.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace seshadri;

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget_limited = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "N" or "A..B".
std::vector<int> parse_range(const std::string& text)
{
    const auto dots = text.find("..");
    try {
        std::size_t used = 0;
        if (dots == std::string::npos) {
            const int n = std::stoi(text, &used);
            if (used != text.size())
                throw UsageError("bad n '" + text + "'");
            return {n};
        }
        const std::string a = text.substr(0, dots);
        const std::string b = text.substr(dots + 2);
        const int lo = std::stoi(a, &used);
        if (used != a.size())
            throw UsageError("bad range '" + text + "'");
        const int hi = std::stoi(b, &used);
        if (used != b.size() || hi < lo)
            throw UsageError("bad range '" + text + "'");
        std::vector<int> out;
        for (int n = lo; n <= hi; ++n)
            out.push_back(n);
        return out;
    } catch (const std::logic_error&) {
        throw UsageError("bad n or range '" + text + "'");
    }
}

std::vector<Integer> parse_mults(const std::string& text)
{
    std::vector<Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.emplace_back(item);
        } catch (const std::invalid_argument&) {
            throw UsageError("bad multiplicity '" + item + "'");
        }
    }
    if (out.empty())
        throw UsageError("--mults needs at least one entry");
    return out;
}

struct DbOptions {
    std::string path;
    std::vector<std::string> enable;
    std::vector<std::string> disable;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--db", path, "Exclusion database JSON (default: built-in)");
        cmd->add_option("--enable", enable, "Enable an exclusion source by name")->take_all();
        cmd->add_option("--disable", disable, "Disable an exclusion source by name")->take_all();
    }

    ExclusionDb load() const
    {
        ExclusionDb db = path.empty() ? ExclusionDb::defaults() : load_exclusion_db(path);
        for (const std::string& s : enable)
            db = db.with_source(s, true);
        for (const std::string& s : disable)
            db = db.with_source(s, false);
        return db;
    }
};

struct ConfigOptions {
    std::optional<int> d;
    std::optional<int> r;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--d", d, "Degree of the specialization curve");
        cmd->add_option("--r", r, "Number of points placed on the curve");
    }

    SpecializationConfig for_n(int n) const
    {
        if (d.has_value() != r.has_value())
            throw UsageError("--d and --r must be given together");
        return d ? SpecializationConfig::custom(n, *d, *r) : SpecializationConfig::defaults(n);
    }
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Certified lower bounds for multi-point Seshadri constants"};
    app.require_subcommand(1);

    unsigned jobs = 1;
    std::string cache_path;
    app.add_option("--jobs", jobs, "Worker threads across n (0 = hardware concurrency)");
    app.add_option("--cache", cache_path, "Bound result cache file");

    std::string format_name = "text";
    auto add_format = [&format_name](CLI::App* cmd) {
        cmd->add_option("--format", format_name, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
    };

    // candidates
    auto* cands = app.add_subcommand("candidates", "Enumerate prospective abnormal classes C(t,m,k)");
    int cand_n = 0;
    long cand_m_max = 0;
    cands->add_option("--n", cand_n, "Number of points")->required();
    cands->add_option("--m-max", cand_m_max, "Largest m")->required();
    add_format(cands);

    // alpha
    auto* alpha = app.add_subcommand("alpha", "Lower bound on alpha(m) from the vanishing criterion");
    int alpha_n = 0;
    std::optional<long> alpha_m;
    long alpha_k = 0;
    std::string alpha_mults;
    std::optional<long> alpha_t;
    bool alpha_trace = false;
    ConfigOptions alpha_cfg;
    alpha->add_option("--n", alpha_n, "Number of points")->required();
    auto* m_opt = alpha->add_option("--m", alpha_m, "Uniform multiplicity m (almost-uniform class)");
    alpha->add_option("--k", alpha_k, "Extra multiplicity k on the first point")->needs(m_opt);
    auto* mults_opt = alpha->add_option("--mults", alpha_mults, "Comma-separated nonincreasing multiplicities");
    m_opt->excludes(mults_opt);
    alpha->add_option("--t", alpha_t, "Degree for --trace (default: alpha bound - 1)");
    alpha->add_flag("--trace", alpha_trace, "Dump the unloading trace");
    alpha_cfg.attach(alpha);
    add_format(alpha);

    // bound
    auto* bound = app.add_subcommand("bound", "Certified f(n) from the candidate-exclusion fixpoint");
    std::string bound_n;
    long bound_cap = default_m_budget_cap;
    bool strict = false;
    DbOptions bound_db;
    ConfigOptions bound_cfg;
    bound->add_option("--n", bound_n, "n or A..B (squares are skipped in ranges)")->required();
    bound->add_option("--m-cap", bound_cap, "Largest m ever enumerated")->check(CLI::PositiveNumber);
    bound->add_flag("--strict", strict, "Exit 3 when a bound is budget-limited");
    bound_db.attach(bound);
    bound_cfg.attach(bound);
    add_format(bound);

    // formulas
    auto* formulas = app.add_subcommand("formulas", "Closed-form f(n) estimates");
    std::string formulas_n;
    formulas->add_option("--n", formulas_n, "n or A..B")->required();
    add_format(formulas);

    // verify
    auto* verify = app.add_subcommand("verify", "Compare against the embedded reference tables");
    std::string table;
    long verify_cap = default_m_budget_cap;
    DbOptions verify_db;
    verify->add_option("--table", table, "A or B")->required()->check(CLI::IsMember({"A", "B"}));
    verify->add_option("--m-cap", verify_cap, "Largest m ever enumerated")->check(CLI::PositiveNumber);
    verify_db.attach(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        const Format fmt = parse_format(format_name);
        std::optional<ResultCache> cache;
        if (!cache_path.empty())
            cache.emplace(cache_path);

        if (*cands) {
            if (cand_m_max < 1)
                throw UsageError("--m-max must be at least 1");
            std::cout << render_candidates(cand_n, enumerate_szcor(cand_n, cand_m_max), fmt);
            return exit_ok;
        }

        if (*alpha) {
            const SpecializationConfig cfg = alpha_cfg.for_n(alpha_n);
            AlphaResult res{{}, cfg, 0, std::nullopt, std::nullopt};
            if (alpha_m) {
                res.mults = semiuniformize(alpha_n, *alpha_m, alpha_k);
                const Integer m = *alpha_m;
                const Integer k = alpha_k;
                if (cfg.is_default() && sgn(m) > 0 && k * k <= m && (sgn(k) == 0 || m < alpha_n))
                    res.closed = alpha_lb_closed(alpha_n, m, k, cfg);
            } else if (!alpha_mults.empty()) {
                res.mults = parse_mults(alpha_mults);
                if (res.mults.size() != static_cast<std::size_t>(alpha_n))
                    throw UsageError("--mults needs exactly n entries");
            } else {
                throw UsageError("give either --m [--k] or --mults");
            }
            res.generic = alpha_lower_bound(res.mults, cfg);
            if (alpha_trace) {
                const Integer t = alpha_t ? Integer(*alpha_t) : Integer(res.generic - 1);
                if (sgn(t) < 0)
                    throw UsageError("--t must be non-negative");
                res.trace = d_sequence(DivisorClass(t, res.mults), cfg);
            }
            std::cout << render_alpha(res, fmt);
            return exit_ok;
        }

        if (*bound) {
            std::vector<int> ns = parse_range(bound_n);
            if (ns.size() > 1)
                std::erase_if(ns, [](int n) { return is_perfect_square(n); });
            const ExclusionDb db = bound_db.load();
            const std::vector<BoundReport> reports = compute_bounds_cached(
                ns, db, bound_cap, jobs, cache ? &*cache : nullptr, [&](int n) { return bound_cfg.for_n(n); });
            if (cache)
                cache->flush();
            std::cout << render_bounds(reports, fmt);
            const bool limited =
                std::any_of(reports.begin(), reports.end(), [](const BoundReport& r) { return r.budget_limited; });
            return strict && limited ? exit_budget_limited : exit_ok;
        }

        if (*formulas) {
            std::map<int, std::vector<FormulaBound>> rows;
            for (int n : parse_range(formulas_n))
                rows[n] = all_formulas(n);
            std::cout << render_formulas(rows, fmt);
            return exit_ok;
        }

        if (*verify) {
            const VerifyOutcome outcome =
                table == "A" ? verify_table_a()
                             : verify_table_b(verify_db.load(), verify_cap, jobs, cache ? &*cache : nullptr);
            if (cache)
                cache->flush();
            for (const std::string& line : outcome.lines)
                std::cout << line << "\n";
            std::cout << (outcome.passed ? "PASS" : "FAIL") << "\n";
            return outcome.passed ? exit_ok : exit_verify_failed;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) { // InvalidInput, DimensionError
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return exit_usage;
}
