#include "seshadri/effectivity.hpp"

#include "seshadri/errors.hpp"

#include <algorithm>
#include <fstream>
#include <limits>

namespace seshadri {

// --------------------------------------------------------------------------
// Specialization parameters

namespace {

int checked_int(const Integer& x, const char* what)
{
    if (!x.fits_sint_p())
        throw DomainError(std::string(what) + " does not fit in an int");
    return static_cast<int>(x.get_si());
}

int genus(int d)
{
    return (d - 1) * (d - 2) / 2;
}

} // namespace

SpecializationConfig SpecializationConfig::defaults(int n)
{
    if (n < 1)
        throw DomainError("specialization needs n >= 1");
    const int d = checked_int(isqrt(Integer(n)), "d");
    const int r = checked_int(isqrt(Integer(d) * d * n), "r");
    return {n, d, r, genus(d)};
}

SpecializationConfig SpecializationConfig::ceil_r(int n)
{
    if (n < 1)
        throw DomainError("specialization needs n >= 1");
    const int d = checked_int(isqrt(Integer(n)), "d");
    const int r = std::min(n, checked_int(ceil_sqrt(Integer(d) * d * n), "r"));
    return {n, d, r, genus(d)};
}

SpecializationConfig SpecializationConfig::custom(int n, int d, int r)
{
    if (n < 1 || d < 1 || r < 1 || r > n)
        throw DomainError("specialization needs d >= 1 and 1 <= r <= n (got n=" + std::to_string(n) +
                          ", d=" + std::to_string(d) + ", r=" + std::to_string(r) + ")");
    return {n, d, r, genus(d)};
}

bool SpecializationConfig::is_default() const
{
    return n >= 1 && *this == defaults(n);
}

DivisorClass SpecializationConfig::curve_class() const
{
    std::vector<Integer> mults(static_cast<std::size_t>(n), Integer(0));
    for (int i = 0; i < r; ++i)
        mults[static_cast<std::size_t>(i)] = 1;
    return DivisorClass(d, std::move(mults));
}

// --------------------------------------------------------------------------
// Unloading

namespace {

Integer move_cap(const std::vector<Integer>& v)
{
    Integer total = 1;
    for (const Integer& x : v)
        total += abs(x);
    Integer cap = total * static_cast<unsigned long>(v.size());
    return cap * cap;
}

/// Smallest-violating-index-first unloading. Indices below the scan position
/// are known to be satisfied, and a move at j can only break j-1, so stepping
/// back one slot after each move reproduces the restart-from-the-left order.
void unload_in_place(std::vector<Integer>& v)
{
    const std::size_t n = v.size();
    if (n == 0)
        return;
    const Integer cap = move_cap(v);
    Integer moves = 0;
    std::size_t j = 0;
    while (j < n) {
        bool moved = false;
        if (j + 1 < n) {
            if (v[j] < v[j + 1]) {
                ++v[j];
                --v[j + 1];
                moved = true;
            }
        } else if (sgn(v[j]) < 0) {
            ++v[j];
            moved = true;
        }
        if (!moved) {
            ++j;
            continue;
        }
        if (++moves > cap)
            throw InternalError("unloading exceeded its move cap");
        if (j > 0)
            --j;
    }
}

void subtract_curve(std::vector<Integer>& v, int r)
{
    for (int i = 0; i < r; ++i)
        --v[static_cast<std::size_t>(i)];
}

Integer leading_sum(const std::vector<Integer>& v, int r)
{
    Integer s = 0;
    for (int i = 0; i < r; ++i)
        s += v[static_cast<std::size_t>(i)];
    return s;
}

bool all_zero(const std::vector<Integer>& v)
{
    return std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
}

void require_normal_form(std::span<const Integer> mults, const char* where)
{
    for (std::size_t i = 0; i < mults.size(); ++i) {
        if (sgn(mults[i]) < 0)
            throw InvalidInput(std::string(where) + ": multiplicities must be non-negative");
        if (i + 1 < mults.size() && mults[i] < mults[i + 1])
            throw InvalidInput(std::string(where) + ": multiplicities must be nonincreasing");
    }
}

} // namespace

DivisorClass unload(const DivisorClass& f)
{
    std::vector<Integer> v(f.mults().begin(), f.mults().end());
    unload_in_place(v);
    return DivisorClass(f.degree(), std::move(v));
}

// --------------------------------------------------------------------------
// Traces and the vanishing criterion

UnloadingTrace d_sequence(const DivisorClass& d0, const SpecializationConfig& cfg)
{
    if (d0.points() != static_cast<std::size_t>(cfg.n))
        throw DimensionError("d_sequence: class and configuration disagree on n");
    require_normal_form(d0.mults(), "d_sequence");

    UnloadingTrace trace;
    std::vector<Integer> v(d0.mults().begin(), d0.mults().end());
    Integer t = d0.degree();
    bool recording = true;

    // Past index j only omega' is still being looked for. The multiplicity sum
    // drops at every step until the vector is zero; the cap is a safety net.
    Integer remaining_steps = d0.mult_sum() + cfg.n + 2;
    for (std::size_t i = 0;; ++i) {
        if (!trace.omega_prime && all_zero(v))
            trace.omega_prime = i;
        if (recording) {
            Integer dot = Integer(cfg.d) * t - leading_sum(v, cfg.r);
            trace.steps.push_back(TraceStep{i, DivisorClass(t, v), t, dot});
            if (t < cfg.d) {
                trace.j = i;
                recording = false;
            }
        }
        if (!recording) {
            if (trace.omega_prime || sgn(remaining_steps) <= 0)
                break;
            --remaining_steps;
        }
        subtract_curve(v, cfg.r);
        unload_in_place(v);
        t -= cfg.d;
    }
    return trace;
}

bool criterion_holds(const DivisorClass& d0, const SpecializationConfig& cfg)
{
    const UnloadingTrace trace = d_sequence(d0, cfg);
    const Integer g_minus_one = cfg.g - 1;
    for (std::size_t i = 0; i < trace.j; ++i) {
        if (trace.steps[i].dot_curve > g_minus_one)
            return false;
    }
    const TraceStep& last = trace.steps[trace.j];
    const Integer& tj = last.degree;
    return (tj + 1) * (tj + 2) <= 2 * (Integer(cfg.d) * tj - last.dot_curve);
}

CriterionTable::CriterionTable(std::span<const Integer> mults, const SpecializationConfig& cfg, const Integer& t_max)
    : cfg_(cfg), t_max_(t_max)
{
    if (mults.size() != static_cast<std::size_t>(cfg.n))
        throw DimensionError("CriterionTable: multiplicity vector and configuration disagree on n");
    require_normal_form(mults, "CriterionTable");
    if (sgn(t_max) < 0)
        throw DomainError("CriterionTable: t_max must be non-negative");

    const std::size_t last = Integer(t_max / cfg.d).get_ui();
    leading_sums_.reserve(last + 1);
    std::vector<Integer> v(mults.begin(), mults.end());
    bool zero = all_zero(v);
    for (std::size_t i = 0; i <= last; ++i) {
        leading_sums_.push_back(zero ? Integer(0) : leading_sum(v, cfg.r));
        if (i == last || zero)
            continue;
        subtract_curve(v, cfg.r);
        unload_in_place(v);
        zero = all_zero(v);
    }

    const Integer d2 = Integer(cfg.d) * cfg.d;
    prefix_min_.resize(last + 1);
    for (std::size_t i = 1; i <= last; ++i) {
        Integer cand = leading_sums_[i - 1] + d2 * static_cast<unsigned long>(i - 1);
        prefix_min_[i] = (i == 1 || cand < prefix_min_[i - 1]) ? cand : prefix_min_[i - 1];
    }
}

bool CriterionTable::holds(const Integer& t) const
{
    if (sgn(t) < 0 || t > t_max_)
        throw DomainError("CriterionTable::holds: t outside the precomputed window");
    const std::size_t j = Integer(t / cfg_.d).get_ui();
    // i < j: d(t - i d) - S_i <= g - 1  <=>  S_i + i d^2 >= d t - g + 1.
    if (j > 0 && prefix_min_[j] < Integer(cfg_.d) * t - cfg_.g + 1)
        return false;
    const Integer tj = t - Integer(cfg_.d) * static_cast<unsigned long>(j);
    return (tj + 1) * (tj + 2) <= 2 * leading_sums_[j];
}

Integer alpha_search_top(std::span<const Integer> mults, const SpecializationConfig& cfg)
{
    Integer sum = 0;
    for (const Integer& x : mults)
        sum += x;
    // ceil(sum / sqrt n): the least x >= 0 with n x^2 >= sum^2.
    const Integer lifted = ceil_sqrt(ceil_div(sum * sum, Integer(cfg.n)));
    return lifted + cfg.d;
}

Integer alpha_lower_bound(std::span<const Integer> mults, const SpecializationConfig& cfg)
{
    require_normal_form(mults, "alpha_lower_bound");
    if (std::all_of(mults.begin(), mults.end(), [](const Integer& x) { return sgn(x) == 0; }))
        throw InvalidInput("alpha_lower_bound: all-zero multiplicities");
    const Integer top = alpha_search_top(mults, cfg);
    const CriterionTable table(mults, cfg, top);
    // The criterion need not be monotone in t; the first hit scanning down is the maximum.
    for (Integer t = top; sgn(t) >= 0; --t) {
        if (table.holds(t))
            return t + 1;
    }
    return 1;
}

Integer alpha_lb_closed(int n, const Integer& m, const Integer& k, const SpecializationConfig& cfg)
{
    if (cfg.n != n || !cfg.is_default())
        throw DomainError("alpha_lb_closed is stated for the default (d, r) only");
    if (sgn(m) < 1 || !(k * k <= m))
        throw DomainError("alpha_lb_closed needs m >= 1 and k^2 <= m");
    if (sgn(k) != 0 && !(m < n))
        throw DomainError("alpha_lb_closed needs m < n when k != 0");

    const Integer sum = m * n + k;
    const Integer r = cfg.r;
    const Integer u = floor_div(sum - 1, r);
    const Integer rho = sum - u * r;

    Integer s = 0;
    while (s + 1 < cfg.d && (s + 2) * (s + 3) <= 2 * rho)
        ++s;

    const int delta = n - cfg.d * cfg.d;
    const bool even_variant = sgn(k) < 0 && delta > 0 && delta % 2 == 0;
    const Integer numer = even_variant ? Integer(m * r + cfg.g - 1) : Integer(m * r + k + cfg.g - 1);
    const Integer first = floor_div(numer, Integer(cfg.d));
    const Integer second = s + u * cfg.d;
    return 1 + std::min(first, second);
}

bool semiuniform_applies(int n, const Integer& m, const Integer& k)
{
    return sgn(k) > 0 && m < n && k * k <= m;
}

std::vector<Integer> semiuniformize(int n, const Integer& m, const Integer& k)
{
    if (n < 1)
        throw DomainError("semiuniformize needs n >= 1");
    if (sgn(m) < 1)
        throw DomainError("semiuniformize needs m >= 1");
    if (sgn(Integer(m + k)) < 0)
        throw DomainError("semiuniformize needs m + k >= 0");

    std::vector<Integer> v(static_cast<std::size_t>(n), m);
    if (sgn(k) < 0) {
        v.back() += k;
    } else if (semiuniform_applies(n, m, k)) {
        const std::size_t bumped = k.get_ui();
        for (std::size_t i = 0; i < bumped; ++i)
            ++v[i];
    } else {
        v.front() += k;
    }
    return v;
}

// --------------------------------------------------------------------------
// Exclusion database

const std::string& entry_source(const ExclusionEntry& e)
{
    return std::visit([](const auto& x) -> const std::string& { return x.source; }, e);
}

ExclusionDb::ExclusionDb(std::vector<ExclusionEntry> entries, std::set<std::string> enabled)
    : entries_(std::move(entries)), enabled_(std::move(enabled))
{
    for (const auto& e : entries_) {
        if (entry_source(e).empty())
            throw InvalidInput("exclusion entries need a nonempty source");
    }
}

ExclusionDb ExclusionDb::defaults()
{
    std::vector<ExclusionEntry> entries{
        UniformBound{10, 20, "refCCMO"},
        UniformBound{10, 42, "refDu"},
        ExplicitClass{10, 3, 1, 0, "unique-cubic"},
        ExplicitClass{10, 6, 2, -1, "unique-cubic"},
        ExplicitClass{10, 79, 25, 0, "Miranda"},
    };
    return ExclusionDb(std::move(entries), {"refCCMO", "unique-cubic", "Miranda"});
}

ExclusionDb ExclusionDb::with_source(const std::string& source, bool enabled) const
{
    ExclusionDb copy = *this;
    if (enabled)
        copy.enabled_.insert(source);
    else
        copy.enabled_.erase(source);
    return copy;
}

std::optional<std::string> ExclusionDb::ruling(const CandidateTriple& c) const
{
    for (const auto& e : entries_) {
        if (!is_enabled(entry_source(e)))
            continue;
        if (const auto* u = std::get_if<UniformBound>(&e)) {
            if (c.n >= u->n_min && sgn(c.k) == 0 && c.m <= u->m_max)
                return u->source;
        } else if (const auto* x = std::get_if<ExplicitClass>(&e)) {
            if (c.n == x->n && c.t == x->t && c.m == x->m && c.k == x->k)
                return x->source;
        }
    }
    return std::nullopt;
}

std::uint64_t ExclusionDb::hash() const
{
    const std::string text = nlohmann::json(*this).dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

nlohmann::json integer_to_json(const Integer& x)
{
    if (x.fits_slong_p())
        return x.get_si();
    return x.get_str();
}

Integer integer_from_json(const nlohmann::json& j, const char* field)
{
    if (j.is_number_integer())
        return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) {
        Integer x;
        if (x.set_str(j.get<std::string>(), 10) == 0)
            return x;
    }
    throw InvalidInput(std::string("exclusion db: field '") + field + "' must be an integer");
}

int int_from_json(const nlohmann::json& j, const char* field)
{
    const Integer x = integer_from_json(j, field);
    if (!x.fits_sint_p())
        throw InvalidInput(std::string("exclusion db: field '") + field + "' out of range");
    return static_cast<int>(x.get_si());
}

const nlohmann::json& require(const nlohmann::json& j, const char* field)
{
    auto it = j.find(field);
    if (it == j.end())
        throw InvalidInput(std::string("exclusion db: missing field '") + field + "'");
    return *it;
}

} // namespace

void to_json(nlohmann::json& j, const ExclusionDb& db)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : db.entries()) {
        if (const auto* u = std::get_if<UniformBound>(&e)) {
            entries.push_back({{"kind", "uniform_bound"},
                               {"n_min", u->n_min},
                               {"m_max", integer_to_json(u->m_max)},
                               {"source", u->source}});
        } else if (const auto* x = std::get_if<ExplicitClass>(&e)) {
            entries.push_back({{"kind", "explicit_class"},
                               {"n", x->n},
                               {"t", integer_to_json(x->t)},
                               {"m", integer_to_json(x->m)},
                               {"k", integer_to_json(x->k)},
                               {"source", x->source}});
        }
    }
    j = nlohmann::json{{"entries", entries},
                       {"enabled_sources", std::vector<std::string>(db.enabled_sources().begin(),
                                                                    db.enabled_sources().end())}};
}

void from_json(const nlohmann::json& j, ExclusionDb& db)
{
    if (!j.is_object())
        throw InvalidInput("exclusion db: top level must be an object");
    std::vector<ExclusionEntry> entries;
    for (const auto& e : require(j, "entries")) {
        const std::string kind = require(e, "kind").get<std::string>();
        const std::string source = require(e, "source").get<std::string>();
        if (kind == "uniform_bound") {
            entries.emplace_back(UniformBound{int_from_json(require(e, "n_min"), "n_min"),
                                              integer_from_json(require(e, "m_max"), "m_max"), source});
        } else if (kind == "explicit_class") {
            entries.emplace_back(ExplicitClass{int_from_json(require(e, "n"), "n"),
                                               integer_from_json(require(e, "t"), "t"),
                                               integer_from_json(require(e, "m"), "m"),
                                               integer_from_json(require(e, "k"), "k"), source});
        } else {
            throw InvalidInput("exclusion db: unknown entry kind '" + kind + "'");
        }
    }
    std::set<std::string> enabled;
    for (const auto& s : require(j, "enabled_sources"))
        enabled.insert(s.get<std::string>());
    db = ExclusionDb(std::move(entries), std::move(enabled));
}

ExclusionDb load_exclusion_db(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open exclusion db '" + path + "'");
    try {
        return nlohmann::json::parse(in).get<ExclusionDb>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput("exclusion db '" + path + "': " + e.what());
    }
}

void save_exclusion_db(const ExclusionDb& db, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw InvalidInput("cannot write exclusion db '" + path + "'");
    out << nlohmann::json(db).dump(2) << "\n";
}

// --------------------------------------------------------------------------

ExclusionDecision is_excluded(const CandidateTriple& c, const SpecializationConfig& cfg, const ExclusionDb& db)
{
    if (cfg.n != c.n)
        throw DimensionError("is_excluded: configuration and candidate disagree on n");
    if (auto source = db.ruling(c))
        return {true, *source};
    const Integer bound = alpha_lower_bound(semiuniformize(c.n, c.m, c.k), cfg);
    if (c.t < bound)
        return {true, "refHR-criterion(" + std::to_string(cfg.d) + "," + std::to_string(cfg.r) + ")"};
    return {false, "alpha lower bound " + bound.get_str() + " <= t"};
}

} // namespace seshadri
