#pragma once

// One-sided non-effectivity certificates for candidate classes.
//
// The points are specialized onto an irreducible degree-d curve C (the first r
// of them on C, each infinitely near the previous one), so that
// [C] = dL - E_1 - ... - E_r. Starting from D_0 = tL - sum m_i E_i, repeatedly
// subtract [C] and unload; the resulting trace decides whether
// h^0(D_0) vanishes, which bounds alpha(m) from below.

#include "seshadri/arith.hpp"
#include "seshadri/candidates.hpp"
#include "seshadri/lattice.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace seshadri {

struct SpecializationConfig {
    int n = 0;
    int d = 0; ///< degree of the specialization curve
    int r = 0; ///< number of points placed on it
    int g = 0; ///< arithmetic genus (d-1)(d-2)/2

    /// d = floor(sqrt n), r = floor(d sqrt n).
    static SpecializationConfig defaults(int n);
    /// d = floor(sqrt n), r = ceil(d sqrt n) (capped at n).
    static SpecializationConfig ceil_r(int n);
    /// Explicit d and r; g follows from d. Throws DomainError unless 1 <= r <= n, d >= 1.
    static SpecializationConfig custom(int n, int d, int r);

    bool is_default() const;
    DivisorClass curve_class() const;
    bool operator==(const SpecializationConfig&) const = default;
};

/// Normal form under the unloading moves N_j = E_j - E_{j+1} (j < n) and N_n = E_n:
/// while some F.N_j < 0 (smallest j first), replace F by F - N_j. The result has
/// nonincreasing multiplicities with a non-negative last entry; the degree is unchanged.
DivisorClass unload(const DivisorClass& f);

struct TraceStep {
    std::size_t index = 0;
    DivisorClass divisor; ///< D_i
    Integer degree;       ///< t_i = D_i . L
    Integer dot_curve;    ///< D_i . C
};

struct UnloadingTrace {
    std::vector<TraceStep> steps;             ///< D_0 .. D_j
    std::size_t j = 0;                        ///< first index with t_i < d
    std::optional<std::size_t> omega_prime;   ///< first index with all multiplicities zero
};

/// D_0, D_1, ... where D_{i+1} = unload(D_i - [C]), stopping at the first t_i < d.
/// Requires nonincreasing non-negative multiplicities and d0.points() == cfg.n.
UnloadingTrace d_sequence(const DivisorClass& d0, const SpecializationConfig& cfg);

/// D_i . C <= g - 1 for i < j and (t_j + 1)(t_j + 2) <= 2(d t_j - D_j . C).
/// When it holds, no curve of degree t_0 has the given multiplicities.
bool criterion_holds(const DivisorClass& d0, const SpecializationConfig& cfg);

/// The multiplicity part of the trace does not depend on t_0; this precomputes
/// S_i = (sum of the first r multiplicities of D_i) so that the criterion can be
/// evaluated for every t_0 in O(1).
class CriterionTable {
public:
    CriterionTable(std::span<const Integer> mults, const SpecializationConfig& cfg, const Integer& t_max);

    /// criterion_holds(t L - sum m_i E_i) for 0 <= t <= t_max.
    bool holds(const Integer& t) const;
    const Integer& t_max() const { return t_max_; }

private:
    SpecializationConfig cfg_;
    Integer t_max_;
    std::vector<Integer> leading_sums_; ///< S_i
    std::vector<Integer> prefix_min_;   ///< min_{i' < i} (S_i' + i' d^2); index 0 unused
};

/// Upper end of the t-window searched by alpha_lower_bound: ceil(sum m_i / sqrt n) + d.
Integer alpha_search_top(std::span<const Integer> mults, const SpecializationConfig& cfg);

/// 1 + max{t in [0, top] : criterion holds}, or 1 when no t qualifies.
/// Requires nonincreasing non-negative multiplicities, not all zero.
Integer alpha_lower_bound(std::span<const Integer> mults, const SpecializationConfig& cfg);

/// Closed form for (m^{n-1}, m+k) with k^2 <= m < n at the default configuration:
/// write sum = mn + k = u r + rho with 0 < rho <= r, let s be the largest integer
/// with (s+1)(s+2) <= 2 rho and 0 <= s < d; then
/// alpha >= 1 + min(floor((mr + k + g - 1)/d), s + ud), with k dropped from the
/// first term when k < 0 and n - d^2 is even and positive.
/// For k = 0 any m >= 1 is accepted; the value is then the same formula
/// evaluated outside its proved range.
Integer alpha_lb_closed(int n, const Integer& m, const Integer& k, const SpecializationConfig& cfg);

/// Nonincreasing multiplicity vector fed to the criterion for C(t,m,k):
/// k = 0 uniform; k < 0 (m^{n-1}, m+k); k > 0 with m < n and k^2 <= m the
/// semiuniform ((m+1)^k, m^{n-k}); otherwise the raw (m+k, m^{n-1}).
std::vector<Integer> semiuniformize(int n, const Integer& m, const Integer& k);

/// Whether semiuniformize uses the semiuniform replacement (k > 0, m < n, k^2 <= m).
bool semiuniform_applies(int n, const Integer& m, const Integer& k);

// --------------------------------------------------------------------------
// Exclusion database

/// For n >= n_min, no abnormal class with k = 0 and m <= m_max.
struct UniformBound {
    int n_min = 10;
    Integer m_max;
    std::string source;
    bool operator==(const UniformBound&) const = default;
};

/// A specific class that is not effective.
struct ExplicitClass {
    int n = 0;
    Integer t;
    Integer m;
    Integer k;
    std::string source;
    bool operator==(const ExplicitClass&) const = default;
};

using ExclusionEntry = std::variant<UniformBound, ExplicitClass>;

const std::string& entry_source(const ExclusionEntry& e);

class ExclusionDb {
public:
    ExclusionDb() = default;
    ExclusionDb(std::vector<ExclusionEntry> entries, std::set<std::string> enabled);

    /// refCCMO (m <= 20, k = 0), refDu (m <= 42, k = 0; disabled), and the
    /// n = 10 explicit classes C(3,1,0), C(6,2,-1) ("unique-cubic") and C(79,25,0) ("Miranda").
    static ExclusionDb defaults();

    const std::vector<ExclusionEntry>& entries() const { return entries_; }
    const std::set<std::string>& enabled_sources() const { return enabled_; }
    bool is_enabled(const std::string& source) const { return enabled_.count(source) != 0; }

    ExclusionDb with_source(const std::string& source, bool enabled) const;

    /// Source of the first enabled entry ruling out c, if any.
    std::optional<std::string> ruling(const CandidateTriple& c) const;

    /// Stable 64-bit FNV-1a hash of the canonical JSON form.
    std::uint64_t hash() const;

    bool operator==(const ExclusionDb&) const = default;

private:
    std::vector<ExclusionEntry> entries_;
    std::set<std::string> enabled_;
};

void to_json(nlohmann::json& j, const ExclusionDb& db);
void from_json(const nlohmann::json& j, ExclusionDb& db);

ExclusionDb load_exclusion_db(const std::string& path);
void save_exclusion_db(const ExclusionDb& db, const std::string& path);

struct ExclusionDecision {
    bool excluded = false;
    std::string reason;
};

/// Excluded iff an enabled db entry applies or c.t < alpha_lower_bound(semiuniformize(c)).
/// Never claims effectiveness: `excluded == false` only means "not ruled out".
ExclusionDecision is_excluded(const CandidateTriple& c, const SpecializationConfig& cfg, const ExclusionDb& db);

} // namespace seshadri
