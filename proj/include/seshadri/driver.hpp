#pragma once

// Certified lower bounds eps(n) >= (1/sqrt n) sqrt(1 - 1/f(n)), both from the
// candidate-exclusion fixpoint and from closed-form estimates.

#include "seshadri/arith.hpp"
#include "seshadri/candidates.hpp"
#include "seshadri/effectivity.hpp"
#include "seshadri/lattice.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace seshadri {

inline constexpr long default_m_budget_cap = 5000;

bool is_perfect_square(int n);

struct ExclusionRecord {
    CandidateTriple candidate;
    Rational e;
    std::string reason;
};

struct Coverage {
    Integer m_checked_k0;  ///< every k = 0 candidate with m <= this was examined
    Integer m_checked_knz; ///< same for k != 0
};

struct BoundReport {
    int n = 0;
    Rational f;  ///< certified f(n) = n * mu
    Rational mu; ///< e of the blocker, or the covered limit when budget-limited
    std::optional<CandidateTriple> blocker;
    std::optional<EValue> blocker_value;
    std::vector<ExclusionRecord> exclusions_used;
    Coverage coverage;
    SpecializationConfig cfg;
    Integer m_budget_cap;
    bool budget_limited = false;
};

bool operator==(const ExclusionRecord& a, const ExclusionRecord& b);
bool operator==(const BoundReport& a, const BoundReport& b);

/// Walks candidates in ascending e (ties by (m, k, t)), excluding what the db or
/// the vanishing criterion rules out; the first survivor fixes mu. The candidate
/// range grows until every m < mu (k = 0) and m(n-1) < mu (k != 0) is covered or
/// m reaches m_budget_cap, in which case the report is flagged budget-limited and
/// mu = m_budget_cap + 1.
///
/// Throws DomainError for square n (eps(n) = 1/sqrt n exactly) or n < 10.
BoundReport compute_bound(int n, const ExclusionDb& db, const SpecializationConfig& cfg,
                          const Integer& m_budget_cap = default_m_budget_cap);

/// compute_bound for several n at the default configuration; results are in
/// input order regardless of which worker finished first.
std::vector<BoundReport> compute_bounds(std::span<const int> ns, const ExclusionDb& db,
                                        const Integer& m_budget_cap, unsigned jobs);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for_index(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

struct FormulaBound {
    std::string name;
    bool applicable = false;
    std::optional<QuadraticExpr> value; ///< f(n); present only when applicable
    std::string source;
    std::string note;
    /// Exclusion-db source the estimate rests on; best_known skips it when disabled.
    std::string requires_source;
};

/// The six Delta-cases (d = floor(sqrt n), Delta = n - d^2), plus the weaker
/// sqrt-form of cases c and d. Every case is listed with its applicability;
/// a square n yields an empty list.
std::vector<FormulaBound> formula_theoremone(int n);

/// 21(n-2), 42(n-2), (n^2 - 5n sqrt n)/2 and 21n.
std::vector<FormulaBound> formula_correm_and_circ(int n);

/// n * mu for the largest integer mu in [1, n(n-1)] meeting lemcc_hypothesis.
FormulaBound formula_lemcc(int n);

/// Embedded literature values (n in {17,19,22,26,37,41,50,65,82}).
FormulaBound formula_reference(int n);

/// Everything above, in a fixed order.
std::vector<FormulaBound> all_formulas(int n);

/// floor of the two-case expression in d and delta = floor(Delta/2), plus one.
/// Requires n >= 17 and n not a square.
Integer mu_n(int n);

/// ((mu-1) r + g - 1)/d >= (mu-1) sqrt(n - 1/mu) at the default (d, r).
bool lemcc_hypothesis(int n, const Integer& mu);

/// mu <= 6(n-1), or (nu r + g - 1)/d - 1 >= (nu - d/n) sqrt(n - 1/mu) with nu = (mu-1)/(n-1).
bool theoremunif_hypothesis(int n, const Integer& mu);

struct BestKnown {
    QuadraticExpr f_best;
    std::string source;
};

/// Maximum of the algorithmic f, every applicable formula whose required source
/// is enabled in db, and the reference values; ties go to the algorithm.
BestKnown best_known(int n, const BoundReport& report, const ExclusionDb& db = ExclusionDb::defaults());

} // namespace seshadri
