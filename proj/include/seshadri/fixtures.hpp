#pragma once

// Published reference tables, embedded verbatim.

#include "seshadri/arith.hpp"

#include <optional>
#include <string>
#include <vector>

namespace seshadri::fixtures {

/// One prospective class C(t,m,k) for n = 10 with its printed (truncated) e.
struct TableARow {
    long t;
    long m;
    long k;
    std::string e_printed;
};

/// Best known f(n) for a nonsquare n, as printed (truncated to two decimals),
/// with the k = 0 class C(t,m) that blocks an improvement. `source` is empty
/// for rows obtained by the exclusion method itself and names the literature
/// result otherwise.
struct TableBRow {
    int n;
    std::string f_printed;
    long t;
    long m;
    std::string source;
    std::string comment;
};

/// 32 rows, m <= 182, in (m, k, t) order.
const std::vector<TableARow>& table_a();

/// One row per nonsquare 10 <= n <= 99.
const std::vector<TableBRow>& table_b();

const TableBRow* table_b_row(int n);

/// Exact f for a Table B row: the printed integer for literature rows, otherwise
/// n * e(t, m, 0) of the listed blocker. Returns nullopt when the listed class is
/// not abnormal and the printed value is not an integer.
std::optional<Rational> table_b_exact_f(const TableBRow& row);

/// The embedded literature value for n, if n is one of the exception rows.
struct ReferenceValue {
    Rational f;
    std::string source;
};
std::optional<ReferenceValue> reference_value(int n);

} // namespace seshadri::fixtures
