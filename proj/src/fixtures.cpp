#include "seshadri/fixtures.hpp"

#include <algorithm>

namespace seshadri::fixtures {

const std::vector<TableARow>& table_a()
{
    static const std::vector<TableARow> rows{
        {3, 1, 0, "1"},         {6, 2, -1, "36.1"},      {22, 7, 0, "8.16"},      {41, 13, 0, "18.77"},
        {60, 19, 0, "36.1"},    {79, 25, 0, "69.44"},    {80, 25, 3, "711.21"},   {98, 31, 0, "160.16"},
        {117, 37, 0, "1369"},   {154, 49, -3, "2635.21"}, {177, 56, 0, "101.16"},  {191, 60, 4, "6080.26"},
        {191, 61, -6, "6080.26"}, {196, 62, 0, "160.16"}, {215, 68, 0, "308.26"},  {228, 72, 1, "51984.1"},
        {234, 74, 0, "1369"},   {308, 98, -6, "2635.21"}, {313, 99, 0, "239.04"},  {332, 105, 0, "424.03"},
        {351, 111, 0, "1369"},  {382, 120, 8, "6080.26"}, {419, 132, 5, "11704.16"}, {419, 133, -5, "11704.16"},
        {430, 136, 0, "308.26"}, {449, 142, 0, "517.02"}, {456, 144, 2, "51984.1"}, {456, 145, -8, "51984.1"},
        {468, 148, 0, "1369"},  {547, 173, 0, "369.49"},  {566, 179, 0, "593.35"},  {573, 182, -8, "6080.26"},
    };
    return rows;
}

const std::vector<TableBRow>& table_b()
{
    static const std::vector<TableBRow> rows{
        {10, "1011.61", 177, 56, "", ""},
        {11, "402.28", 106, 32, "", ""},
        {12, "300.52", 83, 24, "", ""},
        {13, "325", 90, 25, "", ""},
        {14, "740.6", 86, 23, "", ""},
        {15, "566.78", 89, 23, "", ""},
        {17, "1089", 136, 33, "refB", ""},
        {18, "466.94", 89, 21, "", ""},
        {19, "28900", 170, 39, "refB", "printed as C(170.39); C(170,39) is not abnormal for n = 19"},
        {20, "660.64", 143, 32, "", ""},
        {21, "1187.1", 142, 31, "", "C(142,31) gives f = 1187.117...; printed value drops a digit"},
        {22, "38809", 197, 42, "refB", "C(197,42) is not abnormal for n = 22"},
        {23, "576", 115, 24, "", ""},
        {24, "1009.2", 142, 29, "", ""},
        {26, "2601", 260, 51, "refB", ""},
        {27, "997.96", 161, 31, "", ""},
        {28, "1304.25", 201, 38, "", ""},
        {29, "639.45", 113, 21, "", ""},
        {30, "1230.76", 219, 40, "", ""},
        {31, "1093.26", 128, 23, "", ""},
        {32, "940.52", 147, 26, "", ""},
        {33, "1093.55", 178, 31, "", ""},
        {34, "1731.93", 239, 41, "", ""},
        {35, "974.47", 136, 23, "", ""},
        {37, "5329", 444, 73, "refB", ""},
        {38, "1898.97", 265, 43, "", ""},
        {39, "1779.7", 231, 37, "", ""},
        {40, "1601.66", 196, 31, "", ""},
        {41, "1025", 160, 25, "refH", ""},
        {42, "1306.94", 149, 23, "", ""},
        {43, "1741.5", 236, 36, "", ""},
        {44, "1985.5", 252, 38, "", ""},
        {45, "3782.25", 275, 41, "", ""},
        {46, "3140.26", 217, 32, "", ""},
        {47, "7109.17", 994, 145, "", ""},
        {48, "1521.39", 187, 27, "", ""},
        {50, "9801", 700, 99, "refB", ""},
        {51, "3313.98", 407, 57, "", ""},
        {52, "6257.33", 274, 38, "", ""},
        {53, "3499.89", 313, 43, "", ""},
        {54, "5713.2", 338, 46, "", ""},
        {55, "2370.64", 304, 41, "", ""},
        {56, "3193.01", 419, 56, "", ""},
        {57, "2608.42", 234, 31, "", ""},
        {58, "9802", 396, 52, "", ""},
        {59, "3352.27", 192, 25, "", ""},
        {60, "7562.5", 852, 110, "", ""},
        {61, "5380.2", 328, 42, "", ""},
        {62, "12164.13", 1496, 190, "", ""},
        {63, "2242.33", 246, 31, "", ""},
        {65, "16641", 1040, 129, "refB", ""},
        {66, "5410.98", 593, 73, "", ""},
        {67, "5550.49", 532, 65, "", ""},
        {68, "4442.13", 437, 53, "", ""},
        {69, "8283.45", 407, 49, "", ""},
        {70, "5603.33", 343, 41, "", ""},
        {71, "6819.08", 792, 94, "", ""},
        {72, "3008.34", 263, 31, "", ""},
        {73, "8129.89", 786, 92, "", ""},
        {74, "9085.64", 929, 108, "", ""},
        {75, "9409", 840, 97, "", ""},
        {76, "5337.1", 462, 53, "", ""},
        {77, "13862.75", 1246, 142, "", ""},
        {78, "5698.52", 627, 71, "", ""},
        {79, "19525.09", 2142, 241, "", "C(2142,241) gives f = 19525.102...; printed value is one unit low"},
        {80, "5107.27", 474, 53, "", ""},
        {82, "26569", 1476, 163, "refB", ""},
        {83, "8381.98", 829, 91, "", ""},
        {84, "7709.47", 724, 79, "", ""},
        {85, "5802.66", 295, 32, "", ""},
        {86, "14198.76", 1493, 161, "", ""},
        {87, "5497.02", 457, 49, "", ""},
        {88, "8530.92", 666, 71, "", ""},
        {89, "7281.81", 566, 60, "", ""},
        {90, "13690", 702, 74, "", ""},
        {91, "5126.33", 372, 39, "", ""},
        {92, "13370.32", 1103, 115, "", ""},
        {93, "6076", 405, 42, "", ""},
        {94, "14950.51", 1367, 141, "", ""},
        {95, "6390.76", 614, 63, "", ""},
        {96, "18070.33", 1695, 173, "", ""},
        {97, "4773.3", 453, 46, "", ""},
        {98, "29804.08", 2950, 298, "", ""},
        {99, "6892.38", 587, 59, "", ""},
    };
    return rows;
}

const TableBRow* table_b_row(int n)
{
    const auto& rows = table_b();
    auto it = std::find_if(rows.begin(), rows.end(), [n](const TableBRow& r) { return r.n == n; });
    return it == rows.end() ? nullptr : &*it;
}

std::optional<Rational> table_b_exact_f(const TableBRow& row)
{
    if (!row.source.empty()) {
        if (row.f_printed.find('.') != std::string::npos)
            return std::nullopt;
        return Rational(Integer(row.f_printed));
    }
    const Integer s = Integer(row.m) * row.n;
    const Integer gap = s * s - Integer(row.n) * row.t * row.t;
    if (sgn(gap) <= 0)
        return std::nullopt;
    return make_rational(s * s, gap);
}

std::optional<ReferenceValue> reference_value(int n)
{
    const TableBRow* row = table_b_row(n);
    if (row == nullptr || row->source.empty())
        return std::nullopt;
    auto f = table_b_exact_f(*row);
    if (!f)
        return std::nullopt;
    return ReferenceValue{*f, row->source};
}

} // namespace seshadri::fixtures
