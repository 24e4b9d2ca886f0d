#pragma once

// Live regeneration of the lower-bound table and headline constants, each
// row recomputed from scratch and checked against its expected value.

#include <string>
#include <vector>

#include "chromacy/numbounds.hpp"
#include "chromacy/solver.hpp"
#include "chromacy/witnesses.hpp"

namespace chromacy {

struct ReportRow {
    std::string name;
    std::string expected;
    std::string actual;
    bool pass = false;
};

namespace detail {

inline ReportRow witness_row(const std::string& name, const PointSet& ps, int expected_k,
                             long long expected_bound) {
    ReportRow row;
    row.name = name;
    row.expected = "k=" + std::to_string(expected_k) + " bound=" + std::to_string(expected_bound);
    try {
        const auto cb = clique_bound(ps);
        row.actual = "k=" + std::to_string(cb.k) + " bound=" + std::to_string(cb.bound);
        row.pass = cb.k == expected_k && cb.bound == expected_bound;
    } catch (const Error& e) {
        row.actual = std::string("error: ") + e.what();
    }
    return row;
}

inline ReportRow unsat_row(const std::string& name, const RestrictionArray& array,
                           const Window& window) {
    ReportRow row;
    row.name = name;
    row.expected = "unsat";
    try {
        const auto cert = solve_window(window, array, SearchConfig{});
        row.actual = verdict_name(cert.verdict);
        row.pass = cert.verdict == Verdict::unsat;
    } catch (const Error& e) {
        row.actual = std::string("error: ") + e.what();
    }
    return row;
}

} // namespace detail

// The k-distance-set rows alone (every row is pure witness computation).
inline std::vector<ReportRow> report_witness_rows() {
    std::vector<ReportRow> rows;
    for (int k = 1; k <= 5; ++k)
        rows.push_back(detail::witness_row("path k=" + std::to_string(k), make_path(k), k, k + 1));
    for (int k = 1; k <= 5; ++k)
        rows.push_back(detail::witness_row("polygon k=" + std::to_string(k), make_polygon(k), k,
                                           2 * k + 1));
    for (int k = 1; k <= 5; ++k)
        rows.push_back(detail::witness_row("hypercube k=" + std::to_string(k), make_hypercube(k),
                                           k, 1LL << k));
    rows.push_back(detail::witness_row("icosahedron", make_icosahedron(), 3, 12));
    rows.push_back(detail::witness_row("subsets n=4 k=2", make_subsets(4, 2), 2, 10));
    return rows;
}

// The full table: witness rows, the two UNSAT lower bounds, and the
// ceil(4ek) values for k = 1..3.
inline std::vector<ReportRow> report_full_table() {
    auto rows = report_witness_rows();

    // chi^(2)(Z) >= 4: columns {1,2},{1,3},{1,4} admit no 3-coloring of ten
    // consecutive integers.
    rows.push_back(detail::unsat_row("chi^(2)(Z) >= 4", line_array({{1, 2}, {1, 3}, {1, 4}}),
                                     enumerate_window(Space{1, Metric::l1}, {0}, {9})));

    // chi(Z^2) >= 4: (sqrt1 sqrt2 sqrt4) admits no 3-coloring of a 3x5 grid.
    const Space plane{2, Metric::euclidean};
    rows.push_back(detail::unsat_row(
        "chi(Z^2) >= 4",
        make_array(plane, {{squared_token(1)}, {squared_token(2)}, {squared_token(4)}}),
        enumerate_window(plane, {0, 0}, {2, 4})));

    const long long archer_expected[] = {11, 22, 33};
    for (long long k = 1; k <= 3; ++k) {
        ReportRow row;
        row.name = "archer k=" + std::to_string(k);
        const long long expected = archer_expected[k - 1];
        row.expected = std::to_string(expected);
        try {
            const long long got = archer_bound(k);
            row.actual = std::to_string(got);
            row.pass = got == expected;
        } catch (const Error& e) {
            row.actual = std::string("error: ") + e.what();
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace chromacy
