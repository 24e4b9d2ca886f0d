#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "chromacy/rng.hpp"
#include "chromacy/solver.hpp"
#include "oracles.hpp"

using namespace chromacy;

namespace {

Coloring coloring_from_pattern(const Window& w, const std::vector<int>& pattern) {
    Coloring c{w, {}};
    const auto n = w.point_count();
    for (std::uint64_t i = 0; i < n; ++i)
        c.colors.push_back(pattern[static_cast<size_t>(i % pattern.size())]);
    return c;
}

// deterministic random arrays/windows for property runs
struct Rng {
    std::uint64_t seed;
    std::uint64_t counter = 0;
    std::uint64_t operator()(std::uint64_t mod) { return rng_at(seed, 0, counter++) % mod; }
};

} // namespace

TEST_CASE("verify_coloring: alternating colors defeat (1 1)") {
    const auto arr = line_array({{1}, {1}});
    const auto w = enumerate_window(arr.space, {0}, {9});
    CHECK(verify_coloring(w, arr, coloring_from_pattern(w, {1, 2})).clean());
}

TEST_CASE("verify_coloring: constant color under (1) lists each adjacent pair once") {
    const auto arr = line_array({{1}});
    const auto w = enumerate_window(arr.space, {0}, {3});
    const auto report = verify_coloring(w, arr, coloring_from_pattern(w, {1}));
    REQUIRE(report.violations.size() == 3);
    for (long long x = 0; x < 3; ++x) {
        CHECK(report.violations[static_cast<size_t>(x)].a == Point{x});
        CHECK(report.violations[static_cast<size_t>(x)].b == Point{x + 1});
        CHECK(report.violations[static_cast<size_t>(x)].color == 1);
        CHECK(report.violations[static_cast<size_t>(x)].row == 0);
    }
}

TEST_CASE("verify_coloring: period-4 pattern defeats (1 2 3) on 0..11") {
    const auto arr = line_array({{1}, {2}, {3}});
    const auto w = enumerate_window(arr.space, {0}, {11});
    CHECK(verify_coloring(w, arr, coloring_from_pattern(w, {1, 2, 1, 3})).clean());
}

TEST_CASE("verify_coloring rejects coverage gaps and bad color indices") {
    const auto arr = line_array({{1}, {2}});
    const auto w = enumerate_window(arr.space, {0}, {4});
    Coloring short_cover{w, {1, 2, 1}};
    CHECK_THROWS_AS(verify_coloring(w, arr, short_cover), DomainError);
    Coloring bad_color{w, {1, 2, 3, 1, 2}};
    CHECK_THROWS_AS(verify_coloring(w, arr, bad_color), DomainError);
}

TEST_CASE("solve_window: (1 2) with two colors is UNSAT on 0..4") {
    const auto arr = line_array({{1}, {2}});
    const auto cert = solve_window(enumerate_window(arr.space, {0}, {4}), arr, SearchConfig{});
    CHECK(cert.verdict == Verdict::unsat);
    CHECK(cert.search.exhausted);
    // and SAT on the strictly smaller 0..3
    const auto cert2 = solve_window(enumerate_window(arr.space, {0}, {3}), arr, SearchConfig{});
    CHECK(cert2.verdict == Verdict::sat);
}

TEST_CASE("solve_window: (1 1) alternates") {
    const auto arr = line_array({{1}, {1}});
    const auto cert = solve_window(enumerate_window(arr.space, {0}, {9}), arr, SearchConfig{});
    REQUIRE(cert.verdict == Verdict::sat);
    CHECK(verify_coloring(*cert.window, arr, *cert.coloring).clean());
    CHECK(cert.coloring->colors == std::vector<int>{1, 2, 1, 2, 1, 2, 1, 2, 1, 2});
}

TEST_CASE("solve_window: the (1 1 1; 2 3 4) instance goes UNSAT at ten points") {
    const auto arr = line_array({{1, 2}, {1, 3}, {1, 4}});
    long long minimal = -1;
    for (long long n = 2; n <= 40; ++n) {
        const auto cert =
            solve_window(enumerate_window(arr.space, {0}, {n - 1}), arr, SearchConfig{});
        if (cert.verdict == Verdict::unsat) {
            minimal = n;
            break;
        }
        REQUIRE(cert.verdict == Verdict::sat);
    }
    CHECK(minimal == 10);
}

TEST_CASE("solve_window is deterministic") {
    const auto arr = line_array({{2, 5}, {1, 3}, {4}});
    const auto w = enumerate_window(arr.space, {0}, {25});
    const auto a = solve_window(w, arr, SearchConfig{});
    const auto b = solve_window(w, arr, SearchConfig{});
    CHECK(a.verdict == b.verdict);
    CHECK(a.search.nodes == b.search.nodes);
    if (a.coloring) CHECK(a.coloring->colors == b.coloring->colors);
}

TEST_CASE("node budget trips to UNKNOWN, never to a verdict") {
    const auto arr = line_array({{1, 2}, {1, 3}, {1, 4}});
    SearchConfig tiny;
    tiny.node_budget = 5;
    const auto cert = solve_window(enumerate_window(arr.space, {0}, {9}), arr, tiny);
    CHECK(cert.verdict == Verdict::unknown);
    CHECK(cert.unknown_reason == "node-budget");
    CHECK(!cert.search.exhausted);
    CHECK(verify_certificate(cert));
}

TEST_CASE("window monotonicity: UNSAT persists on larger windows") {
    const auto arr12 = line_array({{1}, {2}});
    for (long long hi = 4; hi <= 14; hi += 5) {
        const auto cert =
            solve_window(enumerate_window(arr12.space, {0}, {hi}), arr12, SearchConfig{});
        CHECK(cert.verdict == Verdict::unsat);
    }
    const auto arr234 = line_array({{1, 2}, {1, 3}, {1, 4}});
    for (long long hi = 9; hi <= 29; hi += 10) {
        const auto cert =
            solve_window(enumerate_window(arr234.space, {0}, {hi}), arr234, SearchConfig{});
        CHECK(cert.verdict == Verdict::unsat);
    }
    // translated copies are equally unsat
    const auto cert = solve_window(enumerate_window(arr12.space, {-7}, {-3}), arr12,
                                   SearchConfig{});
    CHECK(cert.verdict == Verdict::unsat);
}

TEST_CASE("oracle equivalence on a grid of small instances") {
    // spot slice of the acceptance criterion: k <= 2, m <= 2, entries <= 4
    Rng rng{2024};
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int k = 1 + static_cast<int>(rng(2));
        const int m = 1 + static_cast<int>(rng(2));
        std::vector<std::vector<long long>> cols;
        for (int j = 0; j < m; ++j) {
            std::vector<long long> col;
            for (int i = 0; i < k; ++i) col.push_back(1 + static_cast<long long>(rng(4)));
            cols.push_back(col);
        }
        const auto arr = line_array(cols);
        const long long npts = 2 + static_cast<long long>(rng(9));
        const auto w = enumerate_window(arr.space, {0}, {npts - 1});
        const auto cert = solve_window(w, arr, SearchConfig{});
        std::vector<std::vector<DistanceToken>> raw_cols;
        for (const auto& c : cols) {
            std::vector<DistanceToken> rc;
            for (long long d : c) rc.push_back(integer_token(d));
            raw_cols.push_back(rc);
        }
        const bool expected = oracle::brute_force_sat(arr.space, w.points(), raw_cols);
        CHECK(cert.verdict == (expected ? Verdict::sat : Verdict::unsat));
        ++checked;
    }
    CHECK(checked == 120);
}

TEST_CASE("column dedup never changes the set of valid colorings") {
    Rng rng{555};
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 1 + static_cast<int>(rng(2));
        std::vector<std::vector<DistanceToken>> raw;
        std::vector<std::vector<long long>> duped;
        for (int j = 0; j < m; ++j) {
            std::vector<long long> col;
            const int k = 1 + static_cast<int>(rng(2));
            for (int i = 0; i < k; ++i) {
                const long long d = 1 + static_cast<long long>(rng(3));
                col.push_back(d);
                col.push_back(d); // deliberate duplicates
            }
            duped.push_back(col);
            std::vector<DistanceToken> rc;
            for (long long d : col) rc.push_back(integer_token(d));
            raw.push_back(rc);
        }
        const auto arr = line_array(duped); // dedups on construction
        const auto w = enumerate_window(arr.space, {0}, {5});
        const auto pts = w.points();
        // every coloring agrees between the deduped verifier and the raw oracle
        std::vector<int> colors(pts.size(), 1);
        for (int rep = 0; rep < 40; ++rep) {
            for (auto& c : colors) c = 1 + static_cast<int>(rng(static_cast<std::uint64_t>(m)));
            Coloring col{w, colors};
            CHECK(verify_coloring(w, arr, col).clean() ==
                  oracle::valid_coloring(arr.space, pts, colors, raw));
        }
    }
}

TEST_CASE("symmetry breaking does not change verdicts") {
    Rng rng{31337};
    for (int trial = 0; trial < 200; ++trial) {
        const int m = 1 + static_cast<int>(rng(3));
        const int k = 1 + static_cast<int>(rng(2));
        std::vector<std::vector<long long>> cols;
        // draw from a tiny pool so identical columns are common
        for (int j = 0; j < m; ++j) {
            std::vector<long long> col;
            for (int i = 0; i < k; ++i) col.push_back(1 + static_cast<long long>(rng(3)));
            cols.push_back(col);
        }
        const auto arr = line_array(cols);
        const auto w =
            enumerate_window(arr.space, {0}, {3 + static_cast<long long>(rng(6))});
        SearchConfig on;
        SearchConfig off;
        off.symmetry_breaking = false;
        CHECK(solve_window(w, arr, on).verdict == solve_window(w, arr, off).verdict);
    }
}

TEST_CASE("solve_periodic examples") {
    // (2) with one color: 2 = 0 mod 2 disables the color
    CHECK(!solve_periodic(line_array({{2}}), 2).has_value());

    // (1 1) with two colors alternates
    const auto pc11 = solve_periodic(line_array({{1}, {1}}), 2);
    REQUIRE(pc11.has_value());
    CHECK(pc11->residues == std::vector<int>{1, 2});

    // (1 2 3) at p = 4: lexicographically least is C1 C2 C1 C3
    const auto pc123 = solve_periodic(line_array({{1}, {2}, {3}}), 4);
    REQUIRE(pc123.has_value());
    CHECK(pc123->residues == std::vector<int>{1, 2, 1, 3});

    CHECK_THROWS_AS(solve_periodic(line_array({{1}}), 0), DomainError);
    CHECK_THROWS_AS(
        solve_periodic(make_array(Space{1, Metric::l1}, {{rational_token(1, 2)}}), 3),
        DomainError);
}

TEST_CASE("periodic maps satisfy the residue conditions including wraparound") {
    Rng rng{808};
    for (int trial = 0; trial < 120; ++trial) {
        const int m = 1 + static_cast<int>(rng(3));
        std::vector<std::vector<long long>> cols;
        for (int j = 0; j < m; ++j)
            cols.push_back({1 + static_cast<long long>(rng(9))});
        const auto arr = line_array(cols);
        const long long p = 1 + static_cast<long long>(rng(10));
        const auto pc = solve_periodic(arr, p);
        if (!pc) continue;
        CHECK(periodic_valid(*pc, arr));
        // expansion onto three periods verifies clean
        const auto w = enumerate_window(arr.space, {0}, {3 * p - 1});
        CHECK(verify_coloring(w, arr, expand_periodic(*pc, w)).clean());
    }
}

TEST_CASE("search_periods finds the smallest period") {
    // (1 2 3): p=1 fails (d=1 disables nothing but p=1 pairs everything with
    // itself... d mod 1 == 0 disables all colors); p=2 succeeds with colors
    // C1 (evens, avoids 1) and C3 (odds, avoids 3).
    const auto cert = search_periods(line_array({{1}, {2}, {3}}), 24, SearchConfig{});
    REQUIRE(cert.verdict == Verdict::periodic);
    CHECK(cert.periodic->period == 2);
    CHECK(cert.periodic->residues == std::vector<int>{1, 3});
    CHECK(verify_certificate(cert));

    const auto cert11 = search_periods(line_array({{1}, {1}}), 8, SearchConfig{});
    REQUIRE(cert11.verdict == Verdict::periodic);
    CHECK(cert11.periodic->period == 2);
}

TEST_CASE("search_periods falls back to window UNSAT") {
    const auto cert = search_periods(line_array({{1}, {2}}), 50, SearchConfig{}, 5);
    CHECK(cert.verdict == Verdict::unsat);
    REQUIRE(cert.window.has_value());
    CHECK(cert.window->hi == Point{4});
    CHECK(verify_certificate(cert));
}

TEST_CASE("search_periods reports the completeness gap as UNKNOWN") {
    // A window this small is SAT for (1 2), which certifies nothing about Z.
    const auto cert = search_periods(line_array({{1}, {2}}), 3, SearchConfig{}, 3);
    CHECK(cert.verdict == Verdict::unknown);
    CHECK(cert.unknown_reason == "completeness-gap");
    CHECK(verify_certificate(cert));
}

TEST_CASE("verify_certificate round trip and tamper detection") {
    const auto arr = line_array({{1}, {1}});
    const auto w = enumerate_window(arr.space, {0}, {9});
    auto cert = solve_window(w, arr, SearchConfig{});
    REQUIRE(cert.verdict == Verdict::sat);
    CHECK(verify_certificate(cert));

    auto tampered = cert;
    tampered.coloring->colors[3] = tampered.coloring->colors[2]; // create a monochromatic pair
    CHECK(!verify_certificate(tampered));
}

TEST_CASE("verify_certificate re-runs UNSAT searches") {
    const auto arr = line_array({{1}, {2}});
    const auto cert = solve_window(enumerate_window(arr.space, {0}, {4}), arr, SearchConfig{});
    REQUIRE(cert.verdict == Verdict::unsat);
    CHECK(verify_certificate(cert));

    // claiming UNSAT for a satisfiable window must fail re-verification
    auto lie = cert;
    lie.window = enumerate_window(arr.space, {0}, {3});
    CHECK(!verify_certificate(lie));

    // an UNSAT certificate without the exhaustion flag is invalid
    auto unexhausted = cert;
    unexhausted.search.exhausted = false;
    CHECK(!verify_certificate(unexhausted));
}

TEST_CASE("solve_point_list handles non-box point sets") {
    // the four corners of a 3x3 square, pairwise at sqrt(4), sqrt(8)
    const Space plane{2, Metric::euclidean};
    const std::vector<Point> corners{{0, 0}, {0, 2}, {2, 0}, {2, 2}};
    const auto arr = make_array(
        plane, std::vector<std::vector<DistanceToken>>(3, {squared_token(4), squared_token(8)}));
    const auto r3 = solve_point_list(plane, corners, arr, SearchConfig{});
    CHECK(r3.verdict == Verdict::unsat);
    const auto arr4 = make_array(
        plane, std::vector<std::vector<DistanceToken>>(4, {squared_token(4), squared_token(8)}));
    const auto r4 = solve_point_list(plane, corners, arr4, SearchConfig{});
    CHECK(r4.verdict == Verdict::sat);
}

TEST_CASE("space mismatches are rejected") {
    const auto arr = line_array({{1}});
    const auto plane_window = enumerate_window(Space{2, Metric::euclidean}, {0, 0}, {1, 1});
    CHECK_THROWS_AS(solve_window(plane_window, arr, SearchConfig{}), DomainError);
    SearchConfig bad;
    bad.node_budget = 0;
    CHECK_THROWS_AS(
        solve_window(enumerate_window(arr.space, {0}, {3}), arr, bad), DomainError);
}
