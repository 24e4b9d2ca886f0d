// Acceptance suite: one pass/fail line per criterion, every tolerance and
// threshold pinned in code. Returns nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "chromacy/json_io.hpp"
#include "chromacy/numbounds.hpp"
#include "chromacy/report.hpp"
#include "chromacy/rng.hpp"
#include "chromacy/solver.hpp"
#include "chromacy/stochastic.hpp"
#include "chromacy/witnesses.hpp"
#include "oracles.hpp"

using namespace chromacy;

namespace {

int failures = 0;

void criterion(const std::string& name, double budget_s, const std::function<bool()>& body) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = std::string(" (exception: ") + e.what() + ")";
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_s) {
        ok = false;
        note += " (over time budget)";
    }
    if (!ok) ++failures;
    std::printf("[%s] %s  (%.2fs / %.0fs)%s\n", ok ? "PASS" : "FAIL", name.c_str(), elapsed,
                budget_s, note.c_str());
    std::fflush(stdout);
}

} // namespace

int main() {
    // 1a. chi-hat(Z) = 3, lower direction: (1 2) admits no red/blue coloring
    // of five consecutive integers.
    criterion("1a  (1 2) UNSAT with 2 colors on 0..4", 1.0, [] {
        const auto arr = line_array({{1}, {2}});
        const auto cert = solve_window(enumerate_window(arr.space, {0}, {4}), arr, SearchConfig{});
        return cert.verdict == Verdict::unsat && cert.search.exhausted;
    });

    // 1b. chi-hat(Z) = 3, upper direction at desk scale: every (a,b,c) in
    // {1..6}^3 gets a 3-color periodic coloring with p <= 4(a+b+c); residual
    // failures must at least be window-SAT on 200 points.
    criterion("1b  periodic colorings for all 216 arrays (a,b,c) in {1..6}^3", 120.0, [] {
        for (long long a = 1; a <= 6; ++a)
            for (long long b = 1; b <= 6; ++b)
                for (long long c = 1; c <= 6; ++c) {
                    const auto arr = line_array({{a}, {b}, {c}});
                    const auto cert = search_periods(arr, 4 * (a + b + c), SearchConfig{});
                    if (cert.verdict == Verdict::periodic) {
                        if (!verify_certificate(cert)) return false;
                        continue;
                    }
                    const auto fallback = solve_window(
                        enumerate_window(arr.space, {0}, {199}), arr, SearchConfig{});
                    if (fallback.verdict != Verdict::sat) return false;
                }
        return true;
    });

    // 2. chi-hat^(2)(Z) >= 4: columns {1,2},{1,3},{1,4} with 3 colors go
    // UNSAT on a window of at most 40 points; re-verification reproduces it.
    criterion("2   (1 1 1; 2 3 4) UNSAT within 40 points, re-verified", 300.0, [] {
        const auto arr = line_array({{1, 2}, {1, 3}, {1, 4}});
        for (long long n = 2; n <= 40; ++n) {
            const auto cert =
                solve_window(enumerate_window(arr.space, {0}, {n - 1}), arr, SearchConfig{});
            if (cert.verdict == Verdict::unsat) {
                // the verdict must survive a JSON round trip and a re-run
                const auto reloaded = certificate_from_json(certificate_to_json(cert));
                return verify_certificate(reloaded);
            }
        }
        return false;
    });

    // 3. chi-hat(Z^2) >= 4: (sqrt1 sqrt2 sqrt4) with 3 colors goes UNSAT on
    // a grid no larger than 6x6 (3x5 suffices).
    criterion("3   (sqrt1 sqrt2 sqrt4) UNSAT on a 3x5 grid", 300.0, [] {
        const Space plane{2, Metric::euclidean};
        const auto arr =
            make_array(plane, {{squared_token(1)}, {squared_token(2)}, {squared_token(4)}});
        const auto cert =
            solve_window(enumerate_window(plane, {0, 0}, {2, 4}), arr, SearchConfig{});
        return cert.verdict == Verdict::unsat && verify_certificate(cert);
    });

    // 4. Lower-bound table, exact values, zero tolerance.
    criterion("4   witness table: k+1, 2k+1, 2^k, 12, 10 with exact spectra", 30.0, [] {
        const auto rows = report_witness_rows();
        if (rows.size() != 17) return false;
        for (const auto& r : rows)
            if (!r.pass) return false;
        // spectrum class counts, re-checked explicitly
        for (int k = 1; k <= 5; ++k) {
            if (distance_spectrum(make_path(k)).k() != k) return false;
            if (distance_spectrum(make_polygon(k)).k() != k) return false;
            if (distance_spectrum(make_hypercube(k)).k() != k) return false;
        }
        return distance_spectrum(make_icosahedron()).k() == 3 &&
               distance_spectrum(make_subsets(4, 2)).k() == 2;
    });

    // 5. Bounds: archer values and the 11k envelope; power_bound against an
    // independent multiplication loop.
    criterion("5   archer_bound(1)=11, (2)=22, <=11k to k=10^4; power oracle", 60.0, [] {
        if (archer_bound(1) != 11 || archer_bound(2) != 22) return false;
        for (long long k = 1; k <= 10000; ++k)
            if (archer_bound(k) > 11 * k) return false;
        for (int trial = 0; trial < 100; ++trial) {
            const long long chi =
                1 + static_cast<long long>(rng_at(101, 0, static_cast<unsigned>(trial)) % 25);
            const long long k =
                1 + static_cast<long long>(rng_at(101, 1, static_cast<unsigned>(trial)) % 50);
            BigInt expect = 1;
            for (long long i = 0; i < k; ++i) expect *= chi;
            if (power_bound(chi, k) != expect) return false;
        }
        return true;
    });

    // 6. Constructive symmetric-power check on Z: 200 random instances,
    // product coloring verifies clean over three periods.
    criterion("6   product coloring clean on 3 periods, 200 random instances", 60.0, [] {
        for (int trial = 0; trial < 200; ++trial) {
            const int k = 1 + static_cast<int>(rng_at(606, 0, static_cast<unsigned>(trial)) % 4);
            std::vector<long long> distances;
            for (int i = 0; i < k; ++i)
                distances.push_back(1 + static_cast<long long>(
                                            rng_at(606, 1 + static_cast<unsigned>(i),
                                                   static_cast<unsigned>(trial)) % 50));
            const auto pc = product_coloring(distances);
            std::vector<long long> distinct;
            for (long long d : distances)
                if (std::find(distinct.begin(), distinct.end(), d) == distinct.end())
                    distinct.push_back(d);
            const auto arr = symmetric_array(distances, 1 << distinct.size());
            const auto w = enumerate_window(arr.space, {0}, {3 * pc.period - 1});
            if (!verify_coloring(w, arr, expand_periodic(pc, w)).clean()) return false;
        }
        return true;
    });

    // 7. Oracle equivalence: the full grid of instances with k <= 2, m <= 2,
    // entries <= 4, windows of at most 10 points, against brute force.
    criterion("7   solver == brute force on the full small-instance grid", 120.0, [] {
        std::vector<std::vector<std::vector<long long>>> instances;
        // every (k, m) in {1,2}^2, every entry tuple in {1..4}^(k*m)
        for (int k = 1; k <= 2; ++k)
            for (int m = 1; m <= 2; ++m) {
                const int cells = k * m;
                std::vector<long long> tuple(static_cast<size_t>(cells), 1);
                while (true) {
                    std::vector<std::vector<long long>> cols;
                    for (int j = 0; j < m; ++j)
                        cols.emplace_back(tuple.begin() + static_cast<long>(j) * k,
                                          tuple.begin() + static_cast<long>(j + 1) * k);
                    instances.push_back(cols);
                    int i = cells;
                    while (i-- > 0) {
                        if (tuple[static_cast<size_t>(i)] < 4) {
                            ++tuple[static_cast<size_t>(i)];
                            for (int t = i + 1; t < cells; ++t) tuple[static_cast<size_t>(t)] = 1;
                            break;
                        }
                        if (i == 0) goto done;
                    }
                }
            done:;
            }
        for (const auto& cols : instances) {
            const auto arr = line_array(cols);
            std::vector<std::vector<DistanceToken>> raw;
            for (const auto& c : cols) {
                std::vector<DistanceToken> rc;
                for (long long d : c) rc.push_back(integer_token(d));
                raw.push_back(rc);
            }
            for (long long npts = 1; npts <= 10; ++npts) {
                const auto w = enumerate_window(arr.space, {0}, {npts - 1});
                const auto cert = solve_window(w, arr, SearchConfig{});
                const bool sat = oracle::brute_force_sat(arr.space, w.points(), raw);
                if (cert.verdict != (sat ? Verdict::sat : Verdict::unsat)) return false;
            }
        }
        return true;
    });

    // 8. Stochastic solver: 100 instances pre-screened SAT by the exact
    // solver (k <= 2, m >= 4, entries <= 10, windows <= 200 points); the
    // resampler with cap 10^5 must succeed on at least 90, every success
    // must verify, and runs must be seed-deterministic.
    criterion("8   moser_tardos >= 90/100 on pre-screened SAT instances", 300.0, [] {
        int built = 0;
        int succeeded = 0;
        std::uint64_t ctr = 0;
        while (built < 100) {
            auto rnd = [&](std::uint64_t mod) { return rng_at(808, 0, ctr++) % mod; };
            const int m = 4 + static_cast<int>(rnd(3));
            const int k = 1 + static_cast<int>(rnd(2));
            std::vector<std::vector<long long>> cols;
            for (int j = 0; j < m; ++j) {
                std::vector<long long> col;
                for (int i = 0; i < k; ++i) col.push_back(1 + static_cast<long long>(rnd(10)));
                cols.push_back(col);
            }
            const auto arr = line_array(cols);
            const long long npts = 50 + static_cast<long long>(rnd(151));
            const auto w = enumerate_window(arr.space, {0}, {npts - 1});
            if (solve_window(w, arr, SearchConfig{}).verdict != Verdict::sat) continue;
            ++built;
            const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(built);
            const auto [coloring, stats] = moser_tardos(w, arr, seed, 100000);
            if (coloring) {
                if (!verify_coloring(w, arr, *coloring).clean()) return false;
                ++succeeded;
                if (built % 25 == 0) {
                    // determinism spot check: identical rerun
                    const auto [c2, s2] = moser_tardos(w, arr, seed, 100000);
                    if (!c2 || c2->colors != coloring->colors ||
                        s2.resamples != stats.resamples)
                        return false;
                }
            }
        }
        std::printf("      (stochastic successes: %d/100)\n", succeeded);
        return succeeded >= 90;
    });

    // 9. Number theory: shell counts against direct enumeration to 1000 with
    // pinned spot values; the neighbors_at cross-check; property (*) against
    // a direct valuation comparison on 500 random arrays.
    criterion("9   shell counts, shell/neighbor consistency, star property", 120.0, [] {
        if (shell_count(2, 1) != 4 || shell_count(2, 2) != 4 || shell_count(2, 5) != 8 ||
            shell_count(2, 25) != 12)
            return false;
        for (long long d = 1; d <= 1000; ++d)
            if (shell_count(2, d) != oracle::sum_two_squares(d)) return false;

        for (int trial = 0; trial < 50; ++trial) {
            const int n = 1 + static_cast<int>(rng_at(909, 0, static_cast<unsigned>(trial)) % 3);
            long long d =
                1 + static_cast<long long>(rng_at(909, 1, static_cast<unsigned>(trial)) % 200);
            if (n == 1) {
                const long long r = 1 + static_cast<long long>(
                                            rng_at(909, 2, static_cast<unsigned>(trial)) % 14);
                d = r * r;
            }
            const long long reach = isqrt_floor(d) + 1;
            const Space space{n, Metric::euclidean};
            const Point origin(static_cast<size_t>(n), 0);
            const auto w = enumerate_window(space, Point(static_cast<size_t>(n), -reach),
                                            Point(static_cast<size_t>(n), reach));
            const DistanceToken tok =
                n == 1 ? integer_token(isqrt_floor(d)) : squared_token(d);
            if (neighbors_at(w, origin, tok).size() != shell_count(n, d)) return false;
        }

        const Space plane{2, Metric::euclidean};
        for (int trial = 0; trial < 500; ++trial) {
            const int m = 1 + static_cast<int>(rng_at(910, 0, static_cast<unsigned>(trial)) % 5);
            std::vector<long long> ds;
            std::vector<std::vector<DistanceToken>> cols;
            for (int j = 0; j < m; ++j) {
                ds.push_back(1 + static_cast<long long>(
                                     rng_at(910, 1 + static_cast<unsigned>(j),
                                            static_cast<unsigned>(trial)) % 128));
                cols.push_back({squared_token(ds.back())});
            }
            bool expect = true;
            for (size_t i = 0; i < ds.size() && expect; ++i)
                for (size_t j = i + 1; j < ds.size(); ++j)
                    if (oracle::valuation2(ds[i]) == oracle::valuation2(ds[j])) {
                        expect = false;
                        break;
                    }
            if (star_property(make_array(plane, cols)) != expect) return false;
        }
        return true;
    });

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
}
