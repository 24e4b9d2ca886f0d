#pragma once

// Randomized coloring search in the Moser-Tardos resampling style: start
// from an independent uniform coloring, repeatedly pick the least violated
// constraint and resample its two endpoints. A scalable heuristic
// complement to the exact solver; failure is never evidence of UNSAT.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chromacy/core.hpp"
#include "chromacy/rng.hpp"
#include "chromacy/solver.hpp"

namespace chromacy {

// Each point colored independently uniformly in 1..m; deterministic per
// (seed, window, m, version). Point index is the RNG counter.
inline Coloring random_coloring(const Window& window, int m, std::uint64_t seed) {
    if (m < 1) throw DomainError("need at least one color");
    Coloring c{window, {}};
    const std::uint64_t n = window.point_count();
    c.colors.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) c.colors.push_back(rng_color(seed, 0, i, m));
    return c;
}

// Resampling loop. The violated event chosen at each step is the
// lexicographically least (point pair, row) — the pair's color is forced by
// its endpoints — and both endpoints are redrawn uniformly. Selection is
// deterministic rather than random; correctness of the resampling walk does
// not depend on the selection order.
inline std::pair<std::optional<Coloring>, ResampleStats> moser_tardos(const Window& window,
                                                                      const RestrictionArray& array,
                                                                      std::uint64_t seed,
                                                                      std::uint64_t cap) {
    if (cap == 0) throw DomainError("resample cap must be positive");
    if (!same_space(window.space, array.space)) throw DomainError("array/window space mismatch");
    for (const auto& col : array.columns)
        for (const auto& t : col)
            if (t.kind == TokenKind::rational && t.den != 1)
                throw DomainError("rational tokens must be scaled to integers before solving");
    const std::uint64_t count = window.point_count();
    if (count > 1'000'000) throw DomainError("window too large for resampling search");
    const auto n = static_cast<std::size_t>(count);
    const int m = array.cols();

    // forward partners (b > a) per point and column, sorted by (b, row)
    const auto fwd = detail::forward_offsets(window, array);
    struct Partner {
        std::uint32_t b;
        int row;
    };
    std::vector<std::vector<Partner>> partners(n * static_cast<size_t>(m));
    window.for_each_point([&](std::uint64_t ia, const Point& p) {
        for (int j = 0; j < m; ++j) {
            auto& list = partners[ia * static_cast<size_t>(m) + static_cast<size_t>(j)];
            for (const auto& e : fwd[static_cast<size_t>(j)].entries) {
                bool inside = true;
                for (size_t t = 0; t < p.size(); ++t) {
                    const Coord q = p[t] + e.z[t];
                    if (q < window.lo[t] || q > window.hi[t]) {
                        inside = false;
                        break;
                    }
                }
                if (inside)
                    list.push_back({static_cast<std::uint32_t>(
                                        static_cast<std::int64_t>(ia) + e.delta),
                                    e.row});
            }
            std::sort(list.begin(), list.end(), [](const Partner& x, const Partner& y) {
                return x.b != y.b ? x.b < y.b : x.row < y.row;
            });
        }
    });

    Coloring coloring = random_coloring(window, m, seed);
    ResampleStats stats{seed, 0, cap, false};

    auto first_violation = [&](std::size_t& va, std::size_t& vb) -> bool {
        for (std::size_t a = 0; a < n; ++a) {
            const int j = coloring.colors[a];
            for (const auto& pr :
                 partners[a * static_cast<size_t>(m) + static_cast<size_t>(j - 1)]) {
                if (coloring.colors[pr.b] == j) {
                    va = a;
                    vb = pr.b;
                    return true;
                }
            }
        }
        return false;
    };

    while (true) {
        std::size_t a = 0;
        std::size_t b = 0;
        if (!first_violation(a, b)) {
            stats.succeeded = true;
            if (!verify_coloring(window, array, coloring).clean())
                throw Error("internal: resampled coloring failed verification");
            return {std::move(coloring), stats};
        }
        if (stats.resamples == cap) return {std::nullopt, stats};
        coloring.colors[a] = rng_color(seed, 1, 2 * stats.resamples, m);
        coloring.colors[b] = rng_color(seed, 1, 2 * stats.resamples + 1, m);
        ++stats.resamples;
    }
}

} // namespace chromacy
