#pragma once

// Exact decision procedures with re-checkable certificates.
//
// The search is depth-first over points in lexicographic window order,
// pruning every color that would complete a forbidden pair with an
// already-colored point. Tie-breaking is lexicographic throughout (points,
// colors, periods), so certificates are a pure function of the inputs and
// UNSAT verdicts can be re-verified by re-running the identical search.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chromacy/core.hpp"
#include "chromacy/errors.hpp"
#include "chromacy/version.hpp"

namespace chromacy {

enum class Verdict { sat, unsat, periodic, unknown };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::sat: return "sat";
        case Verdict::unsat: return "unsat";
        case Verdict::periodic: return "periodic";
        case Verdict::unknown: return "unknown";
    }
    return "?";
}

struct SearchConfig {
    std::uint64_t node_budget = 100'000'000;
    double time_budget_s = 600.0;
    bool symmetry_breaking = true;

    void validate() const {
        if (node_budget == 0) throw DomainError("node budget must be positive");
        if (!(time_budget_s > 0)) throw DomainError("time budget must be positive");
    }
};

// A monochromatic pair at a forbidden distance: a, b both colored `color`
// and d(a, b) = d[row][color].
struct Violation {
    Point a;
    Point b;
    int color = 0; // 1-based
    int row = 0;   // 0-based row within the stored (deduplicated) column

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct ViolationReport {
    std::vector<Violation> violations;

    bool clean() const { return violations.empty(); }
};

struct ResampleStats {
    std::uint64_t seed = 0;
    std::uint64_t resamples = 0;
    std::uint64_t cap = 0;
    bool succeeded = false;
};

// What the search actually did; for UNSAT this is the certificate payload
// (re-verification re-runs the search, traces would be impractically large).
struct SearchAttestation {
    std::uint64_t nodes = 0;
    std::uint64_t node_budget = 0;
    double time_budget_s = 0;
    bool symmetry_breaking = false;
    bool exhausted = false;
};

struct Certificate {
    Verdict verdict = Verdict::unknown;
    RestrictionArray array;
    std::optional<Window> window;              // absent for PERIODIC
    std::optional<Coloring> coloring;          // SAT payload
    std::optional<PeriodicColoring> periodic;  // PERIODIC payload
    SearchAttestation search;
    std::string unknown_reason;                // nonempty iff verdict == unknown
    std::optional<ResampleStats> mt;           // present iff heuristic provenance
    std::string version = kVersion;
};

namespace detail {

struct ColumnOffsets {
    // (row, offset, index delta) for every lex-positive shell offset of
    // every token in one column.
    struct Entry {
        int row;
        Point z;
        std::int64_t delta;
    };
    std::vector<Entry> entries;
};

inline bool lex_positive(const Point& z) {
    for (Coord c : z) {
        if (c > 0) return true;
        if (c < 0) return false;
    }
    return false;
}

inline std::vector<ColumnOffsets> forward_offsets(const Window& window,
                                                  const RestrictionArray& array) {
    const auto strides = window.strides();
    std::vector<ColumnOffsets> out(array.columns.size());
    for (size_t j = 0; j < array.columns.size(); ++j) {
        for (size_t i = 0; i < array.columns[j].size(); ++i) {
            for (auto& z : shell_offsets(window.space, array.columns[j][i])) {
                if (!lex_positive(z)) continue;
                std::int64_t delta = 0;
                for (size_t t = 0; t < z.size(); ++t)
                    delta += z[t] * static_cast<std::int64_t>(strides[t]);
                out[j].entries.push_back({static_cast<int>(i), std::move(z), delta});
            }
        }
    }
    return out;
}

} // namespace detail

// Every violating pair exactly once (the lex-smaller endpoint is `a`),
// sorted by (a, b, row). An empty report certifies a D-coloring.
inline ViolationReport verify_coloring(const Window& window, const RestrictionArray& array,
                                       const Coloring& coloring) {
    if (!same_space(window.space, array.space)) throw DomainError("array/window space mismatch");
    if (!(coloring.window == window)) throw DomainError("coloring does not cover the window");
    const std::uint64_t count = window.point_count();
    if (coloring.colors.size() != count) throw DomainError("coloring does not cover the window");
    const int m = array.cols();
    for (int c : coloring.colors)
        if (c < 1 || c > m) throw DomainError("color index out of range");

    const auto fwd = detail::forward_offsets(window, array);
    ViolationReport report;
    window.for_each_point([&](std::uint64_t ia, const Point& p) {
        const int j = coloring.colors[ia];
        for (const auto& e : fwd[static_cast<size_t>(j - 1)].entries) {
            bool inside = true;
            for (size_t t = 0; t < p.size(); ++t) {
                const Coord q = p[t] + e.z[t];
                if (q < window.lo[t] || q > window.hi[t]) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            const auto ib = static_cast<std::uint64_t>(static_cast<std::int64_t>(ia) + e.delta);
            if (coloring.colors[ib] != j) continue;
            Point b(p.size());
            for (size_t t = 0; t < p.size(); ++t) b[t] = p[t] + e.z[t];
            report.violations.push_back({p, std::move(b), j, e.row});
        }
    });
    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& x, const Violation& y) {
                  if (x.a != y.a) return x.a < y.a;
                  if (x.b != y.b) return x.b < y.b;
                  return x.row < y.row;
              });
    return report;
}

namespace detail {

// Shared DFS core over point indices 0..n-1. `conflicts[x * m + (c-1)]`
// lists the earlier indices that forbid color c at x when equally colored.
struct DfsResult {
    bool found = false;
    std::vector<int> colors;
    std::uint64_t nodes = 0;
    bool aborted_nodes = false;
    bool aborted_time = false;
};

class ColorDfs {
  public:
    ColorDfs(std::size_t n, int m, const std::vector<std::vector<std::uint32_t>>& conflicts,
             const std::vector<int>& group_of, const std::vector<std::vector<int>>& groups,
             const SearchConfig& config)
        : n_(n), m_(m), conflicts_(conflicts), group_of_(group_of), groups_(groups),
          config_(config), colors_(n, 0), used_(static_cast<size_t>(m) + 1, 0),
          deadline_(std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(config.time_budget_s))) {}

    DfsResult run() {
        DfsResult r;
        r.found = dfs(0);
        r.nodes = nodes_;
        r.aborted_nodes = aborted_nodes_;
        r.aborted_time = aborted_time_;
        if (r.found) r.colors = colors_;
        return r;
    }

  private:
    bool dfs(std::size_t x) {
        if (x == n_) return true;
        for (int c = 1; c <= m_; ++c) {
            bool blocked = false;
            for (std::uint32_t a : conflicts_[x * static_cast<size_t>(m_) + static_cast<size_t>(c - 1)]) {
                if (colors_[a] == c) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            // Colors with identical forbidden sets are interchangeable: the
            // first point to use such a group must take its lowest unused
            // index. Sound for satisfiability, exponentially cheaper on
            // symmetric arrays.
            if (config_.symmetry_breaking && used_[static_cast<size_t>(c)] == 0 &&
                !lowest_fresh_in_group(c))
                continue;
            ++nodes_;
            if (nodes_ > config_.node_budget) {
                aborted_nodes_ = true;
                return false;
            }
            if ((nodes_ & 0x1FFF) == 0 && std::chrono::steady_clock::now() > deadline_) {
                aborted_time_ = true;
                return false;
            }
            colors_[x] = c;
            ++used_[static_cast<size_t>(c)];
            if (dfs(x + 1)) return true;
            colors_[x] = 0;
            --used_[static_cast<size_t>(c)];
            if (aborted_nodes_ || aborted_time_) return false;
        }
        return false;
    }

    bool lowest_fresh_in_group(int c) const {
        for (int member : groups_[static_cast<size_t>(group_of_[static_cast<size_t>(c - 1)])]) {
            if (used_[static_cast<size_t>(member)] == 0) return member == c;
        }
        return false;
    }

    std::size_t n_;
    int m_;
    const std::vector<std::vector<std::uint32_t>>& conflicts_;
    const std::vector<int>& group_of_;
    const std::vector<std::vector<int>>& groups_;
    const SearchConfig& config_;
    std::vector<int> colors_;
    std::vector<int> used_;
    std::uint64_t nodes_ = 0;
    bool aborted_nodes_ = false;
    bool aborted_time_ = false;
    std::chrono::steady_clock::time_point deadline_;
};

// Group colors whose columns hold identical token sets.
inline void column_groups(const RestrictionArray& array, std::vector<int>& group_of,
                          std::vector<std::vector<int>>& groups) {
    const int m = array.cols();
    std::vector<std::vector<DistanceToken>> keys;
    keys.reserve(static_cast<size_t>(m));
    for (const auto& col : array.columns) {
        auto key = col;
        std::sort(key.begin(), key.end());
        keys.push_back(std::move(key));
    }
    group_of.assign(static_cast<size_t>(m), -1);
    groups.clear();
    for (int j = 0; j < m; ++j) {
        if (group_of[static_cast<size_t>(j)] >= 0) continue;
        const int g = static_cast<int>(groups.size());
        groups.push_back({});
        for (int t = j; t < m; ++t) {
            if (group_of[static_cast<size_t>(t)] < 0 &&
                keys[static_cast<size_t>(t)] == keys[static_cast<size_t>(j)]) {
                group_of[static_cast<size_t>(t)] = g;
                groups[static_cast<size_t>(g)].push_back(t + 1);
            }
        }
    }
}

} // namespace detail

// Result of the generic engine over an explicit point list. Points are
// solved in lexicographic order; `colors[i]` refers to the sorted list.
struct PointSolveResult {
    Verdict verdict = Verdict::unknown;
    std::vector<int> colors;
    std::uint64_t nodes = 0;
    bool exhausted = false;
    std::string unknown_reason;
};

inline PointSolveResult solve_point_list(const Space& space, std::vector<Point> points,
                                         const RestrictionArray& array,
                                         const SearchConfig& config) {
    config.validate();
    if (!same_space(space, array.space)) throw DomainError("array/point space mismatch");
    for (const auto& col : array.columns)
        for (const auto& t : col)
            if (t.kind == TokenKind::rational && t.den != 1)
                throw DomainError("rational tokens must be scaled to integers before solving");
    std::sort(points.begin(), points.end());
    if (std::adjacent_find(points.begin(), points.end()) != points.end())
        throw DomainError("duplicate points");
    const std::size_t n = points.size();
    const int m = array.cols();

    std::vector<std::vector<std::uint32_t>> conflicts(n * static_cast<size_t>(m));
    for (std::size_t b = 1; b < n; ++b)
        for (std::size_t a = 0; a < b; ++a)
            for (int j = 0; j < m; ++j)
                for (const auto& tok : array.columns[static_cast<size_t>(j)])
                    if (token_matches(space, tok, points[a], points[b])) {
                        conflicts[b * static_cast<size_t>(m) + static_cast<size_t>(j)].push_back(
                            static_cast<std::uint32_t>(a));
                        break;
                    }

    std::vector<int> group_of;
    std::vector<std::vector<int>> groups;
    detail::column_groups(array, group_of, groups);

    detail::ColorDfs dfs(n, m, conflicts, group_of, groups, config);
    const auto r = dfs.run();

    PointSolveResult out;
    out.nodes = r.nodes;
    if (r.found) {
        out.verdict = Verdict::sat;
        out.colors = r.colors;
        // soundness check on every solve: the found coloring must be clean
        for (std::size_t b = 1; b < n; ++b)
            for (std::size_t a = 0; a < b; ++a)
                if (out.colors[a] == out.colors[b])
                    for (const auto& tok : array.columns[static_cast<size_t>(out.colors[a] - 1)])
                        if (token_matches(space, tok, points[a], points[b]))
                            throw Error("internal: SAT result failed verification");
    } else if (r.aborted_nodes) {
        out.unknown_reason = "node-budget";
    } else if (r.aborted_time) {
        out.unknown_reason = "time-budget";
    } else {
        out.verdict = Verdict::unsat;
        out.exhausted = true;
    }
    return out;
}

// Decide D-colorability of a window. SAT certificates carry a verified
// coloring; UNSAT certificates attest a complete backtracking run (modulo
// the documented symmetry breaking); budget trips yield UNKNOWN.
inline Certificate solve_window(const Window& window, const RestrictionArray& array,
                                const SearchConfig& config) {
    config.validate();
    if (!same_space(window.space, array.space)) throw DomainError("array/window space mismatch");
    const std::uint64_t count = window.point_count();
    if (count > 1'000'000) throw DomainError("window too large for exhaustive search");
    for (const auto& col : array.columns)
        for (const auto& t : col)
            if (t.kind == TokenKind::rational && t.den != 1)
                throw DomainError("rational tokens must be scaled to integers before solving");

    const std::size_t n = static_cast<std::size_t>(count);
    const int m = array.cols();

    // Backward conflict lists via lex-negative shell offsets and stride
    // arithmetic; cheaper than pairwise when shells are small.
    const auto fwd = detail::forward_offsets(window, array);
    std::vector<std::vector<std::uint32_t>> conflicts(n * static_cast<size_t>(m));
    window.for_each_point([&](std::uint64_t ib, const Point& p) {
        for (int j = 0; j < m; ++j) {
            auto& list = conflicts[ib * static_cast<size_t>(m) + static_cast<size_t>(j)];
            for (const auto& e : fwd[static_cast<size_t>(j)].entries) {
                // a = p - z is the lex-earlier endpoint of the pair (a, p)
                bool inside = true;
                for (size_t t = 0; t < p.size(); ++t) {
                    const Coord q = p[t] - e.z[t];
                    if (q < window.lo[t] || q > window.hi[t]) {
                        inside = false;
                        break;
                    }
                }
                if (inside)
                    list.push_back(static_cast<std::uint32_t>(
                        static_cast<std::int64_t>(ib) - e.delta));
            }
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
    });

    std::vector<int> group_of;
    std::vector<std::vector<int>> groups;
    detail::column_groups(array, group_of, groups);

    detail::ColorDfs dfs(n, m, conflicts, group_of, groups, config);
    const auto r = dfs.run();

    Certificate cert;
    cert.array = array;
    cert.window = window;
    cert.search = {r.nodes, config.node_budget, config.time_budget_s, config.symmetry_breaking,
                   false};
    if (r.found) {
        cert.verdict = Verdict::sat;
        cert.coloring = Coloring{window, r.colors};
        if (!verify_coloring(window, array, *cert.coloring).clean())
            throw Error("internal: SAT result failed verification");
    } else if (r.aborted_nodes || r.aborted_time) {
        cert.verdict = Verdict::unknown;
        cert.unknown_reason = r.aborted_nodes ? "node-budget" : "time-budget";
    } else {
        cert.verdict = Verdict::unsat;
        cert.search.exhausted = true;
    }
    return cert;
}

namespace detail {

enum class PeriodicStatus { found, none, aborted };

// Backtracking over residues 0..p-1, colors ascending. A token with
// d = 0 (mod p) pairs every residue with itself and disables its color.
inline PeriodicStatus solve_periodic_impl(const RestrictionArray& array, long long p,
                                          std::uint64_t node_budget, std::vector<int>& out,
                                          std::uint64_t& nodes) {
    const int m = array.cols();
    std::vector<std::vector<long long>> gaps(static_cast<size_t>(m));
    std::vector<bool> usable(static_cast<size_t>(m), true);
    for (int j = 0; j < m; ++j) {
        for (const auto& tok : array.columns[static_cast<size_t>(j)]) {
            const long long g = tok.num % p;
            if (g == 0) usable[static_cast<size_t>(j)] = false;
            gaps[static_cast<size_t>(j)].push_back(g);
        }
    }

    std::vector<int> map(static_cast<size_t>(p), 0);
    bool aborted = false;

    auto dfs = [&](auto&& self, long long r) -> bool {
        if (r == p) return true;
        for (int c = 1; c <= m; ++c) {
            if (!usable[static_cast<size_t>(c - 1)]) continue;
            bool blocked = false;
            for (long long g : gaps[static_cast<size_t>(c - 1)]) {
                const long long back = (r - g + p) % p;
                const long long fw = (r + g) % p;
                if (map[static_cast<size_t>(back)] == c || map[static_cast<size_t>(fw)] == c) {
                    blocked = true;
                    break;
                }
            }
            if (blocked) continue;
            ++nodes;
            if (nodes > node_budget) {
                aborted = true;
                return false;
            }
            map[static_cast<size_t>(r)] = c;
            if (self(self, r + 1)) return true;
            map[static_cast<size_t>(r)] = 0;
            if (aborted) return false;
        }
        return false;
    };

    if (dfs(dfs, 0)) {
        out = std::move(map);
        return PeriodicStatus::found;
    }
    return aborted ? PeriodicStatus::aborted : PeriodicStatus::none;
}

inline void require_line_integer_array(const RestrictionArray& array) {
    if (array.space.dim != 1) throw DomainError("periodic colorings require an array over Z");
    for (const auto& col : array.columns)
        for (const auto& t : col)
            if (t.den != 1 || t.kind == TokenKind::squared)
                throw DomainError("non-integer tokens");
}

} // namespace detail

// Exact: does any residue map {0..p-1} -> colors avoid every (color, gap)
// pair? Returns the lexicographically least such map.
inline std::optional<PeriodicColoring> solve_periodic(const RestrictionArray& array, long long p) {
    detail::require_line_integer_array(array);
    if (p <= 0) throw DomainError("period must be positive");
    std::vector<int> map;
    std::uint64_t nodes = 0;
    const auto st = detail::solve_periodic_impl(array, p, UINT64_MAX, map, nodes);
    if (st != detail::PeriodicStatus::found) return std::nullopt;
    return PeriodicColoring{p, std::move(map)};
}

// Check the residue conditions of a periodic coloring directly. Unlike a
// finite window expansion this covers entries larger than the window.
inline bool periodic_valid(const PeriodicColoring& pc, const RestrictionArray& array) {
    if (pc.period <= 0 || pc.residues.size() != static_cast<size_t>(pc.period)) return false;
    const int m = array.cols();
    for (int c : pc.residues)
        if (c < 1 || c > m) return false;
    for (int j = 0; j < m; ++j)
        for (const auto& tok : array.columns[static_cast<size_t>(j)]) {
            const long long g = tok.num % pc.period;
            for (long long r = 0; r < pc.period; ++r)
                if (pc.residues[static_cast<size_t>(r)] == j + 1 &&
                    pc.residues[static_cast<size_t>((r + g) % pc.period)] == j + 1)
                    return false;
        }
    return true;
}

// Try periods 1..p_max in order, returning the first success (smallest p,
// lexicographically least residue map). Otherwise fall back to an
// exhaustive window search hunting for UNSAT; window-SAT proves nothing
// about Z, so that outcome is UNKNOWN (the completeness gap: D-colorings of
// Z need not be periodic). `config.node_budget` applies per period.
inline Certificate search_periods(const RestrictionArray& array, long long p_max,
                                  const SearchConfig& config, long long fallback_points = 0) {
    detail::require_line_integer_array(array);
    if (p_max <= 0) throw DomainError("p_max must be positive");
    config.validate();
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                              std::chrono::duration<double>(config.time_budget_s));

    std::uint64_t nodes = 0;
    for (long long p = 1; p <= p_max; ++p) {
        if (std::chrono::steady_clock::now() > deadline) {
            Certificate cert;
            cert.verdict = Verdict::unknown;
            cert.array = array;
            cert.search = {nodes, config.node_budget, config.time_budget_s,
                           config.symmetry_breaking, false};
            cert.unknown_reason = "time-budget";
            return cert;
        }
        std::vector<int> map;
        const auto st = detail::solve_periodic_impl(array, p, config.node_budget, map, nodes);
        if (st == detail::PeriodicStatus::found) {
            Certificate cert;
            cert.verdict = Verdict::periodic;
            cert.array = array;
            cert.periodic = PeriodicColoring{p, std::move(map)};
            cert.search = {nodes, config.node_budget, config.time_budget_s,
                           config.symmetry_breaking, false};
            if (!periodic_valid(*cert.periodic, array))
                throw Error("internal: periodic result failed verification");
            return cert;
        }
    }

    long long fallback = fallback_points;
    if (fallback <= 0) fallback = 10 * std::max<long long>(array.max_integer_entry(), 1);
    const auto window = enumerate_window(array.space, {0}, {fallback - 1});
    Certificate wcert = solve_window(window, array, config);
    wcert.search.nodes += nodes;
    if (wcert.verdict == Verdict::unsat) return wcert;
    if (wcert.verdict == Verdict::sat) {
        Certificate cert;
        cert.verdict = Verdict::unknown;
        cert.array = array;
        cert.window = window;
        cert.search = wcert.search;
        cert.unknown_reason = "completeness-gap";
        return cert;
    }
    return wcert; // UNKNOWN from budget
}

// Re-check a certificate from its payload alone. SAT and PERIODIC are
// verified directly; UNSAT re-runs the recorded exhaustive search and
// compares verdicts; UNKNOWN is accepted iff the payload is a budget report.
inline bool verify_certificate(const Certificate& cert) {
    switch (cert.verdict) {
        case Verdict::sat: {
            if (!cert.window || !cert.coloring) return false;
            try {
                return verify_coloring(*cert.window, cert.array, *cert.coloring).clean();
            } catch (const Error&) {
                return false;
            }
        }
        case Verdict::periodic: {
            if (!cert.periodic) return false;
            if (!periodic_valid(*cert.periodic, cert.array)) return false;
            // cross-check: expansion onto a 3p window must verify clean
            try {
                const auto w = enumerate_window(cert.array.space, {0}, {3 * cert.periodic->period - 1});
                return verify_coloring(w, cert.array, expand_periodic(*cert.periodic, w)).clean();
            } catch (const Error&) {
                return false;
            }
        }
        case Verdict::unsat: {
            if (!cert.window || !cert.search.exhausted) return false;
            SearchConfig config;
            config.node_budget = cert.search.node_budget;
            config.time_budget_s = 1e9; // determinism comes from the node budget
            config.symmetry_breaking = cert.search.symmetry_breaking;
            try {
                return solve_window(*cert.window, cert.array, config).verdict == Verdict::unsat;
            } catch (const Error&) {
                return false;
            }
        }
        case Verdict::unknown:
            return !cert.unknown_reason.empty() && !cert.search.exhausted;
    }
    return false;
}

} // namespace chromacy
