#pragma once

// Core data model: spaces, distance tokens, restriction arrays, lattice
// windows, colorings. Everything is an immutable value after construction
// and every operation is a pure function, so all of it is safe to share
// across concurrent searches.
//
// Exactness policy: distances are never compared through floating point.
// Z and l1/linf lattices carry integer tokens, Euclidean Z^n (n >= 2)
// carries squared-integer tokens, and the line additionally admits rational
// tokens (which must be scaled to integers before solving).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "chromacy/errors.hpp"

namespace chromacy {

using Coord = long long;
using Point = std::vector<Coord>;

enum class Metric { euclidean, l1, linf };

inline const char* metric_name(Metric m) {
    switch (m) {
        case Metric::euclidean: return "euclidean";
        case Metric::l1: return "l1";
        case Metric::linf: return "linf";
    }
    return "?";
}

struct Space {
    int dim = 1;
    Metric metric = Metric::l1; // ignored when dim == 1

    friend bool operator==(const Space&, const Space&) = default;
};

// Two spaces describe the same lattice. On the line the metric is
// irrelevant: |x - y| under any of the three norms.
inline bool same_space(const Space& a, const Space& b) {
    if (a.dim != b.dim) return false;
    return a.dim == 1 || a.metric == b.metric;
}

enum class TokenKind { integer, squared, rational };

// One forbidden distance. `num/den` is the distance itself for integer and
// rational tokens, and the squared distance for squared tokens (the only
// distances occurring in Euclidean Z^n are square roots of integers).
struct DistanceToken {
    TokenKind kind = TokenKind::integer;
    long long num = 0;
    long long den = 1;

    friend bool operator==(const DistanceToken&, const DistanceToken&) = default;
    friend bool operator<(const DistanceToken& a, const DistanceToken& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        // same kind: compare values by cross multiplication
        return a.num * b.den < b.num * a.den;
    }

    std::string str() const {
        std::string v = std::to_string(num);
        if (den != 1) v += "/" + std::to_string(den);
        return kind == TokenKind::squared ? "sqrt(" + v + ")" : v;
    }
};

inline DistanceToken integer_token(long long d) {
    if (d <= 0) throw DomainError("nonpositive distance");
    return {TokenKind::integer, d, 1};
}

inline DistanceToken squared_token(long long s) {
    if (s <= 0) throw DomainError("nonpositive distance");
    return {TokenKind::squared, s, 1};
}

inline DistanceToken rational_token(long long num, long long den) {
    if (den == 0) throw ArithmeticError("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    if (num <= 0) throw DomainError("nonpositive distance");
    long long g = std::gcd(num, den);
    num /= g;
    den /= g;
    if (den == 1) return {TokenKind::integer, num, 1};
    return {TokenKind::rational, num, den};
}

// Squared tokens are used iff the metric is Euclidean on Z^n, n >= 2;
// rational tokens only exist on the line.
inline bool token_compatible(const Space& space, const DistanceToken& tok) {
    if (space.dim == 1) return tok.kind != TokenKind::squared;
    if (space.metric == Metric::euclidean) return tok.kind == TokenKind::squared;
    return tok.kind == TokenKind::integer;
}

// The k x m restriction array D: column j lists the distances forbidden for
// color j. Columns are stored deduplicated (a repeated forbidden distance is
// redundant) in document order.
struct RestrictionArray {
    Space space;
    int rows = 0; // k: longest forbidden list after dedup
    std::vector<std::vector<DistanceToken>> columns;

    int cols() const { return static_cast<int>(columns.size()); }

    // Largest integer-valued entry; used for default fallback window sizing.
    long long max_integer_entry() const {
        long long best = 0;
        for (const auto& col : columns)
            for (const auto& t : col)
                if (t.den == 1) best = std::max(best, t.num);
        return best;
    }

    friend bool operator==(const RestrictionArray&, const RestrictionArray&) = default;
};

inline RestrictionArray make_array(Space space, std::vector<std::vector<DistanceToken>> columns) {
    if (space.dim < 1) throw DomainError("space dimension must be >= 1");
    if (columns.empty()) throw DomainError("restriction array needs at least one column");
    RestrictionArray out;
    out.space = space;
    out.columns.reserve(columns.size());
    int rows = 0;
    for (auto& col : columns) {
        if (col.empty()) throw DomainError("restriction array column is empty");
        std::vector<DistanceToken> dedup;
        for (const auto& tok : col) {
            if (tok.num <= 0 || tok.den <= 0) throw DomainError("nonpositive distance");
            if (!token_compatible(space, tok))
                throw DomainError("token kind incompatible with metric");
            if (std::find(dedup.begin(), dedup.end(), tok) == dedup.end()) dedup.push_back(tok);
        }
        rows = std::max(rows, static_cast<int>(dedup.size()));
        out.columns.push_back(std::move(dedup));
    }
    out.rows = rows;
    return out;
}

// Convenience for 1 x m and k x m integer arrays on the line.
inline RestrictionArray line_array(const std::vector<std::vector<long long>>& columns) {
    std::vector<std::vector<DistanceToken>> cols;
    cols.reserve(columns.size());
    for (const auto& c : columns) {
        std::vector<DistanceToken> col;
        col.reserve(c.size());
        for (long long d : c) col.push_back(integer_token(d));
        cols.push_back(std::move(col));
    }
    return make_array(Space{1, Metric::l1}, std::move(cols));
}

inline long long isqrt_floor(long long v) {
    if (v < 0) return -1;
    auto r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

namespace detail {

// Lattice shells around the origin, in lexicographic order. Each recursion
// fixes the leading coordinate in ascending order, so the output needs no
// sorting pass.

inline void euclid_shell_rec(int dims_left, long long rem, Point& cur, std::vector<Point>& out) {
    if (dims_left == 1) {
        const long long r = isqrt_floor(rem);
        if (r >= 0 && r * r == rem) {
            if (r > 0) {
                cur.push_back(-r);
                out.push_back(cur);
                cur.pop_back();
            }
            cur.push_back(r);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    const long long r = isqrt_floor(rem);
    for (long long z = -r; z <= r; ++z) {
        cur.push_back(z);
        euclid_shell_rec(dims_left - 1, rem - z * z, cur, out);
        cur.pop_back();
    }
}

inline void l1_shell_rec(int dims_left, long long rem, Point& cur, std::vector<Point>& out) {
    if (dims_left == 1) {
        if (rem > 0) {
            cur.push_back(-rem);
            out.push_back(cur);
            cur.pop_back();
        }
        cur.push_back(rem);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (long long z = -rem; z <= rem; ++z) {
        cur.push_back(z);
        l1_shell_rec(dims_left - 1, rem - (z < 0 ? -z : z), cur, out);
        cur.pop_back();
    }
}

inline void linf_shell_rec(int dims_left, long long d, bool have_extreme, Point& cur,
                           std::vector<Point>& out) {
    if (dims_left == 1) {
        if (have_extreme) {
            for (long long z = -d; z <= d; ++z) {
                cur.push_back(z);
                out.push_back(cur);
                cur.pop_back();
            }
        } else {
            cur.push_back(-d);
            out.push_back(cur);
            cur.pop_back();
            cur.push_back(d);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (long long z = -d; z <= d; ++z) {
        cur.push_back(z);
        linf_shell_rec(dims_left - 1, d, have_extreme || z == d || z == -d, cur, out);
        cur.pop_back();
    }
}

} // namespace detail

// All lattice offsets z with ||z|| equal to the token's distance under the
// space metric, lexicographically sorted. A non-integer rational distance is
// never realized between lattice points, so its shell is empty.
inline std::vector<Point> shell_offsets(const Space& space, const DistanceToken& tok) {
    if (!token_compatible(space, tok)) throw DomainError("token kind incompatible with metric");
    std::vector<Point> out;
    if (space.dim == 1) {
        if (tok.den != 1) return out;
        out.push_back({-tok.num});
        out.push_back({tok.num});
        return out;
    }
    Point cur;
    cur.reserve(space.dim);
    switch (space.metric) {
        case Metric::euclidean:
            detail::euclid_shell_rec(space.dim, tok.num, cur, out);
            break;
        case Metric::l1:
            detail::l1_shell_rec(space.dim, tok.num, cur, out);
            break;
        case Metric::linf:
            detail::linf_shell_rec(space.dim, tok.num, false, cur, out);
            break;
    }
    return out;
}

// Exact test: does the pair (a, b) realize the token's distance?
inline bool token_matches(const Space& space, const DistanceToken& tok, const Point& a,
                          const Point& b) {
    if (space.dim == 1) {
        if (tok.kind == TokenKind::squared) throw DomainError("token kind incompatible with metric");
        long long diff = a[0] - b[0];
        if (diff < 0) diff = -diff;
        return diff * tok.den == tok.num; // cross-multiplied, exact
    }
    switch (space.metric) {
        case Metric::euclidean: {
            long long s = 0;
            for (int i = 0; i < space.dim; ++i) {
                const long long d = a[i] - b[i];
                s += d * d;
            }
            return s == tok.num;
        }
        case Metric::l1: {
            long long s = 0;
            for (int i = 0; i < space.dim; ++i) s += std::abs(a[i] - b[i]);
            return s == tok.num;
        }
        case Metric::linf: {
            long long s = 0;
            for (int i = 0; i < space.dim; ++i) s = std::max(s, std::abs(a[i] - b[i]));
            return s == tok.num;
        }
    }
    return false;
}

// Finite axis-aligned box in Z^n. Point iteration order is lexicographic:
// index 0 is `lo`, the last coordinate varies fastest.
struct Window {
    Space space;
    Point lo;
    Point hi;

    friend bool operator==(const Window&, const Window&) = default;

    std::uint64_t point_count() const {
        std::uint64_t n = 1;
        for (size_t i = 0; i < lo.size(); ++i) {
            const auto side = static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
            if (n > (std::uint64_t{1} << 62) / side) throw DomainError("window too large");
            n *= side;
        }
        return n;
    }

    // strides[i] = number of points spanned by one step in coordinate i
    std::vector<std::uint64_t> strides() const {
        std::vector<std::uint64_t> s(lo.size(), 1);
        for (size_t i = lo.size(); i-- > 1;)
            s[i - 1] = s[i] * static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
        return s;
    }

    bool contains(const Point& p) const {
        if (p.size() != lo.size()) return false;
        for (size_t i = 0; i < lo.size(); ++i)
            if (p[i] < lo[i] || p[i] > hi[i]) return false;
        return true;
    }

    std::optional<std::uint64_t> index_of(const Point& p) const {
        if (!contains(p)) return std::nullopt;
        const auto s = strides();
        std::uint64_t idx = 0;
        for (size_t i = 0; i < lo.size(); ++i)
            idx += static_cast<std::uint64_t>(p[i] - lo[i]) * s[i];
        return idx;
    }

    Point point_at(std::uint64_t idx) const {
        const auto s = strides();
        Point p(lo.size());
        for (size_t i = 0; i < lo.size(); ++i) {
            p[i] = lo[i] + static_cast<Coord>(idx / s[i]);
            idx %= s[i];
        }
        return p;
    }

    std::vector<Point> points() const {
        std::vector<Point> out;
        out.reserve(point_count());
        for_each_point([&](std::uint64_t, const Point& p) { out.push_back(p); });
        return out;
    }

    // Odometer iteration; f(index, point) in lexicographic order without
    // per-point allocation.
    template <typename F>
    void for_each_point(F&& f) const {
        Point cur = lo;
        std::uint64_t idx = 0;
        const size_t n = lo.size();
        while (true) {
            f(idx, static_cast<const Point&>(cur));
            ++idx;
            size_t i = n;
            while (i-- > 0) {
                if (cur[i] < hi[i]) {
                    ++cur[i];
                    for (size_t t = i + 1; t < n; ++t) cur[t] = lo[t];
                    break;
                }
                if (i == 0) return;
            }
        }
    }
};

inline Window enumerate_window(const Space& space, const Point& lo, const Point& hi) {
    if (static_cast<int>(lo.size()) != space.dim || static_cast<int>(hi.size()) != space.dim)
        throw DomainError("window corner dimension mismatch");
    for (int i = 0; i < space.dim; ++i)
        if (lo[i] > hi[i]) throw DomainError("window lower corner exceeds upper corner");
    Window w{space, lo, hi};
    w.point_count(); // overflow guard
    return w;
}

// Window points at the token's distance from `point`, lexicographic order.
inline std::vector<Point> neighbors_at(const Window& window, const Point& point,
                                       const DistanceToken& tok) {
    if (!window.contains(point)) throw DomainError("point lies outside the window");
    std::vector<Point> out;
    for (const auto& z : shell_offsets(window.space, tok)) {
        Point q(point.size());
        for (size_t i = 0; i < q.size(); ++i) q[i] = point[i] + z[i];
        if (window.contains(q)) out.push_back(std::move(q));
    }
    return out;
}

// Total map window point -> color in 1..m, stored in window index order.
struct Coloring {
    Window window;
    std::vector<int> colors;

    friend bool operator==(const Coloring&, const Coloring&) = default;
};

// Coloring of all of Z through x -> residues[x mod p]; the finite
// certificate form for Z-colorability.
struct PeriodicColoring {
    long long period = 1;
    std::vector<int> residues;

    int color_at(long long x) const {
        long long r = x % period;
        if (r < 0) r += period;
        return residues[static_cast<size_t>(r)];
    }

    friend bool operator==(const PeriodicColoring&, const PeriodicColoring&) = default;
};

// Expand a periodic coloring onto a 1-D window.
inline Coloring expand_periodic(const PeriodicColoring& pc, const Window& window) {
    if (window.space.dim != 1) throw DomainError("periodic colorings expand onto Z windows only");
    Coloring c{window, {}};
    c.colors.reserve(window.point_count());
    for (Coord x = window.lo[0]; x <= window.hi[0]; ++x) c.colors.push_back(pc.color_at(x));
    return c;
}

} // namespace chromacy
