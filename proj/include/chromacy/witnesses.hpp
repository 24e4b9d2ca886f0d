#pragma once

// Exact k-distance-set witnesses and the lower bounds they force, plus the
// Wepsic vector-restriction projection from Z^n back to the line.
//
// Geometry is exact throughout: integer and rational coordinates, Q(sqrt 5)
// for the icosahedron, and chord-class indices for regular polygons. No
// floating point, no tolerance policy.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chromacy/core.hpp"
#include "chromacy/errors.hpp"
#include "chromacy/exact.hpp"

namespace chromacy {

enum class Field { integers, rationals, q_sqrt5 };

inline const char* field_name(Field f) {
    switch (f) {
        case Field::integers: return "int";
        case Field::rationals: return "rat";
        case Field::q_sqrt5: return "q-sqrt5";
    }
    return "?";
}

// Finite exact-coordinate point list. When `cycle` is set the points are
// vertex indices of a regular cycle-gon and distances are compared by chord
// class min(|i-j|, cycle-|i-j|) instead of coordinates — the regular
// polygon's distance classes are in bijection with that index.
struct PointSet {
    Field field = Field::integers;
    int dim = 1;
    std::vector<std::vector<Q5>> points;
    std::optional<long long> cycle;
};

inline PointSet make_pointset(Field field, int dim, std::vector<std::vector<Q5>> points,
                              std::optional<long long> cycle = std::nullopt) {
    if (dim < 1) throw DomainError("dimension must be >= 1");
    for (const auto& p : points) {
        if (static_cast<int>(p.size()) != dim) throw DomainError("point dimension mismatch");
        for (const auto& c : p) {
            if (field == Field::integers && !(c.rational() && c.a.den == 1))
                throw DomainError("non-integer coordinate in integer point set");
            if (field == Field::rationals && !c.rational())
                throw DomainError("irrational coordinate in rational point set");
        }
    }
    auto sorted = points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw DomainError("points must be pairwise distinct");
    return {field, dim, std::move(points), cycle};
}

enum class WitnessKind { path, polygon, hypercube, icosahedron, subsets };

inline const char* witness_kind_name(WitnessKind k) {
    switch (k) {
        case WitnessKind::path: return "path";
        case WitnessKind::polygon: return "polygon";
        case WitnessKind::hypercube: return "hypercube";
        case WitnessKind::icosahedron: return "icosahedron";
        case WitnessKind::subsets: return "subsets";
    }
    return "?";
}

// {0, ..., k} on the line: a k-distance set of size k+1.
inline PointSet make_path(long long k) {
    if (k < 1) throw DomainError("path needs k >= 1");
    std::vector<std::vector<Q5>> pts;
    pts.reserve(static_cast<size_t>(k) + 1);
    for (long long x = 0; x <= k; ++x) pts.push_back({Q5(x)});
    return make_pointset(Field::integers, 1, std::move(pts));
}

// Vertices of the regular (2k+1)-gon, by index: a k-distance set of size
// 2k+1 whose distance classes are the chord classes j = 1..k.
inline PointSet make_polygon(long long k) {
    if (k < 1) throw DomainError("polygon needs k >= 1");
    const long long q = 2 * k + 1;
    std::vector<std::vector<Q5>> pts;
    pts.reserve(static_cast<size_t>(q));
    for (long long i = 0; i < q; ++i) pts.push_back({Q5(i)});
    return make_pointset(Field::integers, 1, std::move(pts), q);
}

// {0,1}^k: a k-distance set of size 2^k (Hamming distances 1..k).
inline PointSet make_hypercube(long long k) {
    if (k < 1 || k > 20) throw DomainError("hypercube needs 1 <= k <= 20");
    std::vector<std::vector<Q5>> pts;
    pts.reserve(1u << k);
    for (long long mask = 0; mask < (1LL << k); ++mask) {
        std::vector<Q5> p;
        p.reserve(static_cast<size_t>(k));
        for (long long b = k - 1; b >= 0; --b) p.push_back(Q5((mask >> b) & 1));
        pts.push_back(std::move(p));
    }
    return make_pointset(Field::integers, static_cast<int>(k), std::move(pts));
}

// The 12 cyclic coordinate permutations of (0, ±1, ±phi) over Q(sqrt 5):
// a 3-distance set in R^3.
inline PointSet make_icosahedron() {
    const Q5 phi = golden_ratio();
    std::vector<std::vector<Q5>> pts;
    pts.reserve(12);
    for (int s1 : {-1, 1})
        for (int s2 : {-1, 1}) {
            const Q5 a = Q5(s1);
            const Q5 b = Q5(s2) * phi;
            pts.push_back({Q5(0), a, b});
            pts.push_back({b, Q5(0), a});
            pts.push_back({a, b, Q5(0)});
        }
    return make_pointset(Field::q_sqrt5, 3, std::move(pts));
}

// Characteristic 0/1 vectors of all k-element subsets of {1..n+1}: binom(n+1,k)
// points in Z^{n+1} whose squared distances are |A xor B| in {2,4,...,2k}.
// Restricted to n+1 >= 2k, where all k classes are realized.
inline PointSet make_subsets(long long n, long long k) {
    if (k < 1 || n + 1 < 2 * k) throw DomainError("subsets needs n+1 >= 2k >= 2");
    const long long universe = n + 1;
    if (universe > 30) throw DomainError("subsets universe too large");
    std::vector<std::vector<Q5>> pts;
    std::vector<int> pick(static_cast<size_t>(k));
    for (size_t i = 0; i < pick.size(); ++i) pick[i] = static_cast<int>(i);
    while (true) {
        std::vector<Q5> p(static_cast<size_t>(universe), Q5(0));
        for (int i : pick) p[static_cast<size_t>(i)] = Q5(1);
        pts.push_back(std::move(p));
        // next combination in lexicographic order
        long long i = k - 1;
        while (i >= 0 && pick[static_cast<size_t>(i)] == universe - k + i) --i;
        if (i < 0) break;
        ++pick[static_cast<size_t>(i)];
        for (long long t = i + 1; t < k; ++t)
            pick[static_cast<size_t>(t)] = pick[static_cast<size_t>(t - 1)] + 1;
    }
    return make_pointset(Field::integers, static_cast<int>(universe), std::move(pts));
}

inline PointSet make_witness(WitnessKind kind, long long k = 0, long long n = 0) {
    switch (kind) {
        case WitnessKind::path: return make_path(k);
        case WitnessKind::polygon: return make_polygon(k);
        case WitnessKind::hypercube: return make_hypercube(k);
        case WitnessKind::icosahedron: return make_icosahedron();
        case WitnessKind::subsets: return make_subsets(n, k);
    }
    throw DomainError("unknown witness kind");
}

// Distance classes with multiplicities, sorted ascending by class value.
struct SpectrumReport {
    std::vector<std::pair<Q5, long long>> classes; // (squared distance or chord class, count)

    int k() const { return static_cast<int>(classes.size()); }
    long long pair_total() const {
        long long t = 0;
        for (const auto& c : classes) t += c.second;
        return t;
    }
};

// Group all unordered pairs by exact squared distance (chord class for
// cycle-represented polygons). The class count is the witness's k.
inline SpectrumReport distance_spectrum(const PointSet& ps) {
    const auto npts = ps.points.size();
    if (npts < 2) throw DomainError("distance spectrum needs at least two points");
    std::map<Q5, long long> classes;
    for (size_t i = 0; i < npts; ++i)
        for (size_t j = i + 1; j < npts; ++j) {
            Q5 value;
            if (ps.cycle) {
                long long diff = ps.points[j][0].a.num - ps.points[i][0].a.num;
                if (diff < 0) diff = -diff;
                value = Q5(std::min(diff, *ps.cycle - diff));
            } else {
                for (int t = 0; t < ps.dim; ++t) {
                    const Q5 d = ps.points[i][static_cast<size_t>(t)] -
                                 ps.points[j][static_cast<size_t>(t)];
                    value = value + d * d;
                }
            }
            ++classes[value];
        }
    SpectrumReport report;
    report.classes.assign(classes.begin(), classes.end());
    return report;
}

// The opening observation of the lower-bound hunt: a k-distance set S forces
// a rainbow coloring under the k x (|S|-1) array whose every column lists
// all k distances, so |S|-1 colors cannot suffice and the bound is |S|.
// The witness array is emitted only when S lives on a solver lattice
// (integer coordinates, genuine squared distances); for the polygon and the
// icosahedron the bound is valid but the array stays abstract.
struct CliqueBound {
    int k = 0;
    long long bound = 0;
    std::optional<RestrictionArray> witness;
};

inline CliqueBound clique_bound(const PointSet& ps) {
    const auto spectrum = distance_spectrum(ps);
    CliqueBound out;
    out.k = spectrum.k();
    out.bound = static_cast<long long>(ps.points.size());
    const int m = static_cast<int>(ps.points.size()) - 1;
    if (ps.field == Field::integers && !ps.cycle && m >= 1) {
        std::vector<DistanceToken> column;
        bool representable = true;
        for (const auto& cls : spectrum.classes) {
            const long long sq = cls.first.a.num; // integer field: exact square
            if (ps.dim == 1) {
                const long long r = isqrt_floor(sq);
                if (r * r != sq) {
                    representable = false;
                    break;
                }
                column.push_back(integer_token(r));
            } else {
                column.push_back(squared_token(sq));
            }
        }
        if (representable) {
            const Space space{ps.dim, ps.dim == 1 ? Metric::l1 : Metric::euclidean};
            out.witness = make_array(
                space, std::vector<std::vector<DistanceToken>>(static_cast<size_t>(m), column));
        }
    }
    return out;
}

inline std::vector<Point> lattice_points(const PointSet& ps) {
    if (ps.field != Field::integers || ps.cycle)
        throw DomainError("point set is not lattice-representable");
    std::vector<Point> out;
    out.reserve(ps.points.size());
    for (const auto& p : ps.points) {
        Point q;
        q.reserve(p.size());
        for (const auto& c : p) q.push_back(c.a.num);
        out.push_back(std::move(q));
    }
    return out;
}

// k x m grid of nonzero integer vectors: the restriction-by-vectors variant.
struct VectorArray {
    int dim = 0;
    std::vector<std::vector<Point>> columns;

    int cols() const { return static_cast<int>(columns.size()); }
};

inline VectorArray make_vector_array(int dim, std::vector<std::vector<Point>> columns) {
    if (dim < 1) throw DomainError("dimension must be >= 1");
    if (columns.empty()) throw DomainError("vector array needs at least one column");
    for (const auto& col : columns) {
        if (col.empty()) throw DomainError("vector array column is empty");
        for (const auto& v : col) {
            if (static_cast<int>(v.size()) != dim) throw DomainError("vector dimension mismatch");
            if (std::all_of(v.begin(), v.end(), [](Coord c) { return c == 0; }))
                throw DomainError("zero vector");
        }
    }
    return {dim, std::move(columns)};
}

inline long long dot(const Point& a, const Point& b) {
    long long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Project vector restrictions to distance restrictions on Z through a
// linear functional: entry (i,j) becomes |lambda . v_ij|. Any functional
// that kills no restricted vector works; a zero dot product is an error
// telling the caller to pick a more generic lambda.
inline RestrictionArray wepsic_project(const VectorArray& va, const Point& lambda) {
    if (static_cast<int>(lambda.size()) != va.dim) throw DomainError("lambda dimension mismatch");
    std::vector<std::vector<DistanceToken>> cols;
    cols.reserve(va.columns.size());
    for (const auto& col : va.columns) {
        std::vector<DistanceToken> out;
        out.reserve(col.size());
        for (const auto& v : col) {
            long long d = dot(lambda, v);
            if (d == 0) throw DomainError("lambda annihilates a restricted vector");
            out.push_back(integer_token(d < 0 ? -d : d));
        }
        cols.push_back(std::move(out));
    }
    return make_array(Space{1, Metric::l1}, std::move(cols));
}

// Pull a periodic coloring of Z back through the functional: x gets
// g(lambda . x). If g certifies the projected array, no window pair
// (x, x + v_ij) shares color j.
inline Coloring wepsic_lift(const PeriodicColoring& g, const Point& lambda,
                            const Window& window) {
    if (lambda.size() != window.lo.size()) throw DomainError("lambda dimension mismatch");
    Coloring c{window, {}};
    c.colors.reserve(window.point_count());
    window.for_each_point(
        [&](std::uint64_t, const Point& p) { c.colors.push_back(g.color_at(dot(lambda, p))); });
    return c;
}

// Like ViolationReport but keyed by restricted vectors: pairs
// (x, x + v_ij) sharing color j.
struct VectorViolation {
    Point a;
    Point b;
    int color = 0;
    int row = 0;

    friend bool operator==(const VectorViolation&, const VectorViolation&) = default;
};

struct VectorViolationReport {
    std::vector<VectorViolation> violations;

    bool clean() const { return violations.empty(); }
};

inline VectorViolationReport verify_vector_coloring(const Window& window, const VectorArray& va,
                                                    const Coloring& coloring) {
    if (va.dim != window.space.dim) throw DomainError("vector/window dimension mismatch");
    if (!(coloring.window == window)) throw DomainError("coloring does not cover the window");
    const int m = va.cols();
    for (int c : coloring.colors)
        if (c < 1 || c > m) throw DomainError("color index out of range");
    const auto strides = window.strides();
    VectorViolationReport report;
    window.for_each_point([&](std::uint64_t ia, const Point& p) {
        const int j = coloring.colors[ia];
        const auto& col = va.columns[static_cast<size_t>(j - 1)];
        for (size_t i = 0; i < col.size(); ++i) {
            bool inside = true;
            std::int64_t delta = 0;
            for (size_t t = 0; t < p.size(); ++t) {
                const Coord q = p[t] + col[i][t];
                if (q < window.lo[t] || q > window.hi[t]) {
                    inside = false;
                    break;
                }
                delta += col[i][t] * static_cast<std::int64_t>(strides[t]);
            }
            if (!inside) continue;
            const auto ib = static_cast<std::uint64_t>(static_cast<std::int64_t>(ia) + delta);
            if (coloring.colors[ib] != j) continue;
            Point b(p.size());
            for (size_t t = 0; t < p.size(); ++t) b[t] = p[t] + col[i][t];
            report.violations.push_back({p, std::move(b), j, static_cast<int>(i)});
        }
    });
    return report;
}

} // namespace chromacy
