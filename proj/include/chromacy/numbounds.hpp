#pragma once

// Closed-form bounds and lattice number theory: the ceil(4ek) upper bound,
// the symmetric product-coloring construction, sums-of-squares shell counts,
// the R_N membership test, property (*), and rational-to-integer scaling.

#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chromacy/core.hpp"
#include "chromacy/errors.hpp"

namespace chromacy {

using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline BigInt ceil_div_positive(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

} // namespace detail

// ceil(4 e k), evaluated with exact rational bounds on e from its Taylor
// series: S_N < e < S_N + 2/(N+1)!. The truncation depth is widened until
// both endpoints round to the same ceiling, so no float ulp error can
// corrupt the constant.
inline long long archer_bound(long long k) {
    if (k <= 0) throw DomainError("k must be positive");
    for (int terms = 24; terms <= 60; terms += 6) {
        // P/F = sum_{i=0}^{N} 1/i!  with F = N!
        BigInt fact = 1;
        BigInt partial = 1; // running N!/i!, built from i = N downward
        BigInt p_sum = 1;   // i = N term
        for (int i = terms; i >= 1; --i) {
            partial *= i;
            p_sum += partial;
            fact *= i;
        }
        const BigInt lo_ceil = detail::ceil_div_positive(4 * BigInt(k) * p_sum, fact);
        const BigInt hi_ceil = detail::ceil_div_positive(
            4 * BigInt(k) * (p_sum * (terms + 1) + 2), fact * (terms + 1));
        if (lo_ceil == hi_ceil) return static_cast<long long>(lo_ceil);
    }
    throw ArithmeticError("ceil(4ek) did not stabilize");
}

// chi^k, exact.
inline BigInt power_bound(long long chi, long long k) {
    if (chi <= 0 || k <= 0) throw DomainError("inputs must be positive");
    BigInt base = chi;
    BigInt out = 1;
    long long e = k;
    while (e > 0) {
        if (e & 1) out *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return out;
}

struct BoundReport {
    std::string quantity; // e.g. "archer-upper", "symmetric-power"
    long long k = 0;
    std::optional<long long> chi;
    BigInt value;
};

// The k' x 2^k' array whose every column is the given distance list — the
// symmetric instance the product coloring is built for.
inline RestrictionArray symmetric_array(const std::vector<long long>& distances, int m) {
    std::vector<DistanceToken> column;
    column.reserve(distances.size());
    for (long long d : distances) column.push_back(integer_token(d));
    return make_array(Space{1, Metric::l1},
                      std::vector<std::vector<DistanceToken>>(static_cast<size_t>(m), column));
}

// Color x by the parity vector (floor(x/d_1) mod 2, ..., floor(x/d_k') mod 2)
// over the distinct distances. Two points d_i apart differ in the i-th
// parity, so no color repeats at any listed distance; the period is
// 2*lcm(d_i) and the colors number 2^k'.
inline PeriodicColoring product_coloring(const std::vector<long long>& distances) {
    if (distances.empty()) throw DomainError("need at least one distance");
    std::vector<long long> distinct;
    for (long long d : distances) {
        if (d <= 0) throw DomainError("nonpositive distance");
        if (std::find(distinct.begin(), distinct.end(), d) == distinct.end())
            distinct.push_back(d);
    }
    if (distinct.size() > 20) throw DomainError("too many distinct distances");
    long long l = 1;
    for (long long d : distinct) {
        l = std::lcm(l, d);
        if (l > (1LL << 40)) throw ArithmeticError("period overflow");
    }
    const long long period = 2 * l;
    PeriodicColoring pc{period, {}};
    pc.residues.reserve(static_cast<size_t>(period));
    for (long long x = 0; x < period; ++x) {
        int color = 0;
        for (size_t i = 0; i < distinct.size(); ++i)
            color |= static_cast<int>((x / distinct[i]) & 1) << i;
        pc.residues.push_back(1 + color);
    }
    return pc;
}

// |{z in Z^n : sum z_i^2 = d}| — signed ordered representations, which is
// exactly the lattice shell size. Enumerated recursively with sign symmetry
// folded (z and -z contribute together); no number-theoretic special cases.
inline unsigned long long shell_count(int n, long long d) {
    if (n < 1) throw DomainError("dimension must be positive");
    if (d < 1) throw DomainError("distance must be positive");
    // ways[s] = representations of s by the coordinates processed so far
    std::vector<unsigned long long> ways(static_cast<size_t>(d) + 1, 0);
    ways[0] = 1;
    for (int i = 0; i < n; ++i) {
        std::vector<unsigned long long> next(static_cast<size_t>(d) + 1, 0);
        for (long long s = 0; s <= d; ++s) {
            if (ways[static_cast<size_t>(s)] == 0) continue;
            next[static_cast<size_t>(s)] += ways[static_cast<size_t>(s)]; // z = 0
            for (long long z = 1; s + z * z <= d; ++z)
                next[static_cast<size_t>(s + z * z)] += 2 * ways[static_cast<size_t>(s)];
        }
        ways = std::move(next);
    }
    return ways[static_cast<size_t>(d)];
}

// Is sqrt(d) in R_N for Z^n, i.e. does d have at most N representations as
// a sum of n squares?
inline bool in_R_N(int n, unsigned long long cap, long long d) {
    return shell_count(n, d) <= cap;
}

// Largest t with 2^t | d.
inline int two_adic_valuation(long long d) {
    if (d <= 0) throw DomainError("d must be positive");
    return std::countr_zero(static_cast<unsigned long long>(d));
}

// Property (*): the 2-adic valuations of the squared entries d_1..d_m of a
// 1 x m Euclidean plane array are pairwise distinct.
inline bool star_property(const RestrictionArray& array) {
    if (array.space.dim != 2 || array.space.metric != Metric::euclidean)
        throw DomainError("property (*) applies to 1 x m arrays over Euclidean Z^2");
    std::vector<int> vals;
    for (const auto& col : array.columns) {
        if (col.size() != 1) throw DomainError("property (*) applies to 1 x m arrays");
        if (col[0].kind != TokenKind::squared) throw DomainError("expected squared tokens");
        vals.push_back(two_adic_valuation(col[0].num));
    }
    std::sort(vals.begin(), vals.end());
    return std::adjacent_find(vals.begin(), vals.end()) == vals.end();
}

// Clear denominators: L = lcm of all entry denominators, output entries are
// L times the input entries. Colorability of Z under the output transfers
// to (1/L)Z under the input via x -> Lx. The gcd of the scaled numerators
// is deliberately not divided out.
inline std::pair<RestrictionArray, long long> scale_to_integers(const RestrictionArray& array) {
    if (array.space.dim != 1) throw DomainError("scaling applies to arrays over the line");
    long long l = 1;
    for (const auto& col : array.columns)
        for (const auto& t : col) {
            if (t.kind == TokenKind::squared) throw DomainError("irrational tokens unsupported");
            l = std::lcm(l, t.den);
            if (l > (1LL << 40)) throw ArithmeticError("scale overflow");
        }
    std::vector<std::vector<DistanceToken>> cols;
    cols.reserve(array.columns.size());
    for (const auto& col : array.columns) {
        std::vector<DistanceToken> out;
        out.reserve(col.size());
        for (const auto& t : col) out.push_back(integer_token(t.num * (l / t.den)));
        cols.push_back(std::move(out));
    }
    return {make_array(array.space, std::move(cols)), l};
}

} // namespace chromacy
