#pragma once

/**
 * @file ordered_partitions.hpp
 * @brief Degrees of partitions of finite ordered integer sets, and the
 *        brute-force sums those degrees satisfy. The sums here are literal
 *        enumerations on purpose: they serve as oracles for the q-identities
 *        used everywhere else.
 */

#include "moyweb/laurent.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

namespace moyweb {

using IntSet = std::set<int>;

inline bool disjoint(const IntSet& a, const IntSet& b) {
    for (int x : a)
        if (b.count(x)) return false;
    return true;
}

/// d(Y ⊔ Z) = #{(y,z) in Y×Z : y<z} - #{(y,z) in Y×Z : y>z}.
inline long long partition_degree(const IntSet& y, const IntSet& z) {
    if (!disjoint(y, z)) throw std::invalid_argument("partition_degree: sets overlap");
    long long d = 0;
    for (int a : y)
        for (int b : z) d += (a < b) ? 1 : -1;
    return d;
}

namespace detail {

/// Visit every size-m subset of `ground` (ascending order), calling fn(subset, rest).
template <typename Fn>
void for_each_subset(const std::vector<int>& ground, int m, Fn&& fn) {
    const int n = static_cast<int>(ground.size());
    if (m < 0 || m > n) return;
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    while (true) {
        IntSet sub, rest;
        int at = 0;
        for (int i = 0; i < n; ++i) {
            if (at < m && idx[at] == i) {
                sub.insert(ground[i]);
                ++at;
            } else {
                rest.insert(ground[i]);
            }
        }
        fn(sub, rest);
        int i = m - 1;
        while (i >= 0 && idx[i] == n - m + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace detail

/// Lemma-3.4 style sum: over partitions X = Y ⊔ Z with #Y=m, #Z=n, of
/// q^{d(Y⊔Z)}. Must equal qbinom(m+n, m).
inline LaurentPoly partition_sum(const IntSet& x, int m, int n) {
    if (m < 0 || n < 0 || static_cast<int>(x.size()) != m + n)
        throw std::invalid_argument("partition_sum: #X must equal m+n");
    std::vector<int> ground(x.begin(), x.end());
    LaurentPoly out;
    detail::for_each_subset(ground, m, [&](const IntSet& y, const IntSet& z) {
        out.add_term(partition_degree(y, z), 1);
    });
    return out;
}

/// Lemma 3.5: with X1 = X∩⟦1,k⟧, X2 = X∩⟦k+1,M⟧ (same for Y),
/// d(X⊔Y) = d(X1⊔Y1) + d(X2⊔Y2) + #X1·#Y2 - #Y1·#X2.
/// Returns whether the identity holds (it always must; used as a self-test).
inline bool split_degree_check(const IntSet& x, const IntSet& y, int M, int k) {
    if (k < 1 || k > M - 1) throw std::invalid_argument("split_degree_check: k out of ⟦1,M-1⟧");
    for (int v : x)
        if (v < 1 || v > M) throw std::invalid_argument("split_degree_check: X not in ⟦1,M⟧");
    for (int v : y)
        if (v < 1 || v > M) throw std::invalid_argument("split_degree_check: Y not in ⟦1,M⟧");
    IntSet x1, x2, y1, y2;
    for (int v : x) (v <= k ? x1 : x2).insert(v);
    for (int v : y) (v <= k ? y1 : y2).insert(v);
    long long lhs = partition_degree(x, y);
    long long rhs = partition_degree(x1, y1) + partition_degree(x2, y2) +
                    static_cast<long long>(x1.size()) * static_cast<long long>(y2.size()) -
                    static_cast<long long>(y1.size()) * static_cast<long long>(x2.size());
    return lhs == rhs;
}

/// Both sides of the key identity (Lemma 3.6) for disjoint X, Y with
/// #X = #Y + l, l >= 0:
///   LHS = sum over X = X1⊔X2 with #X1 = k1 of q^{d(X1⊔X2) + d(Y⊔X1)}
///   RHS = sum over j2 of qbinom(l, k1-j2) * sum over Y = Y1⊔Y2 with #Y2 = j2
///         of q^{d(Y1⊔Y2) + d(Y2⊔X)}
/// The j2 sum is truncated at min(k1, #Y); all later terms vanish.
inline std::pair<LaurentPoly, LaurentPoly> key_identity_sides(const IntSet& x, const IntSet& y,
                                                              int k1) {
    if (!disjoint(x, y)) throw std::invalid_argument("key_identity_sides: sets overlap");
    const int l = static_cast<int>(x.size()) - static_cast<int>(y.size());
    if (l < 0) throw std::invalid_argument("key_identity_sides: requires #X >= #Y");

    std::vector<int> xg(x.begin(), x.end()), yg(y.begin(), y.end());

    LaurentPoly lhs;
    detail::for_each_subset(xg, k1, [&](const IntSet& x1, const IntSet& x2) {
        lhs.add_term(partition_degree(x1, x2) + partition_degree(y, x1), 1);
    });

    LaurentPoly rhs;
    const int j2_max = std::min(k1, static_cast<int>(y.size()));
    for (int j2 = 0; j2 <= j2_max; ++j2) {
        LaurentPoly inner;
        detail::for_each_subset(yg, static_cast<int>(y.size()) - j2,
                                [&](const IntSet& y1, const IntSet& y2) {
                                    inner.add_term(partition_degree(y1, y2) +
                                                       partition_degree(y2, x),
                                                   1);
                                });
        rhs += qbinom(l, k1 - j2) * inner;
    }
    return {lhs, rhs};
}

}  // namespace moyweb
