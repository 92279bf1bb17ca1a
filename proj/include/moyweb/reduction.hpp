#pragma once

/**
 * @file reduction.hpp
 * @brief Cycle-reversal rewriting of closed MOY graphs and the recursion
 *        expressing a rank-N evaluation through rank-(N-1) evaluations.
 */

#include "moyweb/coloring.hpp"
#include "moyweb/evaluator.hpp"
#include "moyweb/web_diagram.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace moyweb {

/// A set of edges, bit e <-> edge id e.
using EdgeSet = std::uint64_t;

inline std::set<int> edge_set_to_ids(EdgeSet a) {
    std::set<int> out;
    for (int e = 0; a; ++e, a >>= 1)
        if (a & 1) out.insert(e);
    return out;
}

/// An edge subset is a collection of disjoint directed cycles iff every
/// vertex has in-degree = out-degree in {0,1} within the subset (vertex-less
/// loops are always cycles).
inline bool is_cycle_collection(const WebDiagram& w, EdgeSet a) {
    if (!w.closed()) throw WebError("is_cycle_collection: diagram is not closed");
    for (const VertexInfo& v : w.vertices()) {
        int in = 0, out = 0;
        for (size_t i = 0; i < v.legs.size(); ++i) {
            if (!(a & (EdgeSet{1} << v.legs[i].edge))) continue;
            (v.leg_role_in(static_cast<int>(i)) ? in : out) += 1;
        }
        if (in != out || in > 1) return false;
    }
    return true;
}

/// Every cycle collection, by backtracking over edges with per-vertex degree
/// pruning; ascending in the edge-set encoding.
inline std::vector<EdgeSet> enumerate_cycle_collections(const WebDiagram& w) {
    if (!w.closed()) throw WebError("enumerate_cycle_collections: diagram is not closed");
    if (!is_moy(w)) throw WebError("enumerate_cycle_collections: diagram is not a MOY graph");
    const int ec = w.edge_count();
    if (ec > 63) throw WebError("enumerate_cycle_collections: too many edges");
    const int vc = static_cast<int>(w.vertices().size());

    // incidence: per edge, the (vertex, role-in) pairs it touches
    std::vector<std::vector<std::pair<int, bool>>> inc(static_cast<size_t>(ec));
    std::vector<std::vector<int>> last_edge_at(static_cast<size_t>(vc));  // for completion checks
    std::vector<int> max_edge(static_cast<size_t>(vc), -1);
    for (int vi = 0; vi < vc; ++vi) {
        const VertexInfo& v = w.vertices()[static_cast<size_t>(vi)];
        for (size_t i = 0; i < v.legs.size(); ++i) {
            inc[static_cast<size_t>(v.legs[i].edge)].push_back(
                {vi, v.leg_role_in(static_cast<int>(i))});
            max_edge[static_cast<size_t>(vi)] = std::max(max_edge[static_cast<size_t>(vi)], v.legs[i].edge);
        }
    }

    std::vector<int> in(static_cast<size_t>(vc), 0), out(static_cast<size_t>(vc), 0);
    std::vector<EdgeSet> result;
    EdgeSet current = 0;

    std::function<void(int)> rec = [&](int e) {
        if (e == ec) {
            result.push_back(current);
            return;
        }
        // exclude e: any vertex whose edges are now all decided must balance
        bool ok = true;
        for (const auto& [vi, role] : inc[static_cast<size_t>(e)])
            if (max_edge[static_cast<size_t>(vi)] == e && in[static_cast<size_t>(vi)] != out[static_cast<size_t>(vi)])
                ok = false;
        if (ok) rec(e + 1);
        // include e
        ok = true;
        for (const auto& [vi, role] : inc[static_cast<size_t>(e)]) {
            int& c = role ? in[static_cast<size_t>(vi)] : out[static_cast<size_t>(vi)];
            if (++c > 1) ok = false;
        }
        if (ok) {
            for (const auto& [vi, role] : inc[static_cast<size_t>(e)])
                if (max_edge[static_cast<size_t>(vi)] == e && in[static_cast<size_t>(vi)] != out[static_cast<size_t>(vi)])
                    ok = false;
        }
        if (ok) {
            current |= EdgeSet{1} << e;
            rec(e + 1);
            current &= ~(EdgeSet{1} << e);
        }
        for (const auto& [vi, role] : inc[static_cast<size_t>(e)])
            (role ? in[static_cast<size_t>(vi)] : out[static_cast<size_t>(vi)]) -= 1;
    };
    rec(0);
    std::sort(result.begin(), result.end());
    return result;
}

/// Reverse every edge of the collection, relabeling i -> N-i. When the input
/// labels lie in [0,N] the result is again a MOY graph; labels above N turn
/// negative and leave only a valid (colorless) web.
inline WebDiagram reduce_cycles(const WebDiagram& w, EdgeSet a, int N) {
    if (N != w.rank()) throw WebError("reduce_cycles: N must match the diagram rank");
    if (!is_cycle_collection(w, a)) throw WebError("reduce_cycles: not a cycle collection");
    WebDiagram out = reverse_edges(w, edge_set_to_ids(a));
    bool in_range = true;
    for (const EdgeInfo& e : w.edges()) in_range = in_range && e.label >= 0 && e.label <= N;
    if (in_range && !is_moy(out)) throw WebError("reduce_cycles: result is not a MOY graph");
    return out;
}

struct ReductionTerm {
    EdgeSet collection = 0;
    std::string web_text;
    int writhe = 0;
    LaurentPoly value;  // rank N-1 evaluation of the rewritten diagram
};

struct ReductionReport {
    LaurentPoly lhs;        // rank N evaluation
    LaurentPoly rhs_minus;  // sum of q^{-writhe} * value
    LaurentPoly rhs_plus;   // sum of q^{+writhe} * value
    bool ok_minus = false, ok_plus = false;
    bool ok() const { return ok_minus && ok_plus; }
    std::vector<ReductionTerm> terms;
};

/// Check <w>_N = sum_A q^{-writhe(w^A)} <w^A>_{N-1} and the mirrored
/// +writhe form, where w^A reverses the cycles of A with labels i -> N-i.
inline ReductionReport verify_reduction(const WebDiagram& w) {
    if (!w.closed()) throw WebError("verify_reduction: diagram is not closed");
    if (!is_moy(w)) throw WebError("verify_reduction: diagram is not a MOY graph");
    if (w.rank() < 2) throw WebError("verify_reduction: rank must be at least 2");
    ReductionReport rep;
    rep.lhs = evaluate_closed(w).value;
    for (EdgeSet a : enumerate_cycle_collections(w)) {
        ReductionTerm term;
        term.collection = a;
        WebDiagram reduced = reduce_cycles(w, a, w.rank());
        term.web_text = serialize(reduced);
        term.value = evaluate_closed(with_rank(reduced, w.rank() - 1)).value;
        if (!is_moy(reduced)) {
            // a label fell outside the naturals; such a rewrite admits no
            // coloring at any rank and its term vanishes
            if (!term.value.is_zero()) throw WebError("verify_reduction: non-MOY term with colorings");
            continue;
        }
        term.writhe = writhe(reduced);
        rep.rhs_minus += term.value.shifted(-term.writhe);
        rep.rhs_plus += term.value.shifted(term.writhe);
        rep.terms.push_back(std::move(term));
    }
    rep.ok_minus = rep.lhs == rep.rhs_minus;
    rep.ok_plus = rep.lhs == rep.rhs_plus;
    return rep;
}

/// The coloring-level bookkeeping behind the recursion: for a coloring c of w
/// at rank N, the edges whose color contains N form a cycle collection A(c),
/// and d_N(c) = d_{N-1}(c') - writhe(w^{A(c)}) for the transported coloring
/// c' at rank N-1. Returns true when this holds for every coloring.
inline bool reduction_degree_identity(const WebDiagram& w) {
    if (!w.closed()) throw WebError("reduction_degree_identity: diagram is not closed");
    const int n = w.rank();
    if (n < 2) throw WebError("reduction_degree_identity: rank must be at least 2");
    const ColorMask top_bit = ColorMask{1} << (n - 1);
    const ColorMask full = full_mask(n);
    bool all_ok = true;
    for_each_coloring(w, [&](const std::vector<ColorMask>& colors, int degree) {
        EdgeSet a = 0;
        for (size_t e = 0; e < colors.size(); ++e)
            if (colors[e] & top_bit) a |= EdgeSet{1} << e;
        if (!is_cycle_collection(w, a)) {
            all_ok = false;
            return;
        }
        WebDiagram reduced = reduce_cycles(w, a, n);
        Coloring transported;
        for (size_t e = 0; e < colors.size(); ++e)
            transported.colors.push_back((a & (EdgeSet{1} << e)) ? (full ^ colors[e]) : colors[e]);
        const WebDiagram lowered = with_rank(reduced, n - 1);
        const int d_low = coloring_degree_halves(lowered, transported);
        if (degree != d_low - 2 * writhe(reduced)) all_ok = false;
    });
    return all_ok;
}

}  // namespace moyweb
