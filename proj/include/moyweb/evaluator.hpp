#pragma once

/**
 * @file evaluator.hpp
 * @brief Evaluation of closed and open webs as Laurent polynomials, the
 *        transfer-matrix fast engine, and the brute-force verifier for the
 *        local relations.
 *
 * Open-web degrees are half-integers, so open evaluations live in
 * Z[q^{1/2}, q^{-1/2}]; HalfPoly is a Laurent polynomial whose exponent unit
 * is q^{1/2}. Closed evaluations always have even exponents and convert to a
 * plain LaurentPoly.
 */

#include "moyweb/builders.hpp"
#include "moyweb/coloring.hpp"
#include "moyweb/laurent.hpp"
#include "moyweb/web_diagram.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace moyweb {

/// Laurent polynomial in q^{1/2}: exponents count half-powers of q.
struct HalfPoly {
    LaurentPoly halves;

    bool operator==(const HalfPoly&) const = default;
    bool is_zero() const { return halves.is_zero(); }
    HalfPoly& operator+=(const HalfPoly& o) {
        halves += o.halves;
        return *this;
    }
    Int at_one() const { return halves.at_one(); }

    bool integral() const {
        for (const auto& [e, c] : halves.coeffs())
            if (e % 2 != 0) return false;
        return true;
    }
    LaurentPoly whole() const {
        LaurentPoly p;
        for (const auto& [e, c] : halves.coeffs()) {
            if (e % 2 != 0) throw WebError("polynomial has half-integer exponents");
            p.add_term(e / 2, c);
        }
        return p;
    }
    std::string to_string() const {
        if (integral()) return whole().to_string();
        // same canonical shape, with q^k/2 for odd half-exponents
        std::ostringstream out;
        bool first = true;
        for (auto it = halves.coeffs().rbegin(); it != halves.coeffs().rend(); ++it) {
            const auto& [e, c] = *it;
            Int mag = c < 0 ? Int(-c) : c;
            if (first) {
                if (c < 0) out << "-";
                first = false;
            } else {
                out << (c < 0 ? " - " : " + ");
            }
            if (mag != 1 || e == 0) out << mag.str();
            if (e == 2) out << "q";
            else if (e != 0 && e % 2 == 0) out << "q^" << e / 2;
            else if (e != 0) out << "q^" << e << "/2";
        }
        return out.str();
    }
};

inline HalfPoly to_half(const LaurentPoly& p) {
    LaurentPoly h;
    for (const auto& [e, c] : p.coeffs()) h.add_term(2 * e, c);
    return {h};
}

inline HalfPoly operator*(const LaurentPoly& whole, const HalfPoly& h) {
    return {to_half(whole).halves * h.halves};
}

struct Evaluation {
    LaurentPoly value;
    Int coloring_count = 0;
};

/// Sum of q^degree over all colorings of a closed web.
inline Evaluation evaluate_closed(const WebDiagram& w) {
    if (!w.closed()) throw WebError("evaluate_closed: diagram is not closed");
    LaurentPoly halves;
    Int count = 0;
    for_each_coloring(w, [&](const std::vector<ColorMask>&, int degree) {
        halves.add_term(degree, 1);
        ++count;
    });
    return {HalfPoly{halves}.whole(), count};
}

/// Sum of q^degree over colorings inducing the given boundary coloring.
inline HalfPoly evaluate_open(const WebDiagram& w, const BoundaryColoring& bc) {
    LaurentPoly halves;
    for_each_coloring_extending(w, bc,
                                [&](const std::vector<ColorMask>&, int degree) { halves.add_term(degree, 1); });
    return {halves};
}

/// One pass over all colorings, bucketed by induced boundary coloring.
inline std::map<BoundaryColoring, HalfPoly> evaluate_open_all(const WebDiagram& w) {
    std::map<BoundaryColoring, HalfPoly> out;
    for_each_coloring(w, [&](const std::vector<ColorMask>& colors, int degree) {
        BoundaryColoring bc;
        for (int e : w.bottom_edges()) bc.bottom.push_back(colors[static_cast<size_t>(e)]);
        for (int e : w.top_edges()) bc.top.push_back(colors[static_cast<size_t>(e)]);
        out[bc].halves.add_term(degree, 1);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Transfer-matrix engine
// ---------------------------------------------------------------------------

/// Same value as evaluate_closed, computed by dynamic programming whose state
/// is the color word of the running boundary and whose weights are the
/// slice-local degree contributions.
inline Evaluation evaluate_dp(const WebDiagram& w) {
    if (!w.closed()) throw WebError("evaluate_dp: diagram is not closed");
    if (!w.is_valid()) throw WebError("evaluate_dp: diagram is not a valid web");
    const int n = w.rank();
    using Key = std::vector<ColorMask>;
    std::map<Key, LaurentPoly> states;
    states[{}] = LaurentPoly::one();

    for (const SliceGenerator& g : w.slices()) {
        std::map<Key, LaurentPoly> next;
        auto shift_into = [&](Key key, const LaurentPoly& poly, int weight) {
            auto [it, inserted] = next.try_emplace(std::move(key), poly.shifted(weight));
            if (!inserted) it->second += poly.shifted(weight);
        };
        for (const auto& kv : states) {
            const Key& key = kv.first;
            const LaurentPoly& poly = kv.second;
            switch (g.kind) {
                case SliceGenerator::Kind::cup:
                    for_each_mask(n, g.label, [&](ColorMask c) {
                        Key k = key;
                        k.insert(k.begin() + g.pos, {c, c});
                        shift_into(std::move(k), poly, extremum_weight_halves(true, g.turn, c, n));
                    });
                    break;
                case SliceGenerator::Kind::cap: {
                    const ColorMask a = key[static_cast<size_t>(g.pos)];
                    if (a != key[static_cast<size_t>(g.pos) + 1]) break;
                    Key k = key;
                    k.erase(k.begin() + g.pos, k.begin() + g.pos + 2);
                    shift_into(std::move(k), poly, extremum_weight_halves(false, g.turn, a, n));
                    break;
                }
                case SliceGenerator::Kind::merge: {
                    Strand strands[3] = {g.consumed[0], g.consumed[1], g.produced[0]};
                    const bool consumed[3] = {true, true, false};
                    ColorMask masks[3] = {key[static_cast<size_t>(g.pos)],
                                          key[static_cast<size_t>(g.pos) + 1], 0};
                    for (ColorMask c : vertex_third_colors(strands, masks, consumed, 2, n)) {
                        masks[2] = c;
                        const int wt = vertex_weight_halves(true, strands, masks, n);
                        Key k = key;
                        k.erase(k.begin() + g.pos, k.begin() + g.pos + 2);
                        k.insert(k.begin() + g.pos, c);
                        shift_into(std::move(k), poly, wt);
                    }
                    break;
                }
                case SliceGenerator::Kind::split: {
                    Strand strands[3] = {g.consumed[0], g.produced[0], g.produced[1]};
                    const bool consumed[3] = {true, false, false};
                    ColorMask masks[3] = {key[static_cast<size_t>(g.pos)], 0, 0};
                    for_each_mask(n, g.produced[0].label, [&](ColorMask c1) {
                        masks[1] = c1;
                        for (ColorMask c2 : vertex_third_colors(strands, masks, consumed, 2, n)) {
                            masks[2] = c2;
                            const int wt = vertex_weight_halves(false, strands, masks, n);
                            Key k = key;
                            k.erase(k.begin() + g.pos);
                            k.insert(k.begin() + g.pos, {c1, c2});
                            shift_into(std::move(k), poly, wt);
                        }
                    });
                    break;
                }
            }
        }
        states = std::move(next);
    }
    auto it = states.find({});
    LaurentPoly halves = it == states.end() ? LaurentPoly() : it->second;
    return {HalfPoly{halves}.whole(), halves.at_one()};
}

// ---------------------------------------------------------------------------
// Relation verification
// ---------------------------------------------------------------------------

struct RelationFailure {
    std::string boundary;
    std::string lhs, rhs;
};

struct RelationCheck {
    std::string relation;
    int N = 0;
    std::vector<std::pair<std::string, int>> params;
    bool vacuous = false;  // some diagram label is outside [0,N]; identity not applicable
    bool ok = true;
    long long boundary_count = 0;
    std::vector<RelationFailure> failures;
    std::string lhs_value, rhs_value;  // closed relation only

    std::string param_string() const {
        std::string s;
        for (const auto& [k, v] : params) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
        return s;
    }
};

namespace detail {

inline std::string boundary_string(const BoundaryColoring& bc) {
    auto set_str = [](ColorMask m) {
        std::string s = "{";
        bool first = true;
        for (int i = 0; i < 32; ++i)
            if (m & (ColorMask{1} << i)) {
                if (!first) s += ",";
                s += std::to_string(i + 1);
                first = false;
            }
        return s + "}";
    };
    std::string s = "bottom[";
    for (size_t i = 0; i < bc.bottom.size(); ++i) s += (i ? " " : "") + set_str(bc.bottom[i]);
    s += "] top[";
    for (size_t i = 0; i < bc.top.size(); ++i) s += (i ? " " : "") + set_str(bc.top[i]);
    return s + "]";
}

/// All boundary colorings of a diagram's boundary word, lexicographic.
template <typename Fn>
inline void for_each_boundary_coloring(const WebDiagram& w, Fn&& fn) {
    const int n = w.rank();
    std::vector<Strand> strands = w.bottom_word();
    strands.insert(strands.end(), w.top_word().begin(), w.top_word().end());
    BoundaryColoring bc;
    bc.bottom.resize(w.bottom_word().size());
    bc.top.resize(w.top_word().size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == strands.size()) {
            fn(bc);
            return;
        }
        ColorMask* slot = i < bc.bottom.size() ? &bc.bottom[i] : &bc.top[i - bc.bottom.size()];
        for_each_mask(n, strands[i].label, [&](ColorMask c) {
            *slot = c;
            rec(i + 1);
        });
    };
    rec(0);
}

inline bool labels_in_range(const WebDiagram& w) {
    for (const EdgeInfo& e : w.edges())
        if (e.label < 0 || e.label > w.rank()) return false;
    return true;
}

/// Check LHS^{c∂} = sum_j coeff_j * RHS_j^{c∂} for every boundary coloring.
inline void check_open_relation(RelationCheck& rc, const WebDiagram& lhs,
                                const std::vector<std::pair<LaurentPoly, WebDiagram>>& rhs) {
    for (const auto& [coeff, d] : rhs) {
        if (d.bottom_word() != lhs.bottom_word() || d.top_word() != lhs.top_word())
            throw WebError("relation sides have different boundaries");
    }
    const auto lhs_map = evaluate_open_all(lhs);
    std::vector<std::map<BoundaryColoring, HalfPoly>> rhs_maps;
    for (const auto& [coeff, d] : rhs) rhs_maps.push_back(evaluate_open_all(d));

    for_each_boundary_coloring(lhs, [&](const BoundaryColoring& bc) {
        ++rc.boundary_count;
        HalfPoly left;
        if (auto it = lhs_map.find(bc); it != lhs_map.end()) left = it->second;
        HalfPoly right;
        for (size_t j = 0; j < rhs.size(); ++j) {
            if (auto it = rhs_maps[j].find(bc); it != rhs_maps[j].end())
                right += rhs[j].first * it->second;
        }
        if (!(left == right)) {
            rc.ok = false;
            rc.failures.push_back({boundary_string(bc), left.to_string(), right.to_string()});
        }
    });
}

}  // namespace detail

/// Verify one relation instance. `relation` is "1".."7" or "assoc" (= "2").
inline RelationCheck check_relation(const std::string& relation,
                                    const std::map<std::string, int>& params, int N) {
    const std::string rel = relation == "assoc" ? "2" : relation;
    auto p = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end()) throw WebError("check_relation: missing parameter " + key);
        return it->second;
    };
    RelationCheck rc;
    rc.relation = rel;
    rc.N = N;
    for (const auto& [k, v] : params) rc.params.push_back({k, v});

    if (rel == "1") {
        const int k = p("k");
        if (k < 0 || k > N) {
            rc.vacuous = true;
            rc.ok = evaluate_closed(circle(k, N)).value.is_zero();
            return rc;
        }
        const LaurentPoly lhs = evaluate_closed(circle(k, N)).value;
        const LaurentPoly rhs = qbinom(N, k);
        rc.lhs_value = lhs.to_string();
        rc.rhs_value = rhs.to_string();
        rc.ok = lhs == rhs;
        return rc;
    }

    WebDiagram lhs = empty_web(N);
    std::vector<std::pair<LaurentPoly, WebDiagram>> rhs;
    if (rel == "2") {
        lhs = assoc_tree_left(p("i"), p("j"), p("k"), N);
        rhs.push_back({LaurentPoly::one(), assoc_tree_right(p("i"), p("j"), p("k"), N)});
    } else if (rel == "3") {
        lhs = digon(p("m"), p("n"), N);
        rhs.push_back({qbinom(p("m") + p("n"), p("m")), vert_strand(p("m") + p("n"), N)});
    } else if (rel == "4") {
        lhs = digon_return(p("m"), p("n"), N);
        rhs.push_back({qbinom(N - p("m"), p("n")), vert_strand(p("m"), N)});
    } else if (rel == "5") {
        lhs = square_mixed(p("m"), N);
        rhs.push_back({LaurentPoly::one(), two_strands(1, p("m"), N)});
        if (N - p("m") - 1 >= 0)
            rhs.push_back({qint(N - p("m") - 1), double_y_mixed(p("m"), N)});
        else
            rc.vacuous = true;
    } else if (rel == "6") {
        lhs = square_up(p("m"), p("n"), p("l"), N);
        rhs.push_back({qbinom(p("m") - 1, p("n")), big_h(p("m"), p("l"), N)});
        rhs.push_back({qbinom(p("m") - 1, p("n") - 1), double_y_up(p("m"), p("l"), N)});
    } else if (rel == "7") {
        lhs = square_grid(p("m"), p("n"), p("l"), p("k"), N);
        for (int j = 0; j <= p("k"); ++j)
            rhs.push_back({qbinom(p("l"), p("k") - j), square_grid_flip(p("m"), p("n"), p("l"), j, N)});
    } else {
        throw WebError("check_relation: unknown relation '" + relation + "'");
    }

    if (!detail::labels_in_range(lhs)) {
        // Out-of-range labels admit no coloring; the tuple carries no content.
        rc.vacuous = true;
        bool zero = true;
        for_each_coloring(lhs, [&](const std::vector<ColorMask>&, int) { zero = false; });
        rc.ok = zero;
        return rc;
    }
    detail::check_open_relation(rc, lhs, rhs);
    return rc;
}

/// The admissible parameter grids, one (relation, params, N) tuple per check.
/// Admissible means every label of every diagram in the relation lies in
/// [0, N]; right-hand summands of the square move are exempt (out-of-range
/// ones vanish and stay in the sum).
inline std::vector<std::pair<std::map<std::string, int>, int>> relation_grid(const std::string& relation,
                                                                             int max_n) {
    const std::string rel = relation == "assoc" ? "2" : relation;
    std::vector<std::pair<std::map<std::string, int>, int>> out;
    auto in = [](int v, int n) { return v >= 0 && v <= n; };
    for (int n = 1; n <= max_n; ++n) {
        if (rel == "1") {
            for (int k = 0; k <= n; ++k) out.push_back({{{"k", k}}, n});
        } else if (rel == "2") {
            for (int i = 0; i <= n; ++i)
                for (int j = 0; i + j <= n; ++j)
                    for (int k = 0; i + j + k <= n; ++k)
                        out.push_back({{{"i", i}, {"j", j}, {"k", k}}, n});
        } else if (rel == "3") {
            for (int m = 0; m <= n; ++m)
                for (int v = 0; m + v <= n; ++v) out.push_back({{{"m", m}, {"n", v}}, n});
        } else if (rel == "4") {
            for (int m = 0; m <= n; ++m)
                for (int v = 0; m + v <= n; ++v) out.push_back({{{"m", m}, {"n", v}}, n});
        } else if (rel == "5") {
            for (int m = 0; m + 1 <= n; ++m) out.push_back({{{"m", m}}, n});
        } else if (rel == "6") {
            // m >= 1: the relation specializes the square move at l = m-1,
            // and the key identity behind it needs that parameter >= 0
            for (int m = 1; m <= n; ++m)
                for (int v = 0; v <= n; ++v)
                    for (int l = 0; l <= n; ++l) {
                        const bool ok = in(1, n) && in(l + v, n) && in(l, n) && in(m + l - 1, n) &&
                                        in(m - v, n) && in(m, n) && in(v, n) && in(l + v - 1, n);
                        if (ok) out.push_back({{{"m", m}, {"n", v}, {"l", l}}, n});
                    }
        } else if (rel == "7") {
            for (int m = 0; m <= n; ++m)
                for (int v = 0; v <= n; ++v)
                    for (int l = 0; l <= n; ++l)
                        for (int k = 0; k <= n; ++k) {
                            const bool ok = in(v, n) && in(m + l, n) && in(m, n) && in(v + l, n) &&
                                            in(v + k, n) && in(m + l - k, n) && in(k, n) &&
                                            in(v + k - m, n);
                            if (ok)
                                out.push_back({{{"m", m}, {"n", v}, {"l", l}, {"k", k}}, n});
                        }
        } else {
            throw WebError("relation_grid: unknown relation '" + relation + "'");
        }
    }
    return out;
}

/// Evaluation invariance under deletion of 0- and N-labeled edges.
inline bool verify_trivial_edge_removal(const WebDiagram& w) {
    if (!w.closed()) throw WebError("verify_trivial_edge_removal: diagram is not closed");
    return evaluate_closed(w).value == evaluate_closed(remove_trivial_edges(w)).value;
}

}  // namespace moyweb
