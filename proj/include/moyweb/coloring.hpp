#pragma once

/**
 * @file coloring.hpp
 * @brief Colorings of web diagrams and their degrees.
 *
 * A coloring assigns to every edge a subset of ⟦1,N⟧ whose size is the edge
 * label (condition E), subject to a flow condition at every vertex
 * (condition V). Color sets are N-bit masks, bit i-1 <-> color i.
 *
 * Degrees are computed two ways:
 *  - the fast path sums a local weight per slice (extremum weights for
 *    cups/caps, a bicolor turn sum for vertices);
 *  - the oracle path materializes, for every bicolor, the state: the oriented
 *    circle/arc diagram left after erasing edges meeting the bicolor in 0 or
 *    2 colors, and reads the degree off the circle and arc counts.
 * Both are kept; their agreement is checked across the whole test corpus.
 *
 * All degrees are tracked in half-units (so an integer here is twice the
 * degree); closed diagrams always produce even values.
 */

#include "moyweb/web_diagram.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace moyweb {

using ColorMask = std::uint32_t;

inline int popcount(ColorMask m) { return std::popcount(m); }
inline ColorMask full_mask(int n) { return (ColorMask{1} << n) - 1; }

/// d(Y ⊔ Z) on the ground set ⟦1,N⟧ for disjoint masks.
inline int mask_pair_degree(ColorMask y, ColorMask z) {
    int d = 0;
    for (ColorMask ybits = y; ybits; ybits &= ybits - 1) {
        const int i = std::countr_zero(ybits);
        const ColorMask above = ~((ColorMask{2} << i) - 1);
        d += popcount(z & above);
        d -= popcount(z & ((ColorMask{1} << i) - 1));
    }
    return d;
}

/// Visit every mask with k bits among the low n, in increasing numeric order.
template <typename Fn>
inline void for_each_mask(int n, int k, Fn&& fn) {
    if (k < 0 || k > n) return;
    if (k == 0) {
        fn(ColorMask{0});
        return;
    }
    ColorMask m = full_mask(k);
    const ColorMask limit = ColorMask{1} << n;
    while (m < limit) {
        fn(m);
        const ColorMask c = m & (~m + 1);
        const ColorMask r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
}

struct Coloring {
    std::vector<ColorMask> colors;  // indexed by edge id
    bool operator==(const Coloring&) const = default;
};

struct BoundaryColoring {
    std::vector<ColorMask> bottom, top;
    auto operator<=>(const BoundaryColoring&) const = default;
};

struct Bicolor {
    int lo = 0, hi = 0;  // colors, 1-based, lo < hi
};

inline std::vector<Bicolor> all_bicolors(int n) {
    std::vector<Bicolor> out;
    for (int lo = 1; lo <= n; ++lo)
        for (int hi = lo + 1; hi <= n; ++hi) out.push_back({lo, hi});
    return out;
}

/// Whether the edge at a leg flows into its vertex.
inline bool leg_flows_in(bool consumed, Dir dir) {
    return consumed ? dir == Dir::up : dir == Dir::down;
}

/// Condition (V): the per-color count over outgoing colors and incoming
/// complements is constant.
inline bool vertex_condition_ok(const Strand* strands, const ColorMask* masks, const bool* consumed,
                                int nlegs, int n) {
    int m0 = -1;
    for (int j = 0; j < n; ++j) {
        int mj = 0;
        for (int i = 0; i < nlegs; ++i) {
            const bool has = (masks[i] >> j) & 1;
            const bool in = leg_flows_in(consumed[i], strands[i].dir);
            mj += in ? !has : has;
        }
        if (j == 0)
            m0 = mj;
        else if (mj != m0)
            return false;
    }
    return true;
}

/// Extremum contribution to the degree, summed over all bicolors:
/// sign * d(~S ⊔ S), in half-units.
inline int extremum_weight_halves(bool is_cup, Turn turn, ColorMask color, int n) {
    return extremum_sign(is_cup, turn) * mask_pair_degree(full_mask(n) & ~color, color);
}

/// Vertex contribution to the degree, summed over all bicolors, in
/// half-units. For every bicolor split across the two same-side legs the
/// state turns at the vertex; the weight is the extremum weight of that turn.
/// legs/masks are ordered consumed-then-produced (merge: in,in,out;
/// split: in,out,out).
inline int vertex_weight_halves(bool is_merge, const Strand* strands, const ColorMask* masks, int n) {
    const int pair0 = is_merge ? 0 : 1;  // the two same-side legs
    const int pair1 = is_merge ? 1 : 2;
    const int single = is_merge ? 2 : 0;

    int total = 0;
    for (int lo = 0; lo < n; ++lo) {
        for (int hi = lo + 1; hi < n; ++hi) {
            const ColorMask bits = (ColorMask{1} << lo) | (ColorMask{1} << hi);
            const bool kl = popcount(masks[pair0] & bits) == 1;
            const bool kr = popcount(masks[pair1] & bits) == 1;
            const bool ks = popcount(masks[single] & bits) == 1;
            const int kept = kl + kr + ks;
            if (kept == 0) continue;
            if (kept != 2) throw WebError("state is not a 1-manifold (invalid coloring)");
            if (ks) continue;  // pass-through, no turn
            // Both same-side legs kept: the state reverses the leg whose
            // color contains the low bicolor member. Whether the pair sits
            // below (maximum) or above (minimum) the vertex, the turn weight
            // is -1 when the left leg points up in the state, +1 otherwise.
            auto state_up = [&](int leg) {
                bool is_up = strands[leg].dir == Dir::up;
                if (masks[leg] & (ColorMask{1} << lo)) is_up = !is_up;
                return is_up;
            };
            const bool left_up = state_up(pair0);
            if (left_up == state_up(pair1)) throw WebError("inconsistent state orientation");
            total += left_up ? -1 : +1;
        }
    }
    return total;
}

/// Candidates for the color of one yet-uncolored leg of a vertex, given the
/// other two. Ascending mask order.
inline std::vector<ColorMask> vertex_third_colors(const Strand* strands, const ColorMask* masks,
                                                  const bool* consumed, int unknown, int n) {
    std::vector<ColorMask> out;
    const int lab = strands[unknown].label;
    if (lab < 0 || lab > n) return out;
    const bool unknown_in = leg_flows_in(consumed[unknown], strands[unknown].dir);
    for (int m = 0; m <= 3; ++m) {
        ColorMask c = 0;
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            int kj = 0;
            for (int i = 0; i < 3; ++i) {
                if (i == unknown) continue;
                const bool has = (masks[i] >> j) & 1;
                kj += leg_flows_in(consumed[i], strands[i].dir) ? !has : has;
            }
            const int need = m - kj;  // unknown leg's contribution at color j
            if (need < 0 || need > 1) {
                ok = false;
            } else if (unknown_in ? need == 0 : need == 1) {
                c |= ColorMask{1} << j;
            }
        }
        if (ok && popcount(c) == lab && !std::count(out.begin(), out.end(), c)) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace detail {

class ColoringWalk {
public:
    using Callback = std::function<void(const std::vector<ColorMask>&, int)>;

    ColoringWalk(const WebDiagram& w, Callback cb)
        : w_(w),
          n_(w.rank()),
          colors_(static_cast<size_t>(w.edge_count()), 0),
          assigned_(static_cast<size_t>(w.edge_count()), false),
          cb_(std::move(cb)) {}

    /// Force a boundary edge color (used by open evaluation). Returns false
    /// on contradiction. Throws on cardinality mismatch.
    bool force(int edge, ColorMask c) {
        if (popcount(c) != w_.edge(edge).label)
            throw std::invalid_argument("boundary coloring: cardinality mismatch with edge label");
        if (assigned_[static_cast<size_t>(edge)]) return colors_[static_cast<size_t>(edge)] == c;
        assigned_[static_cast<size_t>(edge)] = true;
        colors_[static_cast<size_t>(edge)] = c;
        return true;
    }

    void run() {
        if (!w_.is_valid()) throw WebError("enumerate_colorings: diagram is not a valid web");
        rec_bottom(0);
    }

private:
    void with_color(int edge, int label, const std::function<void()>& k) {
        if (assigned_[static_cast<size_t>(edge)]) {
            k();
            return;
        }
        assigned_[static_cast<size_t>(edge)] = true;
        for_each_mask(n_, label, [&](ColorMask c) {
            colors_[static_cast<size_t>(edge)] = c;
            k();
        });
        assigned_[static_cast<size_t>(edge)] = false;
    }

    void rec_bottom(size_t p) {
        if (p == w_.bottom_word().size()) {
            rec_slice(0);
            return;
        }
        const int e = w_.bottom_edges()[p];
        with_color(e, w_.edge(e).label, [&] { rec_bottom(p + 1); });
    }

    void rec_slice(int si) {
        if (si == static_cast<int>(w_.slices().size())) {
            cb_(colors_, degree_halves_);
            return;
        }
        const SliceGenerator& g = w_.slices()[static_cast<size_t>(si)];
        const auto& inv = w_.slice_edges(si);
        switch (g.kind) {
            case SliceGenerator::Kind::cup:
            case SliceGenerator::Kind::cap: {
                const bool is_cup = g.kind == SliceGenerator::Kind::cup;
                const int e = inv[0];
                const int label = w_.edge(e).label;
                with_color(e, label, [&] {
                    const int wt =
                        extremum_weight_halves(is_cup, g.turn, colors_[static_cast<size_t>(e)], n_);
                    degree_halves_ += wt;
                    rec_slice(si + 1);
                    degree_halves_ -= wt;
                });
                break;
            }
            case SliceGenerator::Kind::merge:
            case SliceGenerator::Kind::split: {
                const bool is_merge = g.kind == SliceGenerator::Kind::merge;
                const size_t nc = g.consumed.size();
                Strand strands[3];
                bool consumed[3];
                int edges[3];
                for (size_t j = 0; j < nc; ++j) {
                    strands[j] = g.consumed[j];
                    consumed[j] = true;
                    edges[j] = inv[j];
                }
                for (size_t j = 0; j < g.produced.size(); ++j) {
                    strands[nc + j] = g.produced[j];
                    consumed[nc + j] = false;
                    edges[nc + j] = inv[nc + j];
                }
                rec_vertex(si, is_merge, strands, consumed, edges, static_cast<int>(nc), 0);
                break;
            }
        }
    }

    void rec_vertex(int si, bool is_merge, const Strand* strands, const bool* consumed,
                    const int* edges, int nc, int next_prod) {
        const int nprod = 3 - nc;
        if (next_prod == nprod) {
            ColorMask masks[3];
            for (int i = 0; i < 3; ++i) masks[i] = colors_[static_cast<size_t>(edges[i])];
            if (!vertex_condition_ok(strands, masks, consumed, 3, n_)) return;
            const int wt = vertex_weight_halves(is_merge, strands, masks, n_);
            degree_halves_ += wt;
            rec_slice(si + 1);
            degree_halves_ -= wt;
            return;
        }
        const int leg = nc + next_prod;
        with_color(edges[leg], strands[leg].label,
                   [&] { rec_vertex(si, is_merge, strands, consumed, edges, nc, next_prod + 1); });
    }

    const WebDiagram& w_;
    int n_;
    std::vector<ColorMask> colors_;
    std::vector<bool> assigned_;
    int degree_halves_ = 0;
    Callback cb_;
};

}  // namespace detail

/// Visit every coloring (deterministic order), with its degree in half-units.
template <typename Fn>
inline void for_each_coloring(const WebDiagram& w, Fn&& fn) {
    detail::ColoringWalk walk(w, std::forward<Fn>(fn));
    walk.run();
}

/// Visit every coloring that induces the given boundary coloring.
/// Throws std::invalid_argument on a cardinality mismatch.
template <typename Fn>
inline void for_each_coloring_extending(const WebDiagram& w, const BoundaryColoring& bc, Fn&& fn) {
    if (bc.bottom.size() != w.bottom_word().size() || bc.top.size() != w.top_word().size())
        throw std::invalid_argument("boundary coloring: wrong number of strands");
    detail::ColoringWalk walk(w, std::forward<Fn>(fn));
    for (size_t p = 0; p < bc.bottom.size(); ++p)
        if (!walk.force(w.bottom_edges()[p], bc.bottom[p])) return;
    for (size_t p = 0; p < bc.top.size(); ++p)
        if (!walk.force(w.top_edges()[p], bc.top[p])) return;
    walk.run();
}

inline std::vector<std::pair<Coloring, int>> enumerate_colorings(const WebDiagram& w) {
    std::vector<std::pair<Coloring, int>> out;
    for_each_coloring(w, [&](const std::vector<ColorMask>& colors, int degree) {
        out.push_back({Coloring{colors}, degree});
    });
    return out;
}

inline BoundaryColoring boundary_coloring(const WebDiagram& w, const Coloring& c) {
    BoundaryColoring bc;
    for (int e : w.bottom_edges()) bc.bottom.push_back(c.colors[static_cast<size_t>(e)]);
    for (int e : w.top_edges()) bc.top.push_back(c.colors[static_cast<size_t>(e)]);
    return bc;
}

/// Fast-path degree of a full coloring: sum of slice-local weights, in
/// half-units.
inline int coloring_degree_halves(const WebDiagram& w, const Coloring& c) {
    int total = 0;
    for (int si = 0; si < static_cast<int>(w.slices().size()); ++si) {
        const SliceGenerator& g = w.slices()[static_cast<size_t>(si)];
        const auto& inv = w.slice_edges(si);
        switch (g.kind) {
            case SliceGenerator::Kind::cup:
            case SliceGenerator::Kind::cap:
                total += extremum_weight_halves(g.kind == SliceGenerator::Kind::cup, g.turn,
                                                c.colors[static_cast<size_t>(inv[0])], w.rank());
                break;
            case SliceGenerator::Kind::merge:
            case SliceGenerator::Kind::split: {
                const bool is_merge = g.kind == SliceGenerator::Kind::merge;
                const size_t nc = g.consumed.size();
                Strand strands[3];
                ColorMask masks[3];
                for (size_t j = 0; j < nc; ++j) {
                    strands[j] = g.consumed[j];
                    masks[j] = c.colors[static_cast<size_t>(inv[j])];
                }
                for (size_t j = 0; j < g.produced.size(); ++j) {
                    strands[nc + j] = g.produced[j];
                    masks[nc + j] = c.colors[static_cast<size_t>(inv[nc + j])];
                }
                total += vertex_weight_halves(is_merge, strands, masks, w.rank());
                break;
            }
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// States (the oracle path)
// ---------------------------------------------------------------------------

struct StateComponent {
    bool circle = false;
    int turn_halves = 0;  // total turning in half-units (+-2 for circles, -1..1 for arcs)
    EdgeEnd from, to;     // boundary endpoints for arcs, in state orientation
    std::vector<int> edges;
};

struct State {
    Bicolor b;
    std::vector<StateComponent> components;
    int c_plus = 0, c_minus = 0;      // positively/negatively oriented circles
    int tr = 0, tl = 0, br = 0, bl = 0;  // same-side arc counts per Def-2.8 classes
};

/// Degree of a state, in half-units: 2(C+ - C-) + (TR - TL - BR + BL).
inline int state_degree_halves(const State& s) {
    return 2 * (s.c_plus - s.c_minus) + (s.tr - s.tl - s.br + s.bl);
}

/// Materialize the state of (w, c) at a bicolor: keep edges whose color meets
/// the bicolor in exactly one color, reverse those containing only the low
/// one, and decompose into circles and arcs.
inline State make_state(const WebDiagram& w, const Coloring& c, Bicolor b) {
    const ColorMask bits = (ColorMask{1} << (b.lo - 1)) | (ColorMask{1} << (b.hi - 1));
    const int ec = w.edge_count();
    std::vector<bool> kept(static_cast<size_t>(ec), false), rev(static_cast<size_t>(ec), false);
    for (int e = 0; e < ec; ++e) {
        const ColorMask inter = c.colors[static_cast<size_t>(e)] & bits;
        kept[static_cast<size_t>(e)] = popcount(inter) == 1;
        rev[static_cast<size_t>(e)] = inter == (ColorMask{1} << (b.lo - 1));
    }

    // Kept legs pair up at each vertex.
    std::vector<std::array<int, 2>> pairs(w.vertices().size(), {-1, -1});
    for (size_t vi = 0; vi < w.vertices().size(); ++vi) {
        const VertexInfo& v = w.vertices()[vi];
        int cnt = 0;
        for (size_t i = 0; i < v.legs.size(); ++i) {
            if (!kept[static_cast<size_t>(v.legs[i].edge)]) continue;
            if (cnt == 2) throw WebError("state is not a 1-manifold (invalid coloring)");
            pairs[vi][static_cast<size_t>(cnt++)] = static_cast<int>(i);
        }
        if (cnt == 1) throw WebError("state is not a 1-manifold (invalid coloring)");
    }

    auto state_tail = [&](int e) { return rev[static_cast<size_t>(e)] ? w.edge(e).head : w.edge(e).tail; };
    auto state_head = [&](int e) { return rev[static_cast<size_t>(e)] ? w.edge(e).tail : w.edge(e).head; };
    auto edge_turn = [&](int e) {
        return rev[static_cast<size_t>(e)] ? -w.edge(e).turn_halves : w.edge(e).turn_halves;
    };
    // Turn picked up when passing a vertex where both kept legs sit on the
    // same side; `arrive` is the leg we flow in on.
    auto vertex_turn = [&](const VertexInfo& v, int arrive, int depart) {
        const bool ac = v.leg_is_consumed(arrive);
        if (ac != v.leg_is_consumed(depart)) return 0;  // opposite sides: pass-through
        const bool arrive_left = arrive < depart;
        if (ac) return arrive_left ? -1 : +1;  // maximum below the vertex
        return arrive_left ? +1 : -1;          // minimum above the vertex
    };

    State s;
    s.b = b;
    std::vector<bool> visited(static_cast<size_t>(ec), false);

    auto trace = [&](int start, bool as_circle) {
        StateComponent comp;
        comp.circle = as_circle;
        int e = start;
        if (!as_circle) comp.from = state_tail(e);
        while (true) {
            visited[static_cast<size_t>(e)] = true;
            comp.edges.push_back(e);
            comp.turn_halves += edge_turn(e);
            const EdgeEnd end = state_head(e);
            if (end.where == EdgeEnd::Where::bottom || end.where == EdgeEnd::Where::top) {
                comp.to = end;
                break;
            }
            if (end.where == EdgeEnd::Where::none) break;  // vertex-less loop
            const VertexInfo& v = w.vertices()[static_cast<size_t>(end.index)];
            const auto& pr = pairs[static_cast<size_t>(end.index)];
            const int depart = pr[0] == end.leg ? pr[1] : pr[0];
            comp.turn_halves += vertex_turn(v, end.leg, depart);
            const int ne = v.legs[static_cast<size_t>(depart)].edge;
            const EdgeEnd nt = state_tail(ne);
            if (!(nt.where == EdgeEnd::Where::vertex && nt.index == end.index && nt.leg == depart))
                throw WebError("inconsistent state orientation");
            e = ne;
            if (e == start && as_circle) break;
        }
        s.components.push_back(std::move(comp));
    };

    // Arcs first: start from kept edges whose state tail is on the boundary.
    for (int e = 0; e < ec; ++e) {
        if (!kept[static_cast<size_t>(e)] || visited[static_cast<size_t>(e)]) continue;
        const EdgeEnd t = state_tail(e);
        if (t.where == EdgeEnd::Where::bottom || t.where == EdgeEnd::Where::top) trace(e, false);
    }
    for (int e = 0; e < ec; ++e)
        if (kept[static_cast<size_t>(e)] && !visited[static_cast<size_t>(e)]) trace(e, true);

    for (const StateComponent& comp : s.components) {
        if (comp.circle) {
            if (comp.turn_halves == 2)
                ++s.c_plus;
            else if (comp.turn_halves == -2)
                ++s.c_minus;
            else
                throw WebError("state circle with turning != +-1");
        } else {
            const bool from_top = comp.from.where == EdgeEnd::Where::top;
            const bool to_top = comp.to.where == EdgeEnd::Where::top;
            if (from_top != to_top) {
                if (comp.turn_halves != 0) throw WebError("through arc with nonzero turning");
            } else if (from_top) {
                if (comp.turn_halves == 1)
                    ++s.tr;
                else if (comp.turn_halves == -1)
                    ++s.tl;
                else
                    throw WebError("top arc with turning != +-1/2");
            } else {
                if (comp.turn_halves == 1)
                    ++s.bl;
                else if (comp.turn_halves == -1)
                    ++s.br;
                else
                    throw WebError("bottom arc with turning != +-1/2");
            }
        }
    }
    return s;
}

/// Oracle degree: sum of state degrees over all bicolors, in half-units.
inline int coloring_degree_oracle_halves(const WebDiagram& w, const Coloring& c) {
    int total = 0;
    for (const Bicolor& b : all_bicolors(w.rank())) total += state_degree_halves(make_state(w, c, b));
    return total;
}

}  // namespace moyweb
