#pragma once

/**
 * @file web_diagram.hpp
 * @brief Slice-based planar presentation of sl_N webs and MOY graphs.
 *
 * A diagram is a bottom word of oriented labeled strands plus an ordered list
 * of slice generators (cup, cap, merge, split) acting on that word. All legs
 * of merge/split vertices are transverse to the slice lines, so every turning
 * point of a strand is a cup or a cap.
 *
 * Conventions (fixed once and used by the writhe and by all degree
 * computations):
 *  - a strand's dir is its orientation where it crosses a horizontal line
 *    (`u` = upward, `d` = downward);
 *  - the turn of a cup/cap is the direction of travel at the extremum:
 *    a rightward cup inserts (d l, u l), a leftward cup inserts (u l, d l),
 *    a rightward cap consumes (u l, d l), a leftward cap consumes (d l, u l);
 *  - extremum sign: +1 for rightward cups and leftward caps, -1 otherwise,
 *    so a counterclockwise circle has total turn +2 (one full positive turn).
 *
 * Textual DSL (line oriented, `#` starts a comment):
 *
 *     web N=<int>
 *     bottom <dir><label> ...          # optional; default empty
 *     cup  <pos> <label> <rightward|leftward>
 *     cap  <pos> <rightward|leftward>
 *     merge <pos> (<dir><label>,<dir><label>) -> (<dir><label>)
 *     split <pos> (<dir><label>) -> (<dir><label>,<dir><label>)
 */

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace moyweb {

struct WebError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : WebError {
    ParseError(int line, int col, const std::string& what)
        : WebError("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
          line(line),
          col(col) {}
    int line;
    int col;
};

enum class Dir : std::uint8_t { up, down };
enum class Turn : std::uint8_t { rightward, leftward };

inline Turn flipped(Turn t) { return t == Turn::rightward ? Turn::leftward : Turn::rightward; }
inline Dir flipped(Dir d) { return d == Dir::up ? Dir::down : Dir::up; }

struct Strand {
    int label = 0;
    Dir dir = Dir::up;
    bool operator==(const Strand&) const = default;
};

inline Strand up(int label) { return {label, Dir::up}; }
inline Strand down(int label) { return {label, Dir::down}; }

struct SliceGenerator {
    enum class Kind : std::uint8_t { cup, cap, merge, split };

    Kind kind = Kind::cup;
    int pos = 0;
    int label = 0;                 // cup only
    Turn turn = Turn::rightward;   // cup/cap only
    std::vector<Strand> consumed;  // merge: 2, split: 1
    std::vector<Strand> produced;  // merge: 1, split: 2

    bool operator==(const SliceGenerator&) const = default;

    static SliceGenerator cup(int pos, int label, Turn t) {
        SliceGenerator g;
        g.kind = Kind::cup;
        g.pos = pos;
        g.label = label;
        g.turn = t;
        return g;
    }
    static SliceGenerator cap(int pos, Turn t) {
        SliceGenerator g;
        g.kind = Kind::cap;
        g.pos = pos;
        g.turn = t;
        return g;
    }
    static SliceGenerator merge(int pos, Strand in0, Strand in1, Strand out) {
        SliceGenerator g;
        g.kind = Kind::merge;
        g.pos = pos;
        g.consumed = {in0, in1};
        g.produced = {out};
        return g;
    }
    static SliceGenerator split(int pos, Strand in, Strand out0, Strand out1) {
        SliceGenerator g;
        g.kind = Kind::split;
        g.pos = pos;
        g.consumed = {in};
        g.produced = {out0, out1};
        return g;
    }
};

/// What a rightward/leftward cup inserts into the word, left to right.
inline std::array<Strand, 2> cup_strands(int label, Turn t) {
    if (t == Turn::rightward) return {down(label), up(label)};
    return {up(label), down(label)};
}

/// What a rightward/leftward cap consumes from the word (vertical mirror of a cup).
inline std::array<Strand, 2> cap_strands(int label, Turn t) {
    if (t == Turn::rightward) return {up(label), down(label)};
    return {down(label), up(label)};
}

/// Extremum sign: +1 for rightward cups and leftward caps, -1 otherwise.
inline int extremum_sign(bool is_cup, Turn t) {
    if (is_cup) return t == Turn::rightward ? 1 : -1;
    return t == Turn::leftward ? 1 : -1;
}

struct Violation {
    int slice = -1;  // -1: not tied to a slice
    std::string message;
};

struct EdgeEnd {
    enum class Where : std::uint8_t { none, bottom, top, vertex };
    Where where = Where::none;
    int index = -1;  // boundary position or vertex index
    int leg = -1;    // leg slot within the vertex
};

struct EdgeInfo {
    int label = 0;
    int turn_halves = 0;  // sum of extremum signs along the edge, in its own orientation
    EdgeEnd tail, head;   // tail: flow leaves it; head: flow arrives; none/none for loops
    bool loop() const { return tail.where == EdgeEnd::Where::none; }
};

struct VertexLeg {
    int edge = -1;
    Strand strand;
};

struct VertexInfo {
    int slice = -1;
    bool is_merge = false;  // merge: 2 consumed + 1 produced; split: 1 + 2
    int n_consumed = 0;
    std::vector<VertexLeg> legs;  // consumed legs first, then produced legs

    bool leg_is_consumed(int i) const { return i < n_consumed; }
    /// Whether the edge at leg i flows into the vertex.
    bool leg_role_in(int i) const {
        const bool is_up = legs[i].strand.dir == Dir::up;
        return leg_is_consumed(i) ? is_up : !is_up;
    }
};

struct ExtremumInfo {
    int slice = -1;
    int edge = -1;
    bool is_cup = false;
    Turn turn = Turn::rightward;
    int sign() const { return extremum_sign(is_cup, turn); }
};

class WebDiagram {
public:
    WebDiagram(int N, std::vector<Strand> bottom, std::vector<SliceGenerator> slices)
        : n_(N), bottom_(std::move(bottom)), slices_(std::move(slices)) {
        if (N < 1 || N > 30) throw WebError("rank N must be in [1,30]");
        build_layout();
    }

    int rank() const { return n_; }
    const std::vector<Strand>& bottom_word() const { return bottom_; }
    const std::vector<SliceGenerator>& slices() const { return slices_; }

    const std::vector<Violation>& violations() const { return violations_; }
    bool is_valid() const { return violations_.empty(); }
    /// Word mismatches make the layout (edges, vertices) unavailable; mod-N
    /// violations do not.
    bool has_layout() const { return has_layout_; }

    const std::vector<Strand>& top_word() const {
        require_layout();
        return top_;
    }
    bool closed() const {
        require_layout();
        return bottom_.empty() && top_.empty();
    }

    int edge_count() const {
        require_layout();
        return static_cast<int>(edges_.size());
    }
    const EdgeInfo& edge(int e) const {
        require_layout();
        return edges_.at(static_cast<size_t>(e));
    }
    const std::vector<EdgeInfo>& edges() const {
        require_layout();
        return edges_;
    }
    const std::vector<VertexInfo>& vertices() const {
        require_layout();
        return vertices_;
    }
    const std::vector<ExtremumInfo>& extrema() const {
        require_layout();
        return extrema_;
    }
    const std::vector<int>& bottom_edges() const {
        require_layout();
        return bottom_edges_;
    }
    const std::vector<int>& top_edges() const {
        require_layout();
        return top_edges_;
    }
    /// Edges involved in slice i: cup/cap: [edge]; merge: [in0,in1,out];
    /// split: [in,out0,out1]. Unused entries are -1.
    const std::array<int, 4>& slice_edges(int i) const {
        require_layout();
        return slice_edges_.at(static_cast<size_t>(i));
    }

    bool operator==(const WebDiagram& o) const {
        return n_ == o.n_ && bottom_ == o.bottom_ && slices_ == o.slices_;
    }

private:
    void require_layout() const {
        if (!has_layout_) throw WebError("diagram is structurally invalid: " + violations_.front().message);
    }

    struct Dsu {
        std::vector<int> parent;
        int add() {
            parent.push_back(static_cast<int>(parent.size()));
            return parent.back();
        }
        int find(int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        }
        void unite(int a, int b) {
            a = find(a);
            b = find(b);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    };

    struct EndRecord {
        int piece;
        bool is_tail;
        EdgeEnd end;
    };

    void structural(int slice, const std::string& msg) {
        violations_.push_back({slice, msg});
        throw WebError(msg);
    }

    void build_layout() {
        has_layout_ = false;
        Dsu dsu;
        std::vector<int> piece_label;
        std::vector<int> piece_turn;  // extremum sign sum per piece
        std::vector<Strand> word = bottom_;
        std::vector<int> pos_edge;
        std::vector<EndRecord> ends;
        std::vector<std::array<int, 4>> slice_pieces;
        struct RawExtremum {
            int slice, piece;
            bool is_cup;
            Turn turn;
        };
        struct RawLeg {
            int piece;
            Strand strand;
        };
        struct RawVertex {
            int slice;
            bool is_merge;
            int n_consumed;
            std::vector<RawLeg> legs;
        };
        std::vector<RawExtremum> raw_extrema;
        std::vector<RawVertex> raw_vertices;
        std::vector<int> raw_bottom;

        auto new_piece = [&](int label) {
            dsu.add();
            piece_label.push_back(label);
            piece_turn.push_back(0);
            return static_cast<int>(piece_label.size()) - 1;
        };

        try {
            for (int p = 0; p < static_cast<int>(bottom_.size()); ++p) {
                int e = new_piece(bottom_[p].label);
                pos_edge.push_back(e);
                raw_bottom.push_back(e);
                bool entering = bottom_[p].dir == Dir::up;
                ends.push_back({e, entering, {EdgeEnd::Where::bottom, p, -1}});
            }

            for (int si = 0; si < static_cast<int>(slices_.size()); ++si) {
                const SliceGenerator& g = slices_[si];
                const int width = static_cast<int>(word.size());
                std::array<int, 4> involved = {-1, -1, -1, -1};
                switch (g.kind) {
                    case SliceGenerator::Kind::cup: {
                        if (g.pos < 0 || g.pos > width)
                            structural(si, "slice " + std::to_string(si) + ": cup position " +
                                               std::to_string(g.pos) + " out of range");
                        int e = new_piece(g.label);
                        auto pair = cup_strands(g.label, g.turn);
                        word.insert(word.begin() + g.pos, pair.begin(), pair.end());
                        pos_edge.insert(pos_edge.begin() + g.pos, {e, e});
                        piece_turn[static_cast<size_t>(e)] += extremum_sign(true, g.turn);
                        raw_extrema.push_back({si, e, true, g.turn});
                        involved[0] = e;
                        break;
                    }
                    case SliceGenerator::Kind::cap: {
                        if (g.pos < 0 || g.pos + 1 >= width)
                            structural(si, "slice " + std::to_string(si) + ": cap position " +
                                               std::to_string(g.pos) + " out of range");
                        Strand a = word[g.pos], b = word[g.pos + 1];
                        auto want = cap_strands(a.label, g.turn);
                        if (!(a == want[0] && b == want[1]))
                            structural(si, "slice " + std::to_string(si) +
                                               ": cap does not match word strands " + strand_str(a) +
                                               "," + strand_str(b));
                        int e0 = pos_edge[g.pos], e1 = pos_edge[g.pos + 1];
                        if (piece_label[static_cast<size_t>(dsu.find(e0))] !=
                            piece_label[static_cast<size_t>(dsu.find(e1))])
                            structural(si, "slice " + std::to_string(si) + ": cap joins different labels");
                        dsu.unite(e0, e1);
                        int e = dsu.find(e0);
                        piece_turn[static_cast<size_t>(e)] += extremum_sign(false, g.turn);
                        raw_extrema.push_back({si, e, false, g.turn});
                        word.erase(word.begin() + g.pos, word.begin() + g.pos + 2);
                        pos_edge.erase(pos_edge.begin() + g.pos, pos_edge.begin() + g.pos + 2);
                        involved[0] = e;
                        break;
                    }
                    case SliceGenerator::Kind::merge:
                    case SliceGenerator::Kind::split: {
                        const bool is_merge = g.kind == SliceGenerator::Kind::merge;
                        const int nc = is_merge ? 2 : 1;
                        if (g.pos < 0 || g.pos + nc > width)
                            structural(si, "slice " + std::to_string(si) + ": vertex position " +
                                               std::to_string(g.pos) + " out of range");
                        for (int j = 0; j < nc; ++j) {
                            if (!(word[g.pos + j] == g.consumed[static_cast<size_t>(j)]))
                                structural(si, "slice " + std::to_string(si) +
                                                   ": consumed strand mismatch, word has " +
                                                   strand_str(word[g.pos + j]) + " but slice declares " +
                                                   strand_str(g.consumed[static_cast<size_t>(j)]));
                        }
                        RawVertex v;
                        v.slice = si;
                        v.is_merge = is_merge;
                        v.n_consumed = nc;
                        const int vidx = static_cast<int>(raw_vertices.size());
                        int slot = 0;
                        for (int j = 0; j < nc; ++j, ++slot) {
                            int e = pos_edge[g.pos + j];
                            v.legs.push_back({e, g.consumed[static_cast<size_t>(j)]});
                            bool arriving = g.consumed[static_cast<size_t>(j)].dir == Dir::up;
                            ends.push_back({e, !arriving, {EdgeEnd::Where::vertex, vidx, slot}});
                            involved[static_cast<size_t>(j)] = e;
                        }
                        word.erase(word.begin() + g.pos, word.begin() + g.pos + nc);
                        pos_edge.erase(pos_edge.begin() + g.pos, pos_edge.begin() + g.pos + nc);
                        std::vector<Strand> prod(g.produced);
                        std::vector<int> prod_edges;
                        for (size_t j = 0; j < prod.size(); ++j, ++slot) {
                            int e = new_piece(prod[j].label);
                            prod_edges.push_back(e);
                            v.legs.push_back({e, prod[j]});
                            bool leaving = prod[j].dir == Dir::up;
                            ends.push_back({e, leaving, {EdgeEnd::Where::vertex, vidx, slot}});
                            involved[static_cast<size_t>(nc + j)] = e;
                        }
                        word.insert(word.begin() + g.pos, prod.begin(), prod.end());
                        pos_edge.insert(pos_edge.begin() + g.pos, prod_edges.begin(), prod_edges.end());
                        raw_vertices.push_back(std::move(v));
                        break;
                    }
                }
                slice_pieces.push_back(involved);
            }

            for (int p = 0; p < static_cast<int>(word.size()); ++p) {
                bool entering = word[p].dir == Dir::down;
                ends.push_back({pos_edge[p], entering, {EdgeEnd::Where::top, p, -1}});
            }
        } catch (const WebError&) {
            return;  // violations_ already records the structural problem
        }

        // Compress union-find classes to dense edge ids ordered by first creation.
        std::map<int, int> root_to_id;
        for (int piece = 0; piece < static_cast<int>(piece_label.size()); ++piece) {
            int r = dsu.find(piece);
            if (!root_to_id.count(r)) {
                int id = static_cast<int>(root_to_id.size());
                root_to_id[r] = id;
                edges_.push_back({});
                edges_.back().label = piece_label[static_cast<size_t>(r)];
            }
        }
        auto resolve = [&](int piece) { return root_to_id.at(dsu.find(piece)); };

        // turn contributions may sit on several pieces of one class (a piece
        // can stop being the class root after later caps); sum them all
        for (int piece = 0; piece < static_cast<int>(piece_label.size()); ++piece)
            edges_[static_cast<size_t>(resolve(piece))].turn_halves +=
                piece_turn[static_cast<size_t>(piece)];

        for (const EndRecord& rec : ends) {
            EdgeInfo& e = edges_[static_cast<size_t>(resolve(rec.piece))];
            EdgeEnd& slot = rec.is_tail ? e.tail : e.head;
            if (slot.where != EdgeEnd::Where::none) {
                violations_.push_back({-1, "edge has two " + std::string(rec.is_tail ? "tails" : "heads")});
                return;
            }
            slot = rec.end;
        }
        for (const EdgeInfo& e : edges_) {
            if ((e.tail.where == EdgeEnd::Where::none) != (e.head.where == EdgeEnd::Where::none)) {
                violations_.push_back({-1, "edge with exactly one endpoint"});
                return;
            }
        }

        for (const auto& rv : raw_vertices) {
            VertexInfo v;
            v.slice = rv.slice;
            v.is_merge = rv.is_merge;
            v.n_consumed = rv.n_consumed;
            for (const auto& leg : rv.legs) v.legs.push_back({resolve(leg.piece), leg.strand});
            vertices_.push_back(std::move(v));
        }
        for (const auto& re : raw_extrema)
            extrema_.push_back({re.slice, resolve(re.piece), re.is_cup, re.turn});
        for (int piece : raw_bottom) bottom_edges_.push_back(resolve(piece));
        for (int p = 0; p < static_cast<int>(word.size()); ++p)
            top_edges_.push_back(resolve(pos_edge[static_cast<size_t>(p)]));
        for (const auto& arr : slice_pieces) {
            std::array<int, 4> r = {-1, -1, -1, -1};
            for (size_t j = 0; j < 4; ++j)
                if (arr[j] >= 0) r[j] = resolve(arr[j]);
            slice_edges_.push_back(r);
        }
        top_ = word;
        has_layout_ = true;

        // Non-structural checks: the mod-N flow condition at each vertex.
        for (size_t vi = 0; vi < vertices_.size(); ++vi) {
            const VertexInfo& v = vertices_[vi];
            long long in = 0, out = 0;
            for (size_t i = 0; i < v.legs.size(); ++i)
                (v.leg_role_in(static_cast<int>(i)) ? in : out) += v.legs[i].strand.label;
            long long diff = (in - out) % n_;
            if (diff != 0)
                violations_.push_back({v.slice, "slice " + std::to_string(v.slice) +
                                                    ": vertex violates the mod-" + std::to_string(n_) +
                                                    " flow condition (in " + std::to_string(in) +
                                                    ", out " + std::to_string(out) + ")"});
        }
    }

    static std::string strand_str(const Strand& s) {
        return std::string(s.dir == Dir::up ? "u" : "d") + std::to_string(s.label);
    }

    int n_;
    std::vector<Strand> bottom_;
    std::vector<SliceGenerator> slices_;

    bool has_layout_ = false;
    std::vector<Violation> violations_;
    std::vector<Strand> top_;
    std::vector<EdgeInfo> edges_;
    std::vector<VertexInfo> vertices_;
    std::vector<ExtremumInfo> extrema_;
    std::vector<int> bottom_edges_, top_edges_;
    std::vector<std::array<int, 4>> slice_edges_;
};

inline std::vector<Violation> validate(const WebDiagram& w) { return w.violations(); }

/// MOY graph test: every vertex is an exact merge or split (a, b -> a+b over
/// the integers, in some rotation) and all labels are non-negative.
inline bool is_moy(const WebDiagram& w) {
    if (!w.is_valid()) throw WebError("is_moy: diagram is not a valid web");
    for (const EdgeInfo& e : w.edges())
        if (e.label < 0) return false;
    for (const VertexInfo& v : w.vertices()) {
        long long in = 0, out = 0;
        int n_in = 0;
        for (size_t i = 0; i < v.legs.size(); ++i) {
            if (v.leg_role_in(static_cast<int>(i))) {
                in += v.legs[i].strand.label;
                ++n_in;
            } else {
                out += v.legs[i].strand.label;
            }
        }
        if (n_in != 1 && n_in != 2) return false;
        if (in != out) return false;
    }
    return true;
}

/// Cable turning at a vertex: when the two same-side legs carry opposite
/// orientations, min(labels) parallel cables U-turn there. The sign follows
/// the extremum convention: ascending-on-the-left pairs turn rightward over a
/// maximum (or arrive from the left at a minimum), contributing -1 per cable.
inline int vertex_cable_turn(const VertexInfo& v) {
    const size_t left = v.is_merge ? 0 : 1;
    const size_t right = v.is_merge ? 1 : 2;
    const Strand& a = v.legs[left].strand;
    const Strand& b = v.legs[right].strand;
    if (a.dir == b.dir) return 0;
    const int m = std::min(a.label, b.label);
    return a.dir == Dir::up ? -m : +m;
}

/// Writhe of a closed MOY graph: half the total cable turning (extremum signs
/// weighted by labels, plus the vertex terms). Equals the algebraic circle
/// count of the diagram obtained by cabling every edge labeled i into i
/// parallel copies.
inline int writhe(const WebDiagram& w) {
    if (!w.closed()) throw WebError("writhe: diagram is not closed");
    if (!is_moy(w)) throw WebError("writhe: diagram is not a MOY graph");
    long long s = 0;
    for (const ExtremumInfo& x : w.extrema()) s += static_cast<long long>(x.sign()) * w.edge(x.edge).label;
    for (const VertexInfo& v : w.vertices()) s += vertex_cable_turn(v);
    if (s % 2 != 0) throw WebError("writhe: odd turning sum");
    return static_cast<int>(s / 2);
}

/// Reverse the orientation of every edge in `es`, replacing labels by N-label.
/// Edge identities (ids) are preserved.
inline WebDiagram reverse_edges(const WebDiagram& w, const std::set<int>& es) {
    if (!w.is_valid()) throw WebError("reverse_edges: diagram is not a valid web");
    for (int e : es)
        if (e < 0 || e >= w.edge_count()) throw WebError("reverse_edges: unknown edge id");
    const int N = w.rank();
    auto flip_strand = [&](Strand s) { return Strand{N - s.label, flipped(s.dir)}; };

    std::vector<Strand> bottom = w.bottom_word();
    for (size_t p = 0; p < bottom.size(); ++p)
        if (es.count(w.bottom_edges()[p])) bottom[p] = flip_strand(bottom[p]);

    std::vector<SliceGenerator> slices = w.slices();
    for (int si = 0; si < static_cast<int>(slices.size()); ++si) {
        SliceGenerator& g = slices[static_cast<size_t>(si)];
        const auto& inv = w.slice_edges(si);
        switch (g.kind) {
            case SliceGenerator::Kind::cup:
                if (es.count(inv[0])) {
                    g.label = N - g.label;
                    g.turn = flipped(g.turn);
                }
                break;
            case SliceGenerator::Kind::cap:
                if (es.count(inv[0])) g.turn = flipped(g.turn);
                break;
            case SliceGenerator::Kind::merge:
            case SliceGenerator::Kind::split: {
                const size_t nc = g.consumed.size();
                for (size_t j = 0; j < nc; ++j)
                    if (es.count(inv[j])) g.consumed[j] = flip_strand(g.consumed[j]);
                for (size_t j = 0; j < g.produced.size(); ++j)
                    if (es.count(inv[nc + j])) g.produced[j] = flip_strand(g.produced[j]);
                break;
            }
        }
    }
    WebDiagram out(N, std::move(bottom), std::move(slices));
    if (!out.is_valid()) throw WebError("reverse_edges: result failed validation");
    return out;
}

/// Same diagram data re-read at a different rank. The mod-N condition is
/// re-checked; exact (MOY) vertices stay valid at every rank.
inline WebDiagram with_rank(const WebDiagram& w, int new_rank) {
    return WebDiagram(new_rank, w.bottom_word(), w.slices());
}

/// Left-right mirror image. Flips every turn, so it negates the writhe.
inline WebDiagram mirror(const WebDiagram& w) {
    if (!w.has_layout()) throw WebError("mirror: diagram is structurally invalid");
    std::vector<Strand> bottom(w.bottom_word().rbegin(), w.bottom_word().rend());
    std::vector<SliceGenerator> slices;
    int width = static_cast<int>(w.bottom_word().size());
    for (const SliceGenerator& g : w.slices()) {
        SliceGenerator m = g;
        switch (g.kind) {
            case SliceGenerator::Kind::cup:
                m.pos = width - g.pos;
                m.turn = flipped(g.turn);
                width += 2;
                break;
            case SliceGenerator::Kind::cap:
                m.pos = width - 2 - g.pos;
                m.turn = flipped(g.turn);
                width -= 2;
                break;
            case SliceGenerator::Kind::merge:
                m.pos = width - 2 - g.pos;
                std::swap(m.consumed[0], m.consumed[1]);
                width -= 1;
                break;
            case SliceGenerator::Kind::split:
                m.pos = width - 1 - g.pos;
                std::swap(m.produced[0], m.produced[1]);
                width += 1;
                break;
        }
        slices.push_back(std::move(m));
    }
    return WebDiagram(w.rank(), std::move(bottom), std::move(slices));
}

/// Place b after a (both closed, same rank). For closed diagrams stacking is
/// isotopic to side-by-side placement.
inline WebDiagram disjoint_union(const WebDiagram& a, const WebDiagram& b) {
    if (a.rank() != b.rank()) throw WebError("disjoint_union: rank mismatch");
    if (!a.closed() || !b.closed()) throw WebError("disjoint_union: both diagrams must be closed");
    std::vector<SliceGenerator> slices = a.slices();
    slices.insert(slices.end(), b.slices().begin(), b.slices().end());
    return WebDiagram(a.rank(), {}, std::move(slices));
}

/// Delete every edge labeled 0 or N, dissolving the vertices this kills.
/// Surviving strands through a dead vertex chain up; where the chain's two
/// sides disagree in orientation, one side is reversed first (an equivalence
/// move, so the evaluation is unchanged either way).
inline WebDiagram remove_trivial_edges(const WebDiagram& w) {
    if (!w.is_valid()) throw WebError("remove_trivial_edges: diagram is not a valid web");
    const int N = w.rank();
    std::vector<bool> dead(static_cast<size_t>(w.edge_count()), false);
    for (int e = 0; e < w.edge_count(); ++e)
        dead[static_cast<size_t>(e)] = (w.edge(e).label == 0 || w.edge(e).label == N);

    // Chain surviving legs through vertices with exactly one dead leg, fixing
    // orientations so each chain flows head-to-tail.
    struct Link {
        int edge;
        bool role_in;  // role of this leg at the shared vertex, in the edge's original orientation
    };
    std::map<int, std::vector<std::pair<Link, Link>>> adj;  // edge -> links it participates in
    std::vector<std::pair<Link, Link>> pass_links;
    for (const VertexInfo& v : w.vertices()) {
        std::vector<int> kept;
        for (size_t i = 0; i < v.legs.size(); ++i)
            if (!dead[static_cast<size_t>(v.legs[i].edge)]) kept.push_back(static_cast<int>(i));
        if (kept.size() == 3 || kept.size() == 0) continue;
        if (kept.size() == 1)
            throw WebError("remove_trivial_edges: vertex with a single surviving leg (label outside [0,N])");
        Link a{v.legs[static_cast<size_t>(kept[0])].edge, v.leg_role_in(kept[0])};
        Link b{v.legs[static_cast<size_t>(kept[1])].edge, v.leg_role_in(kept[1])};
        pass_links.push_back({a, b});
    }
    for (const auto& ln : pass_links) {
        adj[ln.first.edge].push_back(ln);
        adj[ln.second.edge].push_back(ln);
    }
    std::map<int, bool> flip;
    for (const auto& [seed, unused] : adj) {
        if (flip.count(seed)) continue;
        flip[seed] = false;
        std::vector<int> stack = {seed};
        while (!stack.empty()) {
            int e = stack.back();
            stack.pop_back();
            for (const auto& ln : adj[e]) {
                const Link& mine = ln.first.edge == e ? ln.first : ln.second;
                const Link& other = ln.first.edge == e ? ln.second : ln.first;
                // self-loop through the vertex: roles are in+out automatically
                if (other.edge == e) continue;
                bool eff = flip[e] ? !mine.role_in : mine.role_in;
                bool need = (other.role_in == eff);  // same effective role -> flip the other edge
                if (!flip.count(other.edge)) {
                    flip[other.edge] = need;
                    stack.push_back(other.edge);
                } else if (flip[other.edge] != need) {
                    throw WebError("remove_trivial_edges: inconsistent chain orientation");
                }
            }
        }
    }
    std::set<int> rev;
    for (const auto& [e, f] : flip)
        if (f) rev.insert(e);
    WebDiagram base = rev.empty() ? w : reverse_edges(w, rev);

    // Rebuild slices, dropping dead strands and dissolving dead vertices.
    std::vector<bool> alive;
    std::vector<Strand> bottom;
    for (size_t p = 0; p < base.bottom_word().size(); ++p) {
        bool a = !dead[static_cast<size_t>(base.bottom_edges()[p])];
        alive.push_back(a);
        if (a) bottom.push_back(base.bottom_word()[p]);
    }
    auto new_pos = [&](int p) {
        int np = 0;
        for (int i = 0; i < p; ++i)
            if (alive[static_cast<size_t>(i)]) ++np;
        return np;
    };
    std::vector<SliceGenerator> slices;
    for (int si = 0; si < static_cast<int>(base.slices().size()); ++si) {
        const SliceGenerator& g = base.slices()[static_cast<size_t>(si)];
        const auto& inv = base.slice_edges(si);
        switch (g.kind) {
            case SliceGenerator::Kind::cup: {
                bool a = !dead[static_cast<size_t>(inv[0])];
                if (a) slices.push_back(SliceGenerator::cup(new_pos(g.pos), g.label, g.turn));
                alive.insert(alive.begin() + g.pos, {a, a});
                break;
            }
            case SliceGenerator::Kind::cap: {
                bool a = !dead[static_cast<size_t>(inv[0])];
                if (a) slices.push_back(SliceGenerator::cap(new_pos(g.pos), g.turn));
                alive.erase(alive.begin() + g.pos, alive.begin() + g.pos + 2);
                break;
            }
            case SliceGenerator::Kind::merge: {
                bool d0 = dead[static_cast<size_t>(inv[0])], d1 = dead[static_cast<size_t>(inv[1])],
                     dp = dead[static_cast<size_t>(inv[2])];
                if (!d0 && !d1 && !dp) {
                    slices.push_back(SliceGenerator::merge(new_pos(g.pos), g.consumed[0], g.consumed[1],
                                                           g.produced[0]));
                } else if (!d0 && !d1 && dp) {
                    // dead output: the two inputs close off in a cap
                    if (g.consumed[0].label != g.consumed[1].label)
                        throw WebError("remove_trivial_edges: surviving legs carry different labels "
                                       "(some label lies outside [0,N])");
                    Turn t = g.consumed[0].dir == Dir::up ? Turn::rightward : Turn::leftward;
                    slices.push_back(SliceGenerator::cap(new_pos(g.pos), t));
                } else if (!dp && (d0 != d1)) {
                    const Strand& keep = d0 ? g.consumed[1] : g.consumed[0];
                    if (!(keep == g.produced[0]))
                        throw WebError("remove_trivial_edges: surviving legs carry different labels "
                                       "(some label lies outside [0,N])");
                }
                alive.erase(alive.begin() + g.pos, alive.begin() + g.pos + 2);
                alive.insert(alive.begin() + g.pos, !dp);
                break;
            }
            case SliceGenerator::Kind::split: {
                bool dc = dead[static_cast<size_t>(inv[0])], d0 = dead[static_cast<size_t>(inv[1])],
                     d1 = dead[static_cast<size_t>(inv[2])];
                if (!dc && !d0 && !d1) {
                    slices.push_back(SliceGenerator::split(new_pos(g.pos), g.consumed[0], g.produced[0],
                                                           g.produced[1]));
                } else if (dc && !d0 && !d1) {
                    // dead input: the two outputs open from a cup
                    if (g.produced[0].label != g.produced[1].label)
                        throw WebError("remove_trivial_edges: surviving legs carry different labels "
                                       "(some label lies outside [0,N])");
                    Turn t = g.produced[0].dir == Dir::down ? Turn::rightward : Turn::leftward;
                    slices.push_back(SliceGenerator::cup(new_pos(g.pos), g.produced[0].label, t));
                } else if (!dc && (d0 != d1)) {
                    const Strand& keep = d0 ? g.produced[1] : g.produced[0];
                    if (!(keep == g.consumed[0]))
                        throw WebError("remove_trivial_edges: surviving legs carry different labels "
                                       "(some label lies outside [0,N])");
                }
                alive.erase(alive.begin() + g.pos);
                alive.insert(alive.begin() + g.pos, {!d0, !d1});
                break;
            }
        }
    }
    WebDiagram out(N, std::move(bottom), std::move(slices));
    if (!out.is_valid()) throw WebError("remove_trivial_edges: result failed validation");
    return out;
}

// ---------------------------------------------------------------------------
// DSL parsing and serialization
// ---------------------------------------------------------------------------

namespace detail {

inline std::string strand_text(const Strand& s) {
    return std::string(s.dir == Dir::up ? "u" : "d") + std::to_string(s.label);
}

struct Cursor {
    const std::string& text;
    int line;
    size_t i = 0;
    void skip_ws() {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    }
    bool done() {
        skip_ws();
        return i >= text.size();
    }
    int col() const { return static_cast<int>(i) + 1; }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(line, col(), msg); }
    void expect(char c) {
        skip_ws();
        if (i >= text.size() || text[i] != c) fail(std::string("expected '") + c + "'");
        ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < text.size() && text[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::string word() {
        skip_ws();
        size_t b = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
               text[i] != '(' && text[i] != ')' && text[i] != ',')
            ++i;
        if (b == i) fail("expected a token");
        return text.substr(b, i - b);
    }
    int integer() {
        skip_ws();
        size_t b = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (b == i || (i - b == 1 && !std::isdigit(static_cast<unsigned char>(text[b]))))
            fail("expected an integer");
        return std::stoi(text.substr(b, i - b));
    }
    Strand strand() {
        skip_ws();
        if (i >= text.size() || (text[i] != 'u' && text[i] != 'd'))
            fail("expected direction 'u' or 'd'");
        Dir d = text[i] == 'u' ? Dir::up : Dir::down;
        ++i;
        size_t b = i;
        if (i < text.size() && text[i] == '-') ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (b == i) fail("expected a label after the direction");
        return Strand{std::stoi(text.substr(b, i - b)), d};
    }
    Turn turn() {
        std::string t = word();
        if (t == "rightward") return Turn::rightward;
        if (t == "leftward") return Turn::leftward;
        fail("expected 'rightward' or 'leftward'");
    }
};

}  // namespace detail

/// Parse the DSL. Throws ParseError on syntax problems and on diagrams that
/// fail validation (word mismatches, mod-N violations), naming the offending
/// line.
inline WebDiagram parse(const std::string& text) {
    std::optional<int> n;
    std::vector<Strand> bottom;
    bool saw_bottom = false, saw_slice = false;
    std::vector<SliceGenerator> slices;
    std::vector<int> slice_lines;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        detail::Cursor c{raw, lineno};
        if (c.done()) continue;
        std::string kw = c.word();
        if (kw == "web") {
            if (n) c.fail("duplicate 'web' line");
            c.skip_ws();
            if (raw.compare(c.i, 2, "N=") != 0) c.fail("expected N=<int>");
            c.i += 2;
            n = c.integer();
        } else if (!n) {
            c.fail("expected 'web N=<int>' first");
        } else if (kw == "bottom") {
            if (saw_bottom || saw_slice) c.fail("'bottom' must appear once, before any slice");
            saw_bottom = true;
            while (!c.done()) bottom.push_back(c.strand());
        } else if (kw == "cup") {
            saw_slice = true;
            int pos = c.integer();
            int label = c.integer();
            Turn t = c.turn();
            slices.push_back(SliceGenerator::cup(pos, label, t));
            slice_lines.push_back(lineno);
        } else if (kw == "cap") {
            saw_slice = true;
            int pos = c.integer();
            Turn t = c.turn();
            slices.push_back(SliceGenerator::cap(pos, t));
            slice_lines.push_back(lineno);
        } else if (kw == "merge") {
            saw_slice = true;
            int pos = c.integer();
            c.expect('(');
            Strand a = c.strand();
            c.expect(',');
            Strand b = c.strand();
            c.expect(')');
            c.expect('-');
            c.expect('>');
            c.expect('(');
            Strand out = c.strand();
            c.expect(')');
            slices.push_back(SliceGenerator::merge(pos, a, b, out));
            slice_lines.push_back(lineno);
        } else if (kw == "split") {
            saw_slice = true;
            int pos = c.integer();
            c.expect('(');
            Strand in0 = c.strand();
            c.expect(')');
            c.expect('-');
            c.expect('>');
            c.expect('(');
            Strand o0 = c.strand();
            c.expect(',');
            Strand o1 = c.strand();
            c.expect(')');
            slices.push_back(SliceGenerator::split(pos, in0, o0, o1));
            slice_lines.push_back(lineno);
        } else {
            c.fail("unknown directive '" + kw + "'");
        }
        if (!c.done()) c.fail("trailing input");
    }
    if (!n) throw ParseError(lineno == 0 ? 1 : lineno, 1, "missing 'web N=<int>' line");

    WebDiagram w(*n, std::move(bottom), std::move(slices));
    if (!w.is_valid()) {
        const Violation& v = w.violations().front();
        int line = v.slice >= 0 && v.slice < static_cast<int>(slice_lines.size())
                       ? slice_lines[static_cast<size_t>(v.slice)]
                       : 1;
        throw ParseError(line, 1, v.message);
    }
    return w;
}

/// Canonical serialization; parse(serialize(w)) == w.
inline std::string serialize(const WebDiagram& w) {
    std::ostringstream out;
    out << "web N=" << w.rank() << "\n";
    if (!w.bottom_word().empty()) {
        out << "bottom";
        for (const Strand& s : w.bottom_word()) out << " " << detail::strand_text(s);
        out << "\n";
    }
    for (const SliceGenerator& g : w.slices()) {
        switch (g.kind) {
            case SliceGenerator::Kind::cup:
                out << "cup " << g.pos << " " << g.label << " "
                    << (g.turn == Turn::rightward ? "rightward" : "leftward") << "\n";
                break;
            case SliceGenerator::Kind::cap:
                out << "cap " << g.pos << " "
                    << (g.turn == Turn::rightward ? "rightward" : "leftward") << "\n";
                break;
            case SliceGenerator::Kind::merge:
                out << "merge " << g.pos << " (" << detail::strand_text(g.consumed[0]) << ","
                    << detail::strand_text(g.consumed[1]) << ") -> ("
                    << detail::strand_text(g.produced[0]) << ")\n";
                break;
            case SliceGenerator::Kind::split:
                out << "split " << g.pos << " (" << detail::strand_text(g.consumed[0]) << ") -> ("
                    << detail::strand_text(g.produced[0]) << "," << detail::strand_text(g.produced[1])
                    << ")\n";
                break;
        }
    }
    return out.str();
}

}  // namespace moyweb
