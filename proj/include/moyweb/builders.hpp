#pragma once

/**
 * @file builders.hpp
 * @brief Constructors for the standard diagrams: circles, digons, the two
 *        association trees, the square patterns of the local relations, and
 *        the generators used by tests and the bench command (bubble ladders,
 *        seeded random closed diagrams).
 */

#include "moyweb/web_diagram.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace moyweb {

inline WebDiagram empty_web(int N) { return WebDiagram(N, {}, {}); }

inline WebDiagram circle(int k, int N, bool ccw = true) {
    std::vector<SliceGenerator> s;
    if (ccw) {
        s.push_back(SliceGenerator::cup(0, k, Turn::rightward));
        s.push_back(SliceGenerator::cap(0, Turn::leftward));
    } else {
        s.push_back(SliceGenerator::cup(0, k, Turn::leftward));
        s.push_back(SliceGenerator::cap(0, Turn::rightward));
    }
    return WebDiagram(N, {}, std::move(s));
}

/// Single vertical strand, open, oriented upward.
inline WebDiagram vert_strand(int label, int N) { return WebDiagram(N, {up(label)}, {}); }

/// Two vertical strands: left labeled `l_up` upward, right `l_down` downward.
inline WebDiagram two_strands(int l_up, int l_down, int N) {
    return WebDiagram(N, {up(l_up), down(l_down)}, {});
}

/// Closed circle labeled m+n carrying an (m,n) digon: the theta graph.
inline WebDiagram theta(int m, int n, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::cup(0, m + n, Turn::rightward));
    s.push_back(SliceGenerator::split(1, up(m + n), up(m), up(n)));
    s.push_back(SliceGenerator::merge(1, up(m), up(n), up(m + n)));
    s.push_back(SliceGenerator::cap(0, Turn::leftward));
    return WebDiagram(N, {}, std::move(s));
}

/// Split tree i+j+k -> (i, (j, k)): the left side of the association move.
inline WebDiagram assoc_tree_left(int i, int j, int k, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::split(0, up(i + j + k), up(i), up(j + k)));
    s.push_back(SliceGenerator::split(1, up(j + k), up(j), up(k)));
    return WebDiagram(N, {up(i + j + k)}, std::move(s));
}

/// Split tree i+j+k -> ((i, j), k): the right side of the association move.
inline WebDiagram assoc_tree_right(int i, int j, int k, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::split(0, up(i + j + k), up(i + j), up(k)));
    s.push_back(SliceGenerator::split(0, up(i + j), up(i), up(j)));
    return WebDiagram(N, {up(i + j + k)}, std::move(s));
}

/// Open digon: an (m+n)-strand splits into m (left) and n (right) and merges
/// back.
inline WebDiagram digon(int m, int n, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::split(0, up(m + n), up(m), up(n)));
    s.push_back(SliceGenerator::merge(0, up(m), up(n), up(m + n)));
    return WebDiagram(N, {up(m + n)}, std::move(s));
}

/// Open digon on an m-strand that borrows a downward n-edge: the m-strand
/// widens to m+n and narrows back.
inline WebDiagram digon_return(int m, int n, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::split(0, up(m), up(m + n), down(n)));
    s.push_back(SliceGenerator::merge(0, up(m + n), down(n), up(m)));
    return WebDiagram(N, {up(m)}, std::move(s));
}

/// Square with mixed orientations: boundary (u1, dm) below and above, rungs
/// labeled m+1.
inline WebDiagram square_mixed(int m, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::split(0, up(1), down(m), up(m + 1)));
    s.push_back(SliceGenerator::merge(1, up(m + 1), down(m), up(1)));
    s.push_back(SliceGenerator::split(1, up(1), up(m + 1), down(m)));
    s.push_back(SliceGenerator::merge(0, down(m), up(m + 1), up(1)));
    return WebDiagram(N, {up(1), down(m)}, std::move(s));
}

/// The Y-pair with boundary (u1, dm): the 1- and m-strands trade through an
/// (m-1)-edge.
inline WebDiagram double_y_mixed(int m, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::merge(0, up(1), down(m), down(m - 1)));
    s.push_back(SliceGenerator::split(0, down(m - 1), up(1), down(m)));
    return WebDiagram(N, {up(1), down(m)}, std::move(s));
}

/// All-upward square: boundary (u1, u(m+l-1)) below, (ul, um) above.
inline WebDiagram square_up(int m, int n, int l, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::split(1, up(m + l - 1), up(l + n - 1), up(m - n)));
    s.push_back(SliceGenerator::merge(0, up(1), up(l + n - 1), up(l + n)));
    s.push_back(SliceGenerator::split(0, up(l + n), up(l), up(n)));
    s.push_back(SliceGenerator::merge(1, up(n), up(m - n), up(m)));
    return WebDiagram(N, {up(1), up(m + l - 1)}, std::move(s));
}

/// H-shaped web with the same boundary as square_up: one (l-1)-rung.
inline WebDiagram big_h(int m, int l, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::split(1, up(m + l - 1), up(l - 1), up(m)));
    s.push_back(SliceGenerator::merge(0, up(1), up(l - 1), up(l)));
    return WebDiagram(N, {up(1), up(m + l - 1)}, std::move(s));
}

/// Y-pair with the same boundary as square_up: merge to m+l, split into l, m.
inline WebDiagram double_y_up(int m, int l, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::merge(0, up(1), up(m + l - 1), up(m + l)));
    s.push_back(SliceGenerator::split(0, up(m + l), up(l), up(m)));
    return WebDiagram(N, {up(1), up(m + l - 1)}, std::move(s));
}

/// General all-upward square: boundary (un, u(m+l)) below, (um, u(n+l))
/// above; left rail n+k, right rail m+l-k, rungs k (low) and n+k-m (high).
inline WebDiagram square_grid(int m, int n, int l, int k, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::split(1, up(m + l), up(k), up(m + l - k)));
    s.push_back(SliceGenerator::merge(0, up(n), up(k), up(n + k)));
    s.push_back(SliceGenerator::split(0, up(n + k), up(m), up(n + k - m)));
    s.push_back(SliceGenerator::merge(1, up(n + k - m), up(m + l - k), up(n + l)));
    return WebDiagram(N, {up(n), up(m + l)}, std::move(s));
}

/// The j-indexed square on the other side of the square move: same boundary
/// as square_grid, rungs j (high, leftward) and n+j-m (low, rightward).
inline WebDiagram square_grid_flip(int m, int n, int l, int j, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::split(0, up(n), up(m - j), up(n + j - m)));
    s.push_back(SliceGenerator::merge(1, up(n + j - m), up(m + l), up(n + l + j)));
    s.push_back(SliceGenerator::split(1, up(n + l + j), up(j), up(n + l)));
    s.push_back(SliceGenerator::merge(0, up(m - j), up(j), up(m)));
    return WebDiagram(N, {up(n), up(m + l)}, std::move(s));
}

/// Closure of square_grid with m = n: both rails looped around.
inline WebDiagram closed_square(int n, int l, int k, int N) {
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::cup(0, n, Turn::rightward));
    s.push_back(SliceGenerator::cup(2, n + l, Turn::leftward));
    s.push_back(SliceGenerator::split(2, up(n + l), up(k), up(n + l - k)));
    s.push_back(SliceGenerator::merge(1, up(n), up(k), up(n + k)));
    s.push_back(SliceGenerator::split(1, up(n + k), up(n), up(k)));
    s.push_back(SliceGenerator::merge(2, up(k), up(n + l - k), up(n + l)));
    s.push_back(SliceGenerator::cap(0, Turn::leftward));
    s.push_back(SliceGenerator::cap(0, Turn::rightward));
    return WebDiagram(N, {}, std::move(s));
}

/// Closed chain of `height` bubbles on a strand labeled `width`, each bubble
/// splitting width -> 1 + (width-1). The coloring count grows as
/// width^height, which is what the bench compares the transfer-matrix engine
/// against.
inline WebDiagram ladder(int height, int N, int width = 3) {
    if (width < 2) throw WebError("ladder: width must be at least 2");
    std::vector<SliceGenerator> s;
    s.push_back(SliceGenerator::cup(0, width, Turn::rightward));
    for (int i = 0; i < height; ++i) {
        s.push_back(SliceGenerator::split(1, up(width), up(1), up(width - 1)));
        s.push_back(SliceGenerator::merge(1, up(1), up(width - 1), up(width)));
    }
    s.push_back(SliceGenerator::cap(0, Turn::leftward));
    return WebDiagram(N, {}, std::move(s));
}

/// Generic builder keyed by relation pattern. `side` is std::nullopt for the
/// left-hand diagram and the 0-based right-hand index otherwise (for the
/// square move the index is the j of the summand).
inline WebDiagram standard_web(const std::string& pattern, const std::map<std::string, int>& params,
                               std::optional<int> side, int N) {
    auto p = [&](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end()) throw WebError("standard_web: missing parameter " + key);
        return it->second;
    };
    const bool lhs = !side.has_value();
    const int rhs = side.value_or(0);
    if (pattern == "circle" || pattern == "1") {
        if (lhs) return circle(p("k"), N);
        return empty_web(N);
    }
    if (pattern == "assoc" || pattern == "2")
        return lhs ? assoc_tree_left(p("i"), p("j"), p("k"), N)
                   : assoc_tree_right(p("i"), p("j"), p("k"), N);
    if (pattern == "digon" || pattern == "3")
        return lhs ? digon(p("m"), p("n"), N) : vert_strand(p("m") + p("n"), N);
    if (pattern == "digon_return" || pattern == "4")
        return lhs ? digon_return(p("m"), p("n"), N) : vert_strand(p("m"), N);
    if (pattern == "square_mixed" || pattern == "5") {
        if (lhs) return square_mixed(p("m"), N);
        if (rhs == 0) return two_strands(1, p("m"), N);
        return double_y_mixed(p("m"), N);
    }
    if (pattern == "square_up" || pattern == "6") {
        if (lhs) return square_up(p("m"), p("n"), p("l"), N);
        if (rhs == 0) return big_h(p("m"), p("l"), N);
        return double_y_up(p("m"), p("l"), N);
    }
    if (pattern == "square_grid" || pattern == "7") {
        if (lhs) return square_grid(p("m"), p("n"), p("l"), p("k"), N);
        return square_grid_flip(p("m"), p("n"), p("l"), rhs, N);
    }
    if (pattern == "theta") return theta(p("m"), p("n"), N);
    if (pattern == "closed_square") return closed_square(p("n"), p("l"), p("k"), N);
    if (pattern == "ladder")
        return ladder(p("h"), N, params.count("w") ? params.at("w") : 3);
    throw WebError("standard_web: unknown pattern '" + pattern + "'");
}

// ---------------------------------------------------------------------------
// Seeded random closed diagrams
// ---------------------------------------------------------------------------

namespace detail {

/// Deterministic cross-platform integer in [0, n).
inline int rand_below(std::mt19937_64& rng, int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); }

inline std::optional<WebDiagram> try_random_closed(std::mt19937_64& rng, int N, int max_slices,
                                                   int max_label) {
    std::vector<Strand> word;
    std::vector<SliceGenerator> slices;
    while (static_cast<int>(slices.size()) < max_slices) {
        struct Move {
            SliceGenerator g;
        };
        std::vector<SliceGenerator> moves;
        const int width = static_cast<int>(word.size());
        const int budget = max_slices - static_cast<int>(slices.size());
        // Closing moves: caps on matching adjacent pairs.
        for (int p = 0; p + 1 < width; ++p) {
            const Strand &a = word[static_cast<size_t>(p)], &b = word[static_cast<size_t>(p + 1)];
            if (a.label != b.label) continue;
            if (a.dir == Dir::up && b.dir == Dir::down)
                moves.push_back(SliceGenerator::cap(p, Turn::rightward));
            if (a.dir == Dir::down && b.dir == Dir::up)
                moves.push_back(SliceGenerator::cap(p, Turn::leftward));
        }
        // Merges on adjacent pairs (all exact-sum variants with labels in range).
        for (int p = 0; p + 1 < width; ++p) {
            const Strand &a = word[static_cast<size_t>(p)], &b = word[static_cast<size_t>(p + 1)];
            const int ins = (a.dir == Dir::up ? a.label : 0) + (b.dir == Dir::up ? b.label : 0);
            const int outs = (a.dir == Dir::down ? a.label : 0) + (b.dir == Dir::down ? b.label : 0);
            for (Dir d : {Dir::up, Dir::down}) {
                const int lab = d == Dir::up ? ins - outs : outs - ins;
                if (lab < 1 || lab > max_label) continue;
                moves.push_back(SliceGenerator::merge(p, a, b, {lab, d}));
            }
        }
        // Openers only while there is budget to close again.
        if (budget > width / 2 + 1) {
            for (int p = 0; p <= width; ++p)
                for (int lab = 1; lab <= max_label; ++lab)
                    for (Turn t : {Turn::rightward, Turn::leftward})
                        moves.push_back(SliceGenerator::cup(p, lab, t));
            for (int p = 0; p < width; ++p) {
                const Strand& a = word[static_cast<size_t>(p)];
                for (int l0 = 0; l0 <= a.label; ++l0) {
                    const int l1 = a.label - l0;
                    if (l0 < 1 || l0 > max_label || l1 < 1 || l1 > max_label) continue;
                    if (a.dir == Dir::up)
                        moves.push_back(SliceGenerator::split(p, a, up(l0), up(l1)));
                    else
                        moves.push_back(SliceGenerator::split(p, a, down(l0), down(l1)));
                }
            }
        }
        if (moves.empty()) return std::nullopt;
        const SliceGenerator g = moves[static_cast<size_t>(rand_below(rng, static_cast<int>(moves.size())))];
        // Apply to the running word.
        switch (g.kind) {
            case SliceGenerator::Kind::cup: {
                auto pair = cup_strands(g.label, g.turn);
                word.insert(word.begin() + g.pos, pair.begin(), pair.end());
                break;
            }
            case SliceGenerator::Kind::cap:
                word.erase(word.begin() + g.pos, word.begin() + g.pos + 2);
                break;
            case SliceGenerator::Kind::merge:
                word.erase(word.begin() + g.pos, word.begin() + g.pos + 2);
                word.insert(word.begin() + g.pos, g.produced[0]);
                break;
            case SliceGenerator::Kind::split:
                word.erase(word.begin() + g.pos);
                word.insert(word.begin() + g.pos, g.produced.begin(), g.produced.end());
                break;
        }
        slices.push_back(g);
        if (word.empty() && slices.size() >= 2) break;
    }
    if (!word.empty() || slices.empty()) return std::nullopt;
    WebDiagram w(N, {}, std::move(slices));
    if (!w.is_valid()) return std::nullopt;
    return w;
}

}  // namespace detail

/// `count` seeded random closed diagrams with at most `max_slices` slices and
/// labels bounded by `max_label`, ranks cycling through 2..max_rank.
/// Deterministic for a fixed seed.
inline std::vector<WebDiagram> random_closed_diagrams(std::uint64_t seed, int count, int max_rank,
                                                      int max_slices = 6, int max_label = 3) {
    std::mt19937_64 rng(seed);
    std::vector<WebDiagram> out;
    while (static_cast<int>(out.size()) < count) {
        const int N = 2 + detail::rand_below(rng, max_rank - 1);
        if (auto w = detail::try_random_closed(rng, N, max_slices, max_label)) out.push_back(std::move(*w));
    }
    return out;
}

}  // namespace moyweb
