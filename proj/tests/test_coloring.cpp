#include "moyweb/builders.hpp"
#include "moyweb/coloring.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace moyweb;

namespace {

std::vector<std::pair<Coloring, int>> all(const WebDiagram& w) { return enumerate_colorings(w); }

/// component signature for comparing states structurally
using Signature = std::vector<std::tuple<bool, int, std::vector<int>>>;
Signature signature(const State& s) {
    Signature sig;
    for (const StateComponent& c : s.components) {
        std::vector<int> edges = c.edges;
        std::sort(edges.begin(), edges.end());
        sig.push_back({c.circle, c.turn_halves, edges});
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

}  // namespace

TEST_CASE("mask utilities") {
    CHECK(mask_pair_degree(0b001, 0b010) == 1);   // {1} before {2}
    CHECK(mask_pair_degree(0b110, 0b001) == -2);  // {2,3} against {1}
    CHECK(mask_pair_degree(0, 0b1010) == 0);
    int count = 0;
    ColorMask last = 0;
    for_each_mask(4, 2, [&](ColorMask m) {
        CHECK(m > last);
        last = m;
        ++count;
    });
    CHECK(count == 6);
}

TEST_CASE("coloring enumeration counts") {
    CHECK(all(circle(1, 2)).size() == 2);
    CHECK(all(circle(4, 3)).empty());  // label outside [0,N]
    CHECK(all(circle(-1, 3)).empty());
    CHECK(all(theta(1, 1, 3)).size() == 6);
    CHECK(all(empty_web(5)).size() == 1);
    // deterministic stream order: lexicographic masks
    auto cols = all(circle(1, 2));
    CHECK(cols[0].first.colors[0] == 0b01);
    CHECK(cols[1].first.colors[0] == 0b10);
}

TEST_CASE("colorings are pairwise distinct") {
    for (const WebDiagram& w : {theta(1, 1, 3), closed_square(1, 1, 1, 4), ladder(2, 3, 2)}) {
        std::vector<std::vector<ColorMask>> seen;
        for_each_coloring(w, [&](const std::vector<ColorMask>& colors, int) { seen.push_back(colors); });
        std::sort(seen.begin(), seen.end());
        CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
    }
}

TEST_CASE("boundary colorings") {
    const WebDiagram c = circle(1, 2);
    CHECK(boundary_coloring(c, all(c)[0].first) == BoundaryColoring{});
    const WebDiagram v = vert_strand(1, 3);
    for (const auto& [col, deg] : all(v)) {
        BoundaryColoring bc = boundary_coloring(v, col);
        REQUIRE(bc.bottom.size() == 1);
        CHECK(bc.bottom == bc.top);
        CHECK(deg == 0);
    }
    const WebDiagram d = digon(1, 1, 2);
    for (const auto& [col, deg] : all(d)) {
        BoundaryColoring bc = boundary_coloring(d, col);
        CHECK(bc.bottom[0] == full_mask(2));
        CHECK(bc.top[0] == full_mask(2));
    }
}

TEST_CASE("states of the colored circle") {
    const WebDiagram c2 = circle(1, 2);
    State s_hi = make_state(c2, Coloring{{0b10}}, {1, 2});
    REQUIRE(s_hi.components.size() == 1);
    CHECK(s_hi.components[0].circle);
    CHECK(s_hi.components[0].turn_halves == 2);  // original ccw orientation
    CHECK(state_degree_halves(s_hi) == 2);

    State s_lo = make_state(c2, Coloring{{0b01}}, {1, 2});
    CHECK(s_lo.components[0].turn_halves == -2);  // reversed
    CHECK(state_degree_halves(s_lo) == -2);

    const WebDiagram c3 = circle(2, 3);
    State s_full = make_state(c3, Coloring{{0b011}}, {1, 2});
    CHECK(s_full.components.empty());
    CHECK(state_degree_halves(s_full) == 0);
}

TEST_CASE("arc states and their classes") {
    // a single cup: its edge meets the top twice; rightward travel gives +1/2
    WebDiagram cup_only(2, {}, {SliceGenerator::cup(0, 1, Turn::rightward)});
    State s = make_state(cup_only, Coloring{{0b10}}, {1, 2});
    REQUIRE(s.components.size() == 1);
    CHECK_FALSE(s.components[0].circle);
    CHECK(s.tr == 1);
    CHECK(state_degree_halves(s) == 1);
    // reversed: a leftward top arc
    State s_rev = make_state(cup_only, Coloring{{0b01}}, {1, 2});
    CHECK(s_rev.tl == 1);
    CHECK(state_degree_halves(s_rev) == -1);
    // through strand: no contribution
    State s_through = make_state(vert_strand(1, 2), Coloring{{0b01}}, {1, 2});
    REQUIRE(s_through.components.size() == 1);
    CHECK(state_degree_halves(s_through) == 0);
}

TEST_CASE("slice-local extremum weights") {
    CHECK(extremum_weight_halves(true, Turn::rightward, 0b10, 2) == 1);
    CHECK(extremum_weight_halves(true, Turn::rightward, full_mask(3), 3) == 0);
    CHECK(extremum_weight_halves(false, Turn::leftward, 0b001, 3) == -2);
}

TEST_CASE("circle coloring degrees") {
    const WebDiagram c = circle(1, 2);
    CHECK(coloring_degree_halves(c, Coloring{{0b10}}) == 2);
    CHECK(coloring_degree_halves(c, Coloring{{0b01}}) == -2);
    // both computation paths agree
    CHECK(coloring_degree_oracle_halves(c, Coloring{{0b10}}) == 2);
}

TEST_CASE("dual-path degree equality on assorted diagrams") {
    std::vector<WebDiagram> samples = {theta(1, 1, 3),        theta(2, 1, 4),
                                       closed_square(1, 1, 1, 4), digon_return(1, 1, 3),
                                       square_mixed(1, 3),    square_grid(1, 1, 1, 1, 4),
                                       assoc_tree_left(1, 1, 1, 3)};
    for (const WebDiagram& w : random_closed_diagrams(5, 8, 4)) samples.push_back(w);
    for (const WebDiagram& w : samples) {
        for_each_coloring(w, [&](const std::vector<ColorMask>& colors, int degree) {
            Coloring c{colors};
            CHECK(coloring_degree_halves(w, c) == degree);
            CHECK(coloring_degree_oracle_halves(w, c) == degree);
        });
    }
}

TEST_CASE("closed degrees are even, open parities follow the arc count") {
    for (const WebDiagram& w : {theta(1, 1, 3), closed_square(1, 1, 1, 4)})
        for_each_coloring(w, [&](const std::vector<ColorMask>&, int degree) {
            CHECK(degree % 2 == 0);
        });
    const WebDiagram t = assoc_tree_left(1, 1, 1, 3);
    for_each_coloring(t, [&](const std::vector<ColorMask>& colors, int degree) {
        int arcs = 0;
        for (const Bicolor& b : all_bicolors(3)) {
            const State s = make_state(t, Coloring{colors}, b);
            arcs += s.tr + s.tl + s.br + s.bl;
        }
        CHECK(((degree % 2) + 2) % 2 == (arcs % 2));
    });
}

TEST_CASE("states are invariant under edge reversal with transported colors") {
    std::vector<WebDiagram> samples = {theta(1, 1, 3), theta(1, 2, 4), closed_square(1, 1, 1, 4)};
    for (const WebDiagram& w : samples) {
        const ColorMask full = full_mask(w.rank());
        // try a few edge subsets, cycles or not
        for (std::uint64_t es = 0; es < (std::uint64_t{1} << w.edge_count()); es += 3) {
            std::set<int> ids;
            for (int e = 0; e < w.edge_count(); ++e)
                if (es & (std::uint64_t{1} << e)) ids.insert(e);
            const WebDiagram r = reverse_edges(w, ids);
            for_each_coloring(w, [&](const std::vector<ColorMask>& colors, int degree) {
                Coloring transported{colors};
                for (int e : ids) transported.colors[static_cast<size_t>(e)] ^= full;
                for (const Bicolor& b : all_bicolors(w.rank())) {
                    CHECK(signature(make_state(w, Coloring{colors}, b)) ==
                          signature(make_state(r, transported, b)));
                }
                CHECK(coloring_degree_halves(r, transported) == degree);
            });
        }
    }
}

TEST_CASE("vertex condition matches the partition characterization on MOY splits") {
    // one split vertex m+n -> (m, n), all upward: condition (V) holds exactly
    // when the produced colors partition the consumed color
    const int n = 4;
    const Strand strands[3] = {up(3), up(1), up(2)};
    const bool consumed[3] = {true, false, false};
    for_each_mask(n, 3, [&](ColorMask s) {
        for_each_mask(n, 1, [&](ColorMask a) {
            for_each_mask(n, 2, [&](ColorMask b) {
                const ColorMask masks[3] = {s, a, b};
                const bool expect = (a & b) == 0 && (a | b) == s;
                CHECK(vertex_condition_ok(strands, masks, consumed, 3, n) == expect);
            });
        });
    });
}

TEST_CASE("on MOY diagrams, condition (V) means the small colors partition the big one") {
    // every vertex of a MOY diagram: the colors of the two in-legs (by flow)
    // partition the color of the out-leg, including mixed orientations
    for (const WebDiagram& w : {theta(2, 1, 4), square_mixed(1, 3), digon_return(1, 2, 4)}) {
        for_each_coloring(w, [&](const std::vector<ColorMask>& colors, int) {
            for (const VertexInfo& v : w.vertices()) {
                ColorMask small_union = 0, big = 0;
                int ins = 0;
                bool disjoint = true;
                for (size_t i = 0; i < v.legs.size(); ++i) ins += v.leg_role_in(static_cast<int>(i));
                // MOY vertex: two legs of one flow role and one of the other;
                // the same-role pair carries the "small" labels
                const bool small_role_in = ins == 2;
                for (size_t i = 0; i < v.legs.size(); ++i) {
                    const ColorMask c = colors[static_cast<size_t>(v.legs[i].edge)];
                    if (v.leg_role_in(static_cast<int>(i)) == small_role_in) {
                        disjoint = disjoint && (small_union & c) == 0;
                        small_union |= c;
                    } else {
                        big = c;
                    }
                }
                CHECK(disjoint);
                CHECK(small_union == big);
            }
        });
    }
}

TEST_CASE("third-leg color completion") {
    const Strand strands[3] = {up(1), up(2), up(3)};
    const bool consumed[3] = {true, true, false};
    ColorMask masks[3] = {0b0001, 0b0110, 0};
    auto cands = vertex_third_colors(strands, masks, consumed, 2, 4);
    REQUIRE(cands.size() == 1);
    CHECK(cands[0] == 0b0111);
    // overlapping inputs admit no completion
    masks[0] = 0b0010;
    CHECK(vertex_third_colors(strands, masks, consumed, 2, 4).empty());
}
