#include "moyweb/builders.hpp"
#include "moyweb/evaluator.hpp"
#include "moyweb/reduction.hpp"
#include "moyweb/web_diagram.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace moyweb;
using testutil::cabled_circle_count;

TEST_CASE("parse the smallest closed circle") {
    WebDiagram w = parse("web N=2\ncup 0 1 rightward\ncap 0 leftward\n");
    CHECK(w.closed());
    CHECK(w.edge_count() == 1);
    CHECK(w.edge(0).label == 1);
    CHECK(w == circle(1, 2));
}

TEST_CASE("parse accepts comments and a bottom word") {
    WebDiagram w = parse("# a bare strand\nweb N=3\nbottom u2  # its only strand\n");
    CHECK(w.bottom_word() == std::vector<Strand>{up(2)});
    CHECK(w.top_word() == std::vector<Strand>{up(2)});
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse("web N=2\ncup 0 1 sideways\n"), ParseError);
    CHECK_THROWS_AS(parse("cup 0 1 rightward\n"), ParseError);
    try {
        parse("web N=2\ncup 0 1 rightward\ncup 2 1 rightward\ncap 0 rightward\n");
        FAIL("expected a validity error");
    } catch (const ParseError& e) {
        CHECK(e.line == 4);  // the cap does not match the word strands
    }
}

TEST_CASE("serialization round trip") {
    const WebDiagram samples[] = {circle(2, 4),           theta(1, 2, 4),
                                  square_mixed(1, 3),     square_grid(1, 1, 1, 1, 4),
                                  closed_square(1, 1, 1, 4), assoc_tree_left(1, 1, 2, 4),
                                  digon_return(2, 1, 4)};
    for (const WebDiagram& w : samples) {
        CHECK(parse(serialize(w)) == w);
        CHECK(serialize(parse(serialize(w))) == serialize(w));
    }
}

TEST_CASE("validate flags mod-N violations but keeps the layout") {
    WebDiagram ok(3, {up(1), up(1)}, {SliceGenerator::merge(0, up(1), up(1), up(2))});
    CHECK(ok.is_valid());
    WebDiagram bad(3, {up(1), up(1)}, {SliceGenerator::merge(0, up(1), up(1), up(1))});
    CHECK(bad.has_layout());
    REQUIRE(bad.violations().size() == 1);
    CHECK(bad.violations()[0].slice == 0);
    WebDiagram mod_ok(2, {up(1), up(1)}, {SliceGenerator::merge(0, up(1), up(1), up(4))});
    CHECK(mod_ok.is_valid());  // 1+1 = 4 mod 2
}

TEST_CASE("MOY recognition") {
    CHECK(is_moy(circle(2, 4)));
    CHECK(is_moy(theta(1, 1, 3)));
    CHECK(is_moy(square_mixed(1, 3)));
    // all three legs incoming, sum 6 = 0 mod 3: a valid web, not a MOY graph
    WebDiagram sink(3, {up(1), up(2)}, {SliceGenerator::merge(0, up(1), up(2), down(3))});
    CHECK(sink.is_valid());
    CHECK_FALSE(is_moy(sink));
    // negative label
    WebDiagram neg(3, {up(-1)}, {});
    CHECK(neg.is_valid());
    CHECK_FALSE(is_moy(neg));
}

TEST_CASE("writhe of circles") {
    for (int k = 1; k <= 3; ++k) {
        CHECK(writhe(circle(k, 4)) == k);
        CHECK(writhe(circle(k, 4, false)) == -k);
    }
    CHECK(writhe(disjoint_union(circle(2, 4), circle(2, 4, false))) == 0);
    CHECK_THROWS_AS(writhe(vert_strand(1, 2)), WebError);
    // a label above N is still a MOY graph (labels live in the naturals)
    CHECK(writhe(circle(4, 3)) == 4);
    // but a negative label is not
    CHECK_THROWS_AS(writhe(circle(-1, 3)), WebError);
}

TEST_CASE("writhe is additive and changes sign under mirroring") {
    const WebDiagram a = theta(1, 2, 4), b = circle(2, 4, false);
    CHECK(writhe(disjoint_union(a, b)) == writhe(a) + writhe(b));
    CHECK(writhe(mirror(a)) == -writhe(a));
    CHECK(writhe(mirror(closed_square(1, 1, 1, 4))) == -writhe(closed_square(1, 1, 1, 4)));
    CHECK(mirror(mirror(a)) == a);
}

TEST_CASE("writhe equals the brute-force cabled circle count") {
    std::vector<WebDiagram> samples = {circle(1, 2),      circle(3, 4),  circle(2, 3, false),
                                       theta(1, 1, 3),    theta(2, 1, 4), closed_square(1, 1, 1, 4),
                                       ladder(3, 4)};
    for (const WebDiagram& w : random_closed_diagrams(77, 12, 4)) samples.push_back(w);
    for (const WebDiagram& w : samples) {
        CHECK(writhe(w) == cabled_circle_count(w));
        // also after reversing each cycle collection (this is where cables
        // start turning at vertices)
        for (EdgeSet a : enumerate_cycle_collections(w)) {
            WebDiagram r = reverse_edges(w, edge_set_to_ids(a));
            if (!is_moy(r)) continue;
            CHECK(writhe(r) == cabled_circle_count(r));
        }
    }
}

TEST_CASE("reverse_edges") {
    const WebDiagram c = circle(1, 3);
    CHECK(reverse_edges(c, {}) == c);
    CHECK(reverse_edges(c, {0}) == circle(2, 3, false));
    const WebDiagram t = theta(1, 2, 4);
    std::set<int> all = {0, 1, 2};
    CHECK(reverse_edges(reverse_edges(t, all), all) == t);
    CHECK_THROWS_AS(reverse_edges(c, {5}), WebError);
}

TEST_CASE("removing 0- and N-labeled edges") {
    CHECK(remove_trivial_edges(theta(1, 2, 4)) == theta(1, 2, 4));  // nothing to remove
    // bubble with a 0-edge collapses to the bare circle
    CHECK(remove_trivial_edges(theta(1, 0, 2)) == circle(1, 2));
    // outer edge labeled N: the digon opens into a single circle
    WebDiagram opened = remove_trivial_edges(theta(1, 2, 3));
    CHECK(opened.closed());
    CHECK(opened.edge_count() == 1);
    CHECK((opened.edge(0).label == 1 || opened.edge(0).label == 2));
    // open strand version
    WebDiagram bare = remove_trivial_edges(digon(2, 0, 3));
    CHECK(bare == vert_strand(2, 3));
    // a label above N makes deletion unsmoothable: theta(1,2) at N=2 keeps a
    // 3-edge and a 1-edge at the same dead vertex
    CHECK_THROWS_AS(remove_trivial_edges(theta(1, 2, 2)), WebError);
}

TEST_CASE("disjoint union") {
    const WebDiagram a = circle(1, 3), b = theta(1, 1, 3);
    CHECK(disjoint_union(a, empty_web(3)) == a);
    CHECK(disjoint_union(disjoint_union(a, b), a) == disjoint_union(a, disjoint_union(b, a)));
    CHECK_THROWS_AS(disjoint_union(a, circle(1, 4)), WebError);
    CHECK_THROWS_AS(disjoint_union(a, vert_strand(1, 3)), WebError);
}

TEST_CASE("standard webs validate and reach their declared boundaries") {
    const WebDiagram t = assoc_tree_left(1, 2, 1, 4);
    CHECK(t.top_word() == std::vector<Strand>{up(1), up(2), up(1)});
    CHECK(assoc_tree_right(1, 2, 1, 4).top_word() == t.top_word());
    CHECK(square_up(2, 1, 1, 4).top_word() == std::vector<Strand>{up(1), up(2)});
    CHECK(big_h(2, 1, 4).top_word() == std::vector<Strand>{up(1), up(2)});
    CHECK(double_y_up(2, 1, 4).top_word() == std::vector<Strand>{up(1), up(2)});
    CHECK(square_grid(1, 1, 1, 1, 4).top_word() == std::vector<Strand>{up(1), up(2)});
    CHECK(square_grid_flip(1, 1, 1, 0, 4).top_word() == std::vector<Strand>{up(1), up(2)});
    for (const WebDiagram& w :
         {square_mixed(1, 3), double_y_mixed(1, 3), closed_square(1, 1, 1, 4), theta(2, 2, 4)}) {
        CHECK(w.is_valid());
        CHECK(is_moy(w));
    }
}

TEST_CASE("generic standard_web front end") {
    CHECK(standard_web("circle", {{"k", 2}}, std::nullopt, 3) == circle(2, 3));
    CHECK(standard_web("3", {{"m", 1}, {"n", 1}}, std::nullopt, 2) == digon(1, 1, 2));
    CHECK(standard_web("7", {{"m", 1}, {"n", 1}, {"l", 1}, {"k", 1}}, 0, 4) ==
          square_grid_flip(1, 1, 1, 0, 4));
    CHECK_THROWS_AS(standard_web("nonagon", {}, std::nullopt, 3), WebError);
    CHECK_THROWS_AS(standard_web("circle", {}, std::nullopt, 3), WebError);
}

TEST_CASE("random generator produces valid closed MOY diagrams deterministically") {
    const auto a = random_closed_diagrams(123, 20, 4);
    const auto b = random_closed_diagrams(123, 20, 4);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
        CHECK(a[i].closed());
        CHECK(a[i].is_valid());
        CHECK(is_moy(a[i]));
        CHECK(a[i].slices().size() <= 6);
        CHECK(a[i].rank() <= 4);
    }
}
