#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>
#include <vector>

#include "adg/graph.hpp"

using namespace adg;

namespace {

ImplicitGraph make_graph(Family fam, std::uint32_t n, std::uint64_t q) {
    return ImplicitGraph::make(fam, n, Field::from_order(q));
}

}  // namespace

TEST_CASE("orders and degrees") {
    ImplicitGraph g = make_graph(Family::D, 2, 3);
    REQUIRE(g.num_points() == 9);
    REQUIRE(g.num_vertices() == 18);
    REQUIRE(g.degree() == 3);
    REQUIRE(g.num_edges() == 27);

    REQUIRE(make_graph(Family::D, 4, 5).num_vertices() == 1250);
    REQUIRE(make_graph(Family::D, 6, 2).num_vertices() == 128);
}

TEST_CASE("vertex ids are mixed radix with points first") {
    ImplicitGraph g = make_graph(Family::D, 3, 3);
    REQUIRE(g.encode(Vertex{Side::point, {0, 0, 0}}) == 0);
    REQUIRE(g.encode(Vertex{Side::line, {0, 0, 0}}) == 27);
    REQUIRE(g.encode(Vertex{Side::point, {1, 1, 1}}) == 13);
    REQUIRE(g.encode(Vertex{Side::line, {2, 1, 1}}) == 41);
    REQUIRE(g.first_coord(13) == 1);
    REQUIRE(g.first_coord(41) == 2);
    REQUIRE(g.is_point(13));
    REQUIRE_FALSE(g.is_point(41));
    REQUIRE(g.label(13) == "P(1,1,1)");
    REQUIRE(g.label(41) == "L(2,1,1)");

    for (VertexId id = 0; id < g.num_vertices(); ++id)
        REQUIRE(g.encode(g.decode(id)) == id);

    REQUIRE_THROWS_AS(g.decode(54), invalid_input);
    REQUIRE_THROWS_AS(g.encode(Vertex{Side::point, {1, 1}}), invalid_input);
    REQUIRE_THROWS_AS(g.encode(Vertex{Side::point, {3, 0, 0}}), invalid_input);
    REQUIRE_THROWS_AS(g.neighbor(0, 3), invalid_input);
}

TEST_CASE("known incidences") {
    // All-zero point meets exactly the lines [x,0,...,0].
    ImplicitGraph a5 = make_graph(Family::A, 5, 3);
    for (Fe x = 0; x < 3; ++x) {
        REQUIRE(a5.neighbor(0, x) == a5.encode(Vertex{Side::line, {x, 0, 0, 0, 0}}));
        // And from such a line, the point with first coordinate y is (y, y*x, 0...).
        VertexId l = a5.neighbor(0, x);
        for (Fe y = 0; y < 3; ++y) {
            Fe prod = static_cast<Fe>((y * x) % 3);
            REQUIRE(a5.neighbor(l, y) ==
                    a5.encode(Vertex{Side::point, {y, prod, 0, 0, 0}}));
        }
    }

    ImplicitGraph a3 = make_graph(Family::A, 3, 3);
    VertexId p = a3.encode(Vertex{Side::point, {1, 1, 1}});
    REQUIRE(a3.neighbor(p, 2) == a3.encode(Vertex{Side::line, {2, 1, 0}}));

    ImplicitGraph d2 = make_graph(Family::D, 2, 3);
    std::vector<VertexId> nb = d2.neighbors(0);
    REQUIRE(nb == std::vector<VertexId>{9, 10, 11});

    ImplicitGraph d3 = make_graph(Family::D, 3, 3);
    REQUIRE_FALSE(d3.adjacent(13, 41));
    REQUIRE(d3.adjacent(13, d3.neighbor(13, 2)));
}

TEST_CASE("incidence is a side-symmetric perfect matching per first coordinate") {
    for (const char* des : {"D:2:3", "D:3:3", "A:4:3", "D:2:4", "D:3:4",
                            "D:2:5", "D:4:2", "A:5:2", "D:2:8", "D:2:9"}) {
        GraphDesignator d = parse_designator(des);
        ImplicitGraph g = ImplicitGraph::make(d.family, d.n, Field::from_order(d.q));
        INFO(des);
        std::vector<VertexId> nb;
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            g.neighbors(v, nb);
            REQUIRE(nb.size() == g.q());
            std::set<VertexId> uniq(nb.begin(), nb.end());
            REQUIRE(uniq.size() == g.q());
            for (VertexId w : nb) {
                REQUIRE(g.is_point(w) != g.is_point(v));
                // The edge can be recovered from either endpoint.
                REQUIRE(g.neighbor(w, g.first_coord(v)) == v);
                REQUIRE(g.adjacent(v, w));
                REQUIRE(g.adjacent(w, v));
            }
        }
    }
}

TEST_CASE("custom systems reproduce builtins") {
    Field f3 = Field::from_order(3);
    ImplicitGraph builtin = ImplicitGraph::make(Family::D, 3, f3);
    ImplicitGraph custom = ImplicitGraph::custom(
        parse_system("p2 + l2 = p1*l1\np3 + l3 = p1*l2"), f3);
    REQUIRE(custom.family() == Family::custom);
    REQUIRE(custom.num_vertices() == builtin.num_vertices());
    for (VertexId v = 0; v < builtin.num_vertices(); ++v)
        for (Fe x = 0; x < 3; ++x)
            REQUIRE(custom.neighbor(v, x) == builtin.neighbor(v, x));
}

TEST_CASE("edgelist bytes are stable") {
    std::ostringstream os;
    make_graph(Family::D, 2, 2).write_edgelist(os);
    REQUIRE(os.str() ==
            "P0 L4\n"
            "P0 L5\n"
            "P1 L4\n"
            "P1 L7\n"
            "P2 L6\n"
            "P2 L7\n"
            "P3 L5\n"
            "P3 L6\n");
}

TEST_CASE("designator parsing") {
    GraphDesignator d = parse_designator("D:4:9");
    REQUIRE(d.family == Family::D);
    REQUIRE(d.n == 4);
    REQUIRE(d.q == 9);

    GraphDesignator a = parse_designator("A:2:1024");
    REQUIRE(a.family == Family::A);
    REQUIRE(a.q == 1024);

    for (const char* bad : {"X:3:3", "D:3", "D::3", "D:3:", "D:3:3:4", "d:3:3", "D:x:3"})
        REQUIRE_THROWS_AS(parse_designator(bad), invalid_input);
    REQUIRE_THROWS_AS(parse_designator("D:1:3"), invalid_input);
    REQUIRE_THROWS_AS(parse_designator("D:65:2"), invalid_input);
}

TEST_CASE("id space is capped at 63 bits") {
    Field f2 = Field::from_order(2);
    REQUIRE(ImplicitGraph::make(Family::D, 61, f2).num_points() == 1ull << 61);
    REQUIRE_THROWS_AS(ImplicitGraph::make(Family::D, 62, f2), size_refusal);
    REQUIRE_THROWS_AS(
        ImplicitGraph::make(Family::D, 9, Field::from_order(999999937)), size_refusal);
}
