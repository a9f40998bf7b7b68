#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "adg/algorithms.hpp"
#include "adg/covering.hpp"

using namespace adg;

namespace {
const Field f3 = Field::from_order(3);
}

TEST_CASE("prefix projections are coverings") {
    CoverReport r = verify_covering(projection_map(Family::D, 5, 3, f3));
    REQUIRE(r.pass);
    REQUIRE_FALSE(r.certificate.has_value());
    REQUIRE(r.checked == 486);

    REQUIRE(verify_covering(projection_map(Family::A, 6, 2, f3)).pass);
    REQUIRE(verify_covering(projection_map(Family::D, 4, 2, Field::from_order(4))).pass);
}

TEST_CASE("odd-coordinate selection maps D onto A") {
    CoordinateMap map = d_to_a_map(2, f3);
    REQUIRE(map.source.family() == Family::D);
    REQUIRE(map.source.n() == 5);
    REQUIRE(map.target.family() == Family::A);
    REQUIRE(map.target.n() == 4);
    REQUIRE(map.index_map == std::vector<std::uint32_t>{1, 2, 3, 5});

    Vertex v{Side::point, {0, 1, 2, 0, 1}};
    Vertex image = apply_map(map, v);
    REQUIRE(image.coords == std::vector<Fe>{0, 1, 2, 1});
    REQUIRE(image.side == Side::point);

    REQUIRE(verify_covering(map).pass);
    REQUIRE(verify_covering(d_to_a_map(1, f3)).pass);
    REQUIRE(verify_covering(d_to_a_map(2, Field::from_order(4))).pass);
}

TEST_CASE("a wrong coordinate selection is caught with a least certificate") {
    CoordinateMap bad = make_coordinate_map(ImplicitGraph::make(Family::D, 5, f3),
                                            ImplicitGraph::make(Family::A, 4, f3),
                                            {1, 2, 3, 4});
    CoverReport r = verify_covering(bad);
    REQUIRE_FALSE(r.pass);
    REQUIRE(r.certificate.has_value());
    REQUIRE(r.certificate->condition == "neighborhood image mismatch");
    REQUIRE(r.certificate->vertex == 3);
    REQUIRE_FALSE(r.certificate->in_target);
    REQUIRE(r.checked == 4);
}

TEST_CASE("sampled verification") {
    CoverPolicy sampled{CoverPolicy::Kind::sampled, 500, 42};
    CoverReport ok = verify_covering(projection_map(Family::D, 5, 3, f3), sampled);
    REQUIRE(ok.pass);
    REQUIRE(ok.checked == 500);

    CoordinateMap bad = make_coordinate_map(ImplicitGraph::make(Family::D, 5, f3),
                                            ImplicitGraph::make(Family::A, 4, f3),
                                            {1, 2, 3, 4});
    CoverReport r = verify_covering(bad, CoverPolicy{CoverPolicy::Kind::sampled,
                                                     kDefaultSampleCount, kDefaultSeed});
    REQUIRE_FALSE(r.pass);
    REQUIRE(r.certificate.has_value());

    // Same seed, same transcript.
    CoverReport r2 = verify_covering(bad, CoverPolicy{CoverPolicy::Kind::sampled,
                                                      kDefaultSampleCount, kDefaultSeed});
    REQUIRE(r2.checked == r.checked);
    REQUIRE(r2.certificate->vertex == r.certificate->vertex);
}

TEST_CASE("zero-padded preimages map back") {
    CoordinateMap map = d_to_a_map(2, f3);
    for (VertexId t = 0; t < map.target.num_vertices(); t += 17) {
        Vertex pre = detail::zero_pad_preimage(map, map.target.decode(t));
        REQUIRE(apply_map(map, map.source.encode(pre)) == t);
    }
}

TEST_CASE("composition") {
    CoordinateMap d6_to_d4 = projection_map(Family::D, 6, 4, f3);
    CoordinateMap d4_to_d2 = projection_map(Family::D, 4, 2, f3);
    CoordinateMap d6_to_d2 = compose_maps(d6_to_d4, d4_to_d2);
    REQUIRE(d6_to_d2.index_map == std::vector<std::uint32_t>{1, 2});
    REQUIRE(verify_covering(d6_to_d2).pass);

    CoordinateMap d7_to_d5 = projection_map(Family::D, 7, 5, f3);
    CoordinateMap d7_to_a4 = compose_maps(d7_to_d5, d_to_a_map(2, f3));
    REQUIRE(d7_to_a4.index_map == std::vector<std::uint32_t>{1, 2, 3, 5});
    REQUIRE(d7_to_a4.source.n() == 7);
    REQUIRE(d7_to_a4.target.family() == Family::A);
    REQUIRE(verify_covering(d7_to_a4).pass);

    REQUIRE_THROWS_AS(compose_maps(d6_to_d4, projection_map(Family::D, 5, 3, f3)),
                      invalid_input);
}

TEST_CASE("map validation") {
    ImplicitGraph d5 = ImplicitGraph::make(Family::D, 5, f3);
    ImplicitGraph a4 = ImplicitGraph::make(Family::A, 4, f3);
    REQUIRE_THROWS_AS(
        make_coordinate_map(d5, ImplicitGraph::make(Family::A, 4, Field::from_order(5)),
                            {1, 2, 3, 5}),
        invalid_input);
    REQUIRE_THROWS_AS(make_coordinate_map(d5, a4, {2, 1, 3, 5}), invalid_input);
    REQUIRE_THROWS_AS(make_coordinate_map(d5, a4, {1, 2, 3, 3}), invalid_input);
    REQUIRE_THROWS_AS(make_coordinate_map(d5, a4, {1, 2, 3, 9}), invalid_input);
    REQUIRE_THROWS_AS(make_coordinate_map(d5, a4, {1, 2, 3, 0}), invalid_input);
    REQUIRE_THROWS_AS(make_coordinate_map(d5, a4, {1, 2, 3}), invalid_input);
    REQUIRE_THROWS_AS(
        make_coordinate_map(ImplicitGraph::make(Family::D, 3, f3), a4, {1, 2, 3, 4}),
        invalid_input);
    REQUIRE_THROWS_AS(projection_map(Family::D, 5, 1, f3), invalid_input);
    REQUIRE_THROWS_AS(d_to_a_map(0, f3), invalid_input);

    CoordinateMap map = d_to_a_map(2, f3);
    REQUIRE_THROWS_AS(apply_map(map, Vertex{Side::point, {0, 1}}), invalid_input);
}

TEST_CASE("exhaustive verification refuses oversized sources") {
    REQUIRE_THROWS_AS(verify_covering(d_to_a_map(6, f3)), size_refusal);
    REQUIRE_THROWS_AS(verify_covering(d_to_a_map(2, f3), CoverPolicy{}, 10), size_refusal);
    // The same map is still checkable by sampling.
    CoverPolicy sampled{CoverPolicy::Kind::sampled, 200, 7};
    REQUIRE(verify_covering(d_to_a_map(6, f3), sampled).pass);
}

TEST_CASE("cycles in the source project to closed walks in the base") {
    CoordinateMap map = d_to_a_map(2, f3);
    GirthReport r = girth(map.source, 18);
    REQUIRE(r.value == 12);
    std::vector<VertexId> image;
    for (VertexId v : r.witness) image.push_back(apply_map(map, v));
    for (std::size_t i = 0; i < image.size(); ++i)
        REQUIRE(map.target.adjacent(image[i], image[(i + 1) % image.size()]));
    // Covering pulls girth upward: the base reaches its girth at most here.
    REQUIRE(girth(map.target, 16).value == 8);
}
