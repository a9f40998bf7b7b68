#pragma once

// Coordinate-selection maps between implicit graphs and verification of the
// covering-map property (surjective on vertices, local bijection on every
// neighborhood). Two constructions are provided: prefix projections
// (p_1..p_n) -> (p_1..p_m), and the odd-coordinate selection that maps
// D(2k+1,q) onto A(k+2,q).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "adg/errors.hpp"
#include "adg/graph.hpp"

namespace adg {

inline constexpr std::uint64_t kDefaultSampleCount = 100000;

struct CoordinateMap {
    ImplicitGraph source;
    ImplicitGraph target;
    std::vector<std::uint32_t> index_map;  // 1-based source index per target coordinate
};

// Validates the selection-map invariants shared by all constructions.
inline CoordinateMap make_coordinate_map(ImplicitGraph source, ImplicitGraph target,
                                         std::vector<std::uint32_t> index_map) {
    if (!(source.field() == target.field()))
        throw invalid_input("covering maps require the same field on both sides");
    const std::uint32_t n = source.n(), m = target.n();
    if (m > n) throw invalid_input("target dimension exceeds source dimension");
    if (index_map.size() != m)
        throw invalid_input("index map must assign one source coordinate per target coordinate");
    if (index_map.empty() || index_map[0] != 1)
        throw invalid_input("index map must keep the first coordinate (index_map[1] = 1)");
    std::vector<bool> used(n + 1, false);
    for (std::uint32_t i : index_map) {
        if (i < 1 || i > n) throw invalid_input("index map entry out of [1, n]");
        if (used[i]) throw invalid_input("index map entries must be distinct");
        used[i] = true;
    }
    return CoordinateMap{std::move(source), std::move(target), std::move(index_map)};
}

// (p_1, ..., p_n) -> (p_1, ..., p_m). The target runs the first m-1 equations
// of the source family, which for the builtin families is the same family at
// dimension m.
inline CoordinateMap projection_map(Family family, std::uint32_t n, std::uint32_t m,
                                    const Field& field) {
    if (m < 2 || m > n) throw invalid_input("projection needs 2 <= m <= n");
    std::vector<std::uint32_t> idx(m);
    for (std::uint32_t i = 0; i < m; ++i) idx[i] = i + 1;
    return make_coordinate_map(ImplicitGraph::make(family, n, field),
                               ImplicitGraph::make(family, m, field), std::move(idx));
}

// D(2k+1, q) -> A(k+2, q), selecting coordinates 1, 2, 3, 5, ..., 2k+1.
inline CoordinateMap d_to_a_map(std::uint32_t k, const Field& field) {
    if (k < 1) throw invalid_input("d-to-a map needs k >= 1");
    std::vector<std::uint32_t> idx;
    idx.reserve(k + 2);
    idx.push_back(1);
    idx.push_back(2);
    for (std::uint32_t j = 1; j <= k; ++j) idx.push_back(2 * j + 1);
    return make_coordinate_map(ImplicitGraph::make(Family::D, 2 * k + 1, field),
                               ImplicitGraph::make(Family::A, k + 2, field), std::move(idx));
}

inline Vertex apply_map(const CoordinateMap& map, const Vertex& v) {
    if (v.coords.size() != map.source.n())
        throw invalid_input("vertex does not belong to the source graph");
    Vertex out;
    out.side = v.side;
    out.coords.resize(map.index_map.size());
    for (std::size_t i = 0; i < map.index_map.size(); ++i)
        out.coords[i] = v.coords[map.index_map[i] - 1];
    return out;
}

inline VertexId apply_map(const CoordinateMap& map, VertexId v) {
    return map.target.encode(apply_map(map, map.source.decode(v)));
}

struct CoverPolicy {
    enum class Kind { exhaustive, sampled };
    Kind kind = Kind::exhaustive;
    std::uint64_t count = kDefaultSampleCount;  // sampled only
    std::uint64_t seed = kDefaultSeed;          // sampled only
};

struct CoverCertificate {
    std::string condition;
    VertexId vertex = 0;       // least offending id
    bool in_target = false;    // certificate names a target vertex (missing preimage)
};

struct CoverReport {
    bool pass = true;
    std::optional<CoverCertificate> certificate;
    std::uint64_t checked = 0;  // vertices examined
};

namespace detail {

// Zero-padding preimage: target coordinates placed at their selected source
// positions, everything else 0. Valid because selection maps are injective on
// coordinates.
inline Vertex zero_pad_preimage(const CoordinateMap& map, const Vertex& t) {
    Vertex v;
    v.side = t.side;
    v.coords.assign(map.source.n(), 0);
    for (std::size_t i = 0; i < map.index_map.size(); ++i)
        v.coords[map.index_map[i] - 1] = t.coords[i];
    return v;
}

// Neighborhood check at one source vertex: images of the q oracle neighbors
// must equal the q neighbors of the image, as sets of target ids.
inline bool neighborhood_matches(const CoordinateMap& map, VertexId v,
                                 std::vector<VertexId>& nb, std::vector<VertexId>& image,
                                 std::vector<VertexId>& target_nb) {
    const VertexId tv = apply_map(map, v);
    map.source.neighbors(v, nb);
    image.clear();
    for (VertexId w : nb) image.push_back(apply_map(map, w));
    map.target.neighbors(tv, target_nb);
    std::sort(image.begin(), image.end());
    std::sort(target_nb.begin(), target_nb.end());
    return image == target_nb;
}

}  // namespace detail

inline CoverReport verify_covering(const CoordinateMap& map,
                                   const CoverPolicy& policy = CoverPolicy{},
                                   std::uint64_t budget = kDefaultMemBudget) {
    CoverReport report;
    std::vector<VertexId> nb, image, target_nb;
    if (policy.kind == CoverPolicy::Kind::exhaustive) {
        const std::uint64_t sv = map.source.num_vertices();
        const std::uint64_t tv = map.target.num_vertices();
        if (sv > 1000000)
            throw size_refusal("exhaustive covering check limited to source order <= 10^6");
        require_budget(tv / 8 + 64, budget, "covering image bitset");
        std::vector<std::uint64_t> hit((tv + 63) / 64, 0);
        for (VertexId v = 0; v < sv; ++v) {
            const VertexId t = apply_map(map, v);
            hit[t >> 6] |= 1ull << (t & 63);
            if (!detail::neighborhood_matches(map, v, nb, image, target_nb)) {
                report.pass = false;
                report.certificate = CoverCertificate{"neighborhood image mismatch", v, false};
                report.checked = v + 1;
                return report;
            }
            ++report.checked;
        }
        for (VertexId t = 0; t < tv; ++t) {
            if (!(hit[t >> 6] & (1ull << (t & 63)))) {
                report.pass = false;
                report.certificate = CoverCertificate{"target vertex has no preimage", t, true};
                return report;
            }
        }
        return report;
    }
    // Sampled policy: reproducible spot checks driven by one seed.
    std::mt19937_64 rng(policy.seed);
    const std::uint64_t sv = map.source.num_vertices();
    const std::uint64_t tv = map.target.num_vertices();
    for (std::uint64_t i = 0; i < policy.count; ++i) {
        const VertexId v = rng() % sv;
        if (!detail::neighborhood_matches(map, v, nb, image, target_nb)) {
            report.pass = false;
            report.certificate = CoverCertificate{"neighborhood image mismatch", v, false};
            report.checked = i + 1;
            return report;
        }
        const VertexId t = rng() % tv;
        const Vertex pre = detail::zero_pad_preimage(map, map.target.decode(t));
        if (apply_map(map, map.source.encode(pre)) != t) {
            report.pass = false;
            report.certificate = CoverCertificate{"zero-padded preimage does not map back", t, true};
            report.checked = i + 1;
            return report;
        }
        ++report.checked;
    }
    return report;
}

// Composition (source of inner) -> (target of outer); outer must start where
// inner lands. Composition of covering maps is again a covering map.
inline CoordinateMap compose_maps(const CoordinateMap& inner, const CoordinateMap& outer) {
    if (inner.target.n() != outer.source.n() || !(inner.target.field() == outer.source.field()))
        throw invalid_input("maps do not compose: inner target and outer source differ");
    std::vector<std::uint32_t> idx(outer.index_map.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        idx[i] = inner.index_map[outer.index_map[i] - 1];
    return make_coordinate_map(inner.source, outer.target, std::move(idx));
}

}  // namespace adg
