#pragma once

// Traversal machinery over the implicit graphs: BFS layering, shortest cycle
// through a vertex, girth (full scan or single-source), connected components,
// and the distance-layer shape checker for the A family. All algorithms
// consume the neighbor oracle; nothing materializes adjacency.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adg/errors.hpp"
#include "adg/graph.hpp"

namespace adg {

inline constexpr std::uint32_t kUnreached = ~std::uint32_t{0};

struct BfsResult {
    VertexId root = 0;
    std::vector<std::uint32_t> dist;      // indexed by VertexId, kUnreached if not seen
    std::vector<std::uint64_t> layer_sizes;
    std::vector<VertexId> parent;         // filled only when requested
    std::uint64_t scanned = 0;            // vertices expanded
};

inline BfsResult bfs_layers(const ImplicitGraph& g, VertexId root, std::uint32_t max_depth,
                            bool want_parent = false,
                            std::uint64_t budget = kDefaultMemBudget) {
    const std::uint64_t nv = g.num_vertices();
    if (root >= nv) throw invalid_input("root vertex id out of range");
    require_budget(nv * (want_parent ? 12 : 4) + 16 * g.num_points(), budget, "BFS arrays");
    BfsResult r;
    r.root = root;
    r.dist.assign(nv, kUnreached);
    if (want_parent) r.parent.assign(nv, kNoVertex);
    std::vector<VertexId> cur{root}, nxt, nb;
    r.dist[root] = 0;
    r.layer_sizes.push_back(1);
    std::uint32_t d = 0;
    while (!cur.empty() && d < max_depth) {
        nxt.clear();
        for (VertexId v : cur) {
            ++r.scanned;
            g.neighbors(v, nb);
            for (VertexId w : nb) {
                if (r.dist[w] != kUnreached) continue;
                r.dist[w] = d + 1;
                if (want_parent) r.parent[w] = v;
                nxt.push_back(w);
            }
        }
        ++d;
        if (!nxt.empty()) r.layer_sizes.push_back(nxt.size());
        cur.swap(nxt);
    }
    return r;
}

struct GirthReport {
    std::optional<std::uint64_t> value;   // nullopt: no cycle of length < cap found
    std::uint64_t cap = 0;
    std::vector<VertexId> witness;        // closed cycle, witness[0] minimal id
    std::uint64_t scanned = 0;            // total vertices expanded
};

namespace detail {

// Reusable stamped-BFS workspace. Each vertex is stamped with the first
// coordinate of its depth-1 ancestor; an edge between consecutive BFS levels
// whose endpoints carry different stamps closes a cycle through the root (the
// two ancestor chains share only the root). The first such event, met in
// level order, has the minimum value 2(d+1) over the whole run, which equals
// the length of the shortest cycle through the root.
class CycleSearch {
  public:
    CycleSearch(const ImplicitGraph& g, std::uint64_t budget) : g_(g) {
        const std::uint64_t nv = g.num_vertices();
        require_budget(nv * 12 + 16 * g.num_points(), budget, "cycle search arrays");
        dist_.assign(nv, 0);
        stamp_.assign(nv, 0);
        mark_.assign(nv, 0);
        budget_ = budget;
    }

    // Shortest cycle through root of length < cap, else nullopt. Deterministic:
    // levels in discovery order, neighbors in first-coordinate order.
    std::optional<std::uint64_t> run(VertexId root, std::uint64_t cap, bool want_witness,
                                     std::vector<VertexId>* witness, std::uint64_t& scanned) {
        if (cap % 2 != 0 || cap < 4) throw invalid_input("cycle cap must be even and >= 4");
        if (want_witness && parent_.empty()) {
            require_budget(g_.num_vertices() * 20 + 16 * g_.num_points(), budget_,
                           "cycle witness arrays");
            parent_.assign(g_.num_vertices(), kNoVertex);
        }
        if (++epoch_ == 0) {  // wrapped: stale marks must not alias the new epoch
            std::fill(mark_.begin(), mark_.end(), 0);
            epoch_ = 1;
        }
        mark_[root] = epoch_;
        dist_[root] = 0;
        cur_.assign(1, root);
        for (std::uint32_t d = 0; !cur_.empty() && 2 * (d + 1ull) < cap; ++d) {
            nxt_.clear();
            for (VertexId v : cur_) {
                ++scanned;
                g_.neighbors(v, nb_);
                for (VertexId w : nb_) {
                    if (mark_[w] != epoch_) {
                        mark_[w] = epoch_;
                        dist_[w] = d + 1;
                        stamp_[w] = d == 0 ? g_.first_coord(w) : stamp_[v];
                        if (want_witness) parent_[w] = v;
                        nxt_.push_back(w);
                        continue;
                    }
                    // dist_[w] == d-1 is the edge already counted from w's
                    // side; dist_[w] == d cannot happen (sides alternate).
                    if (dist_[w] != d + 1 || d == 0) continue;
                    if (stamp_[w] == stamp_[v]) continue;
                    if (want_witness) build_witness(root, v, w, *witness);
                    return 2 * (d + 1ull);
                }
            }
            cur_.swap(nxt_);
        }
        return std::nullopt;
    }

  private:
    void build_witness(VertexId root, VertexId v, VertexId w, std::vector<VertexId>& out) const {
        std::vector<VertexId> left;  // root .. v
        for (VertexId u = v; u != kNoVertex; u = parent_[u]) left.push_back(u);
        assert(left.back() == root);
        out.assign(left.rbegin(), left.rend());
        for (VertexId u = w; u != root; u = parent_[u]) out.push_back(u);
        canonicalize_cycle(out);
    }

    // Rotate so the least id leads, then orient toward the smaller second
    // element; makes the reported cycle independent of search internals.
    static void canonicalize_cycle(std::vector<VertexId>& c) {
        const std::size_t L = c.size();
        std::size_t m = 0;
        for (std::size_t i = 1; i < L; ++i)
            if (c[i] < c[m]) m = i;
        std::vector<VertexId> out(L);
        const VertexId fwd = c[(m + 1) % L], bwd = c[(m + L - 1) % L];
        if (fwd <= bwd)
            for (std::size_t i = 0; i < L; ++i) out[i] = c[(m + i) % L];
        else
            for (std::size_t i = 0; i < L; ++i) out[i] = c[(m + L - i) % L];
        c.swap(out);
    }

    const ImplicitGraph& g_;
    std::uint64_t budget_ = kDefaultMemBudget;
    std::vector<std::uint32_t> dist_, stamp_, mark_;
    std::vector<VertexId> parent_, cur_, nxt_, nb_;
    std::uint32_t epoch_ = 0;
};

}  // namespace detail

// Shortest cycle containing v, reported exactly when < cap.
inline GirthReport shortest_cycle_through(const ImplicitGraph& g, VertexId v, std::uint64_t cap,
                                          bool want_witness = true,
                                          std::uint64_t budget = kDefaultMemBudget) {
    if (v >= g.num_vertices()) throw invalid_input("root vertex id out of range");
    detail::CycleSearch search(g, budget);
    GirthReport r;
    r.cap = cap;
    r.value = search.run(v, cap, want_witness, &r.witness, r.scanned);
    return r;
}

enum class GirthMode { full, single_source };

// Full mode scans every point root (any shortest cycle in a bipartite graph
// contains a point); the cap shrinks as better cycles appear. Single-source
// mode runs from the all-zero point only and is valid when the caller asserts
// vertex-transitivity.
inline GirthReport girth(const ImplicitGraph& g, std::uint64_t cap,
                         GirthMode mode = GirthMode::full,
                         std::uint64_t budget = kDefaultMemBudget) {
    if (cap % 2 != 0 || cap < 4) throw invalid_input("girth cap must be even and >= 4");
    if (mode == GirthMode::single_source) return shortest_cycle_through(g, 0, cap, true, budget);
    detail::CycleSearch search(g, budget);
    GirthReport r;
    r.cap = cap;
    VertexId best_root = kNoVertex;
    std::uint64_t limit = cap;
    for (VertexId root = 0; root < g.num_points(); ++root) {
        auto found = search.run(root, limit, false, nullptr, r.scanned);
        if (found && (!r.value || *found < *r.value)) {
            r.value = found;
            best_root = root;
            limit = *found;  // only strictly shorter cycles matter now
            if (*found == 4) break;  // bipartite minimum, cannot improve
        }
    }
    if (r.value) {
        std::uint64_t ignored = 0;
        auto again = search.run(best_root, *r.value + 2, true, &r.witness, ignored);
        assert(again && *again == *r.value);
        (void)again;
    }
    return r;
}

struct ComponentSummary {
    std::uint64_t count = 0;
    std::vector<std::uint64_t> sizes;  // ascending
};

// Repeated BFS over the id space with a flat visited bitset.
inline ComponentSummary components(const ImplicitGraph& g,
                                   std::uint64_t budget = kDefaultMemBudget) {
    const std::uint64_t nv = g.num_vertices();
    require_budget(nv / 8 + 16 * g.num_points() + 64, budget, "component scan");
    std::vector<std::uint64_t> seen((nv + 63) / 64, 0);
    auto test_and_set = [&seen](VertexId v) {
        std::uint64_t& word = seen[v >> 6];
        const std::uint64_t bit = 1ull << (v & 63);
        if (word & bit) return true;
        word |= bit;
        return false;
    };
    ComponentSummary out;
    std::vector<VertexId> cur, nxt, nb;
    for (VertexId root = 0; root < nv; ++root) {
        if (seen[root >> 6] & (1ull << (root & 63))) continue;
        test_and_set(root);
        std::uint64_t size = 0;
        cur.assign(1, root);
        while (!cur.empty()) {
            nxt.clear();
            for (VertexId v : cur) {
                ++size;
                g.neighbors(v, nb);
                for (VertexId w : nb)
                    if (!test_and_set(w)) nxt.push_back(w);
            }
            cur.swap(nxt);
        }
        out.sizes.push_back(size);
        ++out.count;
    }
    std::sort(out.sizes.begin(), out.sizes.end());
    return out;
}

struct ComponentLabels {
    std::uint32_t count = 0;
    std::vector<std::uint32_t> label;   // indexed by VertexId, discovery order
    std::vector<std::uint64_t> sizes;   // by label
    std::vector<VertexId> roots;        // least id per component, by label
};

inline ComponentLabels component_labels(const ImplicitGraph& g,
                                        std::uint64_t budget = kDefaultMemBudget) {
    const std::uint64_t nv = g.num_vertices();
    require_budget(nv * 4 + 16 * g.num_points() + 64, budget, "component labels");
    ComponentLabels out;
    out.label.assign(nv, ~std::uint32_t{0});
    std::vector<VertexId> cur, nxt, nb;
    for (VertexId root = 0; root < nv; ++root) {
        if (out.label[root] != ~std::uint32_t{0}) continue;
        const std::uint32_t id = out.count++;
        out.roots.push_back(root);
        out.label[root] = id;
        std::uint64_t size = 0;
        cur.assign(1, root);
        while (!cur.empty()) {
            nxt.clear();
            for (VertexId v : cur) {
                ++size;
                g.neighbors(v, nb);
                for (VertexId w : nb) {
                    if (out.label[w] != ~std::uint32_t{0}) continue;
                    out.label[w] = id;
                    nxt.push_back(w);
                }
            }
            cur.swap(nxt);
        }
        out.sizes.push_back(size);
    }
    return out;
}

struct ShapeCounterexample {
    VertexId id = 0;
    std::uint32_t dist = 0;
    std::string reason;
};

// BFS from the all-zero point; every vertex at distance j in [2, max_j] must
// have zero coordinates past position j, a nonzero coordinate j-1, and lie on
// the side matching the parity of j. Returns the least-id counterexample.
inline std::optional<ShapeCounterexample> layer_shape_check(
    const ImplicitGraph& g, std::uint32_t max_j, std::uint64_t budget = kDefaultMemBudget) {
    if (g.family() != Family::A)
        throw invalid_input("layer shape check applies to the A family only");
    if (max_j > g.n()) throw invalid_input("max layer exceeds graph dimension n");
    BfsResult bfs = bfs_layers(g, 0, max_j, false, budget);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        const std::uint32_t j = bfs.dist[v];
        if (j == kUnreached || j < 2 || j > max_j) continue;
        const Vertex vert = g.decode(v);
        const bool want_line = j % 2 == 1;
        if ((vert.side == Side::line) != want_line)
            return ShapeCounterexample{v, j, "side does not match distance parity"};
        for (std::uint32_t i = j; i < g.n(); ++i)
            if (vert.coords[i] != 0)
                return ShapeCounterexample{
                    v, j, "coordinate " + std::to_string(i + 1) + " nonzero past layer index"};
        if (vert.coords[j - 2] == 0)
            return ShapeCounterexample{
                v, j, "coordinate " + std::to_string(j - 1) + " is zero"};
    }
    return std::nullopt;
}

// Oracle sweep over all points; must equal the q^{n+1} formula.
inline std::uint64_t edge_count_sweep(const ImplicitGraph& g) {
    std::uint64_t total = 0;
    std::vector<VertexId> nb;
    for (VertexId p = 0; p < g.num_points(); ++p) {
        g.neighbors(p, nb);
        total += nb.size();
    }
    return total;
}

}  // namespace adg
