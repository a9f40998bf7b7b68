#pragma once

// Turán-type bound formulas for graphs with no odd cycle of length <= 2k+1,
// and the per-component comparison table: each component of a graph is scored
// against the lower-bound formula at its own order.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "adg/algorithms.hpp"
#include "adg/errors.hpp"
#include "adg/graph.hpp"

namespace adg {

struct TuranBound {
    std::uint64_t n = 0;  // vertex count the bound is evaluated at
    std::uint32_t k = 0;  // forbids cycles of length <= 2k+1
    std::uint32_t epsilon = 0;
    double lower = 0.0;   // n^{1 + 2/(3k-3+eps)} / 2^{1+1/k}
    double upper = 0.0;   // n^{1+1/k} / 2^{1+1/k} + n/2
};

inline TuranBound turan_bounds(std::uint64_t n, std::uint32_t k) {
    if (n < 2) throw invalid_input("bound requires n >= 2");
    if (k < 2) throw invalid_input("bound requires k >= 2");
    TuranBound b;
    b.n = n;
    b.k = k;
    b.epsilon = k % 2 == 0 ? 1 : 0;
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    const double denom = std::pow(2.0, 1.0 + 1.0 / kd);
    b.lower = std::pow(nd, 1.0 + 2.0 / (3.0 * kd - 3.0 + b.epsilon)) / denom;
    b.upper = std::pow(nd, 1.0 + 1.0 / kd) / denom + nd / 2.0;
    return b;
}

struct ComponentRow {
    std::uint32_t index = 0;          // discovery order
    VertexId root = 0;                // least vertex id in the component
    std::uint64_t order = 0;          // vertices
    std::uint64_t edges = 0;          // order * q / 2 (q-regular)
    std::optional<std::uint64_t> girth;  // absent: no cycle of length < cap
    std::optional<std::uint32_t> k;      // (girth - 2) / 2 when girth >= 6
    std::optional<double> lower;         // edge-count lower bound at (order, k)
    std::optional<double> ratio;         // edges / lower
};

struct ComponentReport {
    std::uint64_t cap = 0;
    std::vector<ComponentRow> rows;   // discovery order
    std::uint64_t scanned = 0;
};

// Component girth = min over the component's point roots of the shortest
// cycle through the root; the per-component cap shrinks as cycles are found.
inline ComponentReport component_report(const ImplicitGraph& g, std::uint64_t cap,
                                        std::uint64_t budget = kDefaultMemBudget) {
    if (cap % 2 != 0 || cap < 4) throw invalid_input("girth cap must be even and >= 4");
    ComponentReport rep;
    rep.cap = cap;
    const ComponentLabels labels = component_labels(g, budget);
    rep.rows.resize(labels.count);
    std::vector<std::uint64_t> limit(labels.count, cap);
    std::vector<std::uint64_t> best(labels.count, 0);
    detail::CycleSearch search(g, budget);
    for (VertexId root = 0; root < g.num_points(); ++root) {
        const std::uint32_t c = labels.label[root];
        auto found = search.run(root, limit[c], false, nullptr, rep.scanned);
        if (found && (best[c] == 0 || *found < best[c])) {
            best[c] = *found;
            limit[c] = *found;
        }
    }
    for (std::uint32_t c = 0; c < labels.count; ++c) {
        ComponentRow& row = rep.rows[c];
        row.index = c;
        row.root = labels.roots[c];
        row.order = labels.sizes[c];
        row.edges = row.order * g.q() / 2;
        if (best[c] == 0) continue;  // no cycle below cap; bound columns stay absent
        row.girth = best[c];
        if (best[c] >= 6) {
            row.k = static_cast<std::uint32_t>((best[c] - 2) / 2);
            row.lower = turan_bounds(row.order, *row.k).lower;
            row.ratio = static_cast<double>(row.edges) / *row.lower;
        }
    }
    return rep;
}

}  // namespace adg
