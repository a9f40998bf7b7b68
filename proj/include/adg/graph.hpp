#pragma once

// Implicit bipartite graphs defined by equation systems over GF(q). Both
// vertex classes are copies of F_q^n; a point (p) and a line [l] are adjacent
// iff p_j + l_j = f_j(p_1, l_1, ..., p_{j-1}, l_{j-1}) for every j = 2..n.
// The graph is never materialized: vertex ids encode coordinate vectors in
// mixed radix q and adjacency is reconstructed on demand through the
// unique-neighbor oracle (fixing one endpoint and the first coordinate of the
// other determines the remaining coordinates by forward substitution).

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "adg/equations.hpp"
#include "adg/errors.hpp"
#include "adg/field.hpp"

namespace adg {

// Points occupy [0, q^n), lines [q^n, 2q^n). coords[0] is the least
// significant digit, so first_coord(v) is a single modulo.
using VertexId = std::uint64_t;
inline constexpr VertexId kNoVertex = ~VertexId{0};

enum class Side { point, line };

struct Vertex {
    Side side;
    std::vector<Fe> coords;
    bool operator==(const Vertex&) const = default;
};

class ImplicitGraph {
  public:
    static ImplicitGraph make(Family family, std::uint32_t n, Field field) {
        return ImplicitGraph(family, builtin_system(family, n), std::move(field));
    }

    static ImplicitGraph custom(EquationSystemSpec spec, Field field) {
        return ImplicitGraph(Family::custom, std::move(spec), std::move(field));
    }

    const Field& field() const { return field_; }
    const EquationSystemSpec& system() const { return spec_; }
    Family family() const { return family_; }
    std::uint32_t n() const { return n_; }
    std::uint64_t q() const { return field_.q(); }

    std::uint64_t num_points() const { return num_points_; }
    std::uint64_t num_vertices() const { return 2 * num_points_; }
    std::uint64_t degree() const { return field_.q(); }

    // q^(n+1): every point has exactly q incident lines.
    std::uint64_t num_edges() const {
        const std::uint64_t q = field_.q();
        if (num_points_ > ~std::uint64_t{0} / q)
            throw size_refusal("edge count would overflow a 64-bit integer");
        return num_points_ * q;
    }

    bool is_point(VertexId v) const {
        check_id(v);
        return v < num_points_;
    }

    Fe first_coord(VertexId v) const {
        check_id(v);
        return static_cast<Fe>((v < num_points_ ? v : v - num_points_) % field_.q());
    }

    VertexId encode(const Vertex& v) const {
        if (v.coords.size() != n_)
            throw invalid_input("vertex must have exactly n coordinates");
        for (Fe c : v.coords)
            if (c >= field_.q()) throw invalid_input("coordinate code not in [0, q)");
        return encode_coords(v.coords.data()) + (v.side == Side::line ? num_points_ : 0);
    }

    Vertex decode(VertexId id) const {
        check_id(id);
        Vertex v;
        v.side = id < num_points_ ? Side::point : Side::line;
        v.coords.resize(n_);
        std::uint64_t local = id < num_points_ ? id : id - num_points_;
        const std::uint64_t q = field_.q();
        for (std::uint32_t i = 0; i < n_; ++i) {
            v.coords[i] = static_cast<Fe>(local % q);
            local /= q;
        }
        return v;
    }

    // "P(0,2,1)" / "L(1,0,0)" with integer element codes.
    std::string label(VertexId id) const {
        Vertex v = decode(id);
        std::string s(v.side == Side::point ? "P(" : "L(");
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (i) s += ',';
            s += std::to_string(v.coords[i]);
        }
        s += ')';
        return s;
    }

    // The unique neighbor of v whose first coordinate is x. Symmetric in the
    // two sides: solving for the line through a point and for the point on a
    // line run the same substitution.
    VertexId neighbor(VertexId v, Fe x) const {
        check_id(v);
        if (x >= field_.q()) throw invalid_input("first coordinate code not in [0, q)");
        Fe vc[kMaxN], wc[kMaxN];
        const bool from_point = v < num_points_;
        decode_coords(from_point ? v : v - num_points_, vc);
        solve_partner(vc, from_point, x, wc);
        return encode_coords(wc) + (from_point ? num_points_ : 0);
    }

    void neighbors(VertexId v, std::vector<VertexId>& out) const {
        check_id(v);
        out.clear();
        const std::uint64_t q = field_.q();
        out.reserve(q);
        Fe vc[kMaxN], wc[kMaxN];
        const bool from_point = v < num_points_;
        const VertexId offset = from_point ? num_points_ : 0;
        decode_coords(from_point ? v : v - num_points_, vc);
        for (std::uint64_t x = 0; x < q; ++x) {
            solve_partner(vc, from_point, static_cast<Fe>(x), wc);
            out.push_back(encode_coords(wc) + offset);
        }
    }

    std::vector<VertexId> neighbors(VertexId v) const {
        std::vector<VertexId> out;
        neighbors(v, out);
        return out;
    }

    bool adjacent(VertexId a, VertexId b) const {
        check_id(a);
        check_id(b);
        if ((a < num_points_) == (b < num_points_)) return false;
        return neighbor(a, first_coord(b)) == b;
    }

    // One line per edge, "P<point id> L<line id>", sorted by point id then
    // line id. Streaming, O(q) memory.
    void write_edgelist(std::ostream& os) const {
        std::vector<VertexId> nb;
        for (VertexId p = 0; p < num_points_; ++p) {
            neighbors(p, nb);
            std::sort(nb.begin(), nb.end());
            for (VertexId l : nb) os << 'P' << p << " L" << l << '\n';
        }
    }

  private:
    static constexpr std::uint32_t kMaxN = 64;

    ImplicitGraph(Family family, EquationSystemSpec spec, Field field)
        : family_(family), spec_(std::move(spec)), field_(std::move(field)),
          sys_(spec_, field_), n_(spec_.n) {
        if (n_ < 2) throw invalid_input("graph dimension n must be >= 2");
        if (n_ > kMaxN) throw invalid_input("graph dimension n exceeds " + std::to_string(kMaxN));
        num_points_ = checked_pow(field_.q(), n_);
    }

    // Enforces 2 q^n < 2^63 so ids fit comfortably in 64 bits.
    static std::uint64_t checked_pow(std::uint64_t q, std::uint32_t n) {
        const std::uint64_t cap = (std::uint64_t{1} << 62) - 1;
        std::uint64_t r = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            if (r > cap / q)
                throw size_refusal("2 q^n exceeds the 63-bit vertex id space");
            r *= q;
        }
        return r;
    }

    void check_id(VertexId v) const {
        if (v >= 2 * num_points_)
            throw invalid_input("vertex id " + std::to_string(v) + " out of range");
    }

    void decode_coords(std::uint64_t local, Fe* out) const {
        const std::uint64_t q = field_.q();
        for (std::uint32_t i = 0; i < n_; ++i) {
            out[i] = static_cast<Fe>(local % q);
            local /= q;
        }
    }

    std::uint64_t encode_coords(const Fe* c) const {
        const std::uint64_t q = field_.q();
        std::uint64_t id = 0;
        for (std::uint32_t i = n_; i-- > 0;)
            id = id * q + c[i];
        return id;
    }

    // Forward substitution: wc[0] = x, then wc[j-1] = f_j(...) - vc[j-1].
    // f_j only reads coordinates 1..j-1 of both vertices, so every read of wc
    // hits an already-solved slot.
    void solve_partner(const Fe* vc, bool v_is_point, Fe x, Fe* wc) const {
        wc[0] = x;
        const Fe* pc = v_is_point ? vc : wc;
        const Fe* lc = v_is_point ? wc : vc;
        for (std::uint32_t j = 2; j <= n_; ++j)
            wc[j - 1] = field_.sub(sys_.eval_unchecked(j, field_, pc, lc), vc[j - 1]);
    }

    Family family_;
    EquationSystemSpec spec_;
    Field field_;
    CompiledSystem sys_;
    std::uint32_t n_;
    std::uint64_t num_points_ = 0;
};

// Parses "D:4:9" / "A:3:5" style graph designators.
struct GraphDesignator {
    Family family;
    std::uint32_t n;
    std::uint64_t q;
};

inline GraphDesignator parse_designator(std::string_view s) {
    auto fail = [&] {
        throw invalid_input("expected FAMILY:n:q with FAMILY in {D, A}, got '" +
                            std::string(s) + "'");
    };
    std::size_t c1 = s.find(':');
    std::size_t c2 = c1 == std::string_view::npos ? c1 : s.find(':', c1 + 1);
    if (c2 == std::string_view::npos) fail();
    std::string_view fam = s.substr(0, c1);
    GraphDesignator d{};
    if (fam == "D") d.family = Family::D;
    else if (fam == "A") d.family = Family::A;
    else fail();
    auto parse_num = [&](std::string_view t) -> std::uint64_t {
        if (t.empty()) fail();
        std::uint64_t v = 0;
        for (char ch : t) {
            if (ch < '0' || ch > '9') fail();
            v = v * 10 + static_cast<std::uint64_t>(ch - '0');
            if (v > (1ull << 40)) fail();
        }
        return v;
    };
    std::uint64_t n = parse_num(s.substr(c1 + 1, c2 - c1 - 1));
    d.q = parse_num(s.substr(c2 + 1));
    if (n < 2 || n > 64) throw invalid_input("dimension n must be in [2, 64]");
    d.n = static_cast<std::uint32_t>(n);
    return d;
}

}  // namespace adg
