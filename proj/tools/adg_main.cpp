// adg: construct bipartite graphs from systems of bilinear equations over
// GF(q) and measure them: girth, cycles through the origin, components,
// distance-layer shapes, covering maps, spectra, and edge-count bounds.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "adg/algorithms.hpp"
#include "adg/covering.hpp"
#include "adg/equations.hpp"
#include "adg/errors.hpp"
#include "adg/extremal.hpp"
#include "adg/field.hpp"
#include "adg/graph.hpp"
#include "adg/repro.hpp"
#include "adg/spectral.hpp"

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRefusal = 3;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

std::uint64_t env_budget() {
    if (const char* s = std::getenv("ADG_MEM_BUDGET")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(s, &end, 10);
        if (end == s || *end != '\0' || v == 0)
            throw adg::invalid_input("ADG_MEM_BUDGET must be a positive byte count");
        return v;
    }
    return adg::kDefaultMemBudget;
}

// Graph selection shared by every graph-valued subcommand: a FAMILY:n:q
// designator (positional or --graph), or --family/--n/--q, or --system with
// --q; --modulus overrides the default irreducible polynomial.
struct GraphCli {
    std::string designator;   // positional FAMILY:n:q
    std::string graph_flag;   // --graph FAMILY:n:q
    std::string family;
    std::uint64_t n = 0;
    std::uint64_t q = 0;
    std::string modulus;
    std::string system_file;
    std::uint64_t budget = adg::kDefaultMemBudget;
    std::uint64_t workers = 1;
};

void add_graph_options(CLI::App* cmd, GraphCli& gc) {
    gc.budget = env_budget();
    cmd->add_option("designator", gc.designator, "graph designator FAMILY:n:q, e.g. D:3:3");
    cmd->add_option("--graph", gc.graph_flag, "graph designator FAMILY:n:q");
    cmd->add_option("--family", gc.family, "graph family, D or A")
        ->check(CLI::IsMember({"D", "A"}));
    cmd->add_option("--n", gc.n, "number of coordinates per vertex");
    cmd->add_option("--q", gc.q, "field order (prime power)");
    cmd->add_option("--modulus", gc.modulus,
                    "field modulus as comma-separated coefficients, constant term first, "
                    "leading coefficient 1");
    cmd->add_option("--system", gc.system_file, "equation system file; requires --q");
    cmd->add_option("--mem-budget", gc.budget, "memory budget in bytes")
        ->envname("ADG_MEM_BUDGET");
    cmd->add_option("--workers", gc.workers, "worker-count ceiling (execution is sequential)");
}

std::vector<adg::Fe> parse_modulus(const std::string& text) {
    std::vector<adg::Fe> coeffs;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) throw adg::invalid_input("empty coefficient in --modulus");
        char* end = nullptr;
        const unsigned long v = std::strtoul(part.c_str(), &end, 10);
        if (end == part.c_str() || *end != '\0')
            throw adg::invalid_input("bad coefficient '" + part + "' in --modulus");
        coeffs.push_back(static_cast<adg::Fe>(v));
    }
    return coeffs;
}

adg::Field make_field(std::uint64_t q, const std::string& modulus) {
    if (q == 0) throw adg::invalid_input("a field order is required (--q or FAMILY:n:q)");
    return adg::Field::from_order(q, modulus.empty() ? std::vector<adg::Fe>{}
                                                     : parse_modulus(modulus));
}

adg::ImplicitGraph build_graph(const GraphCli& gc) {
    if (!gc.designator.empty() && !gc.graph_flag.empty())
        throw adg::invalid_input("give the graph positionally or with --graph, not both");
    const std::string designator = gc.designator.empty() ? gc.graph_flag : gc.designator;
    const bool have_designator = !designator.empty();
    const bool have_family = !gc.family.empty() || gc.n != 0 || gc.q != 0;
    const bool have_system = !gc.system_file.empty();
    if (have_designator && (have_system || !gc.family.empty()))
        throw adg::invalid_input("give either FAMILY:n:q or --family/--system, not both");
    if (have_system) {
        if (!gc.family.empty())
            throw adg::invalid_input("--system and --family are mutually exclusive");
        std::ifstream in(gc.system_file);
        if (!in) throw adg::invalid_input("cannot open system file '" + gc.system_file + "'");
        std::stringstream text;
        text << in.rdbuf();
        return adg::ImplicitGraph::custom(adg::parse_system(text.str()),
                                          make_field(gc.q, gc.modulus));
    }
    if (have_designator) {
        adg::GraphDesignator d = adg::parse_designator(designator);
        return adg::ImplicitGraph::make(d.family, d.n, make_field(d.q, gc.modulus));
    }
    if (have_family) {
        if (gc.family.empty() || gc.n == 0 || gc.q == 0)
            throw adg::invalid_input("--family, --n and --q must be given together");
        if (gc.n < 2 || gc.n > 64) throw adg::invalid_input("dimension n must be in [2, 64]");
        return adg::ImplicitGraph::make(gc.family == "D" ? adg::Family::D : adg::Family::A,
                                        static_cast<std::uint32_t>(gc.n),
                                        make_field(gc.q, gc.modulus));
    }
    throw adg::invalid_input("no graph given; use FAMILY:n:q or --family/--n/--q or --system");
}

ordered_json graph_header(const adg::ImplicitGraph& g) {
    ordered_json j;
    j["family"] = adg::family_name(g.family());
    j["n"] = g.n();
    j["q"] = g.q();
    return j;
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += '"';
    return out;
}

std::string fmt_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// girth / cycle-through-origin
// ---------------------------------------------------------------------------

int emit_cycle_report(const adg::ImplicitGraph& g, const adg::GirthReport& r,
                      const std::string& format, const char* what, double ms) {
    if (format == "json") {
        ordered_json j = graph_header(g);
        if (r.value)
            j["result"] = *r.value;
        else
            j["result"] = ">= " + std::to_string(r.cap);
        if (!r.witness.empty()) j["witness"] = r.witness;
        j["scanned"] = r.scanned;
        j["elapsed_ms"] = ms;
        print_json(j);
    } else if (format == "csv") {
        std::cout << "family,n,q,result,scanned,elapsed_ms\n"
                  << adg::family_name(g.family()) << ',' << g.n() << ',' << g.q() << ','
                  << (r.value ? std::to_string(*r.value) : ">= " + std::to_string(r.cap)) << ','
                  << r.scanned << ',' << fmt_g(ms) << "\n";
    } else {
        std::cout << what << '(' << adg::family_name(g.family()) << ':' << g.n() << ':' << g.q()
                  << ") = "
                  << (r.value ? std::to_string(*r.value) : ">= " + std::to_string(r.cap))
                  << "  [scanned " << r.scanned << ", " << fmt_g(ms) << " ms]\n";
        if (!r.witness.empty()) {
            std::cout << "witness:";
            for (adg::VertexId v : r.witness) std::cout << ' ' << g.label(v);
            std::cout << "\n";
        }
    }
    return kExitOk;
}

int cmd_girth(const GraphCli& gc, std::uint64_t cap, bool assume_transitive,
              const std::string& format) {
    adg::ImplicitGraph g = build_graph(gc);
    if (cap == 0) cap = 2 * g.n() + 8;
    Timer t;
    adg::GirthReport r = adg::girth(
        g, cap, assume_transitive ? adg::GirthMode::single_source : adg::GirthMode::full,
        gc.budget);
    return emit_cycle_report(g, r, format, "girth", t.ms());
}

int cmd_cycle_through_origin(const GraphCli& gc, std::uint64_t cap, const std::string& format) {
    adg::ImplicitGraph g = build_graph(gc);
    if (cap == 0) cap = 2 * g.n() + 8;
    Timer t;
    adg::GirthReport r = adg::shortest_cycle_through(g, 0, cap, true, gc.budget);
    return emit_cycle_report(g, r, format, "cycle-through-origin", t.ms());
}

// ---------------------------------------------------------------------------
// components
// ---------------------------------------------------------------------------

int cmd_components(const GraphCli& gc, const std::string& format) {
    adg::ImplicitGraph g = build_graph(gc);
    Timer t;
    adg::ComponentSummary s = adg::components(g, gc.budget);
    const double ms = t.ms();
    if (format == "json") {
        ordered_json j = graph_header(g);
        j["result"] = s.count;
        j["sizes"] = s.sizes;
        j["scanned"] = g.num_vertices();
        j["elapsed_ms"] = ms;
        print_json(j);
    } else if (format == "csv") {
        std::cout << "family,n,q,count,sizes,scanned,elapsed_ms\n"
                  << adg::family_name(g.family()) << ',' << g.n() << ',' << g.q() << ','
                  << s.count << ',';
        std::string joined;
        for (std::uint64_t sz : s.sizes) {
            if (!joined.empty()) joined += ';';
            joined += std::to_string(sz);
        }
        std::cout << csv_quote(joined) << ',' << g.num_vertices() << ',' << fmt_g(ms) << "\n";
    } else {
        std::cout << "components(" << adg::family_name(g.family()) << ':' << g.n() << ':'
                  << g.q() << ") = " << s.count << "  sizes:";
        for (std::uint64_t sz : s.sizes) std::cout << ' ' << sz;
        std::cout << "  [" << fmt_g(ms) << " ms]\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// shape-check
// ---------------------------------------------------------------------------

int cmd_shape_check(const GraphCli& gc, std::uint64_t max_j, const std::string& format) {
    adg::ImplicitGraph g = build_graph(gc);
    if (max_j == 0) max_j = g.n();
    Timer t;
    std::optional<adg::ShapeCounterexample> bad =
        adg::layer_shape_check(g, static_cast<std::uint32_t>(max_j), gc.budget);
    const double ms = t.ms();
    if (format == "json") {
        ordered_json j = graph_header(g);
        if (bad) {
            j["result"] = "fail";
            j["counterexample"] =
                ordered_json{{"vertex", bad->id}, {"dist", bad->dist}, {"reason", bad->reason}};
        } else {
            j["result"] = "pass";
        }
        j["scanned"] = g.num_vertices();
        j["elapsed_ms"] = ms;
        print_json(j);
    } else if (format == "csv") {
        std::cout << "family,n,q,result,vertex,dist,reason,elapsed_ms\n"
                  << adg::family_name(g.family()) << ',' << g.n() << ',' << g.q() << ','
                  << (bad ? "fail" : "pass") << ','
                  << (bad ? std::to_string(bad->id) : std::string()) << ','
                  << (bad ? std::to_string(bad->dist) : std::string()) << ','
                  << (bad ? csv_quote(bad->reason) : std::string("\"\"")) << ',' << fmt_g(ms)
                  << "\n";
    } else {
        if (bad)
            std::cout << "shape-check fail at vertex " << bad->id << " (" << g.label(bad->id)
                      << ", dist " << bad->dist << "): " << bad->reason << "\n";
        else
            std::cout << "shape-check pass up to layer " << max_j << "\n";
    }
    return bad ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// cover-check
// ---------------------------------------------------------------------------

adg::CoverPolicy parse_policy(const std::string& text, std::uint64_t seed) {
    adg::CoverPolicy p;
    p.seed = seed;
    if (text == "exhaustive") {
        p.kind = adg::CoverPolicy::Kind::exhaustive;
        return p;
    }
    if (text.rfind("sampled", 0) == 0) {
        p.kind = adg::CoverPolicy::Kind::sampled;
        if (text.size() > 7) {
            if (text[7] != ':') throw adg::invalid_input("--policy must be exhaustive or sampled[:N]");
            char* end = nullptr;
            const unsigned long long v = std::strtoull(text.c_str() + 8, &end, 10);
            if (end == text.c_str() + 8 || *end != '\0' || v == 0)
                throw adg::invalid_input("bad sample count in --policy");
            p.count = v;
        }
        return p;
    }
    throw adg::invalid_input("--policy must be exhaustive or sampled[:N]");
}

adg::CoordinateMap build_cover_map(const std::string& from, const std::string& to,
                                   const std::string& map_kind, const std::string& modulus) {
    adg::GraphDesignator src = adg::parse_designator(from);
    adg::GraphDesignator dst = adg::parse_designator(to);
    if (src.q != dst.q) throw adg::invalid_input("--from and --to must share the field order");
    adg::Field field = make_field(src.q, modulus);
    if (map_kind == "lemma21") {
        if (src.family != adg::Family::D || dst.family != adg::Family::A)
            throw adg::invalid_input("lemma21 maps D:(2k+1):q onto A:(k+2):q");
        if (src.n % 2 == 0 || src.n < 3)
            throw adg::invalid_input("lemma21 needs an odd source dimension >= 3");
        const std::uint32_t k = (src.n - 1) / 2;
        if (dst.n != k + 2)
            throw adg::invalid_input("lemma21 with source D:" + std::to_string(src.n) +
                                     " needs target A:" + std::to_string(k + 2));
        return adg::d_to_a_map(k, field);
    }
    if (map_kind == "project") {
        if (src.family != dst.family)
            throw adg::invalid_input("project keeps the family; --from and --to differ");
        return adg::projection_map(src.family, src.n, dst.n, field);
    }
    if (map_kind.find(',') != std::string::npos || map_kind.find_first_not_of("0123456789") ==
                                                       std::string::npos) {
        std::vector<std::uint32_t> idx;
        std::stringstream ss(map_kind);
        std::string part;
        while (std::getline(ss, part, ',')) {
            char* end = nullptr;
            const unsigned long v = std::strtoul(part.c_str(), &end, 10);
            if (part.empty() || end == part.c_str() || *end != '\0')
                throw adg::invalid_input("bad index '" + part + "' in --map list");
            idx.push_back(static_cast<std::uint32_t>(v));
        }
        return adg::make_coordinate_map(adg::ImplicitGraph::make(src.family, src.n, field),
                                        adg::ImplicitGraph::make(dst.family, dst.n, field),
                                        std::move(idx));
    }
    throw adg::invalid_input("--map must be lemma21, project, or a 1-based index list i1,i2,...");
}

int cmd_cover_check(const std::string& from, const std::string& to, const std::string& map_kind,
                    const std::string& policy_text, std::uint64_t seed,
                    const std::string& modulus, std::uint64_t budget,
                    const std::string& format) {
    adg::CoordinateMap map = build_cover_map(from, to, map_kind, modulus);
    adg::CoverPolicy policy = parse_policy(policy_text, seed);
    Timer t;
    adg::CoverReport r = adg::verify_covering(map, policy, budget);
    const double ms = t.ms();
    if (format == "json") {
        ordered_json j;
        j["from"] = from;
        j["to"] = to;
        j["map"] = map_kind;
        j["index_map"] = map.index_map;
        j["policy"] = policy_text;
        j["result"] = r.pass ? "pass" : "fail";
        if (r.certificate) {
            j["certificate"] = ordered_json{{"condition", r.certificate->condition},
                                            {"vertex", r.certificate->vertex},
                                            {"in_target", r.certificate->in_target}};
        }
        j["checked"] = r.checked;
        j["elapsed_ms"] = ms;
        print_json(j);
    } else if (format == "csv") {
        std::cout << "from,to,map,policy,result,condition,vertex,in_target,checked,elapsed_ms\n"
                  << from << ',' << to << ',' << map_kind << ',' << policy_text << ','
                  << (r.pass ? "pass" : "fail") << ','
                  << (r.certificate ? csv_quote(r.certificate->condition) : std::string("\"\""))
                  << ',' << (r.certificate ? std::to_string(r.certificate->vertex) : std::string())
                  << ',' << (r.certificate ? (r.certificate->in_target ? "true" : "false") : "")
                  << ',' << r.checked << ',' << fmt_g(ms) << "\n";
    } else {
        std::cout << "cover-check " << from << " -> " << to << " (" << map_kind << ", "
                  << policy_text << "): " << (r.pass ? "pass" : "fail");
        if (r.certificate)
            std::cout << "  [" << r.certificate->condition << " at "
                      << (r.certificate->in_target ? "target" : "source") << " vertex "
                      << r.certificate->vertex << "]";
        std::cout << "  checked " << r.checked << ", " << fmt_g(ms) << " ms\n";
    }
    return r.pass ? kExitOk : kExitViolation;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

int cmd_spectrum(const GraphCli& gc, const std::string& method, bool per_component,
                 bool check_bound, std::uint64_t seed, const std::string& format) {
    adg::ImplicitGraph g = build_graph(gc);
    adg::SpectralOptions opts;
    opts.method = method == "dense"       ? adg::SpectralMethod::dense
                  : method == "iterative" ? adg::SpectralMethod::iterative
                                          : adg::SpectralMethod::automatic;
    opts.per_component = per_component;
    opts.seed = seed;
    opts.budget = gc.budget;
    Timer t;
    adg::SpectralReport r = adg::lambda2(g, opts);
    const double ms = t.ms();
    const bool pass = r.lambda2 <= r.bound + adg::kSpectralSlack;
    if (format == "json") {
        ordered_json j = graph_header(g);
        j["lambda1"] = r.lambda1;
        j["lambda2"] = r.lambda2;
        j["bound"] = r.bound;
        j["margin"] = r.margin;
        j["method"] = r.method;
        j["residual"] = r.residual;
        j["converged"] = r.converged;
        j["iterations"] = r.iterations;
        j["component_note"] = r.component_note;
        j["components"] = r.components;
        j["per_component"] = r.per_component;
        j["dim"] = r.dim;
        j["top_sigma"] = r.top_sigma;
        if (check_bound) j["within_2sqrtq"] = pass;
        j["elapsed_ms"] = ms;
        print_json(j);
    } else if (format == "csv") {
        std::cout << "family,n,q,lambda1,lambda2,bound,margin,method,converged,residual,"
                     "iterations,components,elapsed_ms\n"
                  << adg::family_name(g.family()) << ',' << g.n() << ',' << g.q() << ','
                  << fmt_g(r.lambda1) << ',' << fmt_g(r.lambda2) << ',' << fmt_g(r.bound) << ','
                  << fmt_g(r.margin) << ',' << r.method << ',' << (r.converged ? "true" : "false")
                  << ',' << fmt_g(r.residual) << ',' << r.iterations << ',' << r.components << ','
                  << fmt_g(ms) << "\n";
    } else {
        std::cout << "spectrum(" << adg::family_name(g.family()) << ':' << g.n() << ':' << g.q()
                  << "): lambda1 = " << fmt_g(r.lambda1) << ", lambda2 = " << fmt_g(r.lambda2)
                  << ", bound 2*sqrt(q) = " << fmt_g(r.bound) << ", margin = " << fmt_g(r.margin)
                  << "  [" << r.method;
        if (r.method == "iterative")
            std::cout << ", residual " << fmt_g(r.residual) << ", "
                      << (r.converged ? "converged" : "NOT converged") << " in " << r.iterations
                      << " iterations";
        if (r.component_note) std::cout << ", " << r.components << " components";
        std::cout << ", " << fmt_g(ms) << " ms]\n";
        if (check_bound)
            std::cout << "within 2*sqrt(q): " << (pass ? "yes" : "NO") << "\n";
    }
    return check_bound && !pass ? kExitViolation : kExitOk;
}

// ---------------------------------------------------------------------------
// turan / report
// ---------------------------------------------------------------------------

int cmd_turan(std::uint64_t n, std::uint64_t k, const std::string& format) {
    Timer t;
    adg::TuranBound b = adg::turan_bounds(n, static_cast<std::uint32_t>(k));
    const double ms = t.ms();
    if (format == "json") {
        ordered_json j;
        j["n"] = b.n;
        j["k"] = b.k;
        j["epsilon"] = b.epsilon;
        j["lower"] = b.lower;
        j["upper"] = b.upper;
        j["elapsed_ms"] = ms;
        print_json(j);
    } else if (format == "csv") {
        std::cout << "n,k,epsilon,lower,upper\n"
                  << b.n << ',' << b.k << ',' << b.epsilon << ',' << fmt_g(b.lower) << ','
                  << fmt_g(b.upper) << "\n";
    } else {
        std::cout << "edge bounds for n = " << b.n << ", no odd cycle through length "
                  << 2 * b.k + 1 << ": " << fmt_g(b.lower) << " <= ex <= " << fmt_g(b.upper)
                  << "\n";
    }
    return kExitOk;
}

int cmd_report(const GraphCli& gc, std::uint64_t cap, const std::string& format) {
    adg::ImplicitGraph g = build_graph(gc);
    if (cap == 0) cap = 2 * g.n() + 8;
    Timer t;
    adg::ComponentReport rep = adg::component_report(g, cap, gc.budget);
    const double ms = t.ms();
    if (format == "json") {
        ordered_json j = graph_header(g);
        j["cap"] = rep.cap;
        ordered_json rows = ordered_json::array();
        for (const adg::ComponentRow& row : rep.rows) {
            ordered_json r;
            r["index"] = row.index;
            r["root"] = row.root;
            r["order"] = row.order;
            r["edges"] = row.edges;
            r["girth"] = row.girth ? ordered_json(*row.girth) : ordered_json(nullptr);
            r["k"] = row.k ? ordered_json(*row.k) : ordered_json(nullptr);
            r["lower"] = row.lower ? ordered_json(*row.lower) : ordered_json(nullptr);
            r["ratio"] = row.ratio ? ordered_json(*row.ratio) : ordered_json(nullptr);
            rows.push_back(std::move(r));
        }
        j["rows"] = std::move(rows);
        j["scanned"] = rep.scanned;
        j["elapsed_ms"] = ms;
        print_json(j);
    } else if (format == "csv") {
        std::cout << "index,root,order,edges,girth,k,lower,ratio\n";
        for (const adg::ComponentRow& row : rep.rows) {
            std::cout << row.index << ',' << row.root << ',' << row.order << ',' << row.edges
                      << ',' << (row.girth ? std::to_string(*row.girth) : std::string()) << ','
                      << (row.k ? std::to_string(*row.k) : std::string()) << ','
                      << (row.lower ? fmt_g(*row.lower) : std::string()) << ','
                      << (row.ratio ? fmt_g(*row.ratio) : std::string()) << "\n";
        }
    } else {
        std::cout << "component report for " << adg::family_name(g.family()) << ':' << g.n()
                  << ':' << g.q() << " (cycle cap " << rep.cap << ")\n";
        for (const adg::ComponentRow& row : rep.rows) {
            std::cout << "  #" << row.index << " root " << g.label(row.root) << " order "
                      << row.order << " edges " << row.edges;
            if (row.girth)
                std::cout << " girth " << *row.girth;
            else
                std::cout << " girth >= " << rep.cap;
            if (row.lower)
                std::cout << " lower " << fmt_g(*row.lower) << " ratio " << fmt_g(*row.ratio);
            std::cout << "\n";
        }
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// export / repro
// ---------------------------------------------------------------------------

int cmd_export(const GraphCli& gc, const std::string& format) {
    adg::ImplicitGraph g = build_graph(gc);
    adg::require_budget(g.q() * 8 + 64, gc.budget, "edge listing");
    if (format == "json") {
        ordered_json j = graph_header(g);
        ordered_json edges = ordered_json::array();
        std::vector<adg::VertexId> nb;
        for (adg::VertexId p = 0; p < g.num_points(); ++p) {
            g.neighbors(p, nb);
            std::sort(nb.begin(), nb.end());
            for (adg::VertexId l : nb) edges.push_back(ordered_json::array({p, l}));
        }
        j["edges"] = std::move(edges);
        print_json(j);
    } else if (format == "csv") {
        std::cout << "point,line\n";
        std::vector<adg::VertexId> nb;
        for (adg::VertexId p = 0; p < g.num_points(); ++p) {
            g.neighbors(p, nb);
            std::sort(nb.begin(), nb.end());
            for (adg::VertexId l : nb) std::cout << p << ',' << l << "\n";
        }
    } else {  // edgelist and text
        g.write_edgelist(std::cout);
    }
    return kExitOk;
}

int cmd_repro(std::int64_t criterion, const std::string& format) {
    std::optional<int> filter;
    if (criterion != 0) filter = static_cast<int>(criterion);
    Timer t;
    std::vector<adg::ReproRow> rows = adg::reproduction_rows(filter);
    const double ms = t.ms();
    std::size_t failed = 0;
    for (const adg::ReproRow& row : rows)
        if (!row.pass) ++failed;
    if (format == "json") {
        ordered_json j;
        j["rows"] = rows.size();
        if (!filter) j["expected_rows"] = adg::kReproRowCount;
        j["failed"] = failed;
        ordered_json out = ordered_json::array();
        for (const adg::ReproRow& row : rows) {
            out.push_back(ordered_json{{"criterion", row.criterion},
                                       {"name", row.name},
                                       {"expected", row.expected},
                                       {"actual", row.actual},
                                       {"pass", row.pass},
                                       {"elapsed_ms", row.elapsed_ms}});
        }
        j["checks"] = std::move(out);
        j["elapsed_ms"] = ms;
        print_json(j);
    } else if (format == "csv") {
        std::cout << "criterion,name,expected,actual,pass,elapsed_ms\n";
        for (const adg::ReproRow& row : rows) {
            std::cout << row.criterion << ',' << csv_quote(row.name) << ','
                      << csv_quote(row.expected) << ',' << csv_quote(row.actual) << ','
                      << (row.pass ? "true" : "false") << ',' << fmt_g(row.elapsed_ms) << "\n";
        }
    } else {
        for (const adg::ReproRow& row : rows) {
            std::cout << (row.pass ? "PASS" : "FAIL") << "  [" << row.criterion << "] "
                      << row.name << ": expected " << row.expected << ", got " << row.actual
                      << "\n";
        }
        std::cout << rows.size() << " checks, " << failed << " failing\n";
    }
    return failed == 0 ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graphs from systems of equations over finite fields: girth, components, "
                 "covers, spectra, and edge-count bounds"};
    app.require_subcommand(1);

    std::string format = "json";

    GraphCli gc_girth;
    std::uint64_t girth_cap = 0;
    bool assume_transitive = false;
    CLI::App* c_girth = app.add_subcommand("girth", "shortest cycle length");
    add_graph_options(c_girth, gc_girth);
    c_girth->add_option("--cap", girth_cap, "even search cap, default 2n+8");
    c_girth->add_flag("--assume-transitive", assume_transitive,
                      "scan only the all-zero point (valid for vertex-transitive graphs)");

    GraphCli gc_origin;
    std::uint64_t origin_cap = 0;
    CLI::App* c_origin =
        app.add_subcommand("cycle-through-origin", "shortest cycle through the all-zero point");
    add_graph_options(c_origin, gc_origin);
    c_origin->add_option("--cap", origin_cap, "even search cap, default 2n+8");

    GraphCli gc_comp;
    CLI::App* c_comp = app.add_subcommand("components", "connected component count and sizes");
    add_graph_options(c_comp, gc_comp);

    GraphCli gc_shape;
    std::uint64_t max_j = 0;
    CLI::App* c_shape =
        app.add_subcommand("shape-check", "distance-layer coordinate shape (A family)");
    add_graph_options(c_shape, gc_shape);
    c_shape->add_option("--max-j", max_j, "deepest layer to check, default n");

    std::string cover_from, cover_to, cover_map = "lemma21", cover_policy = "exhaustive",
                cover_modulus;
    std::uint64_t cover_seed = adg::kDefaultSeed, cover_budget = 0;
    CLI::App* c_cover = app.add_subcommand("cover-check", "verify a covering map");
    c_cover->add_option("--from", cover_from, "source graph FAMILY:n:q")->required();
    c_cover->add_option("--to", cover_to, "target graph FAMILY:n:q")->required();
    c_cover->add_option("--map", cover_map,
                        "map construction: lemma21, project, or a 1-based source-index list "
                        "i1,i2,... (one entry per target coordinate)");
    c_cover->add_option("--policy", cover_policy, "exhaustive or sampled[:N]");
    c_cover->add_option("--seed", cover_seed, "seed for the sampled policy");
    c_cover->add_option("--modulus", cover_modulus, "field modulus override");
    c_cover->add_option("--mem-budget", cover_budget, "memory budget in bytes")
        ->envname("ADG_MEM_BUDGET");

    GraphCli gc_spec;
    std::string spec_method = "auto";
    bool per_component = false, check_bound = false;
    std::uint64_t spec_seed = adg::kDefaultSeed;
    CLI::App* c_spec = app.add_subcommand("spectrum", "two largest biadjacency singular values");
    add_graph_options(c_spec, gc_spec);
    c_spec->add_option("--method", spec_method, "dense, iterative, or auto")
        ->check(CLI::IsMember({"dense", "iterative", "auto"}));
    c_spec->add_flag("--per-component", per_component,
                     "report the largest value strictly below q");
    c_spec->add_flag("--check-2sqrtq", check_bound, "exit 1 unless lambda2 <= 2*sqrt(q) + 1e-8");
    c_spec->add_option("--seed", spec_seed, "seed for iterative start vectors");

    std::uint64_t turan_n = 0, turan_k = 0;
    CLI::App* c_turan = app.add_subcommand("turan", "edge-count bound formulas");
    c_turan->add_option("--n", turan_n, "vertex count")->required();
    c_turan->add_option("--k", turan_k, "forbid odd cycles through length 2k+1")->required();

    GraphCli gc_report;
    std::uint64_t report_cap = 0;
    CLI::App* c_report =
        app.add_subcommand("report", "per-component order, girth, and bound comparison");
    add_graph_options(c_report, gc_report);
    c_report->add_option("--cap", report_cap, "even cycle cap, default 2n+8");

    GraphCli gc_export;
    std::string export_format = "edgelist";
    CLI::App* c_export = app.add_subcommand("export", "emit the edge list");
    add_graph_options(c_export, gc_export);

    std::int64_t repro_criterion = 0;
    CLI::App* c_repro =
        app.add_subcommand("repro", "run the reproduction matrix and report verdicts");
    c_repro->add_option("--criterion", repro_criterion, "run a single criterion (1-11)")
        ->check(CLI::Range(1, 11));

    for (CLI::App* sub : {c_girth, c_origin, c_comp, c_shape, c_cover, c_spec, c_turan, c_report,
                          c_repro}) {
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
    }
    c_export->add_option("--format", export_format, "output format")
        ->check(CLI::IsMember({"edgelist", "json", "csv", "text"}));

    try {
        app.parse(argc, argv);
        if (c_girth->parsed()) return cmd_girth(gc_girth, girth_cap, assume_transitive, format);
        if (c_origin->parsed()) return cmd_cycle_through_origin(gc_origin, origin_cap, format);
        if (c_comp->parsed()) return cmd_components(gc_comp, format);
        if (c_shape->parsed()) return cmd_shape_check(gc_shape, max_j, format);
        if (c_cover->parsed())
            return cmd_cover_check(cover_from, cover_to, cover_map, cover_policy, cover_seed,
                                   cover_modulus, cover_budget ? cover_budget : env_budget(),
                                   format);
        if (c_spec->parsed())
            return cmd_spectrum(gc_spec, spec_method, per_component, check_bound, spec_seed,
                                format);
        if (c_turan->parsed()) return cmd_turan(turan_n, turan_k, format);
        if (c_report->parsed()) return cmd_report(gc_report, report_cap, format);
        if (c_export->parsed()) return cmd_export(gc_export, export_format);
        if (c_repro->parsed()) return cmd_repro(repro_criterion, format);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const adg::size_refusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return kExitRefusal;
    } catch (const adg::invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitViolation;
    }
}
