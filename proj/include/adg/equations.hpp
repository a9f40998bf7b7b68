#pragma once

// The edge-defining equation systems f_2..f_n: AST, parser for the text
// format, validation of the variable-scope rule (f_j may reference only
// p_1..p_{j-1} and l_1..l_{j-1}), canonical pretty-printing, the builtin
// D/A families, and compilation to flat postfix programs for evaluation.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "adg/errors.hpp"
#include "adg/field.hpp"

namespace adg {

enum class Family { D, A, custom };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::D: return "D";
        case Family::A: return "A";
        default: return "custom";
    }
}

enum class VarSide { point, line };

// Expression tree over p_i / l_i variables, integer literals, +, -, * and
// nonnegative integer powers.
struct PolyExpr {
    enum class Kind { literal, variable, add, sub, mul, pow };

    Kind kind;
    std::uint64_t literal = 0;        // Kind::literal
    VarSide side = VarSide::point;    // Kind::variable
    std::uint32_t index = 0;          // Kind::variable, 1-based
    std::uint32_t exponent = 0;       // Kind::pow
    std::unique_ptr<PolyExpr> lhs, rhs;

    static std::unique_ptr<PolyExpr> lit(std::uint64_t v) {
        auto e = std::make_unique<PolyExpr>();
        e->kind = Kind::literal;
        e->literal = v;
        return e;
    }
    static std::unique_ptr<PolyExpr> var(VarSide s, std::uint32_t i) {
        auto e = std::make_unique<PolyExpr>();
        e->kind = Kind::variable;
        e->side = s;
        e->index = i;
        return e;
    }
    static std::unique_ptr<PolyExpr> binary(Kind k, std::unique_ptr<PolyExpr> a,
                                            std::unique_ptr<PolyExpr> b) {
        auto e = std::make_unique<PolyExpr>();
        e->kind = k;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        return e;
    }
    static std::unique_ptr<PolyExpr> power(std::unique_ptr<PolyExpr> base, std::uint32_t k) {
        auto e = std::make_unique<PolyExpr>();
        e->kind = Kind::pow;
        e->exponent = k;
        e->lhs = std::move(base);
        return e;
    }

    std::unique_ptr<PolyExpr> clone() const {
        auto e = std::make_unique<PolyExpr>();
        e->kind = kind;
        e->literal = literal;
        e->side = side;
        e->index = index;
        e->exponent = exponent;
        if (lhs) e->lhs = lhs->clone();
        if (rhs) e->rhs = rhs->clone();
        return e;
    }

    bool equals(const PolyExpr& o) const {
        if (kind != o.kind) return false;
        switch (kind) {
            case Kind::literal: return literal == o.literal;
            case Kind::variable: return side == o.side && index == o.index;
            case Kind::pow: return exponent == o.exponent && lhs->equals(*o.lhs);
            default: return lhs->equals(*o.lhs) && rhs->equals(*o.rhs);
        }
    }

    std::uint32_t depth() const {
        std::uint32_t d = 0;
        if (lhs) d = lhs->depth();
        if (rhs) d = std::max(d, rhs->depth());
        return d + 1;
    }
};

// rhs[i] holds f_{i+2}; n = rhs.size() + 1.
struct EquationSystemSpec {
    std::uint32_t n = 0;
    std::vector<std::unique_ptr<PolyExpr>> rhs;

    EquationSystemSpec() = default;
    EquationSystemSpec(const EquationSystemSpec& o) : n(o.n) {
        rhs.reserve(o.rhs.size());
        for (const auto& e : o.rhs) rhs.push_back(e->clone());
    }
    EquationSystemSpec(EquationSystemSpec&&) = default;
    EquationSystemSpec& operator=(const EquationSystemSpec& o) {
        EquationSystemSpec tmp(o);
        return *this = std::move(tmp);
    }
    EquationSystemSpec& operator=(EquationSystemSpec&&) = default;

    const PolyExpr& f(std::uint32_t j) const {  // 2 <= j <= n
        if (j < 2 || j > n) throw invalid_input("equation index out of range");
        return *rhs[j - 2];
    }

    bool equals(const EquationSystemSpec& o) const {
        if (n != o.n) return false;
        for (std::size_t i = 0; i < rhs.size(); ++i)
            if (!rhs[i]->equals(*o.rhs[i])) return false;
        return true;
    }
};

struct ScopeViolation {
    std::uint32_t j;         // equation index
    VarSide side;
    std::uint32_t index;     // offending variable index
};

// Checks the 2j-2 variable rule for every equation; nullopt means ok.
inline std::optional<ScopeViolation> validate_system(const EquationSystemSpec& spec) {
    struct Walk {
        static const PolyExpr* find(const PolyExpr& e, std::uint32_t limit) {
            if (e.kind == PolyExpr::Kind::variable)
                return (e.index < 1 || e.index > limit) ? &e : nullptr;
            if (e.lhs)
                if (auto* v = find(*e.lhs, limit)) return v;
            if (e.rhs)
                if (auto* v = find(*e.rhs, limit)) return v;
            return nullptr;
        }
    };
    for (std::uint32_t j = 2; j <= spec.n; ++j) {
        if (const PolyExpr* v = Walk::find(spec.f(j), j - 1))
            return ScopeViolation{j, v->side, v->index};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Builtin families.
//
// D: f_2 = p1*l1, f_3 = p1*l2, then for 4 <= j <= n
//    f_j = p_{j-2}*l1 when j = 0,1 (mod 4) and p1*l_{j-2} when j = 2,3 (mod 4).
// A: f_j = p_{j-1}*l1 when j is even, p1*l_{j-1} when j is odd.
// ---------------------------------------------------------------------------
inline EquationSystemSpec builtin_system(Family family, std::uint32_t n) {
    if (family == Family::custom) throw invalid_input("no builtin for custom family");
    if (n < 2) throw invalid_input("family dimension n must be >= 2");
    auto mono = [](std::uint32_t pi, std::uint32_t li) {
        return PolyExpr::binary(PolyExpr::Kind::mul, PolyExpr::var(VarSide::point, pi),
                                PolyExpr::var(VarSide::line, li));
    };
    EquationSystemSpec spec;
    spec.n = n;
    for (std::uint32_t j = 2; j <= n; ++j) {
        if (family == Family::D) {
            if (j == 2) spec.rhs.push_back(mono(1, 1));
            else if (j == 3) spec.rhs.push_back(mono(1, 2));
            else if (j % 4 == 0 || j % 4 == 1) spec.rhs.push_back(mono(j - 2, 1));
            else spec.rhs.push_back(mono(1, j - 2));
        } else {
            if (j % 2 == 0) spec.rhs.push_back(mono(j - 1, 1));
            else spec.rhs.push_back(mono(1, j - 1));
        }
    }
    return spec;
}

// ---------------------------------------------------------------------------
// Parser for the equation file format: one line per equation,
//   p<j> + l<j> = <expr>
// for j = 2..n in order; '#' starts a comment; blank lines allowed.
// Expressions use +, -, * (required, no juxtaposition), ^ with a nonnegative
// integer exponent, parentheses, integer literals and variables p<i> / l<i>.
// ---------------------------------------------------------------------------
struct ParseError : invalid_input {
    std::uint32_t line, column;
    ParseError(std::uint32_t ln, std::uint32_t col, const std::string& msg)
        : invalid_input("line " + std::to_string(ln) + ", column " + std::to_string(col) + ": " +
                        msg),
          line(ln), column(col) {}
};

namespace detail {

inline constexpr std::uint32_t kMaxExprDepth = 256;  // spec floor is 64

class SystemParser {
  public:
    explicit SystemParser(std::string_view text) : text_(text) {}

    EquationSystemSpec parse() {
        EquationSystemSpec spec;
        std::vector<std::uint32_t> stmt_lines;
        std::uint32_t expect_j = 2;
        while (skip_to_statement()) {
            stmt_lines.push_back(line_);
            parse_lhs(expect_j);
            auto e = parse_expr(0);
            skip_spaces();
            if (!at_line_end())
                fail("trailing characters after expression");
            if (e->depth() > kMaxExprDepth) fail("expression too deep");
            spec.rhs.push_back(std::move(e));
            ++expect_j;
        }
        if (expect_j == 2) fail("no equations found");
        spec.n = expect_j - 1;
        if (auto v = validate_system(spec)) {
            throw ParseError(stmt_lines[v->j - 2], 1,
                             std::string("variable ") +
                                 (v->side == VarSide::point ? "p" : "l") +
                                 std::to_string(v->index) + " not among the " +
                                 std::to_string(2 * v->j - 2) + " admissible variables of f_" +
                                 std::to_string(v->j));
        }
        return spec;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::uint32_t line_ = 1, col_ = 1;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, col_, msg); }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() {
        char c = text_[pos_++];
        if (c == '\n') { ++line_; col_ = 1; }
        else ++col_;
        return c;
    }
    void skip_spaces() {
        while (pos_ < text_.size() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) get();
    }
    bool at_line_end() {
        skip_spaces();
        return pos_ >= text_.size() || peek() == '\n' || peek() == '#';
    }

    // Advances over blank/comment lines; true if a statement begins.
    bool skip_to_statement() {
        while (pos_ < text_.size()) {
            skip_spaces();
            if (peek() == '#') {
                while (pos_ < text_.size() && peek() != '\n') get();
                continue;
            }
            if (peek() == '\n') { get(); continue; }
            return pos_ < text_.size();
        }
        return false;
    }

    std::uint64_t parse_uint() {
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected an integer");
        std::uint64_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::uint64_t>(get() - '0');
            if (v > (1ull << 62)) fail("integer literal too large");
        }
        return v;
    }

    void expect(char c, const char* what) {
        skip_spaces();
        if (peek() != c) fail(std::string("expected ") + what);
        get();
    }

    void parse_lhs(std::uint32_t expect_j) {
        skip_spaces();
        std::uint32_t l0 = line_, c0 = col_;
        if (peek() != 'p') fail("left-hand side must have the form p<j> + l<j>");
        get();
        std::uint64_t jp = parse_uint();
        expect('+', "'+' on the left-hand side");
        skip_spaces();
        if (peek() != 'l') fail("left-hand side must have the form p<j> + l<j>");
        get();
        std::uint64_t jl = parse_uint();
        if (jp != jl)
            throw ParseError(l0, c0, "malformed left-hand side: p" + std::to_string(jp) +
                                         " + l" + std::to_string(jl));
        if (jp != expect_j)
            throw ParseError(l0, c0, "expected equation for index " + std::to_string(expect_j) +
                                         ", found " + std::to_string(jp));
        expect('=', "'='");
    }

    std::unique_ptr<PolyExpr> parse_expr(int depth) {
        if (depth > static_cast<int>(kMaxExprDepth)) fail("expression too deep");
        auto e = parse_term(depth);
        while (true) {
            skip_spaces();
            char c = peek();
            if (c != '+' && c != '-') return e;
            get();
            auto r = parse_term(depth);
            e = PolyExpr::binary(c == '+' ? PolyExpr::Kind::add : PolyExpr::Kind::sub,
                                 std::move(e), std::move(r));
        }
    }

    std::unique_ptr<PolyExpr> parse_term(int depth) {
        auto e = parse_factor(depth);
        while (true) {
            skip_spaces();
            if (peek() != '*') return e;
            get();
            auto r = parse_factor(depth);
            e = PolyExpr::binary(PolyExpr::Kind::mul, std::move(e), std::move(r));
        }
    }

    std::unique_ptr<PolyExpr> parse_factor(int depth) {
        auto base = parse_atom(depth);
        skip_spaces();
        if (peek() == '^') {
            get();
            skip_spaces();
            std::uint64_t k = parse_uint();
            if (k > 0xffffffffull) fail("exponent too large");
            return PolyExpr::power(std::move(base), static_cast<std::uint32_t>(k));
        }
        return base;
    }

    std::unique_ptr<PolyExpr> parse_atom(int depth) {
        skip_spaces();
        char c = peek();
        if (c == '(') {
            get();
            auto e = parse_expr(depth + 1);
            expect(')', "')'");
            return e;
        }
        if (c == 'p' || c == 'l') {
            get();
            std::uint64_t i = parse_uint();
            if (i == 0 || i > 0xffffffffull) fail("variable index out of range");
            return PolyExpr::var(c == 'p' ? VarSide::point : VarSide::line,
                                 static_cast<std::uint32_t>(i));
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return PolyExpr::lit(parse_uint());
        fail("expected a variable, literal or parenthesized expression");
    }
};

inline void print_expr(const PolyExpr& e, std::string& out) {
    switch (e.kind) {
        case PolyExpr::Kind::literal:
            out += std::to_string(e.literal);
            return;
        case PolyExpr::Kind::variable:
            out += (e.side == VarSide::point ? 'p' : 'l');
            out += std::to_string(e.index);
            return;
        case PolyExpr::Kind::pow:
            out += '(';
            print_expr(*e.lhs, out);
            out += " ^ ";
            out += std::to_string(e.exponent);
            out += ')';
            return;
        default: {
            const char* op = e.kind == PolyExpr::Kind::add ? " + "
                           : e.kind == PolyExpr::Kind::sub ? " - " : " * ";
            out += '(';
            print_expr(*e.lhs, out);
            out += op;
            print_expr(*e.rhs, out);
            out += ')';
        }
    }
}

}  // namespace detail

inline EquationSystemSpec parse_system(std::string_view text) {
    return detail::SystemParser(text).parse();
}

// Canonical form: fully parenthesized, one equation per line. Re-parsing the
// output reproduces the identical AST.
inline std::string pretty_print(const EquationSystemSpec& spec) {
    std::string out;
    for (std::uint32_t j = 2; j <= spec.n; ++j) {
        out += 'p';
        out += std::to_string(j);
        out += " + l";
        out += std::to_string(j);
        out += " = ";
        detail::print_expr(spec.f(j), out);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Compiled systems: each f_j becomes a flat postfix program interpreted with
// an explicit stack. The oracle evaluates f_j up to q * 2q^n times per sweep,
// so per-call tree walking is the hot spot this avoids.
// ---------------------------------------------------------------------------
class CompiledSystem {
  public:
    CompiledSystem() = default;

    CompiledSystem(const EquationSystemSpec& spec, const Field& field) : n_(spec.n) {
        if (auto v = validate_system(spec)) {
            throw invalid_input("equation system violates variable scope at f_" +
                                std::to_string(v->j));
        }
        programs_.resize(spec.n - 1);
        for (std::uint32_t j = 2; j <= spec.n; ++j) {
            Program& prog = programs_[j - 2];
            emit(spec.f(j), field, prog);
            std::uint32_t depth = 0, maxd = 0;
            for (const Instr& ins : prog.code) {
                switch (ins.op) {
                    case Op::push_lit:
                    case Op::push_p:
                    case Op::push_l: ++depth; break;
                    case Op::pow_k: break;
                    default: --depth; break;
                }
                maxd = std::max(maxd, depth);
            }
            prog.stack_need = maxd;
        }
    }

    std::uint32_t n() const { return n_; }

    // Evaluates f_j on coordinate prefixes (the first j-1 entries are read).
    Fe eval(std::uint32_t j, const Field& field, std::span<const Fe> pcoords,
            std::span<const Fe> lcoords) const {
        if (j < 2 || j > n_) throw invalid_input("equation index out of range");
        if (pcoords.size() + 1 < j || lcoords.size() + 1 < j)
            throw invalid_input("coordinate prefix too short for f_" + std::to_string(j));
        return run(programs_[j - 2], field, pcoords.data(), lcoords.data());
    }

    // Unchecked hot path used by the neighbor oracle.
    Fe eval_unchecked(std::uint32_t j, const Field& field, const Fe* pcoords,
                      const Fe* lcoords) const {
        return run(programs_[j - 2], field, pcoords, lcoords);
    }

  private:
    enum class Op : std::uint8_t { push_lit, push_p, push_l, add, sub, mul, pow_k };
    struct Instr {
        Op op;
        std::uint32_t arg;
    };
    struct Program {
        std::vector<Instr> code;
        std::uint32_t stack_need = 0;
    };

    static void emit(const PolyExpr& e, const Field& field, Program& prog) {
        switch (e.kind) {
            case PolyExpr::Kind::literal:
                prog.code.push_back({Op::push_lit, field.from_int(static_cast<std::int64_t>(
                                                       e.literal % field.p()))});
                return;
            case PolyExpr::Kind::variable:
                prog.code.push_back({e.side == VarSide::point ? Op::push_p : Op::push_l,
                                     e.index - 1});
                return;
            case PolyExpr::Kind::pow:
                emit(*e.lhs, field, prog);
                prog.code.push_back({Op::pow_k, e.exponent});
                return;
            case PolyExpr::Kind::add:
            case PolyExpr::Kind::sub:
            case PolyExpr::Kind::mul:
                emit(*e.lhs, field, prog);
                emit(*e.rhs, field, prog);
                prog.code.push_back({e.kind == PolyExpr::Kind::add   ? Op::add
                                     : e.kind == PolyExpr::Kind::sub ? Op::sub
                                                                     : Op::mul,
                                     0});
                return;
        }
    }

    static Fe run(const Program& prog, const Field& field, const Fe* pcoords, const Fe* lcoords) {
        Fe stack[kMaxStack];
        std::uint32_t top = 0;
        for (const Instr& ins : prog.code) {
            switch (ins.op) {
                case Op::push_lit: stack[top++] = ins.arg; break;
                case Op::push_p: stack[top++] = pcoords[ins.arg]; break;
                case Op::push_l: stack[top++] = lcoords[ins.arg]; break;
                case Op::add: --top; stack[top - 1] = field.add(stack[top - 1], stack[top]); break;
                case Op::sub: --top; stack[top - 1] = field.sub(stack[top - 1], stack[top]); break;
                case Op::mul: --top; stack[top - 1] = field.mul(stack[top - 1], stack[top]); break;
                case Op::pow_k: stack[top - 1] = field.pow(stack[top - 1], ins.arg); break;
            }
        }
        return stack[0];
    }

    static constexpr std::uint32_t kMaxStack = detail::kMaxExprDepth + 1;

    std::uint32_t n_ = 0;
    std::vector<Program> programs_;
};

// Tree-walking evaluation of f_j; the compiled path is checked against this.
inline Fe eval_expr_tree(const PolyExpr& e, const Field& field, std::span<const Fe> pcoords,
                         std::span<const Fe> lcoords) {
    switch (e.kind) {
        case PolyExpr::Kind::literal:
            return field.from_int(static_cast<std::int64_t>(e.literal % field.p()));
        case PolyExpr::Kind::variable:
            return e.side == VarSide::point ? pcoords[e.index - 1] : lcoords[e.index - 1];
        case PolyExpr::Kind::pow:
            return field.pow(eval_expr_tree(*e.lhs, field, pcoords, lcoords), e.exponent);
        case PolyExpr::Kind::add:
            return field.add(eval_expr_tree(*e.lhs, field, pcoords, lcoords),
                             eval_expr_tree(*e.rhs, field, pcoords, lcoords));
        case PolyExpr::Kind::sub:
            return field.sub(eval_expr_tree(*e.lhs, field, pcoords, lcoords),
                             eval_expr_tree(*e.rhs, field, pcoords, lcoords));
        default:
            return field.mul(eval_expr_tree(*e.lhs, field, pcoords, lcoords),
                             eval_expr_tree(*e.rhs, field, pcoords, lcoords));
    }
}

inline Fe eval_rhs(const CompiledSystem& sys, const Field& field, std::uint32_t j,
                   std::span<const Fe> pcoords, std::span<const Fe> lcoords) {
    return sys.eval(j, field, pcoords, lcoords);
}

}  // namespace adg
