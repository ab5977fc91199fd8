#include "qholo/density.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>
#include <vector>

namespace qholo {

namespace detail {

enum class NodeKind { Number, Var, UnitConst, Unary, Call, Binary };
enum class VarId { X, Y };
enum class UnitId { I, I1, I2, I3 };
enum class FnId { Cos, Sin, Exp, Log, Abs };
enum class BinOp { Add, Sub, Mul, Div };

struct ExprNode {
    NodeKind kind;
    size_t pos = 0;

    complex_t number{};  // Number (pure real or pure imaginary literal)
    VarId var{};
    UnitId unit{};
    FnId fn{};
    BinOp op{};
    std::shared_ptr<const ExprNode> lhs, rhs;  // Unary/Call use lhs only
};

using NodePtr = std::shared_ptr<const ExprNode>;

namespace {

bool is_scalar(const CQuat& q) {
    return q.q1 == complex_t{} && q.q2 == complex_t{} && q.q3 == complex_t{};
}

CQuat eval_node(const ExprNode& n, Vec2 z) {
    switch (n.kind) {
        case NodeKind::Number:
            return CQuat::scalar(n.number);
        case NodeKind::Var:
            return CQuat::scalar(n.var == VarId::X ? z.x : z.y);
        case NodeKind::UnitConst:
            switch (n.unit) {
                case UnitId::I: return CQuat::scalar(kImag);
                case UnitId::I1: return CQuat::vector(1.0, {}, {});
                case UnitId::I2: return CQuat::vector({}, 1.0, {});
                case UnitId::I3: return CQuat::vector({}, {}, 1.0);
            }
            return {};
        case NodeKind::Unary:
            return -eval_node(*n.lhs, z);
        case NodeKind::Call: {
            const CQuat a = eval_node(*n.lhs, z);
            if (n.fn == FnId::Abs) return CQuat::scalar(norm(a));
            if (!is_scalar(a))
                throw DensityError("scalar function applied to a non-scalar quaternion", n.pos);
            switch (n.fn) {
                case FnId::Cos: return CQuat::scalar(std::cos(a.q0));
                case FnId::Sin: return CQuat::scalar(std::sin(a.q0));
                case FnId::Exp: return CQuat::scalar(std::exp(a.q0));
                case FnId::Log:
                    if (a.q0 == complex_t{}) throw DensityError("log of zero", n.pos);
                    return CQuat::scalar(std::log(a.q0));
                case FnId::Abs: break;
            }
            return {};
        }
        case NodeKind::Binary: {
            const CQuat a = eval_node(*n.lhs, z);
            const CQuat b = eval_node(*n.rhs, z);
            switch (n.op) {
                case BinOp::Add: return a + b;
                case BinOp::Sub: return a - b;
                case BinOp::Mul: return a * b;
                case BinOp::Div: {
                    // right division a b^{-1}; b conj(b) is a complex scalar
                    const complex_t bb = b.q0 * b.q0 + b.q1 * b.q1 + b.q2 * b.q2 + b.q3 * b.q3;
                    if (bb == complex_t{})
                        throw DensityError("division by a non-invertible quaternion", n.pos);
                    return a * conj(b) * (1.0 / bb);
                }
            }
            return {};
        }
    }
    return {};
}

// --- lexer ---

enum class TokKind { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, End };

struct Token {
    TokKind kind;
    size_t pos;
    complex_t number{};
    std::string ident;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            size_t j = i;
            while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '.'))
                ++j;
            if (j < text.size() && (text[j] == 'e' || text[j] == 'E')) {
                size_t k = j + 1;
                if (k < text.size() && (text[k] == '+' || text[k] == '-')) ++k;
                if (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) {
                    ++k;
                    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                    j = k;
                }
            }
            const std::string num(text.substr(i, j - i));
            char* end = nullptr;
            const double v = std::strtod(num.c_str(), &end);
            if (end != num.c_str() + num.size())
                throw DensityError("malformed number '" + num + "'", start);
            Token t{TokKind::Number, start, complex_t(v, 0.0), {}};
            // a trailing i glued to the digits makes an imaginary literal: 2i, 1.5i
            if (j < text.size() && text[j] == 'i' &&
                (j + 1 >= text.size() || !std::isalnum(static_cast<unsigned char>(text[j + 1])))) {
                t.number = complex_t(0.0, v);
                ++j;
            }
            i = j;
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({TokKind::Ident, start, {}, std::string(text.substr(i, j - i))});
            i = j;
            continue;
        }
        TokKind k;
        switch (c) {
            case '+': k = TokKind::Plus; break;
            case '-': k = TokKind::Minus; break;
            case '*': k = TokKind::Star; break;
            case '/': k = TokKind::Slash; break;
            case '(': k = TokKind::LParen; break;
            case ')': k = TokKind::RParen; break;
            default:
                throw DensityError(std::string("unexpected character '") + c + "'", start);
        }
        out.push_back({k, start, {}, {}});
        ++i;
    }
    out.push_back({TokKind::End, text.size(), {}, {}});
    return out;
}

// --- parser (recursive descent; additive < multiplicative < unary) ---

struct Parser {
    const std::vector<Token>& toks;
    size_t at = 0;

    const Token& peek() const { return toks[at]; }
    Token take() { return toks[at++]; }

    NodePtr parse_expr() {
        NodePtr lhs = parse_term();
        while (peek().kind == TokKind::Plus || peek().kind == TokKind::Minus) {
            const Token t = take();
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::Binary;
            n->pos = t.pos;
            n->op = t.kind == TokKind::Plus ? BinOp::Add : BinOp::Sub;
            n->lhs = lhs;
            n->rhs = parse_term();
            lhs = n;
        }
        return lhs;
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        while (peek().kind == TokKind::Star || peek().kind == TokKind::Slash) {
            const Token t = take();
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::Binary;
            n->pos = t.pos;
            n->op = t.kind == TokKind::Star ? BinOp::Mul : BinOp::Div;
            n->lhs = lhs;
            n->rhs = parse_unary();
            lhs = n;
        }
        return lhs;
    }

    NodePtr parse_unary() {
        if (peek().kind == TokKind::Minus) {
            const Token t = take();
            auto n = std::make_shared<ExprNode>();
            n->kind = NodeKind::Unary;
            n->pos = t.pos;
            n->lhs = parse_unary();
            return n;
        }
        if (peek().kind == TokKind::Plus) {
            take();
            return parse_unary();
        }
        return parse_primary();
    }

    NodePtr parse_primary() {
        const Token t = take();
        auto n = std::make_shared<ExprNode>();
        n->pos = t.pos;
        switch (t.kind) {
            case TokKind::Number:
                n->kind = NodeKind::Number;
                n->number = t.number;
                return n;
            case TokKind::LParen: {
                NodePtr inner = parse_expr();
                expect(TokKind::RParen, "expected ')'");
                return inner;
            }
            case TokKind::Ident: {
                if (t.ident == "x" || t.ident == "y") {
                    n->kind = NodeKind::Var;
                    n->var = t.ident == "x" ? VarId::X : VarId::Y;
                    return n;
                }
                if (t.ident == "i" || t.ident == "i1" || t.ident == "i2" || t.ident == "i3") {
                    n->kind = NodeKind::UnitConst;
                    n->unit = t.ident == "i"    ? UnitId::I
                              : t.ident == "i1" ? UnitId::I1
                              : t.ident == "i2" ? UnitId::I2
                                                : UnitId::I3;
                    return n;
                }
                FnId fn;
                if (t.ident == "cos") fn = FnId::Cos;
                else if (t.ident == "sin") fn = FnId::Sin;
                else if (t.ident == "exp") fn = FnId::Exp;
                else if (t.ident == "log") fn = FnId::Log;
                else if (t.ident == "abs") fn = FnId::Abs;
                else throw DensityError("unknown identifier '" + t.ident + "'", t.pos);
                expect(TokKind::LParen, "expected '(' after function name");
                n->kind = NodeKind::Call;
                n->fn = fn;
                n->lhs = parse_expr();
                expect(TokKind::RParen, "expected ')'");
                return n;
            }
            default:
                throw DensityError("expected a value", t.pos);
        }
    }

    void expect(TokKind k, const char* msg) {
        if (peek().kind != k) throw DensityError(msg, peek().pos);
        take();
    }
};

// --- pretty printing with minimal parentheses ---

int precedence(const ExprNode& n) {
    if (n.kind == NodeKind::Binary) return (n.op == BinOp::Add || n.op == BinOp::Sub) ? 1 : 2;
    if (n.kind == NodeKind::Unary) return 3;
    return 4;
}

// shortest decimal that reads back to the same double
std::string format_double(double v) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void print_node(const ExprNode& n, std::string& out) {
    switch (n.kind) {
        case NodeKind::Number:
            if (n.number.imag() == 0.0) {
                out += format_double(n.number.real());
            } else {
                out += format_double(n.number.imag());
                out += 'i';
            }
            return;
        case NodeKind::Var:
            out += n.var == VarId::X ? 'x' : 'y';
            return;
        case NodeKind::UnitConst:
            switch (n.unit) {
                case UnitId::I: out += "i"; return;
                case UnitId::I1: out += "i1"; return;
                case UnitId::I2: out += "i2"; return;
                case UnitId::I3: out += "i3"; return;
            }
            return;
        case NodeKind::Unary: {
            out += '-';
            const bool parens = precedence(*n.lhs) < 3;
            if (parens) out += '(';
            print_node(*n.lhs, out);
            if (parens) out += ')';
            return;
        }
        case NodeKind::Call:
            switch (n.fn) {
                case FnId::Cos: out += "cos("; break;
                case FnId::Sin: out += "sin("; break;
                case FnId::Exp: out += "exp("; break;
                case FnId::Log: out += "log("; break;
                case FnId::Abs: out += "abs("; break;
            }
            print_node(*n.lhs, out);
            out += ')';
            return;
        case NodeKind::Binary: {
            const int prec = precedence(n);
            const bool lp = precedence(*n.lhs) < prec;
            if (lp) out += '(';
            print_node(*n.lhs, out);
            if (lp) out += ')';
            switch (n.op) {
                case BinOp::Add: out += " + "; break;
                case BinOp::Sub: out += " - "; break;
                case BinOp::Mul: out += "*"; break;
                case BinOp::Div: out += "/"; break;
            }
            // - and / do not associate to the right
            const int rmin = (n.op == BinOp::Sub || n.op == BinOp::Div) ? prec + 1 : prec;
            const bool rp = precedence(*n.rhs) < rmin;
            if (rp) out += '(';
            print_node(*n.rhs, out);
            if (rp) out += ')';
            return;
        }
    }
}

}  // namespace
}  // namespace detail

Density Density::constant(CQuat q) {
    Density d;
    d.builtin_ = Builtin::Constant;
    d.cval_ = q;
    return d;
}

Density Density::fourier(int k) {
    Density d;
    d.builtin_ = Builtin::Fourier;
    d.k_ = k;
    return d;
}

Density Density::fourier_scalar(int k) {
    Density d;
    d.builtin_ = Builtin::FourierScalar;
    d.k_ = k;
    return d;
}

Density Density::coordinate() {
    Density d;
    d.builtin_ = Builtin::Coordinate;
    return d;
}

Density Density::coordinate_scalar() {
    Density d;
    d.builtin_ = Builtin::CoordinateScalar;
    return d;
}

Density Density::parse(std::string_view text) {
    const auto toks = detail::lex(text);
    detail::Parser parser{toks};
    detail::NodePtr root = parser.parse_expr();
    if (parser.peek().kind != detail::TokKind::End)
        throw DensityError("trailing input after expression", parser.peek().pos);
    Density d;
    d.expr_ = std::move(root);
    return d;
}

CQuat Density::eval(Vec2 z) const {
    switch (builtin_) {
        case Builtin::Constant:
            return cval_;
        case Builtin::Fourier: {
            const double s = std::atan2(z.y, z.x);
            return {std::cos(k_ * s), {}, {}, std::sin(k_ * s)};
        }
        case Builtin::FourierScalar: {
            const double s = std::atan2(z.y, z.x);
            return CQuat::scalar({std::cos(k_ * s), std::sin(k_ * s)});
        }
        case Builtin::Coordinate:
            return CQuat::vector(z.x, z.y, {});
        case Builtin::CoordinateScalar:
            return CQuat::scalar({z.x, z.y});
        case Builtin::None:
            break;
    }
    return detail::eval_node(*expr_, z);
}

std::string Density::describe() const {
    char buf[200];
    switch (builtin_) {
        case Builtin::Constant:
            std::snprintf(buf, sizeof buf,
                          "const(%g%+gi, %g%+gi, %g%+gi, %g%+gi)", cval_.q0.real(),
                          cval_.q0.imag(), cval_.q1.real(), cval_.q1.imag(), cval_.q2.real(),
                          cval_.q2.imag(), cval_.q3.real(), cval_.q3.imag());
            return buf;
        case Builtin::Fourier:
            std::snprintf(buf, sizeof buf, "fourier(%d)", k_);
            return buf;
        case Builtin::FourierScalar:
            std::snprintf(buf, sizeof buf, "fourier_scalar(%d)", k_);
            return buf;
        case Builtin::Coordinate:
            return "coordinate";
        case Builtin::CoordinateScalar:
            return "coordinate_scalar";
        case Builtin::None: {
            std::string out;
            detail::print_node(*expr_, out);
            return out;
        }
    }
    return {};
}

}  // namespace qholo
