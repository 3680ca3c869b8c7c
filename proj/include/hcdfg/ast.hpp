#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hcdfg/diagnostics.hpp"

namespace hcdfg {

// ---------------------------------------------------------------------------
// Element types of the restricted language: integer scalars of a few widths
// plus a fixed-point type. Bit widths are carried through the pipeline as the
// data format of memory nodes but do not influence any metric.
// ---------------------------------------------------------------------------

struct ElemType {
    std::string name = "int";
    int bits = 32;
    bool is_void() const { return name == "void"; }
};

inline bool operator==(const ElemType& a, const ElemType& b) {
    return a.name == b.name && a.bits == b.bits;
}

inline std::optional<ElemType> elem_type_from_keyword(const std::string& kw) {
    if (kw == "int") return ElemType{"int", 32};
    if (kw == "char") return ElemType{"char", 8};
    if (kw == "short") return ElemType{"short", 16};
    if (kw == "long") return ElemType{"long", 64};
    if (kw == "fixed") return ElemType{"fixed", 32};
    if (kw == "void") return ElemType{"void", 0};
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

enum class BinOp {
    Add, Sub, Mul, Div, Mod,
    Shl, Shr, BitAnd, BitOr, BitXor,
    LogAnd, LogOr,
    Lt, Le, Gt, Ge, Eq, Ne,
};

enum class UnOp { Neg, LogNot, BitNot, PreInc, PreDec, PostInc, PostDec };

inline const char* bin_op_token(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Div: return "/";
        case BinOp::Mod: return "%";
        case BinOp::Shl: return "<<";
        case BinOp::Shr: return ">>";
        case BinOp::BitAnd: return "&";
        case BinOp::BitOr: return "|";
        case BinOp::BitXor: return "^";
        case BinOp::LogAnd: return "&&";
        case BinOp::LogOr: return "||";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::Eq: return "==";
        case BinOp::Ne: return "!=";
    }
    return "?";
}

// The six comparison operators become conditional nodes; everything else is a
// processing node.
inline bool is_test_op(BinOp op) {
    switch (op) {
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge:
        case BinOp::Eq:
        case BinOp::Ne: return true;
        default: return false;
    }
}

inline const char* un_op_token(UnOp op) {
    switch (op) {
        case UnOp::Neg: return "-";
        case UnOp::LogNot: return "!";
        case UnOp::BitNot: return "~";
        case UnOp::PreInc:
        case UnOp::PostInc: return "++";
        case UnOp::PreDec:
        case UnOp::PostDec: return "--";
    }
    return "?";
}

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Literal {
    std::string text;     // source spelling; value semantics are irrelevant to the metrics
    bool is_fixed = false;
};
struct VarRef {
    std::string name;
};
struct ArrayRef {
    std::string name;
    std::vector<ExprPtr> indices;  // non-empty
};
struct Binary {
    BinOp op;
    ExprPtr lhs, rhs;
};
struct Unary {
    UnOp op;
    ExprPtr operand;
};
struct Assign {
    ExprPtr lhs;  // VarRef or ArrayRef
    ExprPtr rhs;
};
struct Call {
    std::string callee;
    std::vector<ExprPtr> args;
};

struct Expr {
    SourceSpan span;
    std::variant<Literal, VarRef, ArrayRef, Binary, Unary, Assign, Call> node;

    template <typename T> bool is() const { return std::holds_alternative<T>(node); }
    template <typename T> const T& as() const { return std::get<T>(node); }
    template <typename T> T& as() { return std::get<T>(node); }
};

inline ExprPtr make_expr(SourceSpan span, auto&& node) {
    auto e = std::make_unique<Expr>();
    e->span = std::move(span);
    e->node = std::forward<decltype(node)>(node);
    return e;
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct ExprStmt {
    ExprPtr expr;
};
struct Block {
    std::vector<StmtPtr> stmts;
};
struct If {
    ExprPtr cond;
    StmtPtr then_branch;
    StmtPtr else_branch;  // may be null
};
struct For {
    ExprPtr init;  // any of these may be null ("empty")
    ExprPtr cond;
    ExprPtr step;
    StmtPtr body;
};
struct While {
    ExprPtr cond;
    StmtPtr body;
};
struct DoWhile {
    StmtPtr body;
    ExprPtr cond;
};
struct SwitchCase {
    long long label = 0;
    std::vector<StmtPtr> body;
    SourceSpan span;
};
struct Switch {
    ExprPtr value;
    std::vector<SwitchCase> cases;
    bool has_default = false;
    std::vector<StmtPtr> default_body;
    SourceSpan default_span;
};
struct Return {
    ExprPtr value;  // may be null
};
struct Decl {
    std::string name;
    ElemType type;
    std::vector<long long> dims;  // empty for scalars; 0 marks an unsized dimension
    ExprPtr init;                 // scalars only, may be null
};

struct Stmt {
    SourceSpan span;
    std::variant<ExprStmt, Block, If, For, While, DoWhile, Switch, Return, Decl> node;

    template <typename T> bool is() const { return std::holds_alternative<T>(node); }
    template <typename T> const T& as() const { return std::get<T>(node); }
    template <typename T> T& as() { return std::get<T>(node); }
};

inline StmtPtr make_stmt(SourceSpan span, auto&& node) {
    auto s = std::make_unique<Stmt>();
    s->span = std::move(span);
    s->node = std::forward<decltype(node)>(node);
    return s;
}

// ---------------------------------------------------------------------------
// Functions and programs
// ---------------------------------------------------------------------------

struct Param {
    std::string name;
    ElemType type;
    bool is_array = false;
    std::vector<long long> dims;
};

struct AstFunction {
    std::string name;
    ElemType return_type;
    std::vector<Param> params;
    StmtPtr body;  // always a Block
    SourceSpan span;
};

struct GlobalDecl {
    std::string name;
    ElemType type;
    std::vector<long long> dims;
    SourceSpan span;
};

struct Program {
    std::vector<GlobalDecl> globals;
    std::vector<AstFunction> functions;
};

// ---------------------------------------------------------------------------
// Deep clone (normalization rewrites trees without mutating the input)
// ---------------------------------------------------------------------------

inline ExprPtr clone(const ExprPtr& e);
inline StmtPtr clone(const StmtPtr& s);

inline ExprPtr clone(const ExprPtr& e) {
    if (!e) return nullptr;
    return std::visit(
        [&](const auto& n) -> ExprPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal> || std::is_same_v<T, VarRef>) {
                return make_expr(e->span, T{n});
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                ArrayRef out{n.name, {}};
                for (const auto& ix : n.indices) out.indices.push_back(clone(ix));
                return make_expr(e->span, std::move(out));
            } else if constexpr (std::is_same_v<T, Binary>) {
                return make_expr(e->span, Binary{n.op, clone(n.lhs), clone(n.rhs)});
            } else if constexpr (std::is_same_v<T, Unary>) {
                return make_expr(e->span, Unary{n.op, clone(n.operand)});
            } else if constexpr (std::is_same_v<T, Assign>) {
                return make_expr(e->span, Assign{clone(n.lhs), clone(n.rhs)});
            } else {
                Call out{n.callee, {}};
                for (const auto& a : n.args) out.args.push_back(clone(a));
                return make_expr(e->span, std::move(out));
            }
        },
        e->node);
}

inline StmtPtr clone(const StmtPtr& s) {
    if (!s) return nullptr;
    return std::visit(
        [&](const auto& n) -> StmtPtr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ExprStmt>) {
                return make_stmt(s->span, ExprStmt{clone(n.expr)});
            } else if constexpr (std::is_same_v<T, Block>) {
                Block out;
                for (const auto& st : n.stmts) out.stmts.push_back(clone(st));
                return make_stmt(s->span, std::move(out));
            } else if constexpr (std::is_same_v<T, If>) {
                return make_stmt(s->span, If{clone(n.cond), clone(n.then_branch), clone(n.else_branch)});
            } else if constexpr (std::is_same_v<T, For>) {
                return make_stmt(s->span, For{clone(n.init), clone(n.cond), clone(n.step), clone(n.body)});
            } else if constexpr (std::is_same_v<T, While>) {
                return make_stmt(s->span, While{clone(n.cond), clone(n.body)});
            } else if constexpr (std::is_same_v<T, DoWhile>) {
                return make_stmt(s->span, DoWhile{clone(n.body), clone(n.cond)});
            } else if constexpr (std::is_same_v<T, Switch>) {
                Switch out;
                out.value = clone(n.value);
                for (const auto& c : n.cases) {
                    SwitchCase cc;
                    cc.label = c.label;
                    cc.span = c.span;
                    for (const auto& st : c.body) cc.body.push_back(clone(st));
                    out.cases.push_back(std::move(cc));
                }
                out.has_default = n.has_default;
                out.default_span = n.default_span;
                for (const auto& st : n.default_body) out.default_body.push_back(clone(st));
                return make_stmt(s->span, std::move(out));
            } else if constexpr (std::is_same_v<T, Return>) {
                return make_stmt(s->span, Return{clone(n.value)});
            } else {
                return make_stmt(s->span, Decl{n.name, n.type, n.dims, clone(n.init)});
            }
        },
        s->node);
}

inline AstFunction clone(const AstFunction& f) {
    AstFunction out;
    out.name = f.name;
    out.return_type = f.return_type;
    out.params = f.params;
    out.body = clone(f.body);
    out.span = f.span;
    return out;
}

// ---------------------------------------------------------------------------
// Structural equality, ignoring spans
// ---------------------------------------------------------------------------

inline bool ast_equal(const ExprPtr& a, const ExprPtr& b);
inline bool ast_equal(const StmtPtr& a, const StmtPtr& b);

inline bool ast_equal(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = b->as<T>();
            if constexpr (std::is_same_v<T, Literal>) {
                return na.text == nb.text && na.is_fixed == nb.is_fixed;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                return na.name == nb.name;
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                if (na.name != nb.name || na.indices.size() != nb.indices.size()) return false;
                for (size_t i = 0; i < na.indices.size(); ++i)
                    if (!ast_equal(na.indices[i], nb.indices[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Binary>) {
                return na.op == nb.op && ast_equal(na.lhs, nb.lhs) && ast_equal(na.rhs, nb.rhs);
            } else if constexpr (std::is_same_v<T, Unary>) {
                return na.op == nb.op && ast_equal(na.operand, nb.operand);
            } else if constexpr (std::is_same_v<T, Assign>) {
                return ast_equal(na.lhs, nb.lhs) && ast_equal(na.rhs, nb.rhs);
            } else {
                if (na.callee != nb.callee || na.args.size() != nb.args.size()) return false;
                for (size_t i = 0; i < na.args.size(); ++i)
                    if (!ast_equal(na.args[i], nb.args[i])) return false;
                return true;
            }
        },
        a->node);
}

inline bool ast_equal(const StmtPtr& a, const StmtPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& na) -> bool {
            using T = std::decay_t<decltype(na)>;
            const auto& nb = b->as<T>();
            if constexpr (std::is_same_v<T, ExprStmt>) {
                return ast_equal(na.expr, nb.expr);
            } else if constexpr (std::is_same_v<T, Block>) {
                if (na.stmts.size() != nb.stmts.size()) return false;
                for (size_t i = 0; i < na.stmts.size(); ++i)
                    if (!ast_equal(na.stmts[i], nb.stmts[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, If>) {
                return ast_equal(na.cond, nb.cond) && ast_equal(na.then_branch, nb.then_branch) &&
                       ast_equal(na.else_branch, nb.else_branch);
            } else if constexpr (std::is_same_v<T, For>) {
                return ast_equal(na.init, nb.init) && ast_equal(na.cond, nb.cond) &&
                       ast_equal(na.step, nb.step) && ast_equal(na.body, nb.body);
            } else if constexpr (std::is_same_v<T, While>) {
                return ast_equal(na.cond, nb.cond) && ast_equal(na.body, nb.body);
            } else if constexpr (std::is_same_v<T, DoWhile>) {
                return ast_equal(na.cond, nb.cond) && ast_equal(na.body, nb.body);
            } else if constexpr (std::is_same_v<T, Switch>) {
                if (!ast_equal(na.value, nb.value)) return false;
                if (na.cases.size() != nb.cases.size() || na.has_default != nb.has_default) return false;
                for (size_t i = 0; i < na.cases.size(); ++i) {
                    if (na.cases[i].label != nb.cases[i].label) return false;
                    if (na.cases[i].body.size() != nb.cases[i].body.size()) return false;
                    for (size_t j = 0; j < na.cases[i].body.size(); ++j)
                        if (!ast_equal(na.cases[i].body[j], nb.cases[i].body[j])) return false;
                }
                if (na.default_body.size() != nb.default_body.size()) return false;
                for (size_t j = 0; j < na.default_body.size(); ++j)
                    if (!ast_equal(na.default_body[j], nb.default_body[j])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Return>) {
                return ast_equal(na.value, nb.value);
            } else {
                return na.name == nb.name && na.type == nb.type && na.dims == nb.dims &&
                       ast_equal(na.init, nb.init);
            }
        },
        a->node);
}

inline bool ast_equal(const AstFunction& a, const AstFunction& b) {
    if (a.name != b.name || !(a.return_type == b.return_type)) return false;
    if (a.params.size() != b.params.size()) return false;
    for (size_t i = 0; i < a.params.size(); ++i) {
        const auto& pa = a.params[i];
        const auto& pb = b.params[i];
        if (pa.name != pb.name || !(pa.type == pb.type) || pa.is_array != pb.is_array ||
            pa.dims != pb.dims)
            return false;
    }
    return ast_equal(a.body, b.body);
}

}  // namespace hcdfg
