#pragma once

#include "hcdfg/ast.hpp"

namespace hcdfg {

// Rewrites a parsed function into the canonical form the graph builder
// consumes:
//   - i++ / --i statements become i = i + 1 / i = i - 1;
//   - control conditions are comparison trees: bare values gain an explicit
//     != 0, `!` is pushed through with De Morgan / comparison inversion.
// Compound assignments were already expanded by the parser (the AST cannot
// express them). The rewrite is idempotent.
class Normalizer {
public:
    AstFunction run(const AstFunction& fn) {
        AstFunction out = clone(fn);
        out.body = rewrite_stmt(std::move(out.body));
        return out;
    }

private:
    static ExprPtr int_literal(const SourceSpan& span, long long v) {
        return make_expr(span, Literal{std::to_string(v), false});
    }

    static BinOp inverted(BinOp op) {
        switch (op) {
            case BinOp::Lt: return BinOp::Ge;
            case BinOp::Le: return BinOp::Gt;
            case BinOp::Gt: return BinOp::Le;
            case BinOp::Ge: return BinOp::Lt;
            case BinOp::Eq: return BinOp::Ne;
            case BinOp::Ne: return BinOp::Eq;
            default: return op;
        }
    }

    // ++/-- with a discarded value -> explicit assignment.
    ExprPtr rewrite_top_expr(ExprPtr e) {
        if (!e) return e;
        if (e->is<Unary>()) {
            auto& u = e->as<Unary>();
            bool inc = u.op == UnOp::PreInc || u.op == UnOp::PostInc;
            bool dec = u.op == UnOp::PreDec || u.op == UnOp::PostDec;
            if (inc || dec) {
                SourceSpan span = e->span;
                ExprPtr target = std::move(u.operand);
                ExprPtr rhs = make_expr(span, Binary{inc ? BinOp::Add : BinOp::Sub, clone(target),
                                                     int_literal(span, 1)});
                return make_expr(span, Assign{std::move(target), std::move(rhs)});
            }
        }
        return e;
    }

    ExprPtr normalize_condition(ExprPtr e) {
        if (!e) return e;
        if (e->is<Binary>()) {
            auto& b = e->as<Binary>();
            if (b.op == BinOp::LogAnd || b.op == BinOp::LogOr) {
                b.lhs = normalize_condition(std::move(b.lhs));
                b.rhs = normalize_condition(std::move(b.rhs));
                return e;
            }
            if (is_test_op(b.op)) return e;
        }
        if (e->is<Unary>() && e->as<Unary>().op == UnOp::LogNot)
            return negate_condition(std::move(e->as<Unary>().operand));
        SourceSpan span = e->span;
        return make_expr(span, Binary{BinOp::Ne, std::move(e), int_literal(span, 0)});
    }

    ExprPtr negate_condition(ExprPtr e) {
        if (e->is<Binary>()) {
            auto& b = e->as<Binary>();
            if (is_test_op(b.op)) {
                b.op = inverted(b.op);
                return e;
            }
            if (b.op == BinOp::LogAnd || b.op == BinOp::LogOr) {
                SourceSpan span = e->span;
                return make_expr(span,
                                 Binary{b.op == BinOp::LogAnd ? BinOp::LogOr : BinOp::LogAnd,
                                        negate_condition(std::move(b.lhs)),
                                        negate_condition(std::move(b.rhs))});
            }
        }
        if (e->is<Unary>() && e->as<Unary>().op == UnOp::LogNot)
            return normalize_condition(std::move(e->as<Unary>().operand));
        SourceSpan span = e->span;
        return make_expr(span, Binary{BinOp::Eq, std::move(e), int_literal(span, 0)});
    }

    StmtPtr rewrite_stmt(StmtPtr s) {
        if (!s) return s;
        std::visit(
            [&](auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ExprStmt>) {
                    n.expr = rewrite_top_expr(std::move(n.expr));
                } else if constexpr (std::is_same_v<T, Block>) {
                    for (auto& st : n.stmts) st = rewrite_stmt(std::move(st));
                } else if constexpr (std::is_same_v<T, If>) {
                    n.cond = normalize_condition(std::move(n.cond));
                    n.then_branch = rewrite_stmt(std::move(n.then_branch));
                    n.else_branch = rewrite_stmt(std::move(n.else_branch));
                } else if constexpr (std::is_same_v<T, For>) {
                    n.init = rewrite_top_expr(std::move(n.init));
                    n.cond = normalize_condition(std::move(n.cond));
                    n.step = rewrite_top_expr(std::move(n.step));
                    n.body = rewrite_stmt(std::move(n.body));
                } else if constexpr (std::is_same_v<T, While>) {
                    n.cond = normalize_condition(std::move(n.cond));
                    n.body = rewrite_stmt(std::move(n.body));
                } else if constexpr (std::is_same_v<T, DoWhile>) {
                    n.body = rewrite_stmt(std::move(n.body));
                    n.cond = normalize_condition(std::move(n.cond));
                } else if constexpr (std::is_same_v<T, Switch>) {
                    for (auto& c : n.cases)
                        for (auto& st : c.body) st = rewrite_stmt(std::move(st));
                    for (auto& st : n.default_body) st = rewrite_stmt(std::move(st));
                }
            },
            s->node);
        return s;
    }
};

inline AstFunction normalize(const AstFunction& fn) { return Normalizer().run(fn); }

inline Program normalize(const Program& prog) {
    Program out;
    out.globals = prog.globals;
    for (const auto& fn : prog.functions) out.functions.push_back(normalize(fn));
    return out;
}

}  // namespace hcdfg
