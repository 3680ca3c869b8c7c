#pragma once

#include <sstream>
#include <string>

#include "hcdfg/ast.hpp"

namespace hcdfg {

// Prints an AST back to parseable source. Binary expressions are fully
// parenthesized; parentheses do not create AST nodes, so print + reparse is
// structure-preserving.
class AstPrinter {
public:
    std::string print(const Program& prog) {
        for (const auto& g : prog.globals) {
            os_ << type_str(g.type) << ' ' << g.name;
            for (long long d : g.dims) os_ << '[' << d << ']';
            os_ << ";\n";
        }
        for (const auto& fn : prog.functions) print(fn);
        return os_.str();
    }

    std::string print(const AstFunction& fn) {
        os_ << type_str(fn.return_type) << ' ' << fn.name << '(';
        for (size_t i = 0; i < fn.params.size(); ++i) {
            if (i) os_ << ", ";
            const auto& p = fn.params[i];
            os_ << type_str(p.type) << ' ' << p.name;
            for (long long d : p.dims) {
                os_ << '[';
                if (d > 0) os_ << d;
                os_ << ']';
            }
        }
        os_ << ") ";
        stmt(*fn.body, 0);
        os_ << '\n';
        return os_.str();
    }

    std::string print(const Expr& e) {
        expr(e);
        return os_.str();
    }

private:
    static std::string type_str(const ElemType& t) { return t.name; }

    void indent(int depth) {
        for (int i = 0; i < depth; ++i) os_ << "    ";
    }

    void expr(const Expr& e) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Literal>) {
                    os_ << n.text;
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    os_ << n.name;
                } else if constexpr (std::is_same_v<T, ArrayRef>) {
                    os_ << n.name;
                    for (const auto& ix : n.indices) {
                        os_ << '[';
                        expr(*ix);
                        os_ << ']';
                    }
                } else if constexpr (std::is_same_v<T, Binary>) {
                    os_ << '(';
                    expr(*n.lhs);
                    os_ << ' ' << bin_op_token(n.op) << ' ';
                    expr(*n.rhs);
                    os_ << ')';
                } else if constexpr (std::is_same_v<T, Unary>) {
                    switch (n.op) {
                        case UnOp::PostInc:
                        case UnOp::PostDec:
                            expr(*n.operand);
                            os_ << un_op_token(n.op);
                            break;
                        case UnOp::PreInc:
                        case UnOp::PreDec:
                            os_ << un_op_token(n.op);
                            expr(*n.operand);
                            break;
                        default:
                            os_ << un_op_token(n.op) << '(';
                            expr(*n.operand);
                            os_ << ')';
                    }
                } else if constexpr (std::is_same_v<T, Assign>) {
                    expr(*n.lhs);
                    os_ << " = ";
                    expr(*n.rhs);
                } else {
                    os_ << n.callee << '(';
                    for (size_t i = 0; i < n.args.size(); ++i) {
                        if (i) os_ << ", ";
                        expr(*n.args[i]);
                    }
                    os_ << ')';
                }
            },
            e.node);
    }

    void opt_expr(const ExprPtr& e) {
        if (e) expr(*e);
    }

    void stmt(const Stmt& s, int depth) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ExprStmt>) {
                    expr(*n.expr);
                    os_ << ";\n";
                } else if constexpr (std::is_same_v<T, Block>) {
                    os_ << "{\n";
                    for (const auto& st : n.stmts) {
                        indent(depth + 1);
                        stmt(*st, depth + 1);
                    }
                    indent(depth);
                    os_ << "}\n";
                } else if constexpr (std::is_same_v<T, If>) {
                    os_ << "if (";
                    expr(*n.cond);
                    os_ << ") ";
                    nested(n.then_branch, depth);
                    if (n.else_branch) {
                        indent(depth);
                        os_ << "else ";
                        nested(n.else_branch, depth);
                    }
                } else if constexpr (std::is_same_v<T, For>) {
                    os_ << "for (";
                    opt_expr(n.init);
                    os_ << "; ";
                    opt_expr(n.cond);
                    os_ << "; ";
                    opt_expr(n.step);
                    os_ << ") ";
                    nested(n.body, depth);
                } else if constexpr (std::is_same_v<T, While>) {
                    os_ << "while (";
                    expr(*n.cond);
                    os_ << ") ";
                    nested(n.body, depth);
                } else if constexpr (std::is_same_v<T, DoWhile>) {
                    os_ << "do ";
                    nested(n.body, depth);
                    indent(depth);
                    os_ << "while (";
                    expr(*n.cond);
                    os_ << ");\n";
                } else if constexpr (std::is_same_v<T, Switch>) {
                    os_ << "switch (";
                    expr(*n.value);
                    os_ << ") {\n";
                    for (const auto& c : n.cases) {
                        indent(depth + 1);
                        os_ << "case " << c.label << ":\n";
                        for (const auto& st : c.body) {
                            indent(depth + 2);
                            stmt(*st, depth + 2);
                        }
                        indent(depth + 2);
                        os_ << "break;\n";
                    }
                    if (n.has_default) {
                        indent(depth + 1);
                        os_ << "default:\n";
                        for (const auto& st : n.default_body) {
                            indent(depth + 2);
                            stmt(*st, depth + 2);
                        }
                        indent(depth + 2);
                        os_ << "break;\n";
                    }
                    indent(depth);
                    os_ << "}\n";
                } else if constexpr (std::is_same_v<T, Return>) {
                    os_ << "return";
                    if (n.value) {
                        os_ << ' ';
                        expr(*n.value);
                    }
                    os_ << ";\n";
                } else if constexpr (std::is_same_v<T, Decl>) {
                    os_ << type_str(n.type) << ' ' << n.name;
                    for (long long d : n.dims) os_ << '[' << d << ']';
                    if (n.init) {
                        os_ << " = ";
                        expr(*n.init);
                    }
                    os_ << ";\n";
                }
            },
            s.node);
    }

    // Branch/loop bodies that are not already blocks get wrapped so the
    // reparse cannot re-associate dangling elses.
    void nested(const StmtPtr& s, int depth) {
        if (s->is<Block>()) {
            stmt(*s, depth);
            return;
        }
        os_ << "{\n";
        indent(depth + 1);
        stmt(*s, depth + 1);
        indent(depth);
        os_ << "}\n";
    }

    std::ostringstream os_;
};

inline std::string print_source(const Program& prog) { return AstPrinter().print(prog); }
inline std::string print_source(const AstFunction& fn) { return AstPrinter().print(fn); }

}  // namespace hcdfg
