#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>

#include "hcdfg/ast.hpp"
#include "hcdfg/lexer.hpp"

namespace hcdfg {

// Recursive-descent parser for the restricted C-like input language:
// integer/fixed-point scalars and static arrays, the usual expression
// operators, if/for/while/do-while/switch/return, and calls between corpus
// functions. Pointers, recursion, goto, dynamic memory and a few C niceties
// (ternary, break in loops, nested side effects) are rejected with an
// unsupported-construct error so corpus triage can tell them from plain
// syntax errors.
class Parser {
public:
    explicit Parser(TokenList tokens) : toks_(std::move(tokens)) {}

    Program run() {
        Program prog;
        while (!at_eof()) {
            parse_top_level(prog);
        }
        for (const auto& fn : prog.functions) check_function(prog, fn);
        return prog;
    }

private:
    // --- token plumbing ---
    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(size_t n) const {
        size_t i = pos_ + n;
        return i < toks_.size() ? toks_[i] : toks_.back();
    }
    bool at_eof() const { return cur().kind == TokKind::Eof; }
    Token take() { return toks_[pos_++]; }

    [[noreturn]] void syntax(const std::string& msg) const {
        throw Error(ErrorKind::Syntax, cur().span, msg + " (got '" + describe(cur()) + "')");
    }
    [[noreturn]] void unsupported(const SourceSpan& span, const std::string& msg) const {
        throw Error(ErrorKind::Unsupported, span, msg);
    }
    static std::string describe(const Token& t) {
        return t.kind == TokKind::Eof ? "<eof>" : t.text;
    }

    Token expect_punct(const std::string& p, const std::string& what) {
        if (!cur().is_punct(p)) syntax("expected '" + p + "' " + what);
        return take();
    }
    Token expect_ident(const std::string& what) {
        if (cur().kind != TokKind::Ident) syntax("expected identifier " + what);
        return take();
    }

    std::optional<ElemType> peek_type() const {
        if (cur().kind != TokKind::Keyword) return std::nullopt;
        return elem_type_from_keyword(cur().text);
    }

    void reject_pointer_here() {
        if (cur().is_punct("*"))
            unsupported(cur().span, "pointer declarations are not supported");
    }

    // --- top level ---
    void parse_top_level(Program& prog) {
        auto ty = peek_type();
        if (!ty) syntax("expected a type at file scope");
        Token ty_tok = take();
        reject_pointer_here();
        Token name = expect_ident("after type");
        if (cur().is_punct("(")) {
            prog.functions.push_back(parse_function(*ty, name));
        } else {
            parse_global(prog, *ty, name, ty_tok.span);
        }
    }

    void parse_global(Program& prog, ElemType ty, Token first_name, SourceSpan span) {
        if (ty.is_void()) throw Error(ErrorKind::Syntax, span, "void is not a data type");
        for (;;) {
            GlobalDecl g;
            g.name = first_name.text;
            g.type = ty;
            g.span = first_name.span;
            while (cur().is_punct("[")) {
                take();
                if (cur().kind != TokKind::IntLit) syntax("expected array dimension");
                g.dims.push_back(std::stoll(take().text));
                expect_punct("]", "after array dimension");
            }
            if (cur().is_punct("="))
                unsupported(cur().span, "global initializers are not supported");
            prog.globals.push_back(std::move(g));
            if (cur().is_punct(",")) {
                take();
                reject_pointer_here();
                first_name = expect_ident("in declaration list");
                continue;
            }
            expect_punct(";", "after global declaration");
            break;
        }
    }

    AstFunction parse_function(ElemType ret, Token name) {
        AstFunction fn;
        fn.name = name.text;
        fn.return_type = ret;
        fn.span = name.span;
        expect_punct("(", "after function name");
        if (!cur().is_punct(")")) {
            if (cur().is_kw("void") && ahead(1).is_punct(")")) {
                take();
            } else {
                for (;;) {
                    fn.params.push_back(parse_param());
                    if (cur().is_punct(",")) {
                        take();
                        continue;
                    }
                    break;
                }
            }
        }
        expect_punct(")", "after parameter list");
        fn.body = parse_block();
        return fn;
    }

    Param parse_param() {
        auto ty = peek_type();
        if (!ty) syntax("expected parameter type");
        take();
        if (ty->is_void()) syntax("void parameter");
        reject_pointer_here();
        Param p;
        p.type = *ty;
        p.name = expect_ident("as parameter name").text;
        while (cur().is_punct("[")) {
            take();
            p.is_array = true;
            if (cur().is_punct("]")) {
                take();
                p.dims.push_back(0);  // unsized
            } else {
                if (cur().kind != TokKind::IntLit) syntax("expected array dimension");
                p.dims.push_back(std::stoll(take().text));
                expect_punct("]", "after array dimension");
            }
        }
        return p;
    }

    // --- statements ---
    StmtPtr parse_block() {
        Token open = cur();
        expect_punct("{", "to open block");
        Block blk;
        while (!cur().is_punct("}")) {
            if (at_eof()) syntax("unterminated block");
            blk.stmts.push_back(parse_stmt());
        }
        take();
        return make_stmt(open.span, std::move(blk));
    }

    StmtPtr parse_stmt() {
        const Token& t = cur();
        if (t.is_punct("{")) return parse_block();
        if (t.is_punct(";")) {  // empty statement -> empty block
            take();
            return make_stmt(t.span, Block{});
        }
        if (t.is_kw("goto")) unsupported(t.span, "goto is not supported");
        if (t.is_kw("break") || t.is_kw("continue"))
            unsupported(t.span, t.text + " outside a switch case is not supported");
        if (t.is_kw("if")) return parse_if();
        if (t.is_kw("for")) return parse_for();
        if (t.is_kw("while")) return parse_while();
        if (t.is_kw("do")) return parse_do_while();
        if (t.is_kw("switch")) return parse_switch();
        if (t.is_kw("return")) return parse_return();
        if (peek_type()) return parse_decl();
        ExprPtr e = parse_expr();
        expect_punct(";", "after expression statement");
        SourceSpan span = e->span;
        return make_stmt(span, ExprStmt{std::move(e)});
    }

    StmtPtr parse_decl() {
        Token ty_tok = take();
        ElemType ty = *elem_type_from_keyword(ty_tok.text);
        if (ty.is_void()) throw Error(ErrorKind::Syntax, ty_tok.span, "void is not a data type");
        reject_pointer_here();
        Block multi;  // `int a, b;` becomes a block of decls
        for (;;) {
            Token name = expect_ident("as variable name");
            Decl d;
            d.name = name.text;
            d.type = ty;
            while (cur().is_punct("[")) {
                take();
                if (cur().kind != TokKind::IntLit) syntax("expected array dimension");
                d.dims.push_back(std::stoll(take().text));
                expect_punct("]", "after array dimension");
            }
            if (cur().is_punct("=")) {
                if (!d.dims.empty())
                    unsupported(cur().span, "array initializers are not supported");
                take();
                d.init = parse_expr();
            }
            multi.stmts.push_back(make_stmt(name.span, std::move(d)));
            if (cur().is_punct(",")) {
                take();
                reject_pointer_here();
                continue;
            }
            expect_punct(";", "after declaration");
            break;
        }
        if (multi.stmts.size() == 1) return std::move(multi.stmts.front());
        SourceSpan span = ty_tok.span;
        return make_stmt(span, std::move(multi));
    }

    // Bodies of control statements are canonicalized to blocks; the printer
    // and graph builder then never deal with bare sub-statements.
    StmtPtr parse_body() {
        StmtPtr s = parse_stmt();
        if (s->is<Block>()) return s;
        SourceSpan span = s->span;
        Block blk;
        blk.stmts.push_back(std::move(s));
        return make_stmt(span, std::move(blk));
    }

    StmtPtr parse_if() {
        Token kw = take();
        expect_punct("(", "after 'if'");
        ExprPtr cond = parse_expr();
        expect_punct(")", "after if condition");
        StmtPtr then_branch = parse_body();
        StmtPtr else_branch;
        if (cur().is_kw("else")) {
            take();
            else_branch = parse_body();
        }
        return make_stmt(kw.span, If{std::move(cond), std::move(then_branch), std::move(else_branch)});
    }

    StmtPtr parse_for() {
        Token kw = take();
        expect_punct("(", "after 'for'");
        ExprPtr init;
        if (!cur().is_punct(";")) init = parse_expr();
        expect_punct(";", "after for-init");
        ExprPtr cond;
        if (!cur().is_punct(";")) cond = parse_expr();
        expect_punct(";", "after for-condition");
        ExprPtr step;
        if (!cur().is_punct(")")) step = parse_expr();
        expect_punct(")", "after for-step");
        StmtPtr body = parse_body();
        return make_stmt(kw.span, For{std::move(init), std::move(cond), std::move(step), std::move(body)});
    }

    StmtPtr parse_while() {
        Token kw = take();
        expect_punct("(", "after 'while'");
        ExprPtr cond = parse_expr();
        expect_punct(")", "after while condition");
        StmtPtr body = parse_body();
        return make_stmt(kw.span, While{std::move(cond), std::move(body)});
    }

    StmtPtr parse_do_while() {
        Token kw = take();
        StmtPtr body = parse_body();
        if (!cur().is_kw("while")) syntax("expected 'while' after do-body");
        take();
        expect_punct("(", "after 'while'");
        ExprPtr cond = parse_expr();
        expect_punct(")", "after do-while condition");
        expect_punct(";", "after do-while");
        return make_stmt(kw.span, DoWhile{std::move(body), std::move(cond)});
    }

    StmtPtr parse_switch() {
        Token kw = take();
        expect_punct("(", "after 'switch'");
        Switch sw;
        sw.value = parse_expr();
        expect_punct(")", "after switch value");
        expect_punct("{", "to open switch body");
        std::set<long long> seen;
        while (!cur().is_punct("}")) {
            if (cur().is_kw("case")) {
                Token ck = take();
                SwitchCase c;
                c.span = ck.span;
                bool neg = false;
                if (cur().is_punct("-")) {
                    neg = true;
                    take();
                }
                if (cur().kind != TokKind::IntLit) syntax("expected integer case label");
                c.label = std::stoll(take().text) * (neg ? -1 : 1);
                if (!seen.insert(c.label).second)
                    throw Error(ErrorKind::Syntax, ck.span, "duplicate case label");
                expect_punct(":", "after case label");
                c.body = parse_case_body(ck.span);
                sw.cases.push_back(std::move(c));
            } else if (cur().is_kw("default")) {
                Token dk = take();
                if (sw.has_default) throw Error(ErrorKind::Syntax, dk.span, "duplicate default");
                expect_punct(":", "after 'default'");
                sw.has_default = true;
                sw.default_span = dk.span;
                sw.default_body = parse_case_body(dk.span);
            } else {
                syntax("expected 'case' or 'default' in switch body");
            }
        }
        take();
        return make_stmt(kw.span, std::move(sw));
    }

    // Case bodies end at `break;` (consumed) or, when empty, at the next
    // label. Falling through a non-empty case is rejected: the graph model
    // treats cases as exclusive branches.
    std::vector<StmtPtr> parse_case_body(const SourceSpan& label_span) {
        std::vector<StmtPtr> body;
        for (;;) {
            if (cur().is_kw("break")) {
                take();
                expect_punct(";", "after 'break'");
                return body;
            }
            if (cur().is_punct("}") || cur().is_kw("case") || cur().is_kw("default")) {
                if (!body.empty())
                    unsupported(label_span, "switch fall-through is not supported; end the case with 'break;'");
                return body;
            }
            if (at_eof()) syntax("unterminated switch body");
            body.push_back(parse_stmt());
        }
    }

    StmtPtr parse_return() {
        Token kw = take();
        Return r;
        if (!cur().is_punct(";")) r.value = parse_expr();
        expect_punct(";", "after return");
        return make_stmt(kw.span, std::move(r));
    }

    // --- expressions (precedence climbing) ---
    ExprPtr parse_expr() { return parse_assign(); }

    ExprPtr parse_assign() {
        ExprPtr lhs = parse_logical_or();
        static const std::map<std::string, std::optional<BinOp>> assign_ops = {
            {"=", std::nullopt},      {"+=", BinOp::Add},  {"-=", BinOp::Sub},
            {"*=", BinOp::Mul},       {"/=", BinOp::Div},  {"%=", BinOp::Mod},
            {"<<=", BinOp::Shl},      {">>=", BinOp::Shr}, {"&=", BinOp::BitAnd},
            {"|=", BinOp::BitOr},     {"^=", BinOp::BitXor},
        };
        if (cur().kind == TokKind::Punct) {
            auto it = assign_ops.find(cur().text);
            if (it != assign_ops.end()) {
                Token op = take();
                if (!lhs->is<VarRef>() && !lhs->is<ArrayRef>())
                    throw Error(ErrorKind::Syntax, op.span,
                                "assignment target must be a variable or array element");
                ExprPtr rhs = parse_assign();
                SourceSpan span = lhs->span;
                if (it->second) {
                    // compound assignment kept as sugar; normalize() expands it
                    rhs = make_expr(op.span, Binary{*it->second, clone(lhs), std::move(rhs)});
                }
                return make_expr(span, Assign{std::move(lhs), std::move(rhs)});
            }
            if (cur().is_punct("?"))
                unsupported(cur().span, "the ternary operator is not supported");
        }
        return lhs;
    }

    using SubParser = ExprPtr (Parser::*)();

    ExprPtr parse_bin_level(SubParser next, const std::map<std::string, BinOp>& ops) {
        ExprPtr lhs = (this->*next)();
        while (cur().kind == TokKind::Punct) {
            auto it = ops.find(cur().text);
            if (it == ops.end()) break;
            Token op = take();
            ExprPtr rhs = (this->*next)();
            SourceSpan span = lhs->span;
            lhs = make_expr(span, Binary{it->second, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr parse_logical_or() {
        return parse_bin_level(&Parser::parse_logical_and, {{"||", BinOp::LogOr}});
    }
    ExprPtr parse_logical_and() {
        return parse_bin_level(&Parser::parse_bit_or, {{"&&", BinOp::LogAnd}});
    }
    ExprPtr parse_bit_or() { return parse_bin_level(&Parser::parse_bit_xor, {{"|", BinOp::BitOr}}); }
    ExprPtr parse_bit_xor() { return parse_bin_level(&Parser::parse_bit_and, {{"^", BinOp::BitXor}}); }
    ExprPtr parse_bit_and() { return parse_bin_level(&Parser::parse_equality, {{"&", BinOp::BitAnd}}); }
    ExprPtr parse_equality() {
        return parse_bin_level(&Parser::parse_relational, {{"==", BinOp::Eq}, {"!=", BinOp::Ne}});
    }
    ExprPtr parse_relational() {
        return parse_bin_level(&Parser::parse_shift, {{"<", BinOp::Lt},
                                                      {"<=", BinOp::Le},
                                                      {">", BinOp::Gt},
                                                      {">=", BinOp::Ge}});
    }
    ExprPtr parse_shift() {
        return parse_bin_level(&Parser::parse_additive, {{"<<", BinOp::Shl}, {">>", BinOp::Shr}});
    }
    ExprPtr parse_additive() {
        return parse_bin_level(&Parser::parse_multiplicative,
                               {{"+", BinOp::Add}, {"-", BinOp::Sub}});
    }
    ExprPtr parse_multiplicative() {
        return parse_bin_level(&Parser::parse_unary,
                               {{"*", BinOp::Mul}, {"/", BinOp::Div}, {"%", BinOp::Mod}});
    }

    ExprPtr parse_unary() {
        const Token& t = cur();
        if (t.is_punct("&")) unsupported(t.span, "address-of is not supported");
        if (t.is_punct("*")) unsupported(t.span, "pointer dereference is not supported");
        if (t.is_punct("-") || t.is_punct("!") || t.is_punct("~")) {
            Token op = take();
            ExprPtr operand = parse_unary();
            UnOp u = op.text == "-" ? UnOp::Neg : op.text == "!" ? UnOp::LogNot : UnOp::BitNot;
            return make_expr(op.span, Unary{u, std::move(operand)});
        }
        if (t.is_punct("+")) {  // unary plus is a no-op
            take();
            return parse_unary();
        }
        if (t.is_punct("++") || t.is_punct("--")) {
            Token op = take();
            ExprPtr operand = parse_unary();
            if (!operand->is<VarRef>() && !operand->is<ArrayRef>())
                throw Error(ErrorKind::Syntax, op.span, "++/-- needs a variable operand");
            return make_expr(op.span,
                             Unary{op.text == "++" ? UnOp::PreInc : UnOp::PreDec, std::move(operand)});
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_primary();
        for (;;) {
            if (cur().is_punct("[")) {
                if (!e->is<VarRef>() && !e->is<ArrayRef>())
                    syntax("subscript applies to arrays only");
                take();
                ExprPtr ix = parse_expr();
                expect_punct("]", "after subscript");
                if (e->is<VarRef>()) {
                    ArrayRef a{e->as<VarRef>().name, {}};
                    a.indices.push_back(std::move(ix));
                    SourceSpan span = e->span;
                    e = make_expr(span, std::move(a));
                } else {
                    e->as<ArrayRef>().indices.push_back(std::move(ix));
                }
                continue;
            }
            if (cur().is_punct("++") || cur().is_punct("--")) {
                Token op = take();
                if (!e->is<VarRef>() && !e->is<ArrayRef>())
                    throw Error(ErrorKind::Syntax, op.span, "++/-- needs a variable operand");
                SourceSpan span = e->span;
                e = make_expr(span, Unary{op.text == "++" ? UnOp::PostInc : UnOp::PostDec,
                                          std::move(e)});
                continue;
            }
            break;
        }
        return e;
    }

    ExprPtr parse_primary() {
        const Token& t = cur();
        if (t.kind == TokKind::IntLit || t.kind == TokKind::FixedLit) {
            Token lit = take();
            return make_expr(lit.span, Literal{lit.text, lit.kind == TokKind::FixedLit});
        }
        if (t.kind == TokKind::Ident) {
            Token name = take();
            if (cur().is_punct("(")) {
                take();
                Call call{name.text, {}};
                if (!cur().is_punct(")")) {
                    for (;;) {
                        call.args.push_back(parse_expr());
                        if (cur().is_punct(",")) {
                            take();
                            continue;
                        }
                        break;
                    }
                }
                expect_punct(")", "after call arguments");
                return make_expr(name.span, std::move(call));
            }
            return make_expr(name.span, VarRef{name.text});
        }
        if (t.is_punct("(")) {
            take();
            ExprPtr e = parse_expr();
            expect_punct(")", "after parenthesized expression");
            return e;
        }
        syntax("expected an expression");
    }

    // --- per-function restriction checks ---

    // Side-effect expressions (++/--, calls) are only accepted where their
    // value is discarded, so the dataflow graph stays a faithful model.
    void check_expr_nested(const Program& prog, const ExprPtr& e) const {
        if (!e) return;
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Unary>) {
                    if (n.op == UnOp::PreInc || n.op == UnOp::PreDec || n.op == UnOp::PostInc ||
                        n.op == UnOp::PostDec)
                        unsupported(e->span, "++/-- inside an expression is not supported");
                    check_expr_nested(prog, n.operand);
                } else if constexpr (std::is_same_v<T, Binary>) {
                    check_expr_nested(prog, n.lhs);
                    check_expr_nested(prog, n.rhs);
                } else if constexpr (std::is_same_v<T, ArrayRef>) {
                    for (const auto& ix : n.indices) check_expr_nested(prog, ix);
                } else if constexpr (std::is_same_v<T, Assign>) {
                    unsupported(e->span, "assignment inside an expression is not supported");
                } else if constexpr (std::is_same_v<T, Call>) {
                    unsupported(e->span, "a call may only appear as a whole statement or as "
                                         "the right side of a simple assignment");
                }
            },
            e->node);
    }

    void check_call_args(const Program& prog, const Call& call, const SourceSpan& span) const {
        for (const auto& a : call.args) {
            if (!a->is<VarRef>() && !a->is<Literal>())
                unsupported(a->span, "call arguments must be plain variables, whole arrays "
                                     "or literals");
        }
        (void)prog;
        (void)span;
    }

    // Top of an expression statement / for clause: one optional side effect
    // (assignment, ++/--, or call), everything below must be pure.
    void check_expr_top(const Program& prog, const ExprPtr& e) const {
        if (!e) return;
        if (e->is<Assign>()) {
            const auto& a = e->as<Assign>();
            check_expr_nested(prog, a.lhs);
            if (a.rhs->is<Call>()) {
                check_call_args(prog, a.rhs->as<Call>(), a.rhs->span);
                return;
            }
            check_expr_nested(prog, a.rhs);
            return;
        }
        if (e->is<Unary>()) {
            const auto& u = e->as<Unary>();
            if (u.op == UnOp::PreInc || u.op == UnOp::PreDec || u.op == UnOp::PostInc ||
                u.op == UnOp::PostDec) {
                check_expr_nested(prog, u.operand);
                return;
            }
        }
        if (e->is<Call>()) {
            check_call_args(prog, e->as<Call>(), e->span);
            return;
        }
        check_expr_nested(prog, e);
    }

    void check_stmt(const Program& prog, const StmtPtr& s, std::set<std::string>& scope) const {
        if (!s) return;
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, ExprStmt>) {
                    check_expr_top(prog, n.expr);
                    check_vars(prog, n.expr, scope);
                } else if constexpr (std::is_same_v<T, Block>) {
                    std::set<std::string> inner = scope;
                    for (const auto& st : n.stmts) check_stmt(prog, st, inner);
                } else if constexpr (std::is_same_v<T, If>) {
                    check_expr_nested(prog, n.cond);
                    check_vars(prog, n.cond, scope);
                    check_stmt(prog, n.then_branch, scope);
                    check_stmt(prog, n.else_branch, scope);
                } else if constexpr (std::is_same_v<T, For>) {
                    check_expr_top(prog, n.init);
                    check_expr_nested(prog, n.cond);
                    check_expr_top(prog, n.step);
                    check_vars(prog, n.init, scope);
                    check_vars(prog, n.cond, scope);
                    check_vars(prog, n.step, scope);
                    check_stmt(prog, n.body, scope);
                } else if constexpr (std::is_same_v<T, While>) {
                    check_expr_nested(prog, n.cond);
                    check_vars(prog, n.cond, scope);
                    check_stmt(prog, n.body, scope);
                } else if constexpr (std::is_same_v<T, DoWhile>) {
                    check_stmt(prog, n.body, scope);
                    check_expr_nested(prog, n.cond);
                    check_vars(prog, n.cond, scope);
                } else if constexpr (std::is_same_v<T, Switch>) {
                    check_expr_nested(prog, n.value);
                    check_vars(prog, n.value, scope);
                    for (const auto& c : n.cases) {
                        std::set<std::string> inner = scope;
                        for (const auto& st : c.body) check_stmt(prog, st, inner);
                    }
                    std::set<std::string> inner = scope;
                    for (const auto& st : n.default_body) check_stmt(prog, st, inner);
                } else if constexpr (std::is_same_v<T, Return>) {
                    if (n.value) {
                        if (n.value->is<Call>()) {
                            check_call_args(prog, n.value->as<Call>(), n.value->span);
                        } else {
                            check_expr_nested(prog, n.value);
                        }
                        check_vars(prog, n.value, scope);
                    }
                } else if constexpr (std::is_same_v<T, Decl>) {
                    if (scope.count(n.name))
                        throw Error(ErrorKind::Syntax, s->span, "redeclaration of '" + n.name + "'");
                    if (n.init) {
                        check_expr_nested(prog, n.init);
                        check_vars(prog, n.init, scope);
                    }
                    scope.insert(n.name);
                }
            },
            s->node);
    }

    void check_vars(const Program& prog, const ExprPtr& e, const std::set<std::string>& scope) const {
        if (!e) return;
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, VarRef>) {
                    if (!scope.count(n.name) && !is_global(prog, n.name))
                        throw Error(ErrorKind::Syntax, e->span,
                                    "use of undeclared variable '" + n.name + "'");
                } else if constexpr (std::is_same_v<T, ArrayRef>) {
                    if (!scope.count(n.name) && !is_global(prog, n.name))
                        throw Error(ErrorKind::Syntax, e->span,
                                    "use of undeclared variable '" + n.name + "'");
                    for (const auto& ix : n.indices) check_vars(prog, ix, scope);
                } else if constexpr (std::is_same_v<T, Binary>) {
                    check_vars(prog, n.lhs, scope);
                    check_vars(prog, n.rhs, scope);
                } else if constexpr (std::is_same_v<T, Unary>) {
                    check_vars(prog, n.operand, scope);
                } else if constexpr (std::is_same_v<T, Assign>) {
                    check_vars(prog, n.lhs, scope);
                    check_vars(prog, n.rhs, scope);
                } else if constexpr (std::is_same_v<T, Call>) {
                    for (const auto& a : n.args) check_vars(prog, a, scope);
                }
            },
            e->node);
    }

    static bool is_global(const Program& prog, const std::string& name) {
        for (const auto& g : prog.globals)
            if (g.name == name) return true;
        return false;
    }

    void check_function(const Program& prog, const AstFunction& fn) const {
        std::set<std::string> scope;
        for (const auto& p : fn.params) {
            if (!scope.insert(p.name).second)
                throw Error(ErrorKind::Syntax, fn.span, "duplicate parameter '" + p.name + "'");
        }
        check_stmt(prog, fn.body, scope);
    }

    TokenList toks_;
    size_t pos_ = 0;
};

inline Program parse(TokenList tokens) { return Parser(std::move(tokens)).run(); }

inline Program parse_source(const std::string& source, const std::string& file) {
    return Parser(tokenize(source, file)).run();
}

// ---------------------------------------------------------------------------
// Corpus-level call validation: every callee must be defined somewhere in the
// merged program and the call graph must be acyclic (no recursion, direct or
// mutual). Run after all input files have been parsed and merged.
// ---------------------------------------------------------------------------

namespace detail {

inline void collect_calls(const ExprPtr& e,
                          std::vector<std::pair<std::string, SourceSpan>>& out) {
    if (!e) return;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Call>) {
                out.emplace_back(n.callee, e->span);
                for (const auto& a : n.args) collect_calls(a, out);
            } else if constexpr (std::is_same_v<T, Binary>) {
                collect_calls(n.lhs, out);
                collect_calls(n.rhs, out);
            } else if constexpr (std::is_same_v<T, Unary>) {
                collect_calls(n.operand, out);
            } else if constexpr (std::is_same_v<T, Assign>) {
                collect_calls(n.lhs, out);
                collect_calls(n.rhs, out);
            } else if constexpr (std::is_same_v<T, ArrayRef>) {
                for (const auto& ix : n.indices) collect_calls(ix, out);
            }
        },
        e->node);
}

inline void collect_calls(const StmtPtr& s,
                          std::vector<std::pair<std::string, SourceSpan>>& out) {
    if (!s) return;
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, ExprStmt>) {
                collect_calls(n.expr, out);
            } else if constexpr (std::is_same_v<T, Block>) {
                for (const auto& st : n.stmts) collect_calls(st, out);
            } else if constexpr (std::is_same_v<T, If>) {
                collect_calls(n.cond, out);
                collect_calls(n.then_branch, out);
                collect_calls(n.else_branch, out);
            } else if constexpr (std::is_same_v<T, For>) {
                collect_calls(n.init, out);
                collect_calls(n.cond, out);
                collect_calls(n.step, out);
                collect_calls(n.body, out);
            } else if constexpr (std::is_same_v<T, While>) {
                collect_calls(n.cond, out);
                collect_calls(n.body, out);
            } else if constexpr (std::is_same_v<T, DoWhile>) {
                collect_calls(n.body, out);
                collect_calls(n.cond, out);
            } else if constexpr (std::is_same_v<T, Switch>) {
                collect_calls(n.value, out);
                for (const auto& c : n.cases)
                    for (const auto& st : c.body) collect_calls(st, out);
                for (const auto& st : n.default_body) collect_calls(st, out);
            } else if constexpr (std::is_same_v<T, Return>) {
                collect_calls(n.value, out);
            } else if constexpr (std::is_same_v<T, Decl>) {
                collect_calls(n.init, out);
            }
        },
        s->node);
}

}  // namespace detail

inline std::vector<std::pair<std::string, SourceSpan>> calls_of(const AstFunction& fn) {
    std::vector<std::pair<std::string, SourceSpan>> out;
    detail::collect_calls(fn.body, out);
    return out;
}

inline void validate_calls(const Program& prog) {
    std::map<std::string, const AstFunction*> fns;
    for (const auto& fn : prog.functions) {
        if (fns.count(fn.name))
            throw Error(ErrorKind::Syntax, fn.span, "redefinition of function '" + fn.name + "'");
        fns[fn.name] = &fn;
    }
    std::map<std::string, std::vector<std::string>> graph;
    for (const auto& fn : prog.functions) {
        for (const auto& [callee, span] : calls_of(fn)) {
            if (!fns.count(callee))
                throw Error(ErrorKind::Unsupported, span,
                            "call to unknown function '" + callee +
                                "' (external and library calls are not supported)");
            graph[fn.name].push_back(callee);
        }
    }
    // cycle check: 0 = unvisited, 1 = on stack, 2 = done
    std::map<std::string, int> state;
    std::function<void(const std::string&)> dfs = [&](const std::string& f) {
        state[f] = 1;
        for (const auto& callee : graph[f]) {
            if (state[callee] == 1)
                throw Error(ErrorKind::Unsupported, fns.at(callee)->span,
                            "recursion involving '" + callee + "' is not supported");
            if (state[callee] == 0) dfs(callee);
        }
        state[f] = 2;
    };
    for (const auto& fn : prog.functions)
        if (state[fn.name] == 0) dfs(fn.name);
}

// Functions ordered so that every callee precedes its callers.
inline std::vector<const AstFunction*> call_order(const Program& prog) {
    std::map<std::string, const AstFunction*> fns;
    for (const auto& fn : prog.functions) fns[fn.name] = &fn;
    std::vector<const AstFunction*> order;
    std::set<std::string> done;
    std::function<void(const AstFunction&)> visit = [&](const AstFunction& fn) {
        if (done.count(fn.name)) return;
        done.insert(fn.name);
        for (const auto& [callee, span] : calls_of(fn)) {
            auto it = fns.find(callee);
            if (it != fns.end()) visit(*it->second);
        }
        order.push_back(&fn);
    };
    for (const auto& fn : prog.functions) visit(fn);
    return order;
}

}  // namespace hcdfg
