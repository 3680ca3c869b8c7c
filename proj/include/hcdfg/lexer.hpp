#pragma once

#include <cctype>
#include <set>
#include <string>

#include "hcdfg/token.hpp"

namespace hcdfg {

namespace detail {

inline const std::set<std::string>& keywords() {
    static const std::set<std::string> kw = {
        "if", "else", "for", "while", "do", "switch", "case", "default",
        "return", "break", "continue", "goto",
        "void", "int", "char", "short", "long", "fixed",
    };
    return kw;
}

// Multi-character operators, longest first so maximal munch works.
inline const std::vector<std::string>& multi_punct() {
    static const std::vector<std::string> ops = {
        "<<=", ">>=",
        "<<", ">>", "<=", ">=", "==", "!=", "&&", "||",
        "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "++", "--",
    };
    return ops;
}

}  // namespace detail

class Lexer {
public:
    Lexer(std::string source, std::string file)
        : src_(std::move(source)), file_(std::move(file)) {}

    TokenList run() {
        TokenList out;
        for (;;) {
            skip_trivia();
            if (eof()) break;
            out.push_back(next());
        }
        Token end;
        end.kind = TokKind::Eof;
        end.span = here();
        out.push_back(end);
        return out;
    }

private:
    bool eof() const { return pos_ >= src_.size(); }
    char peek(size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    SourceSpan here() const { return SourceSpan{file_, line_, col_}; }

    void skip_trivia() {
        for (;;) {
            while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) advance();
            if (peek() == '/' && peek(1) == '/') {
                while (!eof() && peek() != '\n') advance();
                continue;
            }
            if (peek() == '/' && peek(1) == '*') {
                SourceSpan open = here();
                advance();
                advance();
                while (!eof() && !(peek() == '*' && peek(1) == '/')) advance();
                if (eof()) throw Error(ErrorKind::Lexical, open, "unterminated block comment");
                advance();
                advance();
                continue;
            }
            break;
        }
    }

    Token next() {
        SourceSpan start = here();
        char c = peek();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident(start);
        if (std::isdigit(static_cast<unsigned char>(c))) return number(start);
        return punct(start);
    }

    Token ident(SourceSpan start) {
        std::string text;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
            text += advance();
        Token t;
        t.kind = detail::keywords().count(text) ? TokKind::Keyword : TokKind::Ident;
        t.text = std::move(text);
        t.span = start;
        return t;
    }

    Token number(SourceSpan start) {
        std::string text;
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
            text += advance();
            text += advance();
            while (!eof() && std::isxdigit(static_cast<unsigned char>(peek()))) text += advance();
            if (text.size() == 2) throw Error(ErrorKind::Lexical, start, "incomplete hex literal");
            return Token{TokKind::IntLit, text, start};
        }
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
        bool fixed = false;
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            fixed = true;
            text += advance();
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) text += advance();
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')
            throw Error(ErrorKind::Lexical, here(), "identifier may not start with a digit");
        return Token{fixed ? TokKind::FixedLit : TokKind::IntLit, text, start};
    }

    Token punct(SourceSpan start) {
        for (const auto& op : detail::multi_punct()) {
            if (src_.compare(pos_, op.size(), op) == 0) {
                for (size_t i = 0; i < op.size(); ++i) advance();
                return Token{TokKind::Punct, op, start};
            }
        }
        char c = peek();
        static const std::string singles = "+-*/%<>=!&|^~(){}[];,:?.";
        if (singles.find(c) == std::string::npos)
            throw Error(ErrorKind::Lexical, start, std::string("illegal character '") + c + "'");
        advance();
        return Token{TokKind::Punct, std::string(1, c), start};
    }

    std::string src_;
    std::string file_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline TokenList tokenize(const std::string& source, const std::string& file) {
    return Lexer(source, file).run();
}

}  // namespace hcdfg
