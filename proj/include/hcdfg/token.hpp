#pragma once

#include <string>
#include <vector>

#include "hcdfg/diagnostics.hpp"

namespace hcdfg {

enum class TokKind {
    Ident,
    IntLit,
    FixedLit,   // decimal literal, e.g. 0.5
    Keyword,    // if else for while do switch case default return int char short long fixed void goto
    Punct,      // operators and separators
    Eof,
};

struct Token {
    TokKind kind = TokKind::Eof;
    std::string text;
    SourceSpan span;

    bool is(TokKind k, const std::string& t) const { return kind == k && text == t; }
    bool is_kw(const std::string& t) const { return is(TokKind::Keyword, t); }
    bool is_punct(const std::string& t) const { return is(TokKind::Punct, t); }
};

using TokenList = std::vector<Token>;

}  // namespace hcdfg
