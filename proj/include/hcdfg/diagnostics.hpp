#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace hcdfg {

// Location of a token / AST node / graph node in its source file.
// Lines and columns are 1-based.
struct SourceSpan {
    std::string file;
    int line = 1;
    int column = 1;

    std::string str() const {
        std::ostringstream os;
        os << file << ':' << line << ':' << column;
        return os.str();
    }
};

inline bool operator==(const SourceSpan& a, const SourceSpan& b) {
    return a.file == b.file && a.line == b.line && a.column == b.column;
}

enum class ErrorKind {
    Lexical,      // illegal character
    Syntax,       // unexpected token
    Unsupported,  // construct outside the accepted language subset
    Analysis,     // graph/metric stage failure (missing trip count, ...)
    Config,       // malformed cost/profile/threshold file or bad option
    Io,
};

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Lexical: return "lexical";
        case ErrorKind::Syntax: return "syntax";
        case ErrorKind::Unsupported: return "unsupported-construct";
        case ErrorKind::Analysis: return "analysis";
        case ErrorKind::Config: return "config";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

struct Diagnostic {
    ErrorKind kind = ErrorKind::Analysis;
    SourceSpan span;
    std::string message;

    std::string str() const {
        std::ostringstream os;
        os << span.str() << ": " << error_kind_name(kind) << ": " << message;
        return os.str();
    }
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, SourceSpan span, const std::string& message)
        : std::runtime_error(Diagnostic{kind, span, message}.str()),
          diag_{kind, std::move(span), message} {}

    const Diagnostic& diag() const { return diag_; }
    ErrorKind kind() const { return diag_.kind; }

private:
    Diagnostic diag_;
};

}  // namespace hcdfg
