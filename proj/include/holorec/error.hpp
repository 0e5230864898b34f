#pragma once

#include <stdexcept>
#include <string>

namespace holorec {

// Structured error carried by every throwing operation in the library.
// `kind` lets callers (CLI, solver diagnostics) branch without string
// matching; `what()` stays human readable.
class Error : public std::runtime_error {
public:
    enum class Kind {
        DivisionByZero,
        MixedField,
        UnsupportedExtension,
        PoleAtPoint,
        NonpositiveIntegerArgument,
        NonnegativeIntegerRoot,
        NonIntegerDifference,
        InvalidArgument,
        ParseError,
        NotHypergeometric,
        Internal,
    };

    Error(Kind k, std::string msg) : std::runtime_error(std::move(msg)), kind(k) {}

    Kind kind;

    // Set for ParseError; 1-based. 0 = unknown.
    int line = 0;
    int column = 0;
};

inline Error parse_error(std::string msg, int line, int column) {
    Error e(Error::Kind::ParseError,
            "parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + std::move(msg));
    e.line = line;
    e.column = column;
    return e;
}

} // namespace holorec
