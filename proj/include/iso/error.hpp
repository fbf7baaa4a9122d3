#pragma once

#include <stdexcept>
#include <string>

namespace iso {

// Caller passed something outside the documented domain of an operation.
struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A structure (graph, forest, decomposition, partial solution) failed validation.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive routine refused because the instance exceeds its size bound.
struct SizeRefused : std::length_error {
    using std::length_error::length_error;
};

// An internal postcondition did not hold. Seeing this means a bug.
struct IntegrityError : std::logic_error {
    using std::logic_error::logic_error;
};

struct InsufficientModuli : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ParseErrorKind {
    malformed_header,
    malformed_line,
    vertex_out_of_range,
    self_loop,
    duplicate_edge,
    count_mismatch,
    io,
};

inline const char* to_string(ParseErrorKind k) {
    switch (k) {
    case ParseErrorKind::malformed_header: return "malformed header";
    case ParseErrorKind::malformed_line: return "malformed line";
    case ParseErrorKind::vertex_out_of_range: return "vertex out of range";
    case ParseErrorKind::self_loop: return "self-loop";
    case ParseErrorKind::duplicate_edge: return "duplicate edge";
    case ParseErrorKind::count_mismatch: return "count mismatch";
    case ParseErrorKind::io: return "io";
    }
    return "?";
}

struct ParseError : std::runtime_error {
    ParseErrorKind kind;
    int line;
    ParseError(ParseErrorKind k, int ln, const std::string& what)
        : std::runtime_error(std::string(to_string(k)) + " at line " + std::to_string(ln) + ": " + what),
          kind(k), line(ln) {}
};

} // namespace iso
