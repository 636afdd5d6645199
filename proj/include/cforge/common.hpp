#pragma once

#include <stdexcept>
#include <string>

namespace cforge {

inline constexpr const char* kVersion = "contraforge 0.1.0";

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed canonical logical-form text. `offset` is the byte position of the
// offending character; for truncated input it points at the last byte present.
struct ParseError : Error {
    ParseError(std::size_t offset, const std::string& what)
        : Error("syntax error at offset " + std::to_string(offset) + ": " + what),
          offset(offset) {}
    std::size_t offset;
};

// Ill-sorted term or constructor misuse (names the offending constructor).
struct SortError : Error {
    using Error::Error;
};

// Structurally invalid formula (shadowed binder, empty conjunction, count
// index out of range).
struct LogicError : Error {
    using Error::Error;
};

// Input outside the closure of the task templates; the fast consistency
// procedure refuses rather than guessing.
struct FragmentError : Error {
    using Error::Error;
};

// Evaluation over a model whose domain does not cover the formula.
struct EvalError : Error {
    using Error::Error;
};

// Instance too large for exhaustive model enumeration.
struct GuardError : Error {
    using Error::Error;
};

struct LexiconError : Error {
    using Error::Error;
};

// Formula shape or binding the surface templates cannot render.
struct RealizeError : Error {
    using Error::Error;
};

// Dataset file or schema violation.
struct DataError : Error {
    using Error::Error;
};

// Constant pool cannot supply what a template needs.
struct PoolError : Error {
    using Error::Error;
};

// Generator invariant broken (e.g. a constructed label fails re-verification).
// Always a bug; callers must abort, never repair.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace cforge
