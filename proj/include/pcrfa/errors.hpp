#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pcrfa {

/// A machine required to be deterministic is not.
struct NonDeterministicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A word contains a token outside the machine's alphabet.
struct InputSymbolUnknownError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A DFA operation needs a total transition map and the input has holes
/// (or lambda transitions).
struct NotFullyDefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Translation refused: the source machine fails the reversibility check.
struct NotReversibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Translation refused: the machine is reversible but its head decisions
/// cannot be serialized into deterministic components (a component would
/// face a lambda-versus-symbol read choice it cannot resolve locally).
struct TranslationAmbiguityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Text format error with a 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
    std::size_t line;
};

}  // namespace pcrfa
