#pragma once

#include <string>
#include <variant>

#include "pcrfa/automaton.hpp"
#include "pcrfa/errors.hpp"
#include "pcrfa/multihead.hpp"
#include "pcrfa/system.hpp"

namespace pcrfa {

/// Malformed line: unknown directive, wrong arity, bad integer.
struct SyntaxError : ParseError {
    using ParseError::ParseError;
};

/// Well-formed line with a bad meaning: unknown state or symbol, duplicate
/// key, bad query target.
struct SemanticError : ParseError {
    using ParseError::ParseError;
};

enum class DocKind { dfa, rfa, mhrfa, pcrfa };

std::string to_string(DocKind kind);

/// A parsed automaton file of any kind. Parsing validates every structural
/// invariant of the underlying model; serializing is canonical, so
/// parse(serialize(d)) == d and re-serialization is byte-identical.
struct AutomatonDocument {
    DocKind kind = DocKind::rfa;
    std::variant<std::monostate, PartialFA, MultiHeadRFA, PcrfaSystem> body;

    const PartialFA& fa() const { return std::get<PartialFA>(body); }
    const MultiHeadRFA& mh() const { return std::get<MultiHeadRFA>(body); }
    const PcrfaSystem& system() const { return std::get<PcrfaSystem>(body); }

    bool operator==(const AutomatonDocument&) const = default;
};

AutomatonDocument parse(const std::string& text);
std::string serialize(const AutomatonDocument& doc);

AutomatonDocument make_document(DocKind kind, PartialFA fa);
AutomatonDocument make_document(MultiHeadRFA mh);
AutomatonDocument make_document(PcrfaSystem sys);

/// Word <-> text. A word renders as its symbols concatenated when every
/// alphabet symbol is a single character, comma-separated otherwise; the
/// empty word renders as "-". Parsing accepts both conventions.
std::string render_word(const Alphabet& alphabet, const Word& word);
Word parse_word(const Alphabet& alphabet, const std::string& text);

}  // namespace pcrfa
