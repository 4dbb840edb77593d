#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pcrfa {

/// Token that stands for the empty label in text formats. Never a symbol.
inline constexpr std::string_view kLambdaToken = "-";

/// Right end-marker sentinel used by multi-head automata. Never a symbol.
inline constexpr std::string_view kEndMarkerToken = "$";

/// A finite, ordered set of distinct symbol tokens.
///
/// Tokens are non-empty strings without whitespace; the reserved tokens
/// "-" (lambda) and "$" (end marker) are rejected. Declaration order is
/// preserved and round-trips through the text format.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    bool contains(std::string_view token) const;
    std::optional<std::size_t> index_of(std::string_view token) const;
    const std::string& symbol(std::size_t i) const { return symbols_.at(i); }
    const std::vector<std::string>& symbols() const { return symbols_; }

    /// Symbols sorted by name; the order used for canonical word enumeration.
    std::vector<std::string> sorted_symbols() const;

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

private:
    std::vector<std::string> symbols_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// A transition label: a single symbol token or lambda (the empty label).
///
/// Labels do not validate membership in any alphabet; the automaton types
/// that hold them do. The end-marker "$" is representable as a symbol label
/// so that multi-head transitions can name it.
class Label {
public:
    Label() = default;  // lambda

    static Label lambda() { return Label{}; }
    static Label symbol(std::string token);
    static Label end_marker() { return Label{std::string(kEndMarkerToken)}; }

    bool is_lambda() const { return value_.empty(); }
    bool is_end_marker() const { return value_ == kEndMarkerToken; }

    /// The symbol token; only valid when not lambda.
    const std::string& symbol_name() const;

    /// Text form: the symbol token, or "-" for lambda.
    std::string token() const;

    bool operator==(const Label&) const = default;
    auto operator<=>(const Label&) const = default;  // lambda ("") sorts first

private:
    explicit Label(std::string value) : value_(std::move(value)) {}
    std::string value_;
};

/// A word is a sequence of symbol tokens. Validation against an alphabet
/// happens at the point of use.
using Word = std::vector<std::string>;

/// Prefix comparability of single-symbol-or-lambda labels: equal, or one
/// of the two is lambda.
bool prefix_comparable(const Label& x, const Label& y);

/// All words over the alphabet with length <= max_len, shortest first and
/// lexicographic by symbol name within each length.
std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_len);

}  // namespace pcrfa
