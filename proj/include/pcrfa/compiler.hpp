#pragma once

#include <string>
#include <vector>

#include "pcrfa/automaton.hpp"
#include "pcrfa/system.hpp"

namespace pcrfa {

/// A (target state, symbol) pair whose in-degree under that symbol is at
/// least two, i.e. the symbol does not act injectively into the target.
struct IrreversiblePair {
    std::string target;
    std::string label;  // a symbol token

    bool operator==(const IrreversiblePair&) const = default;
    auto operator<=>(const IrreversiblePair&) const = default;
};

/// A transition scheduled for extraction into its own satellite component,
/// numbered consecutively from 2.
struct NumberedTransition {
    std::size_t number;  // 2..n
    std::string from;
    std::string label;
    std::string to;

    bool operator==(const NumberedTransition&) const = default;
};

/// The (state, symbol) pairs of a fully defined DFA that break reversibility.
/// Sorted by (target state name, symbol). Throws NotFullyDefinedError if the
/// transition map has holes or lambda labels.
std::vector<IrreversiblePair> irreversible_pairs(const PartialFA& dfa);

/// Every transition feeding an irreversible pair, grouped by pair in
/// (target, symbol) order and by source name within a pair, numbered 2..n.
/// The ordering is fixed so compilation is reproducible byte for byte.
std::vector<NumberedTransition> build_transition_list(const PartialFA& dfa);

struct CompileOptions {
    /// Complete a partial DFA with a fresh non-final sink state first.
    bool complete_with_sink = false;
};

/// Returns a fully defined copy: missing (state, symbol) entries are routed
/// to a fresh non-final sink state that loops to itself. The input must be
/// lambda-free. No-op when already fully defined.
PartialFA complete_with_sink(const PartialFA& dfa);

/// Compiles a fully defined DFA into an equivalent system whose components
/// are each individually reversible.
///
/// Component 1 keeps the DFA's states, start and finals; each numbered
/// transition (q, a) -> s with number k is replaced by (q, a) -> K_k where
/// K_k queries the new satellite component k, a single-state automaton
/// whose only state is s, looping on every symbol. Unlisted transitions are
/// copied verbatim. A reversible DFA compiles to the degree-1 system
/// containing itself.
PcrfaSystem compile(const PartialFA& dfa, CompileOptions options = {});

}  // namespace pcrfa
