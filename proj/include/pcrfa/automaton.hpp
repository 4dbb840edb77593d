#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pcrfa/alphabet.hpp"

namespace pcrfa {

using StateId = std::int32_t;
inline constexpr StateId kNoState = -1;

/// One transition of a partial finite automaton.
struct FaTransition {
    std::string from;
    Label label;
    std::string to;

    bool operator==(const FaTransition&) const = default;
    auto operator<=>(const FaTransition&) const = default;
};

/// A partially defined finite automaton.
///
/// The transition map is a finite partial function (state, label) -> state
/// where a label is a single alphabet symbol or lambda. Acceptance is by
/// halting: the machine stops when no transition applies, and accepts iff
/// the halt state is final. It need not consume the whole input.
///
/// Immutable after construction; all queries are const and thread-safe.
class PartialFA {
public:
    PartialFA(Alphabet alphabet,
              std::vector<std::string> states,
              std::string start,
              std::vector<std::string> finals,
              std::vector<FaTransition> transitions);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::string& start() const { return start_; }
    const std::set<std::string>& finals() const { return finals_; }

    /// Transitions in canonical order: (from, label, to), lambda first.
    const std::vector<FaTransition>& transitions() const { return transitions_; }

    std::size_t state_count() const { return states_.size(); }
    std::optional<StateId> state_id(std::string_view name) const;
    const std::string& state_name(StateId id) const { return states_.at(static_cast<std::size_t>(id)); }
    StateId start_id() const { return start_id_; }
    bool is_final(StateId id) const { return final_[static_cast<std::size_t>(id)]; }
    bool is_final(const std::string& name) const { return finals_.count(name) != 0; }

    /// Target of the lambda transition from `from`, or kNoState.
    StateId lambda_target(StateId from) const { return lambda_target_[static_cast<std::size_t>(from)]; }
    /// Target of the transition from `from` on alphabet symbol index `sym`, or kNoState.
    StateId symbol_target(StateId from, std::size_t sym) const {
        return symbol_target_[static_cast<std::size_t>(from) * alphabet_.size() + sym];
    }
    std::optional<std::string> target(const std::string& from, const Label& label) const;

    /// True when every (state, symbol) pair has a transition and there are
    /// no lambda transitions.
    bool fully_defined() const;

    /// Cheap cached determinism flag; agrees with check(*this).deterministic.
    bool deterministic() const { return deterministic_; }

    bool operator==(const PartialFA& other) const;

private:
    Alphabet alphabet_;
    std::vector<std::string> states_;
    std::string start_;
    std::set<std::string> finals_;
    std::vector<FaTransition> transitions_;

    std::unordered_map<std::string, StateId> state_index_;
    StateId start_id_ = kNoState;
    std::vector<bool> final_;
    std::vector<StateId> lambda_target_;
    std::vector<StateId> symbol_target_;  // dense |states| x |alphabet|
    bool deterministic_ = true;
};

/// Two outgoing transitions from `state` carry prefix-comparable labels.
struct DeterminismWitness {
    std::string state;
    Label first;
    Label second;

    bool operator==(const DeterminismWitness&) const = default;
    auto operator<=>(const DeterminismWitness&) const = default;
};

/// Transitions with labels comparable to `label` funnel into `target` from
/// more than one place, so the previous state is not uniquely determined.
struct ReversibilityWitness {
    std::string target;
    Label label;
    std::vector<std::pair<std::string, Label>> sources;  // (source state, its label)

    bool operator==(const ReversibilityWitness&) const = default;
    auto operator<=>(const ReversibilityWitness&) const = default;
};

struct ReversibilityReport {
    bool deterministic = false;
    bool reversible = false;
    std::vector<DeterminismWitness> determinism_witnesses;
    std::vector<ReversibilityWitness> reversibility_witnesses;
};

/// Checks determinism and reversibility of a partial FA.
///
/// deterministic: no state has two distinct outgoing transitions with
/// prefix-comparable labels. reversible: deterministic, and for every state
/// t and label x, at most one transition with a label comparable to x ends
/// in t. Witness lists enumerate every violation class.
ReversibilityReport check(const PartialFA& fa);

enum class FaHaltReason { no_transition, lambda_divergence };

struct FaRunResult {
    std::string halt_state;
    std::size_t consumed = 0;
    bool accepted = false;
    FaHaltReason reason = FaHaltReason::no_transition;
};

/// Runs the automaton on `word` under halting acceptance.
///
/// Lambda transitions consume nothing; a repeated state during a pure-lambda
/// stretch halts the run as lambda_divergence (rejecting). Throws
/// NonDeterministicError if the machine fails the determinism check and
/// InputSymbolUnknownError for words outside the alphabet.
FaRunResult run_fa(const PartialFA& fa, const Word& word);

/// Converts a word to symbol indices, throwing InputSymbolUnknownError.
std::vector<std::size_t> intern_word(const Alphabet& alphabet, const Word& word);

}  // namespace pcrfa
