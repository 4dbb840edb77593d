#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pcrfa/alphabet.hpp"
#include "pcrfa/automaton.hpp"
#include "pcrfa/system.hpp"

namespace pcrfa {

/// A vector of per-head labels; each entry is an alphabet symbol, the end
/// marker "$", or lambda (head does not move).
using LabelVector = std::vector<Label>;

/// Componentwise prefix comparability of two equal-length label vectors.
bool vectors_comparable(const LabelVector& a, const LabelVector& b);

struct MhTransition {
    std::string from;
    LabelVector labels;
    std::string to;

    bool operator==(const MhTransition&) const = default;
    auto operator<=>(const MhTransition&) const = default;
};

/// A one-way multi-head finite automaton with k heads over a shared tape.
///
/// The tape is the input followed by a single end-marker cell "$". All heads
/// start on cell 0. A transition applies when every head either reads
/// lambda (stays put, any cell) or sees exactly its label; applying it
/// advances the heads that read a real symbol by one cell, while a head
/// reading "$" stays clamped on the sentinel. Acceptance is by halting in a
/// final state.
class MultiHeadRFA {
public:
    MultiHeadRFA(Alphabet alphabet,
                 std::size_t head_count,
                 std::vector<std::string> states,
                 std::string start,
                 std::vector<std::string> finals,
                 std::vector<MhTransition> transitions);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t head_count() const { return head_count_; }
    const std::vector<std::string>& states() const { return states_; }
    const std::string& start() const { return start_; }
    const std::set<std::string>& finals() const { return finals_; }
    const std::vector<MhTransition>& transitions() const { return transitions_; }

    bool is_final(const std::string& name) const { return finals_.count(name) != 0; }

    /// Transitions leaving `state`, in canonical order.
    std::vector<const MhTransition*> transitions_from(const std::string& state) const;

    bool operator==(const MultiHeadRFA& other) const;

private:
    Alphabet alphabet_;
    std::size_t head_count_;
    std::vector<std::string> states_;
    std::string start_;
    std::set<std::string> finals_;
    std::vector<MhTransition> transitions_;
};

/// Same witness shapes as the single-head report, with label vectors.
struct MhDeterminismWitness {
    std::string state;
    LabelVector first;
    LabelVector second;

    bool operator==(const MhDeterminismWitness&) const = default;
};

struct MhReversibilityWitness {
    std::string target;
    std::vector<std::pair<std::string, LabelVector>> sources;

    bool operator==(const MhReversibilityWitness&) const = default;
};

struct MhReversibilityReport {
    bool deterministic = false;
    bool reversible = false;
    std::vector<MhDeterminismWitness> determinism_witnesses;
    std::vector<MhReversibilityWitness> reversibility_witnesses;
};

/// deterministic: no two transitions from one state have componentwise
/// comparable label vectors. reversible: deterministic, and no two
/// transitions with componentwise comparable vectors share a target.
MhReversibilityReport check_mh(const MultiHeadRFA& m);

struct MhRunResult {
    std::string halt_state;
    std::vector<std::size_t> positions;  // per head; |w| is the sentinel cell
    bool accepted = false;
    FaHaltReason reason = FaHaltReason::no_transition;
};

/// Runs the machine on `word`; see the class comment for the step rule.
/// A repeated (state, positions) configuration with no head movement in
/// between halts as lambda_divergence, rejecting.
MhRunResult run_mh(const MultiHeadRFA& m, const Word& word);

struct TranslateOptions {
    /// Emit the literal shared wait chains (s2..sn, p1..pn-2) and keep only
    /// the plain states of the source final set final. The default uses
    /// wait states indexed by the carried tuple and marks every mid-round
    /// carrier state of a final source state final, which is what makes
    /// verdicts match the source machine on inputs where it halts early.
    bool strict_paper = false;
};

/// Translates a k-head reversible machine into a system of k communicating
/// components that simulates it one transition per protocol round:
/// component 1 reads the first head's label and stores it in its state, each
/// later component receives the accumulated tuple, extends it with its own
/// head's label, and component k finally steps to the simulated target
/// state, which everyone else picks up by querying it.
///
/// Heads that read lambda map to non-consuming component moves. Throws
/// NotReversibleError when check_mh fails. Throws TranslationAmbiguityError
/// for the two head decisions no deterministic component can make locally:
/// transitions that read the end marker (a component cannot positively
/// detect its own end of input), and a state whose outgoing label vectors
/// mix a non-consuming head decision with a symbol read at the same tuple
/// prefix. For k = 1 the result is the degree-1 system containing the
/// machine itself.
PcrfaSystem translate(const MultiHeadRFA& m, TranslateOptions options = {});

}  // namespace pcrfa
