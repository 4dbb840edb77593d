#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcrfa/automaton.hpp"

namespace pcrfa {

/// A parallel communicating system of finite automata over one shared
/// alphabet. Every component owns a copy of the input; they advance in
/// lock-step read steps and exchange states through query states.
///
/// A component that enters a query state K_j is handed, in a communication
/// round, the current state of component j (1-based). Query states are
/// non-final and have no outgoing transitions anywhere in the system.
class PcrfaSystem {
public:
    PcrfaSystem(Alphabet alphabet,
                std::vector<PartialFA> components,
                std::map<std::string, std::size_t> query_targets);

    /// Wraps a single automaton as a system of degree 1.
    static PcrfaSystem degree_one(PartialFA component);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<PartialFA>& components() const { return components_; }
    std::size_t degree() const { return components_.size(); }

    /// Query-state name -> 1-based component index.
    const std::map<std::string, std::size_t>& query_targets() const { return query_targets_; }

    bool is_query_state(const std::string& name) const { return query_targets_.count(name) != 0; }

    bool operator==(const PcrfaSystem& other) const;

private:
    Alphabet alphabet_;
    std::vector<PartialFA> components_;
    std::map<std::string, std::size_t> query_targets_;
};

/// Per-component (state, consumed-prefix-length) pairs; the unread suffix of
/// component i is the input minus its first `consumed[i]` symbols.
struct SystemConfiguration {
    std::vector<StateId> states;      // per component, ids local to that component
    std::vector<std::size_t> consumed;

    bool operator==(const SystemConfiguration&) const = default;
    auto operator<=>(const SystemConfiguration&) const = default;
};

/// State names of a configuration, one per component.
using StateTuple = std::vector<std::string>;

StateTuple state_tuple(const PcrfaSystem& sys, const SystemConfiguration& config);

struct ReadStepEvent {
    std::vector<Label> labels;  // exactly one per component
};

struct CommRoundEvent {
    struct Resolution {
        std::size_t querier;  // 1-based component indices
        std::size_t queried;
        std::string delivered;
    };
    std::vector<Resolution> resolutions;
};

enum class Verdict { accept, reject, deadlock, divergence };

struct HaltEvent {
    Verdict verdict;
};

using StepEvent = std::variant<ReadStepEvent, CommRoundEvent, HaltEvent>;

struct ReadStepResult {
    SystemConfiguration config;
    std::vector<Label> labels;
};

struct CommRoundResult {
    SystemConfiguration config;
    std::vector<CommRoundEvent::Resolution> resolutions;
};

/// One lock-step read: applies only when no component sits in a query state
/// and every component has a unique applicable transition (a symbol move
/// consuming the head of its suffix, or a lambda move consuming nothing).
/// Returns nullopt when the step stalls.
std::optional<ReadStepResult> read_step(const PcrfaSystem& sys,
                                        const SystemConfiguration& config,
                                        const std::vector<std::size_t>& word);

/// One communication round: every querier whose queried component is not
/// itself querying (and whose state is delivered into the querier's state
/// set) receives that state, simultaneously. Suffixes never change.
/// Returns nullopt when no query resolves.
std::optional<CommRoundResult> comm_round(const PcrfaSystem& sys,
                                          const SystemConfiguration& config);

enum class MacroOutcome {
    stepped,    // read step plus communication rounds to fixpoint
    halted,     // no read step and no communication round applies
    deadlocked  // communication stalls with queries still pending
};

struct MacroStepResult {
    MacroOutcome outcome = MacroOutcome::halted;
    SystemConfiguration config;
    std::vector<StepEvent> events;
    bool consumed_any = false;
};

/// One macro step: a read step followed by communication rounds to fixpoint
/// (at most `degree` rounds fire). If the read stalls on a configuration
/// that still holds resolvable queries, the round recovery applies the
/// pending communication instead.
MacroStepResult macro_step(const PcrfaSystem& sys,
                           const SystemConfiguration& config,
                           const std::vector<std::size_t>& word);

struct SystemRunResult {
    bool accepted = false;
    Verdict verdict = Verdict::reject;
    SystemConfiguration final_config;
    std::vector<StepEvent> trace;  // filled only when tracing is requested
};

struct RunOptions {
    bool trace = false;
};

SystemConfiguration initial_configuration(const PcrfaSystem& sys);

/// Runs the system on `word` from the initial configuration until it halts.
/// Accepts iff every component halts in one of its final states. A repeated
/// configuration inside a non-consuming stretch halts as divergence
/// (rejecting); unresolvable pending queries halt as deadlock (rejecting,
/// since query states are never final). Always terminates.
SystemRunResult run_system(const PcrfaSystem& sys, const Word& word, RunOptions options = {});

}  // namespace pcrfa
