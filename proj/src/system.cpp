#include "pcrfa/system.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "pcrfa/errors.hpp"

namespace pcrfa {

PcrfaSystem::PcrfaSystem(Alphabet alphabet,
                         std::vector<PartialFA> components,
                         std::map<std::string, std::size_t> query_targets)
    : alphabet_(std::move(alphabet)),
      components_(std::move(components)),
      query_targets_(std::move(query_targets)) {
    if (components_.empty()) throw std::invalid_argument("system needs at least one component");
    for (const PartialFA& c : components_) {
        if (c.alphabet() != alphabet_) {
            throw std::invalid_argument("all components must share the system alphabet");
        }
    }
    for (const auto& [name, target] : query_targets_) {
        if (target < 1 || target > components_.size()) {
            throw std::invalid_argument("query state '" + name + "' targets component " +
                                        std::to_string(target) + " of " +
                                        std::to_string(components_.size()));
        }
        bool appears = false;
        for (const PartialFA& c : components_) {
            if (!c.state_id(name)) continue;
            appears = true;
            if (c.is_final(name)) {
                throw std::invalid_argument("query state '" + name + "' must not be final");
            }
        }
        if (!appears) {
            throw std::invalid_argument("query state '" + name +
                                        "' does not appear in any component");
        }
        for (const PartialFA& c : components_) {
            for (const FaTransition& t : c.transitions()) {
                if (t.from == name) {
                    throw std::invalid_argument("query state '" + name +
                                                "' must have no outgoing transitions");
                }
            }
        }
    }
}

PcrfaSystem PcrfaSystem::degree_one(PartialFA component) {
    Alphabet alphabet = component.alphabet();
    std::vector<PartialFA> components;
    components.push_back(std::move(component));
    return PcrfaSystem(std::move(alphabet), std::move(components), {});
}

bool PcrfaSystem::operator==(const PcrfaSystem& other) const {
    return alphabet_ == other.alphabet_ && components_ == other.components_ &&
           query_targets_ == other.query_targets_;
}

StateTuple state_tuple(const PcrfaSystem& sys, const SystemConfiguration& config) {
    StateTuple tuple;
    tuple.reserve(config.states.size());
    for (std::size_t i = 0; i < config.states.size(); ++i) {
        tuple.push_back(sys.components()[i].state_name(config.states[i]));
    }
    return tuple;
}

namespace {

bool any_query_state(const PcrfaSystem& sys, const SystemConfiguration& config) {
    for (std::size_t i = 0; i < config.states.size(); ++i) {
        if (sys.is_query_state(sys.components()[i].state_name(config.states[i]))) return true;
    }
    return false;
}

}  // namespace

std::optional<ReadStepResult> read_step(const PcrfaSystem& sys,
                                        const SystemConfiguration& config,
                                        const std::vector<std::size_t>& word) {
    if (any_query_state(sys, config)) return std::nullopt;

    ReadStepResult result;
    result.config = config;
    result.labels.reserve(sys.degree());
    for (std::size_t i = 0; i < sys.degree(); ++i) {
        const PartialFA& c = sys.components()[i];
        StateId state = config.states[i];
        StateId via_lambda = c.lambda_target(state);
        if (via_lambda != kNoState) {
            result.config.states[i] = via_lambda;
            result.labels.push_back(Label::lambda());
            continue;
        }
        std::size_t pos = config.consumed[i];
        if (pos < word.size()) {
            StateId via_symbol = c.symbol_target(state, word[pos]);
            if (via_symbol != kNoState) {
                result.config.states[i] = via_symbol;
                result.config.consumed[i] = pos + 1;
                result.labels.push_back(Label::symbol(sys.alphabet().symbol(word[pos])));
                continue;
            }
        }
        return std::nullopt;  // this component cannot move: the step stalls
    }
    return result;
}

std::optional<CommRoundResult> comm_round(const PcrfaSystem& sys,
                                          const SystemConfiguration& config) {
    CommRoundResult result;
    result.config = config;
    for (std::size_t i = 0; i < sys.degree(); ++i) {
        const PartialFA& querier = sys.components()[i];
        const std::string& state_name = querier.state_name(config.states[i]);
        auto it = sys.query_targets().find(state_name);
        if (it == sys.query_targets().end()) continue;
        std::size_t j = it->second - 1;
        const PartialFA& queried = sys.components()[j];
        const std::string& delivered = queried.state_name(config.states[j]);
        if (sys.is_query_state(delivered)) continue;  // target is itself querying
        auto delivered_id = querier.state_id(delivered);
        if (!delivered_id) continue;  // delivered state is foreign to the querier
        result.config.states[i] = *delivered_id;
        result.resolutions.push_back({i + 1, j + 1, delivered});
    }
    if (result.resolutions.empty()) return std::nullopt;
    return result;
}

MacroStepResult macro_step(const PcrfaSystem& sys,
                           const SystemConfiguration& config,
                           const std::vector<std::size_t>& word) {
    MacroStepResult result;
    result.config = config;

    if (auto read = read_step(sys, config, word)) {
        for (std::size_t i = 0; i < sys.degree(); ++i) {
            if (read->config.consumed[i] != config.consumed[i]) result.consumed_any = true;
        }
        result.config = std::move(read->config);
        result.events.push_back(ReadStepEvent{std::move(read->labels)});
    } else if (!comm_round(sys, config)) {
        result.outcome =
            any_query_state(sys, config) ? MacroOutcome::deadlocked : MacroOutcome::halted;
        return result;
    }
    // Communication to fixpoint. Every firing round resolves at least one
    // query and introduces none, so it fires at most `degree` times.
    std::size_t rounds = 0;
    while (auto comm = comm_round(sys, result.config)) {
        result.config = std::move(comm->config);
        result.events.push_back(CommRoundEvent{std::move(comm->resolutions)});
        if (++rounds > sys.degree()) {
            throw std::logic_error("communication rounds exceeded the component count");
        }
    }
    if (any_query_state(sys, result.config)) {
        result.outcome = MacroOutcome::deadlocked;
        return result;
    }
    result.outcome = MacroOutcome::stepped;
    return result;
}

SystemConfiguration initial_configuration(const PcrfaSystem& sys) {
    SystemConfiguration config;
    config.states.reserve(sys.degree());
    config.consumed.assign(sys.degree(), 0);
    for (const PartialFA& c : sys.components()) config.states.push_back(c.start_id());
    return config;
}

SystemRunResult run_system(const PcrfaSystem& sys, const Word& word, RunOptions options) {
    for (const PartialFA& c : sys.components()) {
        if (!c.deterministic()) {
            throw NonDeterministicError("run_system requires deterministic components");
        }
    }
    std::vector<std::size_t> w = intern_word(sys.alphabet(), word);

    SystemRunResult result;
    SystemConfiguration config = initial_configuration(sys);
    std::set<SystemConfiguration> seen_since_consume;
    Verdict abnormal = Verdict::reject;
    bool diverged = false;
    for (;;) {
        MacroStepResult step = macro_step(sys, config, w);
        if (step.outcome == MacroOutcome::halted) break;
        if (options.trace) {
            for (StepEvent& e : step.events) result.trace.push_back(std::move(e));
        }
        if (step.outcome == MacroOutcome::deadlocked) {
            config = std::move(step.config);
            abnormal = Verdict::deadlock;
            break;
        }
        if (step.consumed_any) {
            seen_since_consume.clear();
        } else if (seen_since_consume.empty()) {
            seen_since_consume.insert(config);
        }
        config = std::move(step.config);
        if (!step.consumed_any && !seen_since_consume.insert(config).second) {
            diverged = true;
            abnormal = Verdict::divergence;
            break;
        }
    }
    result.final_config = config;
    bool all_final = true;
    for (std::size_t i = 0; i < sys.degree(); ++i) {
        if (!sys.components()[i].is_final(config.states[i])) all_final = false;
    }
    result.accepted = all_final && !diverged && abnormal != Verdict::deadlock;
    result.verdict = result.accepted ? Verdict::accept : abnormal;
    if (options.trace) result.trace.push_back(HaltEvent{result.verdict});
    return result;
}

}  // namespace pcrfa
