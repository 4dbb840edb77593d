#include "pcrfa/automaton.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "pcrfa/errors.hpp"

namespace pcrfa {

PartialFA::PartialFA(Alphabet alphabet,
                     std::vector<std::string> states,
                     std::string start,
                     std::vector<std::string> finals,
                     std::vector<FaTransition> transitions)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      start_(std::move(start)),
      finals_(finals.begin(), finals.end()),
      transitions_(std::move(transitions)) {
    if (states_.empty()) throw std::invalid_argument("automaton needs at least one state");
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const std::string& s = states_[i];
        if (s.empty()) throw std::invalid_argument("empty state name");
        if (!state_index_.emplace(s, static_cast<StateId>(i)).second) {
            throw std::invalid_argument("duplicate state name: '" + s + "'");
        }
    }
    auto require_state = [&](const std::string& name) -> StateId {
        auto it = state_index_.find(name);
        if (it == state_index_.end()) {
            throw std::invalid_argument("unknown state: '" + name + "'");
        }
        return it->second;
    };
    start_id_ = require_state(start_);
    final_.assign(states_.size(), false);
    for (const std::string& f : finals_) {
        final_[static_cast<std::size_t>(require_state(f))] = true;
    }

    lambda_target_.assign(states_.size(), kNoState);
    symbol_target_.assign(states_.size() * alphabet_.size(), kNoState);
    std::sort(transitions_.begin(), transitions_.end());
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const FaTransition& t = transitions_[i];
        StateId from = require_state(t.from);
        StateId to = require_state(t.to);
        if (i > 0 && transitions_[i - 1].from == t.from && transitions_[i - 1].label == t.label) {
            throw std::invalid_argument("duplicate transition key: (" + t.from + ", " +
                                        t.label.token() + ")");
        }
        if (t.label.is_lambda()) {
            lambda_target_[static_cast<std::size_t>(from)] = to;
        } else {
            auto sym = alphabet_.index_of(t.label.symbol_name());
            if (!sym) {
                throw std::invalid_argument("transition label outside alphabet: '" +
                                            t.label.symbol_name() + "'");
            }
            symbol_target_[static_cast<std::size_t>(from) * alphabet_.size() + *sym] = to;
        }
    }
    // Duplicate keys are rejected above, so the only comparable-label clash
    // left is a lambda transition next to symbol transitions.
    for (std::size_t s = 0; s < states_.size(); ++s) {
        if (lambda_target_[s] == kNoState) continue;
        for (std::size_t a = 0; a < alphabet_.size(); ++a) {
            if (symbol_target_[s * alphabet_.size() + a] != kNoState) {
                deterministic_ = false;
                break;
            }
        }
        if (!deterministic_) break;
    }
}

std::optional<StateId> PartialFA::state_id(std::string_view name) const {
    auto it = state_index_.find(std::string(name));
    if (it == state_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::string> PartialFA::target(const std::string& from, const Label& label) const {
    auto id = state_id(from);
    if (!id) return std::nullopt;
    StateId to = kNoState;
    if (label.is_lambda()) {
        to = lambda_target(*id);
    } else if (auto sym = alphabet_.index_of(label.symbol_name())) {
        to = symbol_target(*id, *sym);
    }
    if (to == kNoState) return std::nullopt;
    return state_name(to);
}

bool PartialFA::fully_defined() const {
    if (alphabet_.empty()) return false;
    for (const FaTransition& t : transitions_) {
        if (t.label.is_lambda()) return false;
    }
    return transitions_.size() == states_.size() * alphabet_.size();
}

bool PartialFA::operator==(const PartialFA& other) const {
    return alphabet_ == other.alphabet_ && states_ == other.states_ && start_ == other.start_ &&
           finals_ == other.finals_ && transitions_ == other.transitions_;
}

ReversibilityReport check(const PartialFA& fa) {
    ReversibilityReport report;

    // Outgoing fan: any two comparable labels from one state.
    std::map<std::string, std::vector<Label>> outgoing;
    for (const FaTransition& t : fa.transitions()) outgoing[t.from].push_back(t.label);
    for (auto& [state, labels] : outgoing) {
        std::sort(labels.begin(), labels.end());
        for (std::size_t i = 0; i < labels.size(); ++i) {
            for (std::size_t j = i + 1; j < labels.size(); ++j) {
                if (prefix_comparable(labels[i], labels[j])) {
                    report.determinism_witnesses.push_back({state, labels[i], labels[j]});
                }
            }
        }
    }
    report.deterministic = report.determinism_witnesses.empty();

    // Incoming fan: per target and per in-label class, the transitions with
    // a comparable label must be unique.
    std::map<std::string, std::vector<std::pair<std::string, Label>>> incoming;
    for (const FaTransition& t : fa.transitions()) incoming[t.to].push_back({t.from, t.label});
    for (auto& [target, ins] : incoming) {
        std::sort(ins.begin(), ins.end());
        std::vector<Label> classes;
        for (const auto& [src, label] : ins) classes.push_back(label);
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        for (const Label& cls : classes) {
            std::vector<std::pair<std::string, Label>> hits;
            for (const auto& in : ins) {
                if (prefix_comparable(in.second, cls)) hits.push_back(in);
            }
            if (hits.size() >= 2) {
                report.reversibility_witnesses.push_back({target, cls, std::move(hits)});
            }
        }
    }
    report.reversible = report.deterministic && report.reversibility_witnesses.empty();
    return report;
}

std::vector<std::size_t> intern_word(const Alphabet& alphabet, const Word& word) {
    std::vector<std::size_t> ids;
    ids.reserve(word.size());
    for (const std::string& token : word) {
        auto i = alphabet.index_of(token);
        if (!i) throw InputSymbolUnknownError("input symbol not in alphabet: '" + token + "'");
        ids.push_back(*i);
    }
    return ids;
}

FaRunResult run_fa(const PartialFA& fa, const Word& word) {
    if (!fa.deterministic()) {
        throw NonDeterministicError("run_fa requires a deterministic automaton");
    }
    std::vector<std::size_t> w = intern_word(fa.alphabet(), word);

    StateId state = fa.start_id();
    std::size_t pos = 0;
    std::vector<bool> seen_since_consume(fa.state_count(), false);
    bool marked = false;
    FaRunResult result;
    for (;;) {
        StateId via_lambda = fa.lambda_target(state);
        if (via_lambda != kNoState) {
            if (seen_since_consume[static_cast<std::size_t>(state)]) {
                result.halt_state = fa.state_name(state);
                result.consumed = pos;
                result.accepted = false;
                result.reason = FaHaltReason::lambda_divergence;
                return result;
            }
            seen_since_consume[static_cast<std::size_t>(state)] = true;
            marked = true;
            state = via_lambda;
            continue;
        }
        if (pos < w.size()) {
            StateId via_symbol = fa.symbol_target(state, w[pos]);
            if (via_symbol != kNoState) {
                state = via_symbol;
                ++pos;
                if (marked) {
                    std::fill(seen_since_consume.begin(), seen_since_consume.end(), false);
                    marked = false;
                }
                continue;
            }
        }
        break;  // no transition applies: halt
    }
    result.halt_state = fa.state_name(state);
    result.consumed = pos;
    result.accepted = fa.is_final(state);
    result.reason = FaHaltReason::no_transition;
    return result;
}

}  // namespace pcrfa
