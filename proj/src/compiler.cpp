#include "pcrfa/compiler.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pcrfa/errors.hpp"

namespace pcrfa {

namespace {

void require_fully_defined(const PartialFA& dfa) {
    for (const FaTransition& t : dfa.transitions()) {
        if (t.label.is_lambda()) {
            throw NotFullyDefinedError("lambda transition from '" + t.from +
                                       "' is not allowed in a DFA");
        }
    }
    for (const std::string& state : dfa.states()) {
        for (const std::string& symbol : dfa.alphabet().symbols()) {
            if (!dfa.target(state, Label::symbol(symbol))) {
                throw NotFullyDefinedError("missing transition (" + state + ", " + symbol + ")");
            }
        }
    }
    if (!dfa.deterministic()) {
        throw NonDeterministicError("compile requires a deterministic automaton");
    }
}

}  // namespace

std::vector<IrreversiblePair> irreversible_pairs(const PartialFA& dfa) {
    require_fully_defined(dfa);
    std::map<IrreversiblePair, std::size_t> in_degree;
    for (const FaTransition& t : dfa.transitions()) {
        ++in_degree[{t.to, t.label.symbol_name()}];
    }
    std::vector<IrreversiblePair> pairs;
    for (const auto& [pair, count] : in_degree) {
        if (count >= 2) pairs.push_back(pair);
    }
    return pairs;  // map iteration is already (target, label)-sorted
}

std::vector<NumberedTransition> build_transition_list(const PartialFA& dfa) {
    std::vector<IrreversiblePair> pairs = irreversible_pairs(dfa);
    std::vector<NumberedTransition> list;
    std::size_t next = 2;
    for (const IrreversiblePair& pair : pairs) {
        std::vector<std::string> sources;
        for (const FaTransition& t : dfa.transitions()) {
            if (t.to == pair.target && !t.label.is_lambda() &&
                t.label.symbol_name() == pair.label) {
                sources.push_back(t.from);
            }
        }
        std::sort(sources.begin(), sources.end());
        for (const std::string& from : sources) {
            list.push_back({next++, from, pair.label, pair.target});
        }
    }
    return list;
}

PartialFA complete_with_sink(const PartialFA& dfa) {
    for (const FaTransition& t : dfa.transitions()) {
        if (t.label.is_lambda()) {
            throw NotFullyDefinedError("cannot complete an automaton with lambda transitions");
        }
    }
    bool total = true;
    for (const std::string& state : dfa.states()) {
        for (const std::string& symbol : dfa.alphabet().symbols()) {
            if (!dfa.target(state, Label::symbol(symbol))) total = false;
        }
    }
    if (total) return dfa;

    std::string sink = "sink";
    while (dfa.state_id(sink)) sink += "_";
    std::vector<std::string> states = dfa.states();
    states.push_back(sink);
    std::vector<FaTransition> transitions = dfa.transitions();
    for (const std::string& state : states) {
        for (const std::string& symbol : dfa.alphabet().symbols()) {
            Label label = Label::symbol(symbol);
            if (state != sink && dfa.target(state, label)) continue;
            transitions.push_back({state, label, sink});
        }
    }
    std::vector<std::string> finals(dfa.finals().begin(), dfa.finals().end());
    return PartialFA(dfa.alphabet(), std::move(states), dfa.start(), std::move(finals),
                     std::move(transitions));
}

PcrfaSystem compile(const PartialFA& input, CompileOptions options) {
    PartialFA dfa = options.complete_with_sink ? complete_with_sink(input) : input;
    std::vector<NumberedTransition> list = build_transition_list(dfa);

    if (list.empty()) {
        return PcrfaSystem::degree_one(dfa);
    }

    std::set<std::string> query_names;
    for (const NumberedTransition& numbered : list) {
        query_names.insert("K" + std::to_string(numbered.number));
    }
    for (const std::string& state : dfa.states()) {
        if (query_names.count(state)) {
            throw std::invalid_argument("state name '" + state +
                                        "' collides with a generated query state");
        }
    }

    auto listed = [&list](const FaTransition& t) -> const NumberedTransition* {
        for (const NumberedTransition& numbered : list) {
            if (numbered.from == t.from && numbered.label == t.label.symbol_name() &&
                numbered.to == t.to) {
                return &numbered;
            }
        }
        return nullptr;
    };

    std::vector<std::string> master_states = dfa.states();
    std::vector<FaTransition> master_trans;
    std::map<std::string, std::size_t> query_targets;
    for (const NumberedTransition& numbered : list) {
        master_states.push_back("K" + std::to_string(numbered.number));
        query_targets["K" + std::to_string(numbered.number)] = numbered.number;
    }
    for (const FaTransition& t : dfa.transitions()) {
        if (const NumberedTransition* numbered = listed(t)) {
            master_trans.push_back({t.from, t.label, "K" + std::to_string(numbered->number)});
        } else {
            master_trans.push_back(t);
        }
    }
    std::vector<std::string> master_finals(dfa.finals().begin(), dfa.finals().end());
    std::vector<PartialFA> components;
    components.emplace_back(dfa.alphabet(), std::move(master_states), dfa.start(),
                            std::move(master_finals), std::move(master_trans));

    for (const NumberedTransition& numbered : list) {
        std::vector<FaTransition> loops;
        for (const std::string& symbol : dfa.alphabet().symbols()) {
            loops.push_back({numbered.to, Label::symbol(symbol), numbered.to});
        }
        components.emplace_back(dfa.alphabet(), std::vector<std::string>{numbered.to},
                                numbered.to, std::vector<std::string>{numbered.to},
                                std::move(loops));
    }
    return PcrfaSystem(dfa.alphabet(), std::move(components), std::move(query_targets));
}

}  // namespace pcrfa
