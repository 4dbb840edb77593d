#include "pcrfa/analysis.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>

namespace pcrfa {

Runner make_runner(const PartialFA& fa) {
    auto machine = std::make_shared<PartialFA>(fa);
    return {machine->alphabet(),
            [machine](const Word& w) { return run_fa(*machine, w).accepted; }};
}

Runner make_runner(const PcrfaSystem& sys) {
    auto machine = std::make_shared<PcrfaSystem>(sys);
    return {machine->alphabet(),
            [machine](const Word& w) { return run_system(*machine, w).accepted; }};
}

Runner make_runner(const MultiHeadRFA& m) {
    auto machine = std::make_shared<MultiHeadRFA>(m);
    return {machine->alphabet(),
            [machine](const Word& w) { return run_mh(*machine, w).accepted; }};
}

std::vector<Word> enumerate_language(const Runner& runner, std::size_t max_len) {
    std::vector<Word> accepted;
    for (const Word& w : words_up_to(runner.alphabet, max_len)) {
        if (runner.accepts(w)) accepted.push_back(w);
    }
    return accepted;
}

std::optional<Word> equivalent_up_to(const Runner& a, const Runner& b, std::size_t max_len) {
    if (a.alphabet != b.alphabet) {
        throw std::invalid_argument("equivalence check requires a shared alphabet");
    }
    for (const Word& w : words_up_to(a.alphabet, max_len)) {
        if (a.accepts(w) != b.accepts(w)) return w;
    }
    return std::nullopt;
}

namespace {

struct PathEdge {
    StateTuple pre;
    std::vector<Label> labels;
    EdgeKind kind = EdgeKind::macro;
    StateTuple post;
    std::size_t depth = 0;  // step index of `pre` along the walk
};

// Walks the deterministic step path of `sys` on `word`, collecting edges at
// the requested granularity. The walk stops at a halt or as soon as a
// configuration repeats inside a non-consuming stretch, so it always ends.
std::vector<PathEdge> step_path(const PcrfaSystem& sys,
                                const Word& word,
                                EdgeKind granularity) {
    std::vector<std::size_t> w = intern_word(sys.alphabet(), word);
    std::vector<PathEdge> edges;
    SystemConfiguration config = initial_configuration(sys);
    std::set<SystemConfiguration> seen_since_consume;
    std::size_t depth = 0;

    auto guard = [&](const SystemConfiguration& pre, const SystemConfiguration& post,
                     bool consumed_any) {
        if (consumed_any) {
            seen_since_consume.clear();
            return true;
        }
        if (seen_since_consume.empty()) seen_since_consume.insert(pre);
        return seen_since_consume.insert(post).second;
    };

    if (granularity == EdgeKind::macro) {
        for (;;) {
            MacroStepResult step = macro_step(sys, config, w);
            if (step.outcome != MacroOutcome::stepped) break;
            const auto* read = step.events.empty()
                                   ? nullptr
                                   : std::get_if<ReadStepEvent>(&step.events.front());
            if (read != nullptr) {
                edges.push_back({state_tuple(sys, config), read->labels, EdgeKind::macro,
                                 state_tuple(sys, step.config), depth});
            }
            bool keep_going = guard(config, step.config, step.consumed_any);
            config = std::move(step.config);
            ++depth;
            if (!keep_going) break;
        }
        return edges;
    }

    for (;;) {
        bool consumed_any = false;
        SystemConfiguration next = config;
        if (auto read = read_step(sys, config, w)) {
            for (std::size_t i = 0; i < sys.degree(); ++i) {
                if (read->config.consumed[i] != config.consumed[i]) consumed_any = true;
            }
            edges.push_back({state_tuple(sys, config), read->labels, EdgeKind::read,
                             state_tuple(sys, read->config), depth});
            next = std::move(read->config);
        } else if (auto comm = comm_round(sys, config)) {
            edges.push_back({state_tuple(sys, config), {}, EdgeKind::comm,
                             state_tuple(sys, comm->config), depth});
            next = std::move(comm->config);
        } else {
            break;
        }
        bool keep_going = guard(config, next, consumed_any);
        config = std::move(next);
        ++depth;
        if (!keep_going) break;
    }
    return edges;
}

}  // namespace

std::vector<StateTuple> predecessors(const PcrfaSystem& sys,
                                     const StateTuple& config,
                                     const std::vector<Label>& labels,
                                     std::size_t depth,
                                     const Word& word) {
    std::set<StateTuple> preds;
    for (const PathEdge& edge : step_path(sys, word, EdgeKind::macro)) {
        if (edge.post == config && edge.labels == labels && edge.depth < depth) {
            preds.insert(edge.pre);
        }
    }
    return {preds.begin(), preds.end()};
}

std::vector<PredecessorWitness> audit_reversibility(const PcrfaSystem& sys,
                                                    std::size_t max_len,
                                                    AuditOptions options) {
    // (target tuple, labels, kind) -> predecessor tuple -> first context
    using Key = std::tuple<StateTuple, std::vector<Label>, EdgeKind>;
    std::map<Key, std::map<StateTuple, PredecessorWitness::Context>> graph;

    for (const Word& w : words_up_to(sys.alphabet(), max_len)) {
        for (const PathEdge& edge : step_path(sys, w, options.granularity)) {
            if (options.granularity == EdgeKind::macro && edge.kind != EdgeKind::macro) continue;
            auto& preds = graph[{edge.post, edge.labels, edge.kind}];
            preds.emplace(edge.pre, PredecessorWitness::Context{w, edge.depth});
        }
    }

    std::vector<PredecessorWitness> witnesses;
    for (const auto& [key, preds] : graph) {
        if (preds.size() < 2) continue;
        PredecessorWitness witness;
        witness.config = std::get<0>(key);
        witness.labels = std::get<1>(key);
        witness.kind = std::get<2>(key);
        for (const auto& [pre, context] : preds) {
            witness.predecessors.push_back(pre);
            witness.contexts.push_back(context);
        }
        witnesses.push_back(std::move(witness));
    }
    return witnesses;  // map iteration keeps the output canonically sorted
}

}  // namespace pcrfa
