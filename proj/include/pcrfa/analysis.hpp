#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcrfa/alphabet.hpp"
#include "pcrfa/automaton.hpp"
#include "pcrfa/multihead.hpp"
#include "pcrfa/system.hpp"

namespace pcrfa {

/// A uniform handle over any word acceptor. Deterministic: the same word
/// always yields the same verdict.
struct Runner {
    Alphabet alphabet;
    std::function<bool(const Word&)> accepts;
};

Runner make_runner(const PartialFA& fa);
Runner make_runner(const PcrfaSystem& sys);
Runner make_runner(const MultiHeadRFA& m);

/// Exactly the accepted words among all words of length <= max_len, shortest
/// first and lexicographic within a length.
std::vector<Word> enumerate_language(const Runner& runner, std::size_t max_len);

/// The shortest (then lexicographically least) word of length <= max_len on
/// which the two runners disagree, or nullopt when none exists. The runners
/// must share an alphabet.
std::optional<Word> equivalent_up_to(const Runner& a, const Runner& b, std::size_t max_len);

/// Analysis works at the granularity of state tuples: the per-component
/// state names of a configuration, with the read suffixes projected away.
/// That is the granularity at which the previous configuration of a system
/// may fail to be unique even though every component is reversible.
enum class EdgeKind { read, comm, macro };

/// A state tuple with at least two distinct predecessors under the same
/// consumed label vector.
struct PredecessorWitness {
    StateTuple config;
    std::vector<Label> labels;  // per-component labels of the read step (empty for comm edges)
    EdgeKind kind = EdgeKind::macro;
    std::vector<StateTuple> predecessors;  // >= 2, sorted, distinct

    /// One reachability context per predecessor: an input word and the
    /// 0-based step depth at which the predecessor occurred.
    struct Context {
        Word word;
        std::size_t depth;
    };
    std::vector<Context> contexts;

    bool operator==(const PredecessorWitness& other) const {
        return config == other.config && labels == other.labels && kind == other.kind &&
               predecessors == other.predecessors;
    }
};

/// All state tuples that precede `config` under a read of exactly `labels`
/// on input `word`, restricted to occurrences before step `depth`. Knowing
/// the labels is part of the question: the point is that configuration plus
/// consumed symbols still fails to pin down the previous configuration.
/// Computed by forward enumeration of the (single, deterministic) macro-step
/// path, never by inverting transition maps. An unreachable `config` yields
/// the empty set.
std::vector<StateTuple> predecessors(const PcrfaSystem& sys,
                                     const StateTuple& config,
                                     const std::vector<Label>& labels,
                                     std::size_t depth,
                                     const Word& word);

struct AuditOptions {
    /// macro: one edge per read step plus its communication fixpoint.
    /// raw: separate edges for read steps and communication rounds, which
    /// exposes the merges introduced by query resolution itself.
    EdgeKind granularity = EdgeKind::macro;
};

/// Explores every input of length <= max_len, accumulates the reachable
/// step graph over state tuples, and reports every tuple with two or more
/// distinct predecessors under one label vector. An empty result certifies
/// step injectivity within the bound.
std::vector<PredecessorWitness> audit_reversibility(const PcrfaSystem& sys,
                                                    std::size_t max_len,
                                                    AuditOptions options = {});

}  // namespace pcrfa
