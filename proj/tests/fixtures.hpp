#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "pcrfa/automaton.hpp"
#include "pcrfa/multihead.hpp"

namespace pcrfa::testing {

/// The classic two-state DFA for "words ending in a": deterministic, fully
/// defined, and irreversible at (q0, b) and (q1, a).
inline PartialFA ends_with_a_dfa() {
    Alphabet sigma({"a", "b"});
    return PartialFA(sigma, {"q0", "q1"}, "q0", {"q1"},
                     {{"q0", Label::symbol("a"), "q1"},
                      {"q0", Label::symbol("b"), "q0"},
                      {"q1", Label::symbol("a"), "q1"},
                      {"q1", Label::symbol("b"), "q0"}});
}

/// Two heads checking a^n b. The heads leapfrog over the a's (head 1 reads
/// one, then head 2 catches up), head 1 takes the b, head 2 confirms its own
/// b, and the final state carries poison reads that fire exactly when head 1
/// still has input left, killing words with trailing garbage. Reversible,
/// deterministic, and free of end-marker reads, so it translates.
inline MultiHeadRFA as_then_b_mhrfa() {
    Alphabet sigma({"a", "b"});
    Label a = Label::symbol("a");
    Label b = Label::symbol("b");
    Label none = Label::lambda();
    return MultiHeadRFA(sigma, 2, {"p", "u", "r", "f", "d1", "d2"}, "p", {"f"},
                        {{"p", {a, none}, "u"},
                         {"u", {none, a}, "p"},
                         {"p", {b, none}, "r"},
                         {"r", {none, b}, "f"},
                         {"f", {a, none}, "d1"},
                         {"f", {b, none}, "d2"}});
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw std::runtime_error("cannot open fixture: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(FIXTURE_DIR) + "/" + name;
}

}  // namespace pcrfa::testing
