#include "pcrfa/automaton.hpp"

#include <map>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "pcrfa/errors.hpp"

using namespace pcrfa;
using pcrfa::testing::ends_with_a_dfa;

namespace {

Label sym(const char* s) { return Label::symbol(s); }

// Independent violation count: unordered pairs of distinct transitions with
// prefix-comparable labels into one target.
std::size_t brute_force_merge_pairs(const PartialFA& fa) {
    const auto& ts = fa.transitions();
    std::size_t count = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            if (ts[i].to == ts[j].to && prefix_comparable(ts[i].label, ts[j].label)) ++count;
        }
    }
    return count;
}

PartialFA random_machine(std::mt19937& rng) {
    std::vector<std::string> symbols{"a", "b", "c"};
    std::uniform_int_distribution<std::size_t> sigma_size(1, 3);
    std::uniform_int_distribution<std::size_t> state_count(1, 4);
    symbols.resize(sigma_size(rng));
    Alphabet sigma(symbols);

    std::size_t n = state_count(rng);
    std::vector<std::string> states;
    for (std::size_t i = 0; i < n; ++i) states.push_back("q" + std::to_string(i));

    std::vector<FaTransition> transitions;
    std::uniform_int_distribution<int> coin(0, 3);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (const std::string& from : states) {
        for (const std::string& s : symbols) {
            if (coin(rng) != 0) transitions.push_back({from, Label::symbol(s), states[pick(rng)]});
        }
        if (coin(rng) == 0) transitions.push_back({from, Label::lambda(), states[pick(rng)]});
    }
    std::vector<std::string> finals;
    for (const std::string& q : states) {
        if (coin(rng) < 2) finals.push_back(q);
    }
    return PartialFA(sigma, states, states[0], finals, transitions);
}

}  // namespace

TEST_CASE("construction validates structure") {
    Alphabet sigma({"a"});
    CHECK_THROWS_AS(PartialFA(sigma, {"q", "q"}, "q", {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(PartialFA(sigma, {"q"}, "r", {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(PartialFA(sigma, {"q"}, "q", {"r"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(PartialFA(sigma, {"q"}, "q", {}, {{"q", sym("z"), "q"}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PartialFA(sigma, {"q"}, "q", {},
                              {{"q", sym("a"), "q"}, {"q", sym("a"), "q"}}),
                    std::invalid_argument);
}

TEST_CASE("check: the ends-with-a machine is deterministic but not reversible") {
    ReversibilityReport report = check(ends_with_a_dfa());
    CHECK(report.deterministic);
    CHECK(!report.reversible);
    REQUIRE(report.reversibility_witnesses.size() == 2);

    const ReversibilityWitness& w0 = report.reversibility_witnesses[0];
    CHECK(w0.target == "q0");
    CHECK(w0.label == sym("b"));
    REQUIRE(w0.sources.size() == 2);
    CHECK(w0.sources[0].first == "q0");
    CHECK(w0.sources[1].first == "q1");

    const ReversibilityWitness& w1 = report.reversibility_witnesses[1];
    CHECK(w1.target == "q1");
    CHECK(w1.label == sym("a"));
    CHECK(w1.sources[0].first == "q0");
    CHECK(w1.sources[1].first == "q1");
}

TEST_CASE("check: single state looping on every symbol is reversible") {
    Alphabet sigma({"a", "b"});
    PartialFA fa(sigma, {"q"}, "q", {"q"}, {{"q", sym("a"), "q"}, {"q", sym("b"), "q"}});
    ReversibilityReport report = check(fa);
    CHECK(report.deterministic);
    CHECK(report.reversible);
    CHECK(report.determinism_witnesses.empty());
    CHECK(report.reversibility_witnesses.empty());
}

TEST_CASE("check: lambda next to a symbol transition is nondeterministic") {
    Alphabet sigma({"a"});
    PartialFA fa(sigma, {"q0", "q1"}, "q0", {},
                 {{"q0", sym("a"), "q1"}, {"q0", Label::lambda(), "q1"}});
    ReversibilityReport report = check(fa);
    CHECK(!report.deterministic);
    CHECK(!report.reversible);
    REQUIRE(report.determinism_witnesses.size() == 1);
    CHECK(report.determinism_witnesses[0].state == "q0");
    CHECK(report.determinism_witnesses[0].first == Label::lambda());
    CHECK(report.determinism_witnesses[0].second == sym("a"));
    CHECK(!fa.deterministic());
}

TEST_CASE("check: lambda and symbol transitions merging into one target") {
    Alphabet sigma({"a"});
    PartialFA fa(sigma, {"q0", "q1", "t"}, "q0", {},
                 {{"q0", Label::lambda(), "t"}, {"q1", sym("a"), "t"}});
    ReversibilityReport report = check(fa);
    CHECK(report.deterministic);
    CHECK(!report.reversible);
    CHECK(!report.reversibility_witnesses.empty());
}

TEST_CASE("check matches a brute-force violation count on random machines") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 300; ++trial) {
        PartialFA fa = random_machine(rng);
        ReversibilityReport report = check(fa);
        std::size_t pairs = brute_force_merge_pairs(fa);
        CHECK(report.deterministic == fa.deterministic());
        CHECK(report.reversible == (report.deterministic && pairs == 0));

        // Removing any witness-listed transition strictly reduces the count.
        if (!report.reversibility_witnesses.empty()) {
            const auto& witness = report.reversibility_witnesses.front();
            std::vector<FaTransition> reduced;
            bool removed = false;
            for (const FaTransition& t : fa.transitions()) {
                if (!removed && t.to == witness.target && t.from == witness.sources[0].first &&
                    t.label == witness.sources[0].second) {
                    removed = true;
                    continue;
                }
                reduced.push_back(t);
            }
            REQUIRE(removed);
            std::vector<std::string> finals(fa.finals().begin(), fa.finals().end());
            PartialFA smaller(fa.alphabet(), fa.states(), fa.start(), finals, reduced);
            CHECK(brute_force_merge_pairs(smaller) < pairs);
        }
    }
}

TEST_CASE("run: consumes the whole input of the ends-with-a machine") {
    PartialFA fa = ends_with_a_dfa();
    FaRunResult r = run_fa(fa, {"a", "b", "a"});
    CHECK(r.halt_state == "q1");
    CHECK(r.consumed == 3);
    CHECK(r.accepted);

    CHECK(!run_fa(fa, {}).accepted);
    CHECK(!run_fa(fa, {"a", "b"}).accepted);
}

TEST_CASE("run: empty word accepted iff start is final and has no lambda moves") {
    Alphabet sigma({"a"});
    PartialFA fa(sigma, {"q"}, "q", {"q"}, {});
    FaRunResult r = run_fa(fa, {});
    CHECK(r.accepted);
    CHECK(r.consumed == 0);
}

TEST_CASE("run: halts mid-input when undefined") {
    Alphabet sigma({"a", "b"});
    PartialFA fa(sigma, {"q0", "qf"}, "q0", {"qf"}, {{"q0", sym("a"), "qf"}});
    FaRunResult r = run_fa(fa, {"a", "b"});
    CHECK(r.halt_state == "qf");
    CHECK(r.consumed == 1);
    CHECK(r.accepted);
}

TEST_CASE("run: lambda chain steps without consuming") {
    Alphabet sigma({"a"});
    PartialFA fa(sigma, {"q0", "q1", "qf"}, "q0", {"qf"},
                 {{"q0", Label::lambda(), "q1"}, {"q1", sym("a"), "qf"}});
    FaRunResult r = run_fa(fa, {"a"});
    CHECK(r.accepted);
    CHECK(r.consumed == 1);

    // A lambda move out of a final state prevents halting there.
    PartialFA blocked(sigma, {"q0", "q1"}, "q0", {"q0"},
                      {{"q0", Label::lambda(), "q1"}});
    FaRunResult b = run_fa(blocked, {});
    CHECK(b.halt_state == "q1");
    CHECK(!b.accepted);
}

TEST_CASE("run: lambda cycles are reported, not looped") {
    Alphabet sigma({"a"});
    PartialFA fa(sigma, {"q0", "q1"}, "q0", {"q0", "q1"},
                 {{"q0", Label::lambda(), "q1"}, {"q1", Label::lambda(), "q0"}});
    FaRunResult r = run_fa(fa, {"a"});
    CHECK(r.reason == FaHaltReason::lambda_divergence);
    CHECK(!r.accepted);
}

TEST_CASE("run: rejects nondeterministic machines and unknown symbols") {
    Alphabet sigma({"a"});
    PartialFA bad(sigma, {"q0", "q1"}, "q0", {},
                  {{"q0", sym("a"), "q1"}, {"q0", Label::lambda(), "q1"}});
    CHECK_THROWS_AS(run_fa(bad, {"a"}), NonDeterministicError);

    PartialFA fa = ends_with_a_dfa();
    CHECK_THROWS_AS(run_fa(fa, {"z"}), InputSymbolUnknownError);
}

TEST_CASE("run: deterministic and bounded on random machines") {
    std::mt19937 rng(987654);
    for (int trial = 0; trial < 200; ++trial) {
        PartialFA fa = random_machine(rng);
        if (!fa.deterministic()) continue;
        for (const Word& w : words_up_to(fa.alphabet(), 4)) {
            FaRunResult r1 = run_fa(fa, w);
            FaRunResult r2 = run_fa(fa, w);
            CHECK(r1.halt_state == r2.halt_state);
            CHECK(r1.consumed == r2.consumed);
            CHECK(r1.accepted == r2.accepted);
            CHECK(r1.consumed <= w.size());
            if (r1.accepted) CHECK(fa.is_final(r1.halt_state));
        }
    }
}

TEST_CASE("reversible machines have injective per-label maps") {
    std::mt19937 rng(5150);
    int reversible_seen = 0;
    for (int trial = 0; trial < 400; ++trial) {
        PartialFA fa = random_machine(rng);
        if (!check(fa).reversible) continue;
        ++reversible_seen;
        std::map<std::pair<Label, std::string>, std::size_t> targets;
        for (const FaTransition& t : fa.transitions()) {
            CHECK(++targets[{t.label, t.to}] == 1);
        }
    }
    CHECK(reversible_seen > 0);
}
