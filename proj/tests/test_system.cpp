#include "pcrfa/system.hpp"

#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "pcrfa/errors.hpp"

using namespace pcrfa;
using pcrfa::testing::ends_with_a_dfa;

namespace {

Label sym(const char* s) { return Label::symbol(s); }

// The ends-with-a system built by hand: master routes every move through a
// query to one of four single-state satellites.
PcrfaSystem ends_with_a_system() {
    Alphabet sigma({"a", "b"});
    PartialFA master(sigma, {"q0", "q1", "K2", "K3", "K4", "K5"}, "q0", {"q1"},
                     {{"q0", sym("b"), "K2"},
                      {"q1", sym("b"), "K3"},
                      {"q0", sym("a"), "K4"},
                      {"q1", sym("a"), "K5"}});
    auto satellite = [&sigma](const char* state) {
        return PartialFA(sigma, {state}, state, {state},
                         {{state, sym("a"), state}, {state, sym("b"), state}});
    };
    return PcrfaSystem(sigma,
                       {master, satellite("q0"), satellite("q0"), satellite("q1"),
                        satellite("q1")},
                       {{"K2", 2}, {"K3", 3}, {"K4", 4}, {"K5", 5}});
}

SystemConfiguration config_of(const PcrfaSystem& sys, const std::vector<std::string>& states,
                              const std::vector<std::size_t>& consumed) {
    SystemConfiguration c;
    for (std::size_t i = 0; i < states.size(); ++i) {
        c.states.push_back(*sys.components()[i].state_id(states[i]));
    }
    c.consumed = consumed;
    return c;
}

}  // namespace

TEST_CASE("system construction validates query states") {
    Alphabet sigma({"a"});
    PartialFA plain(sigma, {"x", "K2"}, "x", {}, {{"x", sym("a"), "K2"}});
    PartialFA other(sigma, {"y"}, "y", {"y"}, {{"y", sym("a"), "y"}});

    CHECK_NOTHROW(PcrfaSystem(sigma, {plain, other}, {{"K2", 2}}));
    // out-of-range target
    CHECK_THROWS_AS(PcrfaSystem(sigma, {plain, other}, {{"K2", 3}}), std::invalid_argument);
    // name appears nowhere
    CHECK_THROWS_AS(PcrfaSystem(sigma, {plain, other}, {{"K9", 1}}), std::invalid_argument);
    // query state must not be final
    PartialFA bad_final(sigma, {"x", "K2"}, "x", {"K2"}, {{"x", sym("a"), "K2"}});
    CHECK_THROWS_AS(PcrfaSystem(sigma, {bad_final, other}, {{"K2", 2}}),
                    std::invalid_argument);
    // query state must have no outgoing transitions
    PartialFA bad_out(sigma, {"x", "K2"}, "x", {}, {{"x", sym("a"), "K2"}, {"K2", sym("a"), "x"}});
    CHECK_THROWS_AS(PcrfaSystem(sigma, {bad_out, other}, {{"K2", 2}}), std::invalid_argument);
    // mismatched component alphabet
    PartialFA off(Alphabet({"z"}), {"y"}, "y", {}, {});
    CHECK_THROWS_AS(PcrfaSystem(sigma, {plain, off}, {{"K2", 2}}), std::invalid_argument);
}

TEST_CASE("read step consumes one symbol everywhere, lock-step") {
    PcrfaSystem sys = ends_with_a_system();
    auto w = intern_word(sys.alphabet(), {"b", "a"});
    SystemConfiguration c = initial_configuration(sys);

    auto step = read_step(sys, c, w);
    REQUIRE(step.has_value());
    CHECK(state_tuple(sys, step->config) ==
          StateTuple{"K2", "q0", "q0", "q1", "q1"});
    CHECK(step->config.consumed == std::vector<std::size_t>{1, 1, 1, 1, 1});
    CHECK(step->labels == std::vector<Label>(5, sym("b")));
}

TEST_CASE("read step stalls when a component is in a query state") {
    PcrfaSystem sys = ends_with_a_system();
    auto w = intern_word(sys.alphabet(), {"b"});
    SystemConfiguration c = config_of(sys, {"K2", "q0", "q0", "q1", "q1"}, {0, 0, 0, 0, 0});
    CHECK(!read_step(sys, c, w).has_value());
}

TEST_CASE("read step stalls when any component has no applicable move") {
    PcrfaSystem sys = ends_with_a_system();
    auto w = intern_word(sys.alphabet(), {});
    CHECK(!read_step(sys, initial_configuration(sys), w).has_value());
}

TEST_CASE("communication round: master receives the satellite state") {
    PcrfaSystem sys = ends_with_a_system();
    SystemConfiguration c = config_of(sys, {"K4", "q0", "q0", "q1", "q1"}, {1, 1, 1, 1, 1});
    auto round = comm_round(sys, c);
    REQUIRE(round.has_value());
    CHECK(state_tuple(sys, round->config) == StateTuple{"q1", "q0", "q0", "q1", "q1"});
    CHECK(round->config.consumed == c.consumed);  // suffixes never change
    REQUIRE(round->resolutions.size() == 1);
    CHECK(round->resolutions[0].querier == 1);
    CHECK(round->resolutions[0].queried == 4);
    CHECK(round->resolutions[0].delivered == "q1");
}

TEST_CASE("communication round stalls with no queries present") {
    PcrfaSystem sys = ends_with_a_system();
    CHECK(!comm_round(sys, initial_configuration(sys)).has_value());
}

TEST_CASE("mutual queries deadlock") {
    Alphabet sigma({"a"});
    PartialFA c1(sigma, {"x", "K2"}, "x", {}, {{"x", sym("a"), "K2"}});
    PartialFA c2(sigma, {"y", "K1"}, "y", {}, {{"y", sym("a"), "K1"}});
    PcrfaSystem sys(sigma, {c1, c2}, {{"K1", 1}, {"K2", 2}});
    auto w = intern_word(sigma, {"a"});

    SystemConfiguration c = config_of(sys, {"K2", "K1"}, {1, 1});
    CHECK(!comm_round(sys, c).has_value());

    MacroStepResult m = macro_step(sys, initial_configuration(sys), w);
    CHECK(m.outcome == MacroOutcome::deadlocked);

    SystemRunResult r = run_system(sys, {"a"});
    CHECK(!r.accepted);
    CHECK(r.verdict == Verdict::deadlock);
}

TEST_CASE("delivered state foreign to the querier leaves the query pending") {
    Alphabet sigma({"a"});
    PartialFA c1(sigma, {"x", "K2"}, "x", {}, {{"x", sym("a"), "K2"}});
    PartialFA c2(sigma, {"y"}, "y", {"y"}, {{"y", sym("a"), "y"}});
    PcrfaSystem sys(sigma, {c1, c2}, {{"K2", 2}});
    SystemRunResult r = run_system(sys, {"a"});
    CHECK(!r.accepted);
    CHECK(r.verdict == Verdict::deadlock);
}

TEST_CASE("macro step is one read plus communication to fixpoint") {
    PcrfaSystem sys = ends_with_a_system();
    auto w = intern_word(sys.alphabet(), {"a"});
    MacroStepResult m = macro_step(sys, initial_configuration(sys), w);
    CHECK(m.outcome == MacroOutcome::stepped);
    CHECK(state_tuple(sys, m.config) == StateTuple{"q1", "q0", "q0", "q1", "q1"});
    REQUIRE(m.events.size() == 2);
    CHECK(std::holds_alternative<ReadStepEvent>(m.events[0]));
    CHECK(std::holds_alternative<CommRoundEvent>(m.events[1]));
    CHECK(m.consumed_any);

    // Determinism: the same configuration always steps the same way.
    MacroStepResult again = macro_step(sys, initial_configuration(sys), w);
    CHECK(again.config == m.config);
}

TEST_CASE("macro step without queries is a bare read step") {
    PartialFA fa = ends_with_a_dfa();
    PcrfaSystem sys = PcrfaSystem::degree_one(fa);
    auto w = intern_word(sys.alphabet(), {"a"});
    MacroStepResult m = macro_step(sys, initial_configuration(sys), w);
    CHECK(m.outcome == MacroOutcome::stepped);
    CHECK(m.events.size() == 1);
    CHECK(state_tuple(sys, m.config) == StateTuple{"q1"});
}

TEST_CASE("chained queries resolve over successive rounds") {
    Alphabet sigma({"a"});
    // 1 queries 2, 2 queries 3; component 3 holds a plain state.
    PartialFA c1(sigma, {"x", "t", "K2"}, "x", {}, {{"x", sym("a"), "K2"}});
    PartialFA c2(sigma, {"y", "t", "K3"}, "y", {}, {{"y", sym("a"), "K3"}});
    PartialFA c3(sigma, {"t"}, "t", {"t"}, {{"t", sym("a"), "t"}});
    PcrfaSystem sys(sigma, {c1, c2, c3}, {{"K2", 2}, {"K3", 3}});
    auto w = intern_word(sigma, {"a"});

    MacroStepResult m = macro_step(sys, initial_configuration(sys), w);
    CHECK(m.outcome == MacroOutcome::stepped);
    CHECK(state_tuple(sys, m.config) == StateTuple{"t", "t", "t"});
    // read + two communication rounds (fixpoint bound is the degree)
    CHECK(m.events.size() == 3);
}

TEST_CASE("system accepts the empty input when all starts are final") {
    Alphabet sigma({"a"});
    PartialFA c(sigma, {"q"}, "q", {"q"}, {});
    PcrfaSystem sys(sigma, {c, c}, {});
    SystemRunResult r = run_system(sys, {});
    CHECK(r.accepted);
}

TEST_CASE("degree-1 system agrees with the plain runner everywhere") {
    std::vector<PartialFA> machines;
    machines.push_back(ends_with_a_dfa());
    {
        Alphabet sigma({"a", "b"});
        machines.push_back(PartialFA(sigma, {"q0", "qf"}, "q0", {"qf"},
                                     {{"q0", sym("a"), "qf"}}));
        machines.push_back(PartialFA(sigma, {"q0", "q1", "qf"}, "q0", {"qf"},
                                     {{"q0", Label::lambda(), "q1"}, {"q1", sym("a"), "qf"}}));
        machines.push_back(PartialFA(sigma, {"q0", "q1"}, "q0", {"q0", "q1"},
                                     {{"q0", Label::lambda(), "q1"},
                                      {"q1", Label::lambda(), "q0"}}));
    }
    for (const PartialFA& fa : machines) {
        PcrfaSystem sys = PcrfaSystem::degree_one(fa);
        for (const Word& w : words_up_to(fa.alphabet(), 8)) {
            FaRunResult direct = run_fa(fa, w);
            SystemRunResult wrapped = run_system(sys, w);
            CHECK(direct.accepted == wrapped.accepted);
            CHECK(wrapped.final_config.consumed[0] == direct.consumed);
        }
    }
}

TEST_CASE("suffix monotonicity along a traced run") {
    PcrfaSystem sys = ends_with_a_system();
    auto w = intern_word(sys.alphabet(), {"a", "b", "a", "a"});
    SystemConfiguration c = initial_configuration(sys);
    for (;;) {
        MacroStepResult m = macro_step(sys, c, w);
        if (m.outcome != MacroOutcome::stepped) break;
        for (std::size_t i = 0; i < sys.degree(); ++i) {
            CHECK(m.config.consumed[i] >= c.consumed[i]);
            CHECK(m.config.consumed[i] <= c.consumed[i] + 1);
        }
        c = m.config;
    }
}

TEST_CASE("run_system rejects nondeterministic components and foreign symbols") {
    Alphabet sigma({"a"});
    PartialFA bad(sigma, {"q0", "q1"}, "q0", {},
                  {{"q0", sym("a"), "q1"}, {"q0", Label::lambda(), "q1"}});
    PcrfaSystem sys = PcrfaSystem::degree_one(bad);
    CHECK_THROWS_AS(run_system(sys, {"a"}), NonDeterministicError);
    CHECK_THROWS_AS(run_system(PcrfaSystem::degree_one(ends_with_a_dfa()), {"z"}),
                    InputSymbolUnknownError);
}

TEST_CASE("verdict trace ends with a halt event") {
    PcrfaSystem sys = ends_with_a_system();
    SystemRunResult r = run_system(sys, {"b", "a"}, {.trace = true});
    CHECK(r.accepted);
    REQUIRE(!r.trace.empty());
    auto* halt = std::get_if<HaltEvent>(&r.trace.back());
    REQUIRE(halt != nullptr);
    CHECK(halt->verdict == Verdict::accept);
}
