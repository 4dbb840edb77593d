#include "pcrfa/alphabet.hpp"

#include <stdexcept>

#include "doctest.h"

using namespace pcrfa;

TEST_CASE("alphabet rejects reserved and duplicate tokens") {
    CHECK_THROWS_AS(Alphabet({"a", "a"}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({"-"}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({"$"}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({""}), std::invalid_argument);
    CHECK_THROWS_AS(Alphabet({"a b"}), std::invalid_argument);

    Alphabet sigma({"b", "a"});
    CHECK(sigma.size() == 2);
    CHECK(sigma.index_of("b") == 0);
    CHECK(sigma.index_of("a") == 1);
    CHECK(!sigma.contains("c"));
    CHECK(sigma.sorted_symbols() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("prefix comparability of labels") {
    Label a = Label::symbol("a");
    Label b = Label::symbol("b");
    Label none = Label::lambda();

    CHECK(prefix_comparable(a, a));
    CHECK(prefix_comparable(none, b));
    CHECK(!prefix_comparable(a, b));

    // Reflexive and symmetric over a small label universe.
    std::vector<Label> universe{none, a, b, Label::symbol("c"), Label::end_marker()};
    for (const Label& x : universe) {
        CHECK(prefix_comparable(x, x));
        for (const Label& y : universe) {
            CHECK(prefix_comparable(x, y) == prefix_comparable(y, x));
        }
    }
}

TEST_CASE("word enumeration is length-then-lexicographic and prefix-stable") {
    Alphabet sigma({"b", "a"});  // declaration order must not matter
    auto words = words_up_to(sigma, 2);
    std::vector<Word> expected{{}, {"a"}, {"b"}, {"a", "a"}, {"a", "b"}, {"b", "a"}, {"b", "b"}};
    CHECK(words == expected);

    auto longer = words_up_to(sigma, 3);
    longer.resize(words.size());
    CHECK(longer == words);

    CHECK(words_up_to(sigma, 0) == std::vector<Word>{{}});
}
