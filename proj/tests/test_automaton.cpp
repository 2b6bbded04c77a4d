#include <doctest.h>

#include "test_support.hpp"
#include "ufa/generators.hpp"
#include "ufa/parser.hpp"

using namespace ufa;
using namespace ufa::test;

TEST_CASE("text parser reproduces the fixture automata") {
    Automaton aut = parse_automaton(kEx44Text);
    CHECK(aut == gen_ex44());
    CHECK(aut.is_total_dfa());

    Automaton fig2 = parse_automaton(kFig2Text);
    CHECK(fig2 == gen_fig2());
    CHECK(!fig2.is_total_dfa());
    // Column 3 of M(a) has ones exactly in rows 1 and 2.
    StateSet expect(4);
    expect.set(0);
    expect.set(1);
    CHECK(fig2.matrix(0).column(2) == expect);
}

TEST_CASE("single state, identity letter") {
    Automaton aut = parse_automaton("states 1\nalphabet a\ntrans a 1 1\n");
    CHECK(aut.states() == 1);
    CHECK(aut.matrix(0) == BoolMatrix::identity(1));
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_automaton("states 4\nalphabet a\ntrans a 1 5\n"), ParseError);
    try {
        parse_automaton("states 4\nalphabet a\ntrans a 1 5\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
    }
    CHECK_THROWS_AS(parse_automaton("states 0\nalphabet a\n"), ParseError);
    CHECK_THROWS_AS(parse_automaton("states 2\nalphabet a\ntrans b 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_automaton("states 2\nalphabet a\nfrobnicate\n"), ParseError);
    CHECK_THROWS_AS(parse_automaton("alphabet a\n"), ParseError);
    CHECK_THROWS_AS(parse_automaton(""), ParseError);
    CHECK_THROWS_AS(parse_automaton("states 2\nalphabet a a\n"), ParseError);
}

TEST_CASE("duplicate transitions and comments are harmless") {
    std::string text = std::string("# header comment\n") + kEx44Text +
                       "trans a 1 1  # duplicate with trailing comment\ntrans a 1 1\n\n";
    CHECK(parse_automaton(text) == gen_ex44());
}

TEST_CASE("json and text round-trips") {
    for (const Automaton& aut :
         {gen_ex44(), gen_ex46(), gen_fig2(), gen_fig4(), gen_flower(), gen_cerny(5)}) {
        CHECK(parse_automaton(serialize_text(aut)) == aut);
        CHECK(parse_automaton(serialize_json(aut)) == aut);
    }
    CHECK_THROWS_AS(parse_automaton("{\"states\": 2}"), ParseError);
    CHECK_THROWS_AS(parse_automaton("{not json"), ParseError);
}

TEST_CASE("word matrices on the 4-state fixture") {
    Automaton aut = gen_ex44();
    BoolMatrix ab = word_matrix(aut, {0, 1});
    BoolMatrix expect(4);
    expect.set(0, 1);
    expect.set(1, 3);
    expect.set(2, 3);
    expect.set(3, 1);
    CHECK(ab == expect);
    CHECK(word_matrix(aut, {}) == BoolMatrix::identity(4));
    CHECK(word_matrix(aut, {0}) == aut.matrix(0));
}

TEST_CASE("word matrix detects ambiguity violations") {
    Automaton bad = parse_automaton(kAmbiguousText);
    // Two runs from 1 to 1 labelled ab: the integer product has a 2.
    auto im = int_word_matrix(bad, {0, 1});
    CHECK(im[0][0] == 2);
    CHECK_THROWS_AS(word_matrix(bad, {0, 1}), AmbiguityError);
}

TEST_CASE("shortest path words") {
    Automaton aut = gen_ex44();
    Word w = shortest_path_word(aut, 0, 2);
    REQUIRE(w.size() == 2);
    CHECK(word_matrix(aut, w).get(0, 2));
    // Independent check: no shorter word reaches 3 from 1, and among the
    // length-2 words that do, the returned one is lexicographically least.
    Word best;
    bool found_shorter = false;
    for (const Word& cand : all_words(2, 2)) {
        if (!word_matrix(aut, cand).get(0, 2)) continue;
        if (cand.size() < 2) found_shorter = true;
        if (cand.size() == 2 && (best.empty() || cand < best)) best = cand;
    }
    CHECK(!found_shorter);
    CHECK(w == best);
    CHECK(word_str(aut, w) == "ba");

    CHECK(shortest_path_word(aut, 1, 1).empty());

    Automaton disconnected = parse_automaton("states 2\nalphabet a\ntrans a 1 1\ntrans a 2 2\n");
    CHECK_THROWS_AS(shortest_path_word(disconnected, 0, 1), UnreachableError);
}

TEST_CASE("shortest path word length is below the state count") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        Automaton aut = random_total_dfa(3 + int(rng() % 8), 2, rng());
        for (int p = 0; p < aut.states(); ++p)
            for (int q = 0; q < aut.states(); ++q) {
                Word w = shortest_path_word(aut, p, q);
                CHECK(int(w.size()) <= aut.states() - 1);
                CHECK(word_matrix(aut, w).get(p, q));
            }
    }
}

TEST_CASE("products of short words stay zero-one on the fixtures") {
    for (const Automaton& aut : {gen_ex44(), gen_fig2(), gen_fig4(), gen_flower()}) {
        for (const Word& w : all_words(aut.letters(), 8)) {
            auto im = int_word_matrix(aut, w);
            for (const auto& row : im)
                for (long x : row) CHECK(x <= 1);
        }
    }
    // Three letters blow up the word count; length 6 keeps it comfortable.
    for (const Word& w : all_words(3, 6)) {
        auto im = int_word_matrix(gen_ex46(), w);
        for (const auto& row : im)
            for (long x : row) CHECK(x <= 1);
    }
}

TEST_CASE("reversal transposes the matrices") {
    Automaton aut = gen_fig2();
    Automaton rev = aut.reversed();
    for (int a = 0; a < aut.letters(); ++a) CHECK(rev.matrix(a) == aut.matrix(a).transposed());
    CHECK(rev.reversed() == aut);
}
