#include <doctest.h>

#include "test_support.hpp"
#include "ufa/generators.hpp"
#include "ufa/oracle.hpp"
#include "ufa/parser.hpp"
#include "ufa/witness.hpp"

using namespace ufa;
using namespace ufa::test;

namespace {

/// The set-SLP with rules w1 -> u1, w3 -> u3 u2, w5 -> u2 and
/// u1 -> aab, u2 -> aab, u3 -> aaba over {a,b}.
SlpProgram example_set_slp(int& w1, int& w3, int& w5) {
    SlpProgram prog;
    prog.terminals = {"a", "b"};
    int u1 = prog.add_rule("u1", {SlpItem::term(0), SlpItem::term(0), SlpItem::term(1)});
    int u2 = prog.add_rule("u2", {SlpItem::term(0), SlpItem::term(0), SlpItem::term(1)});
    int u3 = prog.add_rule("u3",
                           {SlpItem::term(0), SlpItem::term(0), SlpItem::term(1), SlpItem::term(0)});
    w1 = prog.add_rule("w1", {SlpItem::rule(u1)});
    w3 = prog.add_rule("w3", {SlpItem::rule(u3), SlpItem::rule(u2)});
    w5 = prog.add_rule("w5", {SlpItem::rule(u2)});
    return prog;
}

std::string expand_str(const Automaton& aut, const SlpProgram& prog, int rule) {
    return word_str(aut, eval_slp_word(prog, rule));
}

}  // namespace

TEST_CASE("set-slp expansion") {
    int w1, w3, w5;
    SlpProgram prog = example_set_slp(w1, w3, w5);
    Automaton fig4 = gen_fig4();
    CHECK(expand_str(fig4, prog, w3) == "aabaaab");
    CHECK(expand_str(fig4, prog, w1) == "aab");
    CHECK(expand_str(fig4, prog, w5) == "aab");
    CHECK(slp_word_length(prog, w3) == 7);

    SlpProgram tiny;
    tiny.terminals = {"a"};
    int s = tiny.add_rule("s", {SlpItem::term(0)});
    CHECK(eval_slp_word(tiny, s) == Word{0});
}

TEST_CASE("cyclic programs are rejected") {
    SlpProgram bad;
    bad.terminals = {"a"};
    bad.add_rule("s", {SlpItem::rule(0)});  // self-reference
    CHECK_THROWS_AS(eval_slp_word(bad, 0), InternalError);
    CHECK_THROWS_AS(eval_slp_matrix(gen_cerny(2), bad, 0), InternalError);
}

TEST_CASE("slp matrix evaluation equals expand-and-multiply") {
    Automaton fig4 = gen_fig4();
    int w1, w3, w5;
    SlpProgram prog = example_set_slp(w1, w3, w5);
    for (int rule : {w1, w3, w5})
        CHECK(eval_slp_matrix(fig4, prog, rule) == word_matrix(fig4, eval_slp_word(prog, rule)));

    SlpProgram eps;
    eps.terminals = fig4.alphabet();
    int e = eps.add_rule("e", {});
    CHECK(eval_slp_matrix(fig4, eps, e) == BoolMatrix::identity(8));

    SlpProgram nested;
    nested.terminals = fig4.alphabet();
    int t = nested.add_rule("t", {SlpItem::term(0)});
    int s = nested.add_rule("s", {SlpItem::rule(t), SlpItem::rule(t)});
    CHECK(eval_slp_matrix(fig4, nested, s) == fig4.matrix(0).multiply_checked(fig4.matrix(0)));
}

TEST_CASE("merge words satisfy their contract on fig4 at state 7") {
    Automaton fig4 = gen_fig4();
    int p = 6;  // state 7
    SetSlp ss = merge_words(fig4, p);
    // 1, 3 and 5 are mergeable with 7.
    for (int q : {0, 2, 4}) {
        CHECK(ss.rule_for(q) >= 0);
    }
    for (size_t i = 0; i < ss.initial_states.size(); ++i) {
        int q = ss.initial_states[i];
        BoolMatrix m = word_matrix(fig4, eval_slp_word(ss.prog, ss.initial_rules[i]));
        CHECK(m.get(p, p));
        CHECK(m.get(q, p));
    }
    CHECK(ss.prog.total_length() <= 8 * 8 * 8);
}

TEST_CASE("merge words on the 4-state fixture at state 2") {
    Automaton ex44 = gen_ex44();
    int p = 1;
    SetSlp ss = merge_words(ex44, p);
    std::vector<int> states = ss.initial_states;
    std::sort(states.begin(), states.end());
    CHECK(states == std::vector<int>{0, 1, 2});  // Mer(2) = {1,2,3}
    for (size_t i = 0; i < ss.initial_states.size(); ++i) {
        int q = ss.initial_states[i];
        BoolMatrix m = word_matrix(ex44, eval_slp_word(ss.prog, ss.initial_rules[i]));
        CHECK(m.get(p, p));
        CHECK(m.get(q, p));
    }
}

TEST_CASE("merge words contract on larger instances via matrix evaluation") {
    for (const Automaton& aut : {gen_cerny(12), random_total_dfa(14, 2, 4242).reversed()}) {
        for (int p : {0, aut.states() / 2}) {
            SetSlp ss = merge_words(aut, p);
            SlpMatrixCache cache;
            for (size_t i = 0; i < ss.initial_states.size(); ++i) {
                int q = ss.initial_states[i];
                BoolMatrix m = eval_slp_matrix(aut, ss.prog, ss.initial_rules[i], cache);
                CHECK(m.get(p, p));
                CHECK(m.get(q, p));
            }
        }
    }
}

TEST_CASE("merge words on a single complete state") {
    Automaton one = parse_automaton("states 1\nalphabet a\ntrans a 1 1\n");
    SetSlp ss = merge_words(one, 0);
    REQUIRE(ss.initial_states == std::vector<int>{0});
    CHECK(eval_slp_word(ss.prog, ss.initial_rules[0]).empty());
}

TEST_CASE("maximal column words") {
    Automaton ex44 = gen_ex44();
    auto [alpha, beta] = perron_vectors(ex44);
    Slp w = maximal_column_word(ex44, alpha, rat(1, 2), 0);
    BoolMatrix m = eval_slp_matrix(ex44, w.prog, w.initial);
    CHECK(dot(alpha, m.column(0)) == rat(1, 2));
    // Stability: prepending any letter keeps the column maximal.
    for (int a = 0; a < 2; ++a)
        CHECK(dot(alpha, ex44.matrix(a).multiply_checked(m).column(0)) == rat(1, 2));

    Automaton one = parse_automaton("states 1\nalphabet a\ntrans a 1 1\n");
    auto [a1, b1] = perron_vectors(one);
    Slp w1 = maximal_column_word(one, a1, rat(1), 0);
    CHECK(eval_slp_word(w1.prog, w1.initial).empty());

    Automaton ex46 = gen_ex46();
    auto [alpha46, beta46] = perron_vectors(ex46);
    Slp w46 = maximal_column_word(ex46, alpha46, rat(1, 2), 0);
    StateSet col = eval_slp_matrix(ex46, w46.prog, w46.initial).column(0);
    CHECK(col.elements() == std::vector<int>{0, 1});  // the only maximal column containing 1
}

TEST_CASE("minimum rank witnesses on the fixtures") {
    MinRankWitness w44 = min_rank_word(gen_ex44());
    CHECK(w44.rank == 2);
    CHECK(rat_rank(w44.matrix) == 2);
    CHECK(w44.cesari.rank() == 2);

    MinRankWitness wc = min_rank_word(gen_cerny(3));
    CHECK(wc.rank == 1);
    CHECK(distinct_nonzero_columns(wc.matrix) == 1);
    MonoidTable table = enumerate_monoid(gen_cerny(3));
    REQUIRE(!table.capped);
    CHECK(min_rank_brute(table).min_distinct_columns == 1);

    Automaton one = parse_automaton("states 1\nalphabet a\ntrans a 1 1\n");
    MinRankWitness w1 = min_rank_word(one);
    CHECK(w1.rank == 1);
    CHECK(w1.matrix == BoolMatrix::identity(1));
}

TEST_CASE("witness columns and rows carry the extremal weights") {
    for (const Automaton& aut : {gen_ex44(), gen_ex46(), gen_fig2(), gen_fig4()}) {
        ComponentReport rep = analyze_component(aut);
        MinRankWitness w = min_rank_word(aut);
        CHECK(w.rank == rep.rank);
        for (int q = 0; q < aut.states(); ++q) {
            StateSet col = w.matrix.column(q);
            if (!col.none()) CHECK(dot(rep.weights->alpha, col) == rep.weights->mcw);
            StateSet row = w.matrix.row(q);
            if (!row.none()) CHECK(dot(rep.weights->beta, row) == rep.weights->mrw);
        }
    }
}

TEST_CASE("witness preconditions are reported") {
    CHECK_THROWS_AS(min_rank_word(gen_flower()), InputError);  // incomplete
    Automaton torn = parse_automaton("states 2\nalphabet a\ntrans a 1 1\ntrans a 2 2\n");
    CHECK_THROWS_AS(min_rank_word(torn), InputError);  // not strongly connected
    CHECK_THROWS_AS(min_rank_word(parse_automaton(kAmbiguousText)), AmbiguityError);
}

TEST_CASE("slp budgets on the fixtures") {
    for (const Automaton& aut : {gen_ex44(), gen_ex46(), gen_fig2(), gen_fig4(), gen_cerny(8)}) {
        uint64_t n = uint64_t(aut.states());
        MinRankWitness w = min_rank_word(aut);
        CHECK(uint64_t(w.slp.prog.total_length()) <= 8 * n * n);
        CHECK(slp_word_length(w.slp.prog, w.slp.initial) <= 16 * n * n * n * n);
        for (int p = 0; p < aut.states(); ++p)
            CHECK(uint64_t(merge_words(aut, p).prog.total_length()) <= 8 * n * n);
    }
}

TEST_CASE("witness slp expansion matches its matrix") {
    for (const Automaton& aut : {gen_ex44(), gen_ex46(), gen_fig2(), gen_fig4()}) {
        MinRankWitness w = min_rank_word(aut);
        if (slp_word_length(w.slp.prog, w.slp.initial) > 10000) continue;
        Word expanded = eval_slp_word(w.slp.prog, w.slp.initial);
        CHECK(word_matrix(aut, expanded) == w.matrix);
    }
}

TEST_CASE("squaring an all-maximal word has minimum rank") {
    // Every nonzero column and row of M(v) maximal implies vv has rank r.
    for (const Automaton& aut : {gen_ex44(), gen_fig2()}) {
        ComponentReport rep = analyze_component(aut);
        MonoidTable table = enumerate_monoid(aut);
        REQUIRE(!table.capped);
        for (size_t i = 0; i < table.elements.size(); ++i) {
            const BoolMatrix& m = table.elements[i];
            bool all_max = true;
            for (int q = 0; q < aut.states() && all_max; ++q) {
                StateSet col = m.column(q), row = m.row(q);
                if (!col.none() && dot(rep.weights->alpha, col) != rep.weights->mcw) all_max = false;
                if (!row.none() && dot(rep.weights->beta, row) != rep.weights->mrw) all_max = false;
            }
            if (!all_max) continue;
            CHECK(rat_rank(m.multiply_checked(m)) == rep.rank);
        }
    }
}

TEST_CASE("witness pipeline holds up on mid-sized random instances") {
    for (uint64_t seed = 1; seed <= 12; ++seed) {
        int n = 7 + int(seed % 4);
        Automaton aut = seed % 2 ? random_codeterministic_ufa(n, 2, seed)
                                 : random_balanced_ufa(n, 2, seed);
        if (scc_decompose(aut).count() != 1) continue;
        ComponentReport rep = analyze_component(aut);
        MinRankWitness w = min_rank_word(aut);
        CHECK(w.rank == rep.rank);
        CHECK(int_rank(w.matrix) == rep.rank);
        uint64_t nn = uint64_t(n);
        CHECK(uint64_t(w.slp.prog.total_length()) <= 8 * nn * nn);
        CHECK(slp_word_length(w.slp.prog, w.slp.initial) <= 16 * nn * nn * nn * nn);
    }
}

TEST_CASE("cesari decomposition") {
    BoolMatrix ma = gen_ex44().matrix(0);
    CesariDecomposition d = cesari_decompose(ma);
    REQUIRE(d.rank() == 2);
    CHECK(d.rectangles[0].first.elements() == std::vector<int>{0, 3});   // C1 = {1,4}
    CHECK(d.rectangles[0].second.elements() == std::vector<int>{0});     // R1 = {1}
    CHECK(d.rectangles[1].first.elements() == std::vector<int>{1, 2});   // C2 = {2,3}
    CHECK(d.rectangles[1].second.elements() == std::vector<int>{2});     // R2 = {3}

    CHECK(cesari_decompose(BoolMatrix::identity(5)).rank() == 5);

    BoolMatrix ones(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ones.set(i, j);
    CesariDecomposition d1 = cesari_decompose(ones);
    REQUIRE(d1.rank() == 1);
    CHECK(d1.rectangles[0].first.count() == 2);
    CHECK(d1.rectangles[0].second.count() == 2);

    BoolMatrix bad(2);
    bad.set(0, 0);
    bad.set(0, 1);
    bad.set(1, 1);
    CHECK_THROWS_AS(cesari_decompose(bad), NotRectangleSumError);
}

TEST_CASE("dfa fast path") {
    DfaMinRankWitness w44 = dfa_min_rank_word(gen_ex44());
    std::vector<char> image(4, 0);
    for (int s : w44.transform) image[s] = 1;
    CHECK(std::count(image.begin(), image.end(), char(1)) == 2);

    DfaMinRankWitness wc = dfa_min_rank_word(gen_cerny(3));
    CHECK(wc.rank == 1);
    for (int s : wc.transform) CHECK(s == wc.transform[0]);

    // Permutation letters only: nothing ever merges.
    Automaton perm = parse_automaton(
        "states 4\nalphabet a\ntrans a 1 2\ntrans a 2 3\ntrans a 3 4\ntrans a 4 1\n");
    DfaMinRankWitness wp = dfa_min_rank_word(perm);
    CHECK(wp.rank == 4);

    CHECK_THROWS_AS(dfa_min_rank_word(gen_fig2()), InputError);  // not a DFA
}

TEST_CASE("dfa fast path agrees with the general path and its own slp") {
    for (const Automaton& aut : {gen_ex44(), gen_ex46(), gen_fig4(), gen_cerny(6)}) {
        MinRankWitness general = min_rank_word(aut);
        DfaMinRankWitness fast = dfa_min_rank_word(aut);
        CHECK(fast.rank == general.rank);
        Word expanded = eval_slp_word(fast.slp.prog, fast.slp.initial);
        std::vector<int> f(aut.states());
        for (int q = 0; q < aut.states(); ++q) f[q] = q;
        for (int a : expanded)
            for (int& s : f) s = aut.step(a, s);
        CHECK(f == fast.transform);
        CHECK(uint64_t(fast.slp.prog.total_length()) <=
              8 * uint64_t(aut.states()) * uint64_t(aut.states()));
    }
}
