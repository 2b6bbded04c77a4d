#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "ufa/linalg.hpp"
#include "ufa/rank_engine.hpp"

using namespace ufa;

TEST_CASE("rationals are canonical") {
    CHECK(rat(2, 4) == rat(1, 2));
    CHECK(rat_str(rat(1, 2)) == "1/2");
    CHECK(rat_str(rat(3)) == "3");
    CHECK(rat_str(rat(-1, 2)) == "-1/2");
    CHECK(rat_str(rat(2, -4)) == "-1/2");
    CHECK(is_integer(rat(4, 2)));
    CHECK(!is_integer(rat(1, 3)));
}

TEST_CASE("rref ranks") {
    RatMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
    CHECK(rref(id).rank == 3);

    RatMatrix zero(3, 4);
    CHECK(rref(zero).rank == 0);

    // Rows are the four maximal columns of the 4-state two-letter fixture.
    std::vector<RatVector> rows = {
        {1, 0, 0, 1}, {0, 1, 1, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}};
    for (auto& r : rows)
        for (auto& x : r) x.canonicalize();
    CHECK(rref(RatMatrix::from_rows(rows, 4)).rank == 3);
}

TEST_CASE("rref rank is invariant under row shuffles") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 2 + int(rng() % 5), cols = 2 + int(rng() % 5);
        std::vector<RatVector> data;
        for (int i = 0; i < rows; ++i) {
            RatVector v;
            for (int j = 0; j < cols; ++j) v.push_back(rat(long(rng() % 7) - 3, 1 + long(rng() % 3)));
            data.push_back(v);
        }
        int r1 = rref(RatMatrix::from_rows(data, cols)).rank;
        std::shuffle(data.begin(), data.end(), rng);
        int r2 = rref(RatMatrix::from_rows(data, cols)).rank;
        CHECK(r1 == r2);
    }
}

TEST_CASE("solve basics") {
    RatMatrix diag(3, 3);
    diag.at(0, 0) = rat(2);
    diag.at(1, 1) = rat(3);
    diag.at(2, 2) = rat(5);
    RatVector rhs{rat(1), rat(1), rat(1)};
    auto y = solve(diag, rhs);
    REQUIRE(y.has_value());
    CHECK((*y)[0] == rat(1, 2));
    CHECK((*y)[1] == rat(1, 3));
    CHECK((*y)[2] == rat(1, 5));

    RatMatrix bad(2, 1);
    bad.at(0, 0) = 1;
    bad.at(1, 0) = 1;
    CHECK(!solve(bad, RatVector{rat(0), rat(1)}).has_value());
}

TEST_CASE("solve returns an exact solution of the pseudo-column system") {
    // System for the 4-state fixture at state 2: orthogonal to (1,-1,1,-1),
    // anchored at state 2, zero outside Mer(2) = {1,2,3}.
    std::vector<RatVector> rows = {{1, -1, 1, -1}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    for (auto& r : rows)
        for (auto& x : r) x.canonicalize();
    RatVector rhs{rat(0), rat(1), rat(0)};
    RatMatrix mat = RatMatrix::from_rows(rows, 4);
    auto y = solve(mat, rhs);
    REQUIRE(y.has_value());
    for (int i = 0; i < 3; ++i) {
        Rational acc = 0;
        for (int j = 0; j < 4; ++j) acc += mat.at(i, j) * (*y)[j];
        CHECK(acc == rhs[i]);
    }
    RatVector alpha{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    CHECK(dot(alpha, *y) == rat(1, 2));
}

TEST_CASE("solve satisfies mat*y = rhs exactly on random consistent systems") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        int rows = 1 + int(rng() % 5), cols = 1 + int(rng() % 5);
        RatMatrix mat(rows, cols);
        RatVector x0;
        for (int j = 0; j < cols; ++j) x0.push_back(rat(long(rng() % 9) - 4, 1 + long(rng() % 4)));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) mat.at(i, j) = rat(long(rng() % 7) - 3, 1 + long(rng() % 2));
        RatVector rhs(rows, Rational(0));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) rhs[i] += mat.at(i, j) * x0[j];
        auto y = solve(mat, rhs);
        REQUIRE(y.has_value());
        for (int i = 0; i < rows; ++i) {
            Rational acc = 0;
            for (int j = 0; j < cols; ++j) acc += mat.at(i, j) * (*y)[j];
            CHECK(acc == rhs[i]);
        }
    }
}

TEST_CASE("kernel bases") {
    Automaton ex44 = gen_ex44();
    RatMatrix am = average_matrix(ex44);
    for (int i = 0; i < 4; ++i) am.at(i, i) -= 1;
    auto kernel = kernel_basis(am);
    REQUIRE(kernel.size() == 1);
    Rational lead = kernel[0][0];
    CHECK(lead != 0);
    for (const Rational& x : kernel[0]) CHECK(x == lead);  // multiple of the all-ones vector

    RatMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.at(i, i) = 1;
    CHECK(kernel_basis(id).empty());

    CHECK(kernel_basis(RatMatrix(2, 2)).size() == 2);
}

TEST_CASE("kernel vectors are exact and independent") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 1 + int(rng() % 4), cols = 1 + int(rng() % 5);
        RatMatrix mat(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) mat.at(i, j) = rat(long(rng() % 5) - 2);
        auto kernel = kernel_basis(mat);
        EchelonBasis basis;
        for (const RatVector& v : kernel) {
            for (int i = 0; i < rows; ++i) {
                Rational acc = 0;
                for (int j = 0; j < cols; ++j) acc += mat.at(i, j) * v[j];
                CHECK(acc == 0);
            }
            CHECK(basis.insert(v));
        }
        CHECK(int(kernel.size()) == cols - rref(mat).rank);
    }
}

TEST_CASE("span closure on the fixture weight spaces") {
    Automaton ex44 = gen_ex44();
    RatVector alpha{rat(1, 4), rat(1, 4), rat(1, 4), rat(1, 4)};
    std::vector<RatVector> seeds;
    for (int a = 0; a < 2; ++a) {
        RatVector d = mul_row(alpha, ex44.matrix(a));
        for (int i = 0; i < 4; ++i) d[i] -= alpha[i];
        seeds.push_back(d);
    }
    auto basis = span_closure(seeds, ex44.matrices(), Side::Right);
    REQUIRE(basis.size() == 1);
    // The line through (1,-1,1,-1).
    Rational lead = basis[0][0];
    CHECK(lead != 0);
    CHECK(basis[0][1] == -lead);
    CHECK(basis[0][2] == lead);
    CHECK(basis[0][3] == -lead);

    RatVector beta{rat(1), rat(1), rat(1), rat(1)};
    auto v_basis = span_closure({beta}, ex44.matrices(), Side::Left);
    REQUIRE(v_basis.size() == 1);
    for (const Rational& x : v_basis[0]) CHECK(x == v_basis[0][0]);

    auto empty = span_closure({RatVector(4, Rational(0))}, ex44.matrices(), Side::Right);
    CHECK(empty.empty());
}

TEST_CASE("span closure is independent of seed order") {
    std::mt19937_64 rng(31);
    Automaton fig2 = gen_fig2();
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<RatVector> seeds;
        for (int k = 0; k < 3; ++k) {
            RatVector v;
            for (int j = 0; j < 4; ++j) v.push_back(rat(long(rng() % 5) - 2));
            seeds.push_back(v);
        }
        auto b1 = span_closure(seeds, fig2.matrices(), Side::Right);
        std::shuffle(seeds.begin(), seeds.end(), rng);
        auto b2 = span_closure(seeds, fig2.matrices(), Side::Right);
        CHECK(b1.size() == b2.size());
        EchelonBasis span2;
        for (const RatVector& v : b2) span2.insert(v);
        for (const RatVector& s : seeds) CHECK(span2.contains(s));
        for (const RatVector& v : b1) CHECK(span2.contains(v));
    }
}
