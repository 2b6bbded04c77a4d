#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ufa/automaton.hpp"
#include "ufa/pair_graph.hpp"
#include "ufa/rank_engine.hpp"
#include "ufa/scc.hpp"

namespace ufa {

namespace detail {

inline Automaton build(int n, std::vector<std::string> alphabet,
                       const std::vector<std::vector<std::array<int, 2>>>& edges) {
    std::vector<BoolMatrix> mats(alphabet.size(), BoolMatrix(n));
    for (size_t a = 0; a < edges.size(); ++a)
        for (const auto& e : edges[a]) mats[a].set(e[0] - 1, e[1] - 1);
    return Automaton::from_matrices(std::move(alphabet), std::move(mats));
}

}  // namespace detail

/// 4-state total DFA over {a,b}; rank 2, four maximal columns spanning a
/// 3-dimensional space.
inline Automaton gen_ex44() {
    return detail::build(4, {"a", "b"},
                         {{{1, 1}, {2, 3}, {3, 3}, {4, 1}}, {{1, 2}, {2, 2}, {3, 4}, {4, 4}}});
}

/// 4-state total DFA over {a,b,c}; MCol = {[{1,2}], [{3,4}]} spans strictly
/// less than the orthogonal complement of U.
inline Automaton gen_ex46() {
    return detail::build(4, {"a", "b", "c"},
                         {{{1, 1}, {2, 1}, {3, 3}, {4, 3}},
                          {{1, 2}, {2, 2}, {3, 4}, {4, 4}},
                          {{1, 3}, {2, 4}, {3, 1}, {4, 2}}});
}

/// 4-state nondeterministic UFA over {a,b} (two targets per live row).
inline Automaton gen_fig2() {
    return detail::build(4, {"a", "b"},
                         {{{1, 1}, {1, 3}, {2, 1}, {2, 3}}, {{3, 2}, {3, 4}, {4, 2}, {4, 4}}});
}

/// 8-state total DFA over {a,b} used for the merge-tree examples.
inline Automaton gen_fig4() {
    return detail::build(8, {"a", "b"},
                         {{{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 3}, {7, 8}, {8, 1}},
                          {{1, 4}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {8, 1}}});
}

/// Flower automaton of the code {aa, aab, aba, abab}: strongly connected,
/// unambiguous, not complete.
inline Automaton gen_flower() {
    return detail::build(
        9, {"a", "b"},
        {{{1, 2}, {2, 1}, {1, 3}, {3, 4}, {1, 5}, {6, 1}, {1, 7}, {8, 9}},
         {{4, 1}, {5, 6}, {7, 8}, {9, 1}}});
}

/// Classical synchronising stress family: a is a cyclic shift, b merges the
/// designated pair (1,2). Rank 1 for every n.
inline Automaton gen_cerny(int n) {
    if (n < 1) throw InputError("cerny family needs n >= 1");
    std::vector<BoolMatrix> mats(2, BoolMatrix(n));
    for (int q = 0; q < n; ++q) {
        mats[0].set(q, (q + 1) % n);
        mats[1].set(q, q == 0 ? (n > 1 ? 1 : 0) : q);
    }
    return Automaton::from_matrices({"a", "b"}, std::move(mats));
}

struct RandomUfaParams {
    int n = 4;
    int m = 2;
    double density = 0.35;
    uint64_t seed = 1;
    int max_attempts = 500000;
};

namespace detail {

inline double unit_double(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Rejection sampler: sparse zero-one generators, resampled until the result
/// is unambiguous, strongly connected and complete. Deterministic in the seed.
inline Automaton random_ufa(const RandomUfaParams& p) {
    if (p.n < 1 || p.m < 1) throw InputError("random family needs n >= 1 and m >= 1");
    std::vector<std::string> names{"a", "b", "c", "d", "e"};
    if (p.m > int(names.size())) throw InputError("random family supports at most 5 letters");
    std::mt19937_64 rng(p.seed);
    for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
        std::vector<BoolMatrix> mats(p.m, BoolMatrix(p.n));
        for (int a = 0; a < p.m; ++a)
            for (int i = 0; i < p.n; ++i)
                for (int j = 0; j < p.n; ++j)
                    if (detail::unit_double(rng) < p.density) mats[a].set(i, j);
        Automaton aut = Automaton::from_matrices(
            std::vector<std::string>(names.begin(), names.begin() + p.m), std::move(mats));
        if (check_unambiguous(aut)) continue;
        if (scc_decompose(aut).count() != 1) continue;
        if (!completeness_check(aut)) continue;
        return aut;
    }
    throw InputError("random UFA sampling failed after " + std::to_string(p.max_attempts) +
                     " attempts; try another seed or density");
}

/// Row-balanced proposal: every state gets exactly m outgoing transitions
/// spread over the m letters (occasionally one letter takes two targets and
/// another none), so the average matrix is row-stochastic and any unambiguous
/// strongly connected sample is automatically complete. Much higher acceptance
/// than the sparse iid proposal for n >= 5.
inline Automaton random_balanced_ufa(int n, int m, uint64_t seed, double split_prob = 0.5,
                                     int max_attempts = 100000) {
    if (n < 1 || m < 1) throw InputError("random family needs n >= 1 and m >= 1");
    std::vector<std::string> names{"a", "b", "c", "d", "e"};
    if (m > int(names.size())) throw InputError("random family supports at most 5 letters");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<BoolMatrix> mats(m, BoolMatrix(n));
        for (int p = 0; p < n; ++p) {
            std::vector<int> quota(m, 1);
            if (m >= 2 && detail::unit_double(rng) < split_prob) {
                int from = int(rng() % uint64_t(m)), to = int(rng() % uint64_t(m));
                if (from != to) {
                    --quota[from];
                    ++quota[to];
                }
            }
            for (int a = 0; a < m; ++a)
                for (int k = 0; k < quota[a]; ++k) {
                    int q = int(rng() % uint64_t(n));
                    while (mats[a].get(p, q)) q = (q + 1) % n;
                    mats[a].set(p, q);
                }
        }
        Automaton aut = Automaton::from_matrices(
            std::vector<std::string>(names.begin(), names.begin() + m), std::move(mats));
        if (check_unambiguous(aut)) continue;
        if (scc_decompose(aut).count() != 1) continue;
        if (!completeness_check(aut))
            throw InternalError("row-balanced sample failed the completeness check");
        return aut;
    }
    throw InputError("row-balanced UFA sampling failed after " + std::to_string(max_attempts) +
                     " attempts");
}

/// Uniform random total DFA, resampled until strongly connected.
inline Automaton random_total_dfa(int n, int m, uint64_t seed, int max_attempts = 100000) {
    if (n < 1 || m < 1) throw InputError("random DFA needs n >= 1 and m >= 1");
    std::vector<std::string> names{"a", "b", "c", "d", "e"};
    if (m > int(names.size())) throw InputError("random DFA supports at most 5 letters");
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<BoolMatrix> mats(m, BoolMatrix(n));
        for (int a = 0; a < m; ++a)
            for (int q = 0; q < n; ++q) mats[a].set(q, int(rng() % uint64_t(n)));
        Automaton aut = Automaton::from_matrices(
            std::vector<std::string>(names.begin(), names.begin() + m), std::move(mats));
        if (scc_decompose(aut).count() == 1) return aut;
    }
    throw InputError("random DFA sampling failed to find a strongly connected instance");
}

/// Codeterministic complete strongly connected UFA of any size: the reversal
/// of a random strongly connected total DFA.
inline Automaton random_codeterministic_ufa(int n, int m, uint64_t seed) {
    return random_total_dfa(n, m, seed).reversed();
}

inline Automaton generate_family(const std::string& family, int n, int m, double density,
                                 uint64_t seed) {
    if (family == "ex44") return gen_ex44();
    if (family == "ex46") return gen_ex46();
    if (family == "fig2") return gen_fig2();
    if (family == "fig4") return gen_fig4();
    if (family == "flower") return gen_flower();
    if (family == "cerny") return gen_cerny(n);
    if (family == "random") return random_ufa({n, m, density, seed});
    throw InputError("unknown family: " + family +
                     " (known: ex44 ex46 fig2 fig4 flower cerny random)");
}

}  // namespace ufa
