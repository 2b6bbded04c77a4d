#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ufa/automaton.hpp"
#include "ufa/linalg.hpp"
#include "ufa/pair_graph.hpp"
#include "ufa/scc.hpp"

namespace ufa {

/// Entrywise rational average of the generator matrices.
inline RatMatrix average_matrix(const Automaton& aut) {
    int n = aut.states();
    RatMatrix avg(n, n);
    Rational w = rat(1, aut.letters());
    for (int a = 0; a < aut.letters(); ++a)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (aut.matrix(a).get(i, j)) avg.at(i, j) += w;
    return avg;
}

namespace detail {

inline RatMatrix average_minus_identity(const Automaton& aut) {
    RatMatrix m = average_matrix(aut);
    for (int i = 0; i < aut.states(); ++i) m.at(i, i) -= 1;
    return m;
}

/// The eigenvalue-1 kernel of a strongly connected component must be one
/// strictly sign-definite line; anything else means the preconditions
/// (unambiguous, strongly connected) were violated upstream.
inline RatVector normalize_perron(std::vector<RatVector> kernel) {
    if (kernel.size() != 1)
        throw InternalError("eigenvalue-1 eigenspace is " + std::to_string(kernel.size()) +
                            "-dimensional; expected 1 for a strongly connected component");
    RatVector v = std::move(kernel.front());
    if (v[0] == 0) throw InternalError("eigenvalue-1 eigenvector is not sign-definite");
    Rational scale = v[0];
    for (Rational& x : v) {
        x /= scale;
        if (x <= 0) throw InternalError("eigenvalue-1 eigenvector is not sign-definite");
    }
    return v;
}

}  // namespace detail

/// A strongly connected unambiguous component is complete iff 1 is an
/// eigenvalue of the average matrix, decided exactly via the kernel of (A-I).
inline bool completeness_check(const Automaton& scc) {
    std::vector<RatVector> kernel = kernel_basis(detail::average_minus_identity(scc));
    if (kernel.empty()) return false;
    detail::normalize_perron(std::move(kernel));
    return true;
}

/// Strictly positive left/right eigenvalue-1 eigenvectors of the average
/// matrix with alpha^T beta = 1. beta is scaled so its first entry is 1; for a
/// total DFA this makes beta the all-ones vector and alpha the stationary
/// distribution of the uniform-random-letter Markov chain.
inline std::pair<RatVector, RatVector> perron_vectors(const Automaton& scc) {
    RatMatrix am = detail::average_minus_identity(scc);
    RatVector beta = detail::normalize_perron(kernel_basis(am));
    RatVector alpha = detail::normalize_perron(kernel_basis(am.transposed()));
    Rational scale = dot(alpha, beta);
    for (Rational& x : alpha) x /= scale;
    return {std::move(alpha), std::move(beta)};
}

/// Mer(q): the states that can appear together with q in a column, i.e. that
/// some word merges with q. Symmetric, and q is always in Mer(q).
using MerMap = std::vector<StateSet>;

inline MerMap mer_map(const Automaton& aut) {
    int n = aut.states();
    std::vector<char> reach = diagonal_reach(aut);
    MerMap mer(n, StateSet(n));
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (reach[p * n + q] || reach[q * n + p]) mer[p].set(q);
    return mer;
}

/// Basis of the space spanned by the row vectors alpha^T M(w) - alpha^T.
/// Seeded with the single-letter differences; closed under right
/// multiplication because (alpha^T M(w) - alpha^T) M(a) equals
/// (alpha^T M(wa) - alpha^T) - (alpha^T M(a) - alpha^T).
inline std::vector<RatVector> u_basis(const Automaton& scc, const RatVector& alpha) {
    std::vector<RatVector> seeds;
    for (int a = 0; a < scc.letters(); ++a) {
        RatVector d = mul_row(alpha, scc.matrix(a));
        for (int i = 0; i < scc.states(); ++i) d[i] -= alpha[i];
        seeds.push_back(std::move(d));
    }
    return span_closure(seeds, scc.matrices(), Side::Right);
}

/// One exact solution y of { gamma^T y = 0 for the U-basis, y(q) = 1,
/// y(q') = 0 outside Mer(q) }. Every solution has weight equal to the maximum
/// column weight, so the free variables are simply fixed to 0.
inline RatVector max_pseudo_column(const Automaton& scc, const std::vector<RatVector>& u_basis_vecs,
                                   const MerMap& mer, int q) {
    int n = scc.states();
    std::vector<RatVector> rows;
    RatVector rhs;
    for (const RatVector& g : u_basis_vecs) {
        rows.push_back(g);
        rhs.push_back(0);
    }
    RatVector eq(n, Rational(0));
    eq[q] = 1;
    rows.push_back(eq);
    rhs.push_back(1);
    for (int s = 0; s < n; ++s) {
        if (mer[q].test(s)) continue;
        RatVector z(n, Rational(0));
        z[s] = 1;
        rows.push_back(z);
        rhs.push_back(0);
    }
    std::optional<RatVector> y = solve(RatMatrix::from_rows(rows, n), rhs);
    if (!y)
        throw InternalError("maximal pseudo-column system is infeasible for state " +
                            std::to_string(q + 1));
    return *y;
}

struct WeightData {
    RatVector alpha, beta;
    Rational mcw, mrw;
};

/// Maximum column weight of a complete strongly connected component: the
/// weight of a maximal pseudo-column anchored at the least state.
inline Rational max_column_weight(const Automaton& scc, const RatVector& alpha) {
    MerMap mer = mer_map(scc);
    std::vector<RatVector> ub = u_basis(scc, alpha);
    RatVector y = max_pseudo_column(scc, ub, mer, 0);
    return dot(alpha, y);
}

/// mcw and mrw. The row side runs the identical column pipeline on the
/// transposed generators with alpha and beta swapped; for total DFAs every row
/// is a singleton of maximum weight and mrw = 1 is short-circuited (the
/// general path is kept reachable for cross-checks).
inline std::pair<Rational, Rational> mcw_mrw(const Automaton& scc, const RatVector& alpha,
                                             const RatVector& beta, bool dfa_short_circuit = true) {
    Rational mcw = max_column_weight(scc, alpha);
    Rational mrw;
    if (dfa_short_circuit && scc.is_total_dfa())
        mrw = 1;
    else
        mrw = max_column_weight(scc.reversed(), beta);
    return {std::move(mcw), std::move(mrw)};
}

struct ComponentReport {
    std::vector<int> states;  // global 0-based state indices
    bool complete = false;
    long rank = 0;
    std::optional<WeightData> weights;
    int u_dim = 0;
};

struct RankReport {
    std::vector<ComponentReport> components;
    long total = 0;
};

namespace detail {

inline long rank_from_weights(const Rational& mcw, const Rational& mrw) {
    Rational r = Rational(1) / (mcw * mrw);
    if (!is_integer(r) || r <= 0)
        throw InternalError("1/(mcw*mrw) = " + rat_str(r) + " is not a positive integer");
    return r.get_num().get_si();
}

}  // namespace detail

/// Full analysis of one strongly connected component.
inline ComponentReport analyze_component(const Automaton& scc) {
    ComponentReport rep;
    rep.complete = completeness_check(scc);
    if (!rep.complete) return rep;
    auto [alpha, beta] = perron_vectors(scc);
    rep.u_dim = int(u_basis(scc, alpha).size());
    auto [mcw, mrw] = mcw_mrw(scc, alpha, beta);
    rep.rank = detail::rank_from_weights(mcw, mrw);
    rep.weights = WeightData{std::move(alpha), std::move(beta), std::move(mcw), std::move(mrw)};
    return rep;
}

/// Minimum rank of one strongly connected component; 0 when incomplete.
inline long component_rank(const Automaton& scc) { return analyze_component(scc).rank; }

/// Minimum rank of the whole monoid: decompose into strongly connected
/// components and sum the component ranks.
inline RankReport rank(const Automaton& aut) {
    if (std::optional<AmbiguityWitness> w = check_unambiguous(aut))
        throw AmbiguityError("automaton is ambiguous: two runs from state " +
                             std::to_string(w->p + 1) + " to state " + std::to_string(w->q + 1) +
                             " labelled " + word_str(aut, w->word));
    SccDecomposition scc = scc_decompose(aut);
    RankReport report;
    for (const SccComponent& comp : scc.components) {
        ComponentReport cr = analyze_component(comp.sub);
        cr.states = comp.states;
        report.total += cr.rank;
        report.components.push_back(std::move(cr));
    }
    return report;
}

}  // namespace ufa
