#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ufa/automaton.hpp"
#include "ufa/linalg.hpp"
#include "ufa/rank_engine.hpp"

namespace ufa {

/// Exact integer rank by fraction-free (Bareiss) elimination; intermediate
/// values are minors, bounded well inside int64 for zero-one matrices up to
/// n = 24. Falls back to rational elimination beyond that.
inline int int_rank(const BoolMatrix& m) {
    int n = m.dim();
    if (n > 24) return rat_rank(m);
    std::vector<int64_t> a(size_t(n) * n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (m.get(i, j)) a[size_t(i) * n + j] = 1;
    int64_t prev = 1;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int pivot = -1;
        for (int i = rank; i < n && pivot < 0; ++i)
            if (a[size_t(i) * n + col] != 0) pivot = i;
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int j = 0; j < n; ++j) std::swap(a[size_t(pivot) * n + j], a[size_t(rank) * n + j]);
        int64_t piv = a[size_t(rank) * n + col];
        for (int i = rank + 1; i < n; ++i) {
            for (int j = col + 1; j < n; ++j) {
                __int128 num = (__int128)piv * a[size_t(i) * n + j] -
                               (__int128)a[size_t(i) * n + col] * a[size_t(rank) * n + j];
                a[size_t(i) * n + j] = int64_t(num / prev);
            }
            a[size_t(i) * n + col] = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

inline int distinct_nonzero_columns(const BoolMatrix& m) {
    std::vector<StateSet> seen;
    for (int q = 0; q < m.dim(); ++q) {
        StateSet col = m.column(q);
        if (col.none()) continue;
        if (std::find(seen.begin(), seen.end(), col) == seen.end()) seen.push_back(col);
    }
    return int(seen.size());
}

inline int distinct_nonzero_rows(const BoolMatrix& m) {
    std::vector<StateSet> seen;
    for (int i = 0; i < m.dim(); ++i) {
        StateSet row = m.row(i);
        if (row.none()) continue;
        if (std::find(seen.begin(), seen.end(), row) == seen.end()) seen.push_back(row);
    }
    return int(seen.size());
}

/// All distinct matrices of the monoid, breadth-first from the identity; each
/// element keeps its first (shortest, lexicographically least) witness word.
struct MonoidTable {
    std::vector<BoolMatrix> elements;
    std::vector<Word> witnesses;
    bool has_zero = false;
    bool capped = false;
    size_t cap = 0;

    size_t size() const { return elements.size(); }
};

inline MonoidTable enumerate_monoid(const Automaton& aut, size_t cap = 20000) {
    MonoidTable table;
    table.cap = cap;
    std::unordered_map<BoolMatrix, int, BoolMatrixHash> index;
    BoolMatrix id = BoolMatrix::identity(aut.states());
    index.emplace(id, 0);
    table.elements.push_back(id);
    table.witnesses.push_back({});
    for (size_t head = 0; head < table.elements.size() && !table.capped; ++head) {
        for (int a = 0; a < aut.letters(); ++a) {
            BoolMatrix next = table.elements[head].multiply(aut.matrix(a));
            if (index.count(next)) continue;
            if (table.elements.size() >= cap) {
                table.capped = true;
                break;
            }
            index.emplace(next, int(table.elements.size()));
            Word w = table.witnesses[head];
            w.push_back(a);
            if (next.is_zero()) table.has_zero = true;
            table.elements.push_back(std::move(next));
            table.witnesses.push_back(std::move(w));
        }
    }
    return table;
}

struct BruteMinRank {
    long min_real_rank = 0;
    long min_distinct_columns = 0;
};

/// Ground truth over a fully enumerated monoid.
inline BruteMinRank min_rank_brute(const MonoidTable& table) {
    if (table.capped)
        throw InputError("monoid enumeration hit the cap of " + std::to_string(table.cap) +
                         " elements; brute-force rank needs the full table");
    BruteMinRank out;
    bool first = true;
    for (const BoolMatrix& m : table.elements) {
        long rank = int_rank(m);
        long cols = distinct_nonzero_columns(m);
        if (first || rank < out.min_real_rank) out.min_real_rank = rank;
        if (first || cols < out.min_distinct_columns) out.min_distinct_columns = cols;
        first = false;
    }
    return out;
}

/// All distinct columns [w.q], breadth-first from the singletons under left
/// multiplication by the generators, plus the subset of maximal columns.
struct ColumnTable {
    std::vector<StateSet> columns;
    std::vector<std::pair<Word, int>> witnesses;  // (word, anchor state)
    std::vector<StateSet> mcol;
    bool capped = false;
};

inline ColumnTable enumerate_columns(const Automaton& aut, size_t cap = 1000000) {
    int n = aut.states();
    ColumnTable table;
    std::unordered_map<StateSet, int, StateSetHash> index;
    std::vector<int> layer;
    for (int q = 0; q < n; ++q) {
        StateSet s = StateSet::single(n, q);
        index.emplace(s, int(table.columns.size()));
        layer.push_back(int(table.columns.size()));
        table.columns.push_back(std::move(s));
        table.witnesses.push_back({Word{}, q});
    }
    while (!layer.empty() && !table.capped) {
        std::vector<int> next_layer;
        for (int a = 0; a < aut.letters() && !table.capped; ++a) {
            for (int idx : layer) {
                StateSet col(n);
                for (int i = 0; i < n; ++i) {
                    bool hit = false;
                    for (int j : aut.succ(a, i))
                        if (table.columns[idx].test(j)) {
                            hit = true;
                            break;
                        }
                    if (hit) col.set(i);
                }
                if (index.count(col)) continue;
                if (table.columns.size() >= cap) {
                    table.capped = true;
                    break;
                }
                Word w{a};
                const auto& [pw, q] = table.witnesses[idx];
                w.insert(w.end(), pw.begin(), pw.end());
                index.emplace(col, int(table.columns.size()));
                next_layer.push_back(int(table.columns.size()));
                table.columns.push_back(std::move(col));
                table.witnesses.push_back({std::move(w), q});
            }
        }
        layer = std::move(next_layer);
    }
    for (const StateSet& c : table.columns) {
        if (c.none()) continue;
        bool maximal = true;
        for (const StateSet& other : table.columns)
            if (c != other && c.is_subset_of(other)) {
                maximal = false;
                break;
            }
        if (maximal) table.mcol.push_back(c);
    }
    return table;
}

struct ForwardSpaces {
    std::vector<RatVector> v_basis;  // span of M(w) beta, column vectors
    std::vector<RatVector> w_basis;  // span of alpha^T M(w), row vectors
};

inline ForwardSpaces forward_spaces(const Automaton& aut, const RatVector& alpha,
                                    const RatVector& beta) {
    return ForwardSpaces{span_closure({beta}, aut.matrices(), Side::Left),
                         span_closure({alpha}, aut.matrices(), Side::Right)};
}

/// Executable form of the algebraic synchronisation criteria for a complete
/// strongly connected automaton, in both column and row versions.
struct CriterionReport {
    int n = 0;
    long r = 0;
    bool truncated = false;  // column enumeration capped: checks inconclusive
    int dim_v = 0, dim_w = 0;
    int dim_span_mcol = 0, dim_span_mrow = 0;
    int mcol_count = 0, mrow_count = 0;
    int dim_u = 0;
    bool v_subset_mcol = false, col_dim_bound = false, col_equality_iff = false;
    bool w_subset_mrow = false, row_dim_bound = false, row_equality_iff = false;
    bool is_dfa = false;
    bool dfa_criterion = false;  // span{alpha^T M(w)} = R^Q iff r = 1

    bool all_hold() const {
        return !truncated && v_subset_mcol && col_dim_bound && col_equality_iff &&
               w_subset_mrow && row_dim_bound && row_equality_iff && (!is_dfa || dfa_criterion);
    }

    int dim_u_perp() const { return n - dim_u; }
};

namespace detail {

inline RatVector to_rational(const StateSet& s) {
    RatVector v(s.universe(), Rational(0));
    for (int q = 0; q < s.universe(); ++q)
        if (s.test(q)) v[q] = 1;
    return v;
}

}  // namespace detail

inline CriterionReport criterion_report(const Automaton& aut, size_t column_cap = 1000000) {
    if (scc_decompose(aut).count() != 1)
        throw InputError("criterion report requires a strongly connected automaton");
    if (!completeness_check(aut))
        throw InputError("criterion report requires a complete automaton");

    CriterionReport rep;
    rep.n = aut.states();
    rep.is_dfa = aut.is_total_dfa();

    ComponentReport analysis = analyze_component(aut);
    rep.r = analysis.rank;
    rep.dim_u = analysis.u_dim;
    const WeightData& wd = *analysis.weights;

    ColumnTable cols = enumerate_columns(aut, column_cap);
    ColumnTable rows = enumerate_columns(aut.reversed(), column_cap);
    if (cols.capped || rows.capped) {
        rep.truncated = true;
        return rep;
    }
    rep.mcol_count = int(cols.mcol.size());
    rep.mrow_count = int(rows.mcol.size());

    EchelonBasis mcol_span, mrow_span;
    for (const StateSet& c : cols.mcol) mcol_span.insert(detail::to_rational(c));
    for (const StateSet& r : rows.mcol) mrow_span.insert(detail::to_rational(r));
    rep.dim_span_mcol = mcol_span.dim();
    rep.dim_span_mrow = mrow_span.dim();

    ForwardSpaces spaces = forward_spaces(aut, wd.alpha, wd.beta);
    rep.dim_v = int(spaces.v_basis.size());
    rep.dim_w = int(spaces.w_basis.size());

    rep.v_subset_mcol = true;
    for (const RatVector& v : spaces.v_basis)
        if (!mcol_span.contains(v)) rep.v_subset_mcol = false;
    rep.w_subset_mrow = true;
    for (const RatVector& w : spaces.w_basis)
        if (!mrow_span.contains(w)) rep.w_subset_mrow = false;

    rep.col_dim_bound = rep.dim_v + rep.r - 1 <= rep.dim_span_mcol;
    rep.row_dim_bound = rep.dim_w + rep.r - 1 <= rep.dim_span_mrow;
    bool col_equal = rep.v_subset_mcol && rep.dim_v == rep.dim_span_mcol;
    bool row_equal = rep.w_subset_mrow && rep.dim_w == rep.dim_span_mrow;
    rep.col_equality_iff = col_equal == (rep.r == 1);
    rep.row_equality_iff = row_equal == (rep.r == 1);
    if (rep.is_dfa) rep.dfa_criterion = (rep.dim_w == rep.n) == (rep.r == 1);
    return rep;
}

}  // namespace ufa
