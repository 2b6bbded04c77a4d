#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ufa/automaton.hpp"
#include "ufa/pair_graph.hpp"
#include "ufa/rank_engine.hpp"
#include "ufa/slp.hpp"

namespace ufa {

struct NotRectangleSumError : InputError {
    using InputError::InputError;
};

/// Minimum-rank matrices decompose into r disjoint combinatorial rectangles
/// [C_i][R_i]^T; columns C_i pairwise disjoint, rows R_i pairwise disjoint.
struct CesariDecomposition {
    std::vector<std::pair<StateSet, StateSet>> rectangles;

    int rank() const { return int(rectangles.size()); }
};

/// Collects the distinct nonzero columns as the C_i (in order of first
/// occurrence) and groups equal columns into the R_i, then validates the
/// rectangle-sum shape exactly.
inline CesariDecomposition cesari_decompose(const BoolMatrix& mat) {
    int n = mat.dim();
    CesariDecomposition out;
    for (int q = 0; q < n; ++q) {
        StateSet col = mat.column(q);
        if (col.none()) continue;
        bool found = false;
        for (auto& [c, r] : out.rectangles)
            if (c == col) {
                r.set(q);
                found = true;
                break;
            }
        if (!found) {
            StateSet r(n);
            r.set(q);
            out.rectangles.push_back({std::move(col), std::move(r)});
        }
    }
    StateSet seen_c(n), seen_r(n);
    for (const auto& [c, r] : out.rectangles) {
        if (c.intersects(seen_c))
            throw NotRectangleSumError("distinct nonzero columns overlap: not a rectangle sum");
        if (r.intersects(seen_r))
            throw NotRectangleSumError("row groups overlap: not a rectangle sum");
        seen_c |= c;
        seen_r |= r;
    }
    BoolMatrix recon(n);
    for (const auto& [c, r] : out.rectangles)
        for (int p : c.elements())
            for (int q : r.elements()) recon.set(p, q);
    if (recon != mat)
        throw NotRectangleSumError("rectangle sum does not reconstruct the matrix");
    return out;
}

/// Set-SLP from the merge tree: a backward breadth-first search of the square
/// digraph from (p,p) yields a tree whose kept leaves are merging vertices;
/// the tree is cut into maximal branches at branching, merging and root
/// vertices, one nonterminal per branch, and the word for q is the branch
/// concatenation along the path from q's merging vertex to the root. Each w_q
/// satisfies p in p.w_q and p in q.w_q. Requires a complete, strongly
/// connected, unambiguous automaton.
inline SetSlp merge_words(const Automaton& aut, int p) {
    int n = aut.states();
    PairGraph g(aut);
    std::vector<char> mer_reach = diagonal_reach(aut);
    int root = g.encode(p, p);

    std::vector<int> dist(g.vertices(), -1);
    std::vector<std::pair<int, int>> parent(g.vertices(), {-1, -1});  // (vertex, letter)
    std::vector<int> order;
    dist[root] = 0;
    order.push_back(root);
    for (size_t head = 0; head < order.size(); ++head) {
        int v = order[head];
        g.for_each_pred(v, [&](int a, int from) {
            if (dist[from] < 0) {
                dist[from] = dist[v] + 1;
                parent[from] = {v, a};
                order.push_back(from);
            }
        });
    }

    std::vector<int> mer_states;
    for (int q = 0; q < n; ++q)
        if (mer_reach[g.encode(p, q)]) mer_states.push_back(q);

    // One tree vertex per mergeable state: the closer of (p,q) and (q,p).
    std::vector<int> chosen(n, -1);
    for (int q : mer_states) {
        if (q == p) {
            chosen[q] = root;
            continue;
        }
        int v1 = g.encode(p, q), v2 = g.encode(q, p);
        if (dist[v1] < 0 && dist[v2] < 0)
            throw InternalError("mergeable state " + std::to_string(q + 1) +
                                " has no tree vertex; automaton is not strongly connected");
        if (dist[v1] < 0)
            chosen[q] = v2;
        else if (dist[v2] < 0)
            chosen[q] = v1;
        else
            chosen[q] = (dist[v1] < dist[v2] || (dist[v1] == dist[v2] && v1 < v2)) ? v1 : v2;
    }

    // Keep only root paths of chosen vertices; everything else is pruned.
    std::vector<char> kept(g.vertices(), 0);
    kept[root] = 1;
    for (int q : mer_states)
        for (int v = chosen[q]; !kept[v]; v = parent[v].first) kept[v] = 1;

    std::vector<int> child_count(g.vertices(), 0);
    for (int v : order)
        if (kept[v] && v != root) ++child_count[parent[v].first];

    // Branch boundaries: the root, branching vertices, and every kept vertex
    // of merging form (p,q)/(q,p), whether or not it was the chosen copy.
    std::vector<char> is_event(g.vertices(), 0);
    is_event[root] = 1;
    for (int v : order) {
        if (!kept[v]) continue;
        if (child_count[v] >= 2) is_event[v] = 1;
        auto [a, b] = g.decode(v);
        if ((a == p && mer_reach[v]) || (b == p && mer_reach[g.encode(b, a)])) is_event[v] = 1;
    }

    SetSlp out;
    out.prog.terminals = aut.alphabet();
    std::vector<int> branch_rule(g.vertices(), -1);  // start vertex -> rule
    std::vector<int> branch_top(g.vertices(), -1);   // start vertex -> next event above
    int branch_no = 0;
    for (int v : order) {
        if (!kept[v] || !is_event[v] || v == root) continue;
        std::vector<SlpItem> rhs;
        int u = v;
        while (true) {
            auto [up, letter] = parent[u];
            rhs.push_back(SlpItem::term(letter));
            u = up;
            if (is_event[u]) break;
        }
        branch_top[v] = u;
        branch_rule[v] = out.prog.add_rule("u" + std::to_string(++branch_no), std::move(rhs));
    }

    for (int q : mer_states) {
        std::vector<SlpItem> rhs;
        for (int v = chosen[q]; v != root; v = branch_top[v]) rhs.push_back(SlpItem::rule(branch_rule[v]));
        out.initial_states.push_back(q);
        out.initial_rules.push_back(out.prog.add_rule("w" + std::to_string(q + 1), std::move(rhs)));
    }
    return out;
}

namespace detail {

/// Shared result of the maximal-column construction.
struct MaxColumn {
    SlpProgram prog;
    int rule;  // -1 encodes the empty word
    BoolMatrix mat;
};

inline std::vector<SlpItem> word_items(const Word& w) {
    std::vector<SlpItem> items;
    for (int a : w) items.push_back(SlpItem::term(a));
    return items;
}

}  // namespace detail

/// SLP for a word w such that column p of M(w) is maximal: while some other
/// mergeable state's column is nonzero, append that state's merge word. The
/// loop shrinks the set of live mergeable states, so it ends within |Mer(p)|
/// rounds; the result is verified to have weight exactly mcw.
inline detail::MaxColumn maximal_column_word_impl(const Automaton& aut, const RatVector& alpha,
                                                  const Rational& mcw, int p) {
    SetSlp merges = merge_words(aut, p);
    SlpMatrixCache cache;
    detail::MaxColumn res;
    res.prog = merges.prog;
    res.rule = -1;
    res.mat = BoolMatrix::identity(aut.states());

    std::vector<BoolMatrix> merge_mat(merges.initial_rules.size());
    for (size_t i = 0; i < merges.initial_rules.size(); ++i)
        merge_mat[i] = eval_slp_matrix(aut, res.prog, merges.initial_rules[i], cache);

    size_t mer_size = merges.initial_states.size();
    size_t rounds = 0;
    int chain_no = 0;
    while (true) {
        int victim = -1;
        for (size_t i = 0; i < mer_size && victim < 0; ++i) {
            int q = merges.initial_states[i];
            if (q != p && !res.mat.column_zero(q)) victim = int(i);
        }
        if (victim < 0) break;
        if (++rounds > mer_size)
            throw InternalError("maximal-column loop exceeded |Mer(p)| iterations");
        int wq_rule = merges.initial_rules[victim];
        if (res.rule < 0)
            res.rule = wq_rule;
        else
            res.rule = res.prog.add_rule("s" + std::to_string(++chain_no),
                                         {SlpItem::rule(res.rule), SlpItem::rule(wq_rule)});
        res.mat = res.mat.multiply_checked(merge_mat[victim]);
    }
    if (dot(alpha, res.mat.column(p)) != mcw)
        throw InternalError("maximal-column word has weight " +
                            rat_str(dot(alpha, res.mat.column(p))) + ", expected " + rat_str(mcw));
    return res;
}

inline Slp maximal_column_word(const Automaton& aut, const RatVector& alpha, const Rational& mcw,
                               int p) {
    detail::MaxColumn mc = maximal_column_word_impl(aut, alpha, mcw, p);
    if (mc.rule < 0) mc.rule = mc.prog.add_rule("s1", {});
    return Slp{std::move(mc.prog), mc.rule};
}

namespace detail {

struct Phase {
    SlpProgram prog;
    int rule;
    BoolMatrix mat;
};

/// Makes every column of the running matrix maximal or zero: for each state
/// whose column is still nonzero, route the anchor p to a supporting state and
/// prepend the maximal-column word.
inline Phase column_phase(const Automaton& aut, const RatVector& alpha, const Rational& mcw) {
    int n = aut.states();
    MaxColumn mc = maximal_column_word_impl(aut, alpha, mcw, 0);
    Phase ph{std::move(mc.prog), -1, BoolMatrix::identity(n)};
    int w_rule = mc.rule;
    if (w_rule < 0) w_rule = ph.prog.add_rule("s0", {});
    int step_no = 0;
    for (int target = 0; target < n; ++target) {
        StateSet col = ph.mat.column(target);
        if (col.none()) continue;
        int q = col.first();
        Word u = shortest_path_word(aut, 0, q);
        std::vector<SlpItem> rhs{SlpItem::rule(w_rule)};
        for (SlpItem it : word_items(u)) rhs.push_back(it);
        if (ph.rule >= 0) rhs.push_back(SlpItem::rule(ph.rule));
        ph.rule = ph.prog.add_rule("x" + std::to_string(++step_no), std::move(rhs));
        BoolMatrix head = mc.mat;
        for (int a : u) head = head.multiply_checked(aut.matrix(a));
        ph.mat = head.multiply_checked(ph.mat);
    }
    if (ph.rule < 0) ph.rule = ph.prog.add_rule("x0", {});
    return ph;
}

inline void require_witness_preconditions(const Automaton& aut) {
    if (std::optional<AmbiguityWitness> w = check_unambiguous(aut))
        throw AmbiguityError("automaton is ambiguous: two runs from state " +
                             std::to_string(w->p + 1) + " to state " + std::to_string(w->q + 1) +
                             " labelled " + word_str(aut, w->word));
    if (scc_decompose(aut).count() != 1)
        throw InputError("automaton is not strongly connected");
    if (!completeness_check(aut))
        throw InputError("automaton is incomplete: the zero matrix is reachable (rank 0)");
}

}  // namespace detail

struct MinRankWitness {
    Slp slp;
    BoolMatrix matrix;
    CesariDecomposition cesari;
    long rank = 0;
};

/// SLP for a word of minimum rank: run the column phase, run it again on the
/// transposed automaton for the rows (reversing the produced program), and
/// take z = x y x y. Verifies real rank and the distinct column/row counts
/// against 1/(mcw*mrw), then extracts the Cesari decomposition.
inline MinRankWitness min_rank_word(const Automaton& aut) {
    detail::require_witness_preconditions(aut);
    auto [alpha, beta] = perron_vectors(aut);
    auto [mcw, mrw] = mcw_mrw(aut, alpha, beta);
    long r = detail::rank_from_weights(mcw, mrw);

    detail::Phase colp = detail::column_phase(aut, alpha, mcw);
    detail::Phase rowp = detail::column_phase(aut.reversed(), beta, mrw);

    SlpProgram prog = std::move(colp.prog);
    int offset = import_program(prog, reverse_slp(std::move(rowp.prog)), "r");
    int x = colp.rule, y = offset + rowp.rule;
    BoolMatrix xm = std::move(colp.mat), ym = rowp.mat.transposed();
    int z = prog.add_rule("z", {SlpItem::rule(x), SlpItem::rule(y), SlpItem::rule(x), SlpItem::rule(y)});
    BoolMatrix zm = xm.multiply_checked(ym);
    zm = zm.multiply_checked(zm);

    MinRankWitness out{Slp{std::move(prog), z}, std::move(zm), {}, r};
    if (rat_rank(out.matrix) != r)
        throw InternalError("witness matrix has real rank " + std::to_string(rat_rank(out.matrix)) +
                            ", expected " + std::to_string(r));
    out.cesari = cesari_decompose(out.matrix);
    int rows = 0;
    std::vector<StateSet> seen;
    for (int i = 0; i < out.matrix.dim(); ++i) {
        StateSet row = out.matrix.row(i);
        if (row.none() || std::find(seen.begin(), seen.end(), row) != seen.end()) continue;
        seen.push_back(row);
        ++rows;
    }
    if (out.cesari.rank() != r || rows != r)
        throw InternalError("witness matrix has " + std::to_string(out.cesari.rank()) +
                            " distinct nonzero columns and " + std::to_string(rows) +
                            " distinct nonzero rows, expected " + std::to_string(r));
    return out;
}

struct DfaMinRankWitness {
    Slp slp;
    std::vector<int> transform;  // action of the witness word on the states
    long rank = 0;
};

/// Total-DFA fast path: identical pipeline over transformations (O(n)
/// composition, O(n) storage). Rows of a total DFA are maximal singletons, so
/// the row phase is skipped and z = x x. Asserts the image size equals the
/// monoid rank.
inline DfaMinRankWitness dfa_min_rank_word(const Automaton& aut,
                                           std::optional<long> known_rank = std::nullopt) {
    if (!aut.is_total_dfa()) throw InputError("input is not a total DFA");
    if (scc_decompose(aut).count() != 1)
        throw InputError("automaton is not strongly connected");
    int n = aut.states();
    int p = 0;

    SetSlp merges = merge_words(aut, p);
    SlpTransformCache cache;
    std::vector<std::vector<int>> merge_fn(merges.initial_rules.size());
    for (size_t i = 0; i < merges.initial_rules.size(); ++i)
        merge_fn[i] = eval_slp_transform(aut, merges.prog, merges.initial_rules[i], cache);

    SlpProgram prog = merges.prog;
    std::vector<int> cur(n);
    for (int q = 0; q < n; ++q) cur[q] = q;
    int rule = -1;
    std::vector<char> image(n, 0);
    size_t rounds = 0;
    int chain_no = 0;
    while (true) {
        std::fill(image.begin(), image.end(), 0);
        for (int q = 0; q < n; ++q) image[cur[q]] = 1;
        int victim = -1;
        for (size_t i = 0; i < merges.initial_states.size() && victim < 0; ++i) {
            int q = merges.initial_states[i];
            if (q != p && image[q]) victim = int(i);
        }
        if (victim < 0) break;
        if (++rounds > merges.initial_states.size())
            throw InternalError("maximal-column loop exceeded |Mer(p)| iterations");
        int wq_rule = merges.initial_rules[victim];
        if (rule < 0)
            rule = wq_rule;
        else
            rule = prog.add_rule("s" + std::to_string(++chain_no),
                                 {SlpItem::rule(rule), SlpItem::rule(wq_rule)});
        for (int q = 0; q < n; ++q) cur[q] = merge_fn[victim][cur[q]];
    }
    int w_rule = rule >= 0 ? rule : prog.add_rule("s0", {});
    std::vector<int> wf = cur;

    int x = -1;
    std::vector<int> xf(n);
    for (int q = 0; q < n; ++q) xf[q] = q;
    int step_no = 0;
    for (int target = 0; target < n; ++target) {
        int q = -1;
        for (int s = 0; s < n && q < 0; ++s)
            if (xf[s] == target) q = s;
        if (q < 0) continue;
        Word u = shortest_path_word(aut, p, q);
        std::vector<SlpItem> rhs{SlpItem::rule(w_rule)};
        for (int a : u) rhs.push_back(SlpItem::term(a));
        if (x >= 0) rhs.push_back(SlpItem::rule(x));
        x = prog.add_rule("x" + std::to_string(++step_no), std::move(rhs));
        std::vector<int> head = wf;
        for (int a : u)
            for (int s = 0; s < n; ++s) head[s] = aut.step(a, head[s]);
        for (int s = 0; s < n; ++s) head[s] = xf[head[s]];
        xf = std::move(head);
    }
    if (x < 0) x = prog.add_rule("x0", {});

    int z = prog.add_rule("z", {SlpItem::rule(x), SlpItem::rule(x)});
    std::vector<int> zf(n);
    for (int s = 0; s < n; ++s) zf[s] = xf[xf[s]];

    long r = known_rank ? *known_rank : component_rank(aut);
    std::fill(image.begin(), image.end(), 0);
    for (int s = 0; s < n; ++s) image[zf[s]] = 1;
    long img_size = std::count(image.begin(), image.end(), char(1));
    if (img_size != r)
        throw InternalError("witness image has " + std::to_string(img_size) +
                            " states, expected rank " + std::to_string(r));
    return DfaMinRankWitness{Slp{std::move(prog), z}, std::move(zf), r};
}

}  // namespace ufa
