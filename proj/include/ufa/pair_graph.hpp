#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ufa/automaton.hpp"

namespace ufa {

/// The square automaton's underlying labelled digraph on Q x Q, with
/// transitions defined component-wise. Edges are generated on the fly from the
/// generator matrices (O(n^2) space); an explicit adjacency is cached only for
/// small instances (n^2 <= 10^4) where repeated traversals dominate.
class PairGraph {
public:
    explicit PairGraph(const Automaton& aut)
        : aut_(&aut), n_(aut.states()), cached_(size_t(n_) * n_ <= 10000) {
        if (cached_) {
            size_t v = size_t(n_) * n_;
            fwd_.resize(v);
            bwd_.resize(v);
            for (int p = 0; p < n_; ++p)
                for (int q = 0; q < n_; ++q) {
                    int from = encode(p, q);
                    for (int a = 0; a < aut.letters(); ++a)
                        for (int ps : aut.succ(a, p))
                            for (int qs : aut.succ(a, q)) {
                                int to = encode(ps, qs);
                                fwd_[from].push_back({a, to});
                                bwd_[to].push_back({a, from});
                            }
                }
        }
    }

    int states() const { return n_; }
    int vertices() const { return n_ * n_; }
    int encode(int p, int q) const { return p * n_ + q; }
    std::pair<int, int> decode(int v) const { return {v / n_, v % n_}; }
    bool diagonal(int v) const { return v / n_ == v % n_; }

    /// f(letter, successor vertex)
    template <class F>
    void for_each_succ(int v, F&& f) const {
        if (cached_) {
            for (const auto& [a, to] : fwd_[v]) f(a, to);
            return;
        }
        auto [p, q] = decode(v);
        for (int a = 0; a < aut_->letters(); ++a)
            for (int ps : aut_->succ(a, p))
                for (int qs : aut_->succ(a, q)) f(a, encode(ps, qs));
    }

    /// f(letter, predecessor vertex)
    template <class F>
    void for_each_pred(int v, F&& f) const {
        if (cached_) {
            for (const auto& [a, from] : bwd_[v]) f(a, from);
            return;
        }
        auto [p, q] = decode(v);
        for (int a = 0; a < aut_->letters(); ++a)
            for (int pp : aut_->pred(a, p))
                for (int qp : aut_->pred(a, q)) f(a, encode(pp, qp));
    }

private:
    const Automaton* aut_;
    int n_;
    bool cached_;
    std::vector<std::vector<std::pair<int, int>>> fwd_, bwd_;
};

/// Two distinct runs with the same label between the same endpoint states.
struct AmbiguityWitness {
    int p, q;   // 0-based endpoints
    Word word;  // labels both runs
};

/// Unambiguity decision: the automaton is ambiguous iff some off-diagonal pair
/// vertex is reachable from the diagonal and reaches the diagonal again. The
/// witness word is read off the two breadth-first search trees and spells two
/// distinct p->q runs, so multiplying the generators along it yields an entry >= 2.
inline std::optional<AmbiguityWitness> check_unambiguous(const Automaton& aut) {
    PairGraph g(aut);
    int nv = g.vertices(), n = g.states();
    std::vector<int> dist_from(nv, -1), dist_to(nv, -1);
    std::vector<std::pair<int, int>> par_from(nv, {-1, -1}), par_to(nv, {-1, -1});
    std::vector<int> queue;

    for (int s = 0; s < n; ++s) {
        int v = g.encode(s, s);
        dist_from[v] = 0;
        queue.push_back(v);
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        g.for_each_succ(v, [&](int a, int to) {
            if (dist_from[to] < 0) {
                dist_from[to] = dist_from[v] + 1;
                par_from[to] = {v, a};
                queue.push_back(to);
            }
        });
    }

    queue.clear();
    for (int s = 0; s < n; ++s) {
        int v = g.encode(s, s);
        dist_to[v] = 0;
        queue.push_back(v);
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        g.for_each_pred(v, [&](int a, int from) {
            if (dist_to[from] < 0) {
                dist_to[from] = dist_to[v] + 1;
                par_to[from] = {v, a};
                queue.push_back(from);
            }
        });
    }

    int best = -1;
    for (int v = 0; v < nv; ++v) {
        if (g.diagonal(v) || dist_from[v] < 0 || dist_to[v] < 0) continue;
        if (best < 0 || dist_from[v] + dist_to[v] < dist_from[best] + dist_to[best]) best = v;
    }
    if (best < 0) return std::nullopt;

    AmbiguityWitness w;
    Word prefix;
    int v = best;
    while (!g.diagonal(v)) {
        auto [prev, a] = par_from[v];
        prefix.push_back(a);
        v = prev;
    }
    w.p = g.decode(v).first;
    w.word.assign(prefix.rbegin(), prefix.rend());
    v = best;
    while (!g.diagonal(v)) {
        auto [next, a] = par_to[v];
        w.word.push_back(a);
        v = next;
    }
    w.q = g.decode(v).first;
    return w;
}

/// For each pair vertex, whether it can reach the diagonal (computed by one
/// multi-source backward search from all diagonal vertices). Vertex (p,q) can
/// reach the diagonal exactly when p and q are mergeable.
inline std::vector<char> diagonal_reach(const Automaton& aut) {
    PairGraph g(aut);
    std::vector<char> reach(g.vertices(), 0);
    std::vector<int> queue;
    for (int s = 0; s < g.states(); ++s) {
        int v = g.encode(s, s);
        reach[v] = 1;
        queue.push_back(v);
    }
    for (size_t head = 0; head < queue.size(); ++head) {
        g.for_each_pred(queue[head], [&](int, int from) {
            if (!reach[from]) {
                reach[from] = 1;
                queue.push_back(from);
            }
        });
    }
    return reach;
}

}  // namespace ufa
