#pragma once

#include <algorithm>
#include <vector>

#include "ufa/automaton.hpp"

namespace ufa {

struct SccComponent {
    std::vector<int> states;  // global 0-based indices, ascending
    Automaton sub;            // induced sub-automaton (intra-component transitions only)

    StateSet state_set(int n) const {
        StateSet s(n);
        for (int q : states) s.set(q);
        return s;
    }
};

/// Components are ordered so that every transition goes from an earlier
/// component to a later one (block upper-triangular form).
struct SccDecomposition {
    std::vector<SccComponent> components;
    std::vector<int> comp_of;  // global state -> component index

    int count() const { return int(components.size()); }
};

/// Iterative Tarjan on the union digraph of all letters.
inline SccDecomposition scc_decompose(const Automaton& aut) {
    int n = aut.states();
    std::vector<std::vector<int>> adj(n);
    for (int p = 0; p < n; ++p) {
        std::vector<char> out(n, 0);
        for (int a = 0; a < aut.letters(); ++a)
            for (int q : aut.succ(a, p)) out[q] = 1;
        for (int q = 0; q < n; ++q)
            if (out[q]) adj[p].push_back(q);
    }

    std::vector<int> index(n, -1), low(n, 0), stack, comp_of(n, -1);
    std::vector<char> on_stack(n, 0);
    int next_index = 0, comp_count = 0;
    std::vector<std::vector<int>> comps;

    struct Frame {
        int v;
        size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0) continue;
        std::vector<Frame> call;
        call.push_back({root, 0});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.edge < adj[f.v].size()) {
                int w = adj[f.v][f.edge++];
                if (index[w] < 0) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        comp_of[w] = comp_count;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    comps.push_back(std::move(comp));
                    ++comp_count;
                }
            }
        }
    }

    // Tarjan finishes sink components first; flip the numbering so all edges
    // point from earlier components to later ones.
    SccDecomposition out;
    out.comp_of.assign(n, -1);
    for (int q = 0; q < n; ++q) out.comp_of[q] = comp_count - 1 - comp_of[q];
    std::reverse(comps.begin(), comps.end());

    for (std::vector<int>& comp : comps) {
        std::sort(comp.begin(), comp.end());
        int k = int(comp.size());
        std::vector<int> local(n, -1);
        for (int i = 0; i < k; ++i) local[comp[i]] = i;
        std::vector<BoolMatrix> mats(aut.letters(), BoolMatrix(k));
        for (int a = 0; a < aut.letters(); ++a)
            for (int p : comp)
                for (int q : aut.succ(a, p))
                    if (local[q] >= 0) mats[a].set(local[p], local[q]);
        out.components.push_back(
            {std::move(comp), Automaton::from_matrices(aut.alphabet(), std::move(mats))});
    }
    return out;
}

}  // namespace ufa
