#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ufa/bool_matrix.hpp"
#include "ufa/errors.hpp"

namespace ufa {

/// A word as a sequence of letter indices into the automaton's alphabet.
using Word = std::vector<int>;

/// A finite (semi-)automaton given by one zero-one transition matrix per
/// letter. States are 0-based internally; all I/O is 1-based. Immutable after
/// construction; operations on it are pure and safe to share across threads.
class Automaton {
public:
    static Automaton from_matrices(std::vector<std::string> alphabet,
                                   std::vector<BoolMatrix> matrices) {
        if (alphabet.empty()) throw InputError("automaton needs at least one letter");
        std::set<std::string> seen;
        for (const std::string& s : alphabet) {
            if (s.empty()) throw InputError("alphabet symbols must be nonempty");
            if (!seen.insert(s).second) throw InputError("duplicate alphabet symbol: " + s);
        }
        if (matrices.size() != alphabet.size())
            throw InternalError("one transition matrix per letter required");
        int n = matrices.front().dim();
        if (n <= 0) throw InputError("automaton needs at least one state");
        for (const BoolMatrix& m : matrices)
            if (m.dim() != n) throw InternalError("transition matrices disagree on dimension");
        return Automaton(std::move(alphabet), std::move(matrices));
    }

    int states() const { return n_; }
    int letters() const { return int(alphabet_.size()); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }
    const std::string& letter(int a) const { return alphabet_[a]; }
    const BoolMatrix& matrix(int a) const { return mat_[a]; }
    const std::vector<BoolMatrix>& matrices() const { return mat_; }

    int letter_index(const std::string& sym) const {
        for (size_t a = 0; a < alphabet_.size(); ++a)
            if (alphabet_[a] == sym) return int(a);
        return -1;
    }

    /// True iff every letter matrix has exactly one 1 per row.
    bool is_total_dfa() const { return total_dfa_; }

    const std::vector<int>& succ(int a, int q) const { return succ_[a][q]; }
    const std::vector<int>& pred(int a, int q) const { return pred_[a][q]; }

    /// The unique successor of q under letter a; only meaningful for total DFAs.
    int step(int a, int q) const { return succ_[a][q].front(); }

    /// Automaton with all generator matrices transposed. Columns of the
    /// original are rows of the reversal read backwards.
    Automaton reversed() const {
        std::vector<BoolMatrix> rev;
        rev.reserve(mat_.size());
        for (const BoolMatrix& m : mat_) rev.push_back(m.transposed());
        return Automaton(alphabet_, std::move(rev));
    }

    bool operator==(const Automaton& other) const {
        return alphabet_ == other.alphabet_ && mat_ == other.mat_;
    }

private:
    Automaton(std::vector<std::string> alphabet, std::vector<BoolMatrix> matrices)
        : n_(matrices.front().dim()),
          alphabet_(std::move(alphabet)),
          mat_(std::move(matrices)) {
        int m = int(mat_.size());
        succ_.assign(m, std::vector<std::vector<int>>(n_));
        pred_.assign(m, std::vector<std::vector<int>>(n_));
        total_dfa_ = true;
        for (int a = 0; a < m; ++a) {
            for (int p = 0; p < n_; ++p) {
                for (int q = 0; q < n_; ++q) {
                    if (!mat_[a].get(p, q)) continue;
                    succ_[a][p].push_back(q);
                    pred_[a][q].push_back(p);
                }
                if (succ_[a][p].size() != 1) total_dfa_ = false;
            }
        }
    }

    int n_;
    std::vector<std::string> alphabet_;
    std::vector<BoolMatrix> mat_;
    std::vector<std::vector<std::vector<int>>> succ_, pred_;
    bool total_dfa_;
};

/// Product of the letter matrices along the word, computed over nonnegative
/// integers; throws AmbiguityError if any intermediate entry leaves {0,1}.
inline BoolMatrix word_matrix(const Automaton& aut, const Word& word) {
    BoolMatrix m = BoolMatrix::identity(aut.states());
    for (int a : word) m = m.multiply_checked(aut.matrix(a));
    return m;
}

inline std::string word_str(const Automaton& aut, const Word& word) {
    if (word.empty()) return "(empty word)";
    std::string s;
    for (int a : word) s += aut.letter(a);
    return s;
}

/// Shortest word u with q in p.u, lexicographically smallest in alphabet order
/// among the shortest; |u| <= n-1. Throws UnreachableError when no word exists.
inline Word shortest_path_word(const Automaton& aut, int p, int q) {
    int n = aut.states();
    std::vector<int> dist(n, -1);  // length of shortest word from state to q
    std::vector<int> queue;
    dist[q] = 0;
    queue.push_back(q);
    for (size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (int a = 0; a < aut.letters(); ++a)
            for (int u : aut.pred(a, v))
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
    }
    if (dist[p] < 0)
        throw UnreachableError("state " + std::to_string(q + 1) + " is not reachable from state " +
                               std::to_string(p + 1));
    Word word;
    std::vector<char> cur(n, 0), next(n, 0);
    cur[p] = 1;
    for (int remaining = dist[p]; remaining > 0; --remaining) {
        for (int a = 0; a < aut.letters(); ++a) {
            std::fill(next.begin(), next.end(), 0);
            bool any = false;
            for (int s = 0; s < n; ++s) {
                if (!cur[s]) continue;
                for (int t : aut.succ(a, s))
                    if (dist[t] == remaining - 1) next[t] = 1, any = true;
            }
            if (any) {
                word.push_back(a);
                std::swap(cur, next);
                break;
            }
        }
    }
    return word;
}

}  // namespace ufa
