#pragma once

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ufa/automaton.hpp"
#include "ufa/errors.hpp"

namespace ufa {

struct SlpItem {
    bool terminal;
    int idx;  // letter index, or rule index

    static SlpItem term(int a) { return {true, a}; }
    static SlpItem rule(int r) { return {false, r}; }
};

struct SlpRule {
    std::string name;
    std::vector<SlpItem> rhs;
};

/// Straight-line program: one rule per nonterminal, acyclic by construction
/// (a rule's right-hand side may only reference lower-indexed rules).
struct SlpProgram {
    std::vector<std::string> terminals;
    std::vector<SlpRule> rules;

    int add_rule(std::string name, std::vector<SlpItem> rhs) {
        rules.push_back({std::move(name), std::move(rhs)});
        return int(rules.size()) - 1;
    }

    int total_length() const {
        int len = 0;
        for (const SlpRule& r : rules) len += int(r.rhs.size());
        return len;
    }

    /// Throws when some rule references itself or a later rule, which would
    /// make the derivation cyclic.
    void check_acyclic() const {
        for (size_t i = 0; i < rules.size(); ++i)
            for (const SlpItem& it : rules[i].rhs)
                if (!it.terminal && it.idx >= int(i))
                    throw InternalError("cycle detected: rule " + rules[i].name +
                                        " references " + rules[it.idx].name);
    }
};

/// Single-initial program encoding one word.
struct Slp {
    SlpProgram prog;
    int initial = -1;
};

/// Multi-initial program; initial_rules[i] encodes the word for state
/// initial_states[i].
struct SetSlp {
    SlpProgram prog;
    std::vector<int> initial_states;
    std::vector<int> initial_rules;

    int rule_for(int state) const {
        for (size_t i = 0; i < initial_states.size(); ++i)
            if (initial_states[i] == state) return initial_rules[i];
        return -1;
    }
};

/// Length of the encoded word, saturating far below overflow.
inline uint64_t slp_word_length(const SlpProgram& prog, int rule) {
    prog.check_acyclic();
    constexpr uint64_t kCap = std::numeric_limits<uint64_t>::max() / 4;
    std::vector<uint64_t> len(rule + 1, 0);
    for (int i = 0; i <= rule; ++i) {
        uint64_t sum = 0;
        for (const SlpItem& it : prog.rules[i].rhs) {
            sum += it.terminal ? 1 : len[it.idx];
            if (sum > kCap) sum = kCap;
        }
        len[i] = sum;
    }
    return len[rule];
}

/// Full expansion of the word encoded by `rule`, streamed with an explicit
/// stack so memory stays proportional to the output plus the derivation depth.
inline Word eval_slp_word(const SlpProgram& prog, int rule) {
    prog.check_acyclic();
    Word out;
    struct Pos {
        int rule;
        size_t at;
    };
    std::vector<Pos> stack{{rule, 0}};
    while (!stack.empty()) {
        Pos& top = stack.back();
        const std::vector<SlpItem>& rhs = prog.rules[top.rule].rhs;
        if (top.at == rhs.size()) {
            stack.pop_back();
            continue;
        }
        SlpItem it = rhs[top.at++];
        if (it.terminal)
            out.push_back(it.idx);
        else
            stack.push_back({it.idx, 0});
    }
    return out;
}

using SlpMatrixCache = std::vector<std::optional<BoolMatrix>>;

/// Matrix of the encoded word, one product per rule occurrence, never
/// expanding the word. The cache is keyed by rule index and may be shared
/// between evaluations over the same program.
inline BoolMatrix eval_slp_matrix(const Automaton& aut, const SlpProgram& prog, int rule,
                                  SlpMatrixCache& cache) {
    prog.check_acyclic();
    cache.resize(prog.rules.size());
    std::vector<char> need(rule + 1, 0);
    need[rule] = 1;
    for (int i = rule; i >= 0; --i) {
        if (!need[i] || cache[i]) continue;
        for (const SlpItem& it : prog.rules[i].rhs)
            if (!it.terminal) need[it.idx] = 1;
    }
    for (int i = 0; i <= rule; ++i) {
        if (!need[i] || cache[i]) continue;
        BoolMatrix m = BoolMatrix::identity(aut.states());
        for (const SlpItem& it : prog.rules[i].rhs)
            m = m.multiply_checked(it.terminal ? aut.matrix(it.idx) : *cache[it.idx]);
        cache[i] = std::move(m);
    }
    return *cache[rule];
}

inline BoolMatrix eval_slp_matrix(const Automaton& aut, const SlpProgram& prog, int rule) {
    SlpMatrixCache cache;
    return eval_slp_matrix(aut, prog, rule, cache);
}

using SlpTransformCache = std::vector<std::optional<std::vector<int>>>;

/// Total-DFA variant: words act as transformations, composed in O(n).
inline std::vector<int> eval_slp_transform(const Automaton& dfa, const SlpProgram& prog, int rule,
                                           SlpTransformCache& cache) {
    prog.check_acyclic();
    int n = dfa.states();
    cache.resize(prog.rules.size());
    std::vector<char> need(rule + 1, 0);
    need[rule] = 1;
    for (int i = rule; i >= 0; --i) {
        if (!need[i] || cache[i]) continue;
        for (const SlpItem& it : prog.rules[i].rhs)
            if (!it.terminal) need[it.idx] = 1;
    }
    for (int i = 0; i <= rule; ++i) {
        if (!need[i] || cache[i]) continue;
        std::vector<int> f(n);
        for (int q = 0; q < n; ++q) f[q] = q;
        for (const SlpItem& it : prog.rules[i].rhs) {
            std::vector<int> g(n);
            if (it.terminal)
                for (int q = 0; q < n; ++q) g[q] = dfa.step(it.idx, f[q]);
            else
                for (int q = 0; q < n; ++q) g[q] = (*cache[it.idx])[f[q]];
            f = std::move(g);
        }
        cache[i] = std::move(f);
    }
    return *cache[rule];
}

/// Program with every right-hand side reversed: each encoded word becomes its
/// mirror image.
inline SlpProgram reverse_slp(SlpProgram prog) {
    for (SlpRule& r : prog.rules) std::reverse(r.rhs.begin(), r.rhs.end());
    return prog;
}

/// Appends a foreign program's rules, renaming them with a prefix; returns the
/// index offset to translate old rule indices.
inline int import_program(SlpProgram& dst, const SlpProgram& src, const std::string& prefix) {
    int offset = int(dst.rules.size());
    for (const SlpRule& r : src.rules) {
        SlpRule copy = r;
        copy.name = prefix + r.name;
        for (SlpItem& it : copy.rhs)
            if (!it.terminal) it.idx += offset;
        dst.rules.push_back(std::move(copy));
    }
    return offset;
}

inline nlohmann::json slp_json(const SlpProgram& prog, const std::vector<int>& initials) {
    nlohmann::json rules = nlohmann::json::array();
    for (const SlpRule& r : prog.rules) {
        nlohmann::json rhs = nlohmann::json::array();
        for (const SlpItem& it : r.rhs)
            rhs.push_back(it.terminal ? prog.terminals[it.idx] : prog.rules[it.idx].name);
        rules.push_back({{"lhs", r.name}, {"rhs", rhs}});
    }
    nlohmann::json init = nlohmann::json::array();
    for (int r : initials) init.push_back(prog.rules[r].name);
    return {{"terminals", prog.terminals}, {"rules", rules}, {"initials", init}};
}

}  // namespace ufa
