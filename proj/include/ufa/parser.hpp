#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "ufa/automaton.hpp"
#include "ufa/errors.hpp"

namespace ufa {

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> toks;
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

inline long parse_int(const std::string& tok, int line_no, const std::string& what) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError(line_no, "expected " + what + ", got '" + tok + "'");
    }
    if (pos != tok.size()) throw ParseError(line_no, "expected " + what + ", got '" + tok + "'");
    return v;
}

}  // namespace detail

/// Line-based format: comments start at '#'; first line `states <n>`, second
/// `alphabet <sym...>`, then `trans <sym> <from> <to>` with 1-based states.
/// Duplicate transition lines are accepted and deduplicated.
inline Automaton parse_automaton_text(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    long n = -1;
    std::vector<std::string> alphabet;
    std::vector<BoolMatrix> matrices;
    bool have_alphabet = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        std::vector<std::string> toks = detail::tokenize(line);
        if (toks.empty()) continue;
        if (n < 0) {
            if (toks[0] != "states" || toks.size() != 2)
                throw ParseError(line_no, "expected 'states <n>'");
            n = detail::parse_int(toks[1], line_no, "state count");
            if (n <= 0) throw ParseError(line_no, "state count must be positive");
            continue;
        }
        if (!have_alphabet) {
            if (toks[0] != "alphabet" || toks.size() < 2)
                throw ParseError(line_no, "expected 'alphabet <sym> ...'");
            alphabet.assign(toks.begin() + 1, toks.end());
            for (size_t i = 0; i < alphabet.size(); ++i)
                for (size_t j = i + 1; j < alphabet.size(); ++j)
                    if (alphabet[i] == alphabet[j])
                        throw ParseError(line_no, "duplicate alphabet symbol: " + alphabet[i]);
            matrices.assign(alphabet.size(), BoolMatrix(int(n)));
            have_alphabet = true;
            continue;
        }
        if (toks[0] != "trans" || toks.size() != 4)
            throw ParseError(line_no, "expected 'trans <sym> <from> <to>'");
        int a = -1;
        for (size_t i = 0; i < alphabet.size(); ++i)
            if (alphabet[i] == toks[1]) a = int(i);
        if (a < 0) throw ParseError(line_no, "unknown letter: " + toks[1]);
        long from = detail::parse_int(toks[2], line_no, "state index");
        long to = detail::parse_int(toks[3], line_no, "state index");
        if (from < 1 || from > n)
            throw ParseError(line_no, "state index out of range: " + std::to_string(from));
        if (to < 1 || to > n)
            throw ParseError(line_no, "state index out of range: " + std::to_string(to));
        matrices[a].set(int(from - 1), int(to - 1));
    }
    if (n < 0) throw ParseError("missing 'states <n>' line");
    if (!have_alphabet) throw ParseError("missing 'alphabet' line");
    return Automaton::from_matrices(std::move(alphabet), std::move(matrices));
}

/// JSON object {"states": n, "alphabet": [...], "transitions": [[sym,from,to],...]}.
inline Automaton parse_automaton_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        long n = doc.at("states").get<long>();
        if (n <= 0) throw ParseError("state count must be positive");
        std::vector<std::string> alphabet = doc.at("alphabet").get<std::vector<std::string>>();
        std::vector<BoolMatrix> matrices(alphabet.size(), BoolMatrix(int(n)));
        for (const auto& t : doc.at("transitions")) {
            if (!t.is_array() || t.size() != 3)
                throw ParseError("transition entries must be [symbol, from, to]");
            std::string sym = t[0].get<std::string>();
            long from = t[1].get<long>(), to = t[2].get<long>();
            int a = -1;
            for (size_t i = 0; i < alphabet.size(); ++i)
                if (alphabet[i] == sym) a = int(i);
            if (a < 0) throw ParseError("unknown letter: " + sym);
            if (from < 1 || from > n || to < 1 || to > n)
                throw ParseError("state index out of range in transition");
            matrices[a].set(int(from - 1), int(to - 1));
        }
        return Automaton::from_matrices(std::move(alphabet), std::move(matrices));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid automaton JSON: ") + e.what());
    }
}

/// Accepts both formats; a document whose first non-blank character is '{'
/// is treated as JSON.
inline Automaton parse_automaton(const std::string& text) {
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') continue;
        if (c == '{') return parse_automaton_json(text);
        break;
    }
    return parse_automaton_text(text);
}

inline std::string serialize_text(const Automaton& aut) {
    std::ostringstream out;
    out << "states " << aut.states() << "\n";
    out << "alphabet";
    for (const std::string& s : aut.alphabet()) out << " " << s;
    out << "\n";
    for (int a = 0; a < aut.letters(); ++a)
        for (int p = 0; p < aut.states(); ++p)
            for (int q : aut.succ(a, p))
                out << "trans " << aut.letter(a) << " " << p + 1 << " " << q + 1 << "\n";
    return out.str();
}

inline nlohmann::json automaton_json(const Automaton& aut) {
    nlohmann::json trans = nlohmann::json::array();
    for (int a = 0; a < aut.letters(); ++a)
        for (int p = 0; p < aut.states(); ++p)
            for (int q : aut.succ(a, p))
                trans.push_back({aut.letter(a), p + 1, q + 1});
    return {{"states", aut.states()}, {"alphabet", aut.alphabet()}, {"transitions", trans}};
}

inline std::string serialize_json(const Automaton& aut) { return automaton_json(aut).dump(2) + "\n"; }

}  // namespace ufa
