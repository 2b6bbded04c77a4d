#pragma once

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ufa/oracle.hpp"
#include "ufa/rank_engine.hpp"
#include "ufa/slp.hpp"
#include "ufa/witness.hpp"

namespace ufa {

inline std::string states_str(const std::vector<int>& states) {
    std::string s = "{";
    for (size_t i = 0; i < states.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(states[i] + 1);
    }
    return s + "}";
}

inline std::string states_str(const StateSet& set) { return states_str(set.elements()); }

inline std::string vec_str(const RatVector& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rat_str(v[i]);
    }
    return s + ")";
}

inline nlohmann::json vec_json(const RatVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const Rational& x : v) out.push_back(rat_str(x));
    return out;
}

inline nlohmann::json states_json(const std::vector<int>& states) {
    nlohmann::json out = nlohmann::json::array();
    for (int q : states) out.push_back(q + 1);
    return out;
}

inline nlohmann::json states_json(const StateSet& set) { return states_json(set.elements()); }

inline std::vector<std::string> matrix_rows(const BoolMatrix& m) {
    std::vector<std::string> rows;
    for (int i = 0; i < m.dim(); ++i) {
        std::string r;
        for (int j = 0; j < m.dim(); ++j) r += m.get(i, j) ? '1' : '0';
        rows.push_back(std::move(r));
    }
    return rows;
}

inline nlohmann::json rank_report_json(const RankReport& rep) {
    nlohmann::json comps = nlohmann::json::array();
    for (const ComponentReport& c : rep.components) {
        nlohmann::json jc{{"states", states_json(c.states)},
                          {"complete", c.complete},
                          {"rank", c.rank}};
        if (c.weights) {
            jc["alpha"] = vec_json(c.weights->alpha);
            jc["beta"] = vec_json(c.weights->beta);
            jc["mcw"] = rat_str(c.weights->mcw);
            jc["mrw"] = rat_str(c.weights->mrw);
            jc["uDim"] = c.u_dim;
        }
        comps.push_back(std::move(jc));
    }
    return {{"components", comps}, {"totalRank", rep.total}};
}

inline void rank_report_text(std::ostream& out, const RankReport& rep, bool with_weights) {
    for (size_t i = 0; i < rep.components.size(); ++i) {
        const ComponentReport& c = rep.components[i];
        out << "component " << i + 1 << ": states " << states_str(c.states) << "  "
            << (c.complete ? "complete" : "incomplete") << "  rank " << c.rank << "\n";
        if (with_weights && c.weights) {
            out << "  alpha = " << vec_str(c.weights->alpha) << "\n";
            out << "  beta  = " << vec_str(c.weights->beta) << "\n";
            out << "  mcw = " << rat_str(c.weights->mcw) << "  mrw = " << rat_str(c.weights->mrw)
                << "  dim U = " << c.u_dim << "\n";
        }
    }
    out << "total rank: " << rep.total << "\n";
}

inline nlohmann::json criterion_json(const CriterionReport& r) {
    nlohmann::json j{{"states", r.n},
                     {"rank", r.r},
                     {"truncated", r.truncated},
                     {"dimV", r.dim_v},
                     {"dimW", r.dim_w},
                     {"dimSpanMCol", r.dim_span_mcol},
                     {"dimSpanMRow", r.dim_span_mrow},
                     {"mcolCount", r.mcol_count},
                     {"mrowCount", r.mrow_count},
                     {"dimU", r.dim_u},
                     {"dimUPerp", r.dim_u_perp()}};
    if (!r.truncated) {
        j["columns"] = {{"vSubsetSpanMCol", r.v_subset_mcol},
                        {"dimBound", r.col_dim_bound},
                        {"equalityIffRankOne", r.col_equality_iff}};
        j["rows"] = {{"wSubsetSpanMRow", r.w_subset_mrow},
                     {"dimBound", r.row_dim_bound},
                     {"equalityIffRankOne", r.row_equality_iff}};
        if (r.is_dfa) j["dfaCriterion"] = r.dfa_criterion;
        j["allHold"] = r.all_hold();
    }
    return j;
}

inline void criterion_text(std::ostream& out, const CriterionReport& r) {
    if (r.truncated) {
        out << "column enumeration truncated: criteria inconclusive\n";
        return;
    }
    out << "rank r = " << r.r << "\n";
    out << "dim V = " << r.dim_v << ", dim W = " << r.dim_w << ", dim span MCol = "
        << r.dim_span_mcol << ", dim span MRow = " << r.dim_span_mrow << "\n";
    out << "|MCol| = " << r.mcol_count << ", |MRow| = " << r.mrow_count << ", dim U = " << r.dim_u
        << ", dim U_perp = " << r.dim_u_perp() << "\n";
    auto pf = [&](bool b) { return b ? "pass" : "FAIL"; };
    out << "(a) V within span MCol: " << pf(r.v_subset_mcol) << "\n";
    out << "(b) dim V + r - 1 <= dim span MCol: " << pf(r.col_dim_bound) << "\n";
    out << "(c) V = span MCol iff r = 1: " << pf(r.col_equality_iff) << "\n";
    out << "(a') W within span MRow: " << pf(r.w_subset_mrow) << "\n";
    out << "(b') dim W + r - 1 <= dim span MRow: " << pf(r.row_dim_bound) << "\n";
    out << "(c') W = span MRow iff r = 1: " << pf(r.row_equality_iff) << "\n";
    if (r.is_dfa) out << "(dfa) span of weighted rows is full iff r = 1: " << pf(r.dfa_criterion) << "\n";
}

inline void slp_text(std::ostream& out, const SlpProgram& prog, const std::vector<int>& initials) {
    out << "slp (total rule length " << prog.total_length() << "):\n";
    for (const SlpRule& r : prog.rules) {
        out << "  " << r.name << " ->";
        if (r.rhs.empty()) out << " (empty)";
        for (const SlpItem& it : r.rhs)
            out << " " << (it.terminal ? prog.terminals[it.idx] : prog.rules[it.idx].name);
        out << "\n";
    }
    out << "initial:";
    for (int r : initials) out << " " << prog.rules[r].name;
    out << "\n";
}

}  // namespace ufa
