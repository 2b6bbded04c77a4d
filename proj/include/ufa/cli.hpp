#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ufa/generators.hpp"
#include "ufa/oracle.hpp"
#include "ufa/parser.hpp"
#include "ufa/rank_engine.hpp"
#include "ufa/report.hpp"
#include "ufa/witness.hpp"

namespace ufa::cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void emit(const std::string& out_path, std::ostream& fallback, const std::string& payload) {
    if (out_path.empty()) {
        fallback << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot write output file: " + out_path);
    out << payload;
}

template <class F>
inline double time_median_ms(F&& f, int reps = 3) {
    std::vector<double> times;
    for (int i = 0; i < reps; ++i) {
        auto start = std::chrono::steady_clock::now();
        f();
        auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
    }
    std::sort(times.begin(), times.end());
    return times[times.size() / 2];
}

namespace detail {

inline void require_unambiguous(const Automaton& aut) {
    if (std::optional<AmbiguityWitness> w = check_unambiguous(aut))
        throw AmbiguityError("automaton is ambiguous: two runs from state " +
                             std::to_string(w->p + 1) + " to state " + std::to_string(w->q + 1) +
                             " labelled " + word_str(aut, w->word));
}

inline std::string run_check(const Automaton& aut, const std::string& format) {
    std::optional<AmbiguityWitness> witness = check_unambiguous(aut);
    SccDecomposition scc = scc_decompose(aut);
    std::vector<int> complete;
    if (!witness)
        for (const SccComponent& c : scc.components)
            complete.push_back(completeness_check(c.sub) ? 1 : 0);
    if (format == "json") {
        nlohmann::json comps = nlohmann::json::array();
        for (size_t i = 0; i < scc.components.size(); ++i) {
            nlohmann::json jc{{"states", states_json(scc.components[i].states)}};
            if (!witness) jc["complete"] = complete[i] != 0;
            comps.push_back(std::move(jc));
        }
        nlohmann::json j{{"unambiguous", !witness},
                         {"totalDfa", aut.is_total_dfa()},
                         {"components", comps}};
        if (witness) {
            nlohmann::json jw{{"p", witness->p + 1}, {"q", witness->q + 1}};
            nlohmann::json wj = nlohmann::json::array();
            for (int a : witness->word) wj.push_back(aut.letter(a));
            jw["word"] = wj;
            j["counterexample"] = jw;
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "unambiguous: " << (witness ? "no" : "yes") << "\n";
    if (witness)
        out << "counterexample: two runs from state " << witness->p + 1 << " to state "
            << witness->q + 1 << " labelled " << word_str(aut, witness->word) << "\n";
    out << "total DFA: " << (aut.is_total_dfa() ? "yes" : "no") << "\n";
    for (size_t i = 0; i < scc.components.size(); ++i) {
        out << "component " << i + 1 << ": states " << states_str(scc.components[i].states);
        if (!witness) out << "  " << (complete[i] ? "complete" : "incomplete");
        out << "\n";
    }
    return out.str();
}

inline std::string run_rank(const Automaton& aut, const std::string& format) {
    RankReport rep = rank(aut);
    if (format == "json") return rank_report_json(rep).dump(2) + "\n";
    std::ostringstream out;
    rank_report_text(out, rep, true);
    return out.str();
}

inline std::string run_weights(const Automaton& aut, const std::string& format) {
    require_unambiguous(aut);
    SccDecomposition scc = scc_decompose(aut);
    std::ostringstream out;
    nlohmann::json comps = nlohmann::json::array();
    for (size_t i = 0; i < scc.components.size(); ++i) {
        const SccComponent& c = scc.components[i];
        ComponentReport rep = analyze_component(c.sub);
        std::vector<RatVector> ub;
        if (rep.complete) ub = u_basis(c.sub, rep.weights->alpha);
        if (format == "json") {
            nlohmann::json jc{{"states", states_json(c.states)}, {"complete", rep.complete}};
            if (rep.complete) {
                jc["alpha"] = vec_json(rep.weights->alpha);
                jc["beta"] = vec_json(rep.weights->beta);
                jc["mcw"] = rat_str(rep.weights->mcw);
                jc["mrw"] = rat_str(rep.weights->mrw);
                nlohmann::json jb = nlohmann::json::array();
                for (const RatVector& v : ub) jb.push_back(vec_json(v));
                jc["uBasis"] = jb;
            }
            comps.push_back(std::move(jc));
        } else {
            out << "component " << i + 1 << ": states " << states_str(c.states) << "  "
                << (rep.complete ? "complete" : "incomplete (no weights)") << "\n";
            if (rep.complete) {
                out << "  alpha = " << vec_str(rep.weights->alpha) << "\n";
                out << "  beta  = " << vec_str(rep.weights->beta) << "\n";
                out << "  mcw = " << rat_str(rep.weights->mcw)
                    << "  mrw = " << rat_str(rep.weights->mrw) << "\n";
                if (ub.empty()) out << "  U basis: (empty)\n";
                for (const RatVector& v : ub) out << "  U basis: " << vec_str(v) << "\n";
            }
        }
    }
    if (format == "json") return nlohmann::json{{"components", comps}}.dump(2) + "\n";
    return out.str();
}

inline std::string run_mer(const Automaton& aut, const std::string& format) {
    require_unambiguous(aut);
    MerMap mer = mer_map(aut);
    if (format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const StateSet& s : mer) j.push_back(states_json(s));
        return nlohmann::json{{"mer", j}}.dump(2) + "\n";
    }
    std::ostringstream out;
    for (size_t q = 0; q < mer.size(); ++q)
        out << "Mer(" << q + 1 << ") = " << states_str(mer[q]) << "\n";
    return out.str();
}

constexpr uint64_t kExpandLimit = 1000000;

inline std::string run_witness(const Automaton& aut, const std::string& format, bool expand) {
    MinRankWitness w = min_rank_word(aut);
    uint64_t length = slp_word_length(w.slp.prog, w.slp.initial);
    std::string expanded;
    bool expanded_ok = false;
    if (expand && length <= kExpandLimit) {
        Word word = eval_slp_word(w.slp.prog, w.slp.initial);
        expanded = word_str(aut, word);
        expanded_ok = true;
    }
    if (format == "json") {
        nlohmann::json rects = nlohmann::json::array();
        for (const auto& [c, r] : w.cesari.rectangles)
            rects.push_back({{"C", states_json(c)}, {"R", states_json(r)}});
        nlohmann::json j{{"rank", w.rank},
                         {"slp", slp_json(w.slp.prog, {w.slp.initial})},
                         {"matrix", matrix_rows(w.matrix)},
                         {"rectangles", rects},
                         {"expandedLength", length}};
        if (expand) {
            if (expanded_ok)
                j["expanded"] = expanded;
            else
                j["expanded"] = nullptr;
        }
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "rank: " << w.rank << "\n";
    slp_text(out, w.slp.prog, {w.slp.initial});
    out << "expanded length: " << length << "\n";
    if (expand) {
        if (expanded_ok)
            out << "expanded: " << expanded << "\n";
        else
            out << "expanded: refused (length " << length << " exceeds " << kExpandLimit << ")\n";
    }
    out << "matrix:\n";
    for (const std::string& row : matrix_rows(w.matrix)) out << "  " << row << "\n";
    for (size_t i = 0; i < w.cesari.rectangles.size(); ++i)
        out << "C" << i + 1 << " = " << states_str(w.cesari.rectangles[i].first) << "  R" << i + 1
            << " = " << states_str(w.cesari.rectangles[i].second) << "\n";
    return out.str();
}

inline std::string run_oracle(const Automaton& aut, const std::string& format, long max_monoid) {
    require_unambiguous(aut);
    MonoidTable table = enumerate_monoid(aut, size_t(max_monoid));
    bool criteria_applicable = scc_decompose(aut).count() == 1 && completeness_check(aut);
    CriterionReport crit;
    if (criteria_applicable) crit = criterion_report(aut);
    if (format == "json") {
        nlohmann::json j{{"monoidSize", table.size()},
                         {"capped", table.capped},
                         {"zeroMatrix", table.has_zero}};
        if (!table.capped) {
            BruteMinRank brute = min_rank_brute(table);
            j["minRealRank"] = brute.min_real_rank;
            j["minDistinctColumns"] = brute.min_distinct_columns;
        }
        j["criteriaApplicable"] = criteria_applicable;
        if (criteria_applicable) j["criteria"] = criterion_json(crit);
        return j.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "monoid size: " << table.size() << (table.capped ? " (capped)" : " (closed)") << "\n";
    out << "zero matrix: " << (table.has_zero ? "present" : "absent") << "\n";
    if (!table.capped) {
        BruteMinRank brute = min_rank_brute(table);
        out << "min real rank: " << brute.min_real_rank << "\n";
        out << "min distinct nonzero columns: " << brute.min_distinct_columns << "\n";
    }
    if (criteria_applicable)
        criterion_text(out, crit);
    else
        out << "criteria: not applicable (needs a complete strongly connected automaton)\n";
    return out.str();
}

inline std::string run_criterion(const Automaton& aut, const std::string& format) {
    require_unambiguous(aut);
    CriterionReport crit = criterion_report(aut);
    if (format == "json") return criterion_json(crit).dump(2) + "\n";
    std::ostringstream out;
    criterion_text(out, crit);
    return out.str();
}

inline std::string run_bench(uint64_t seed) {
    std::ostringstream out;
    out << "family,n,m,seed,rank_ms,witness_ms,dfa_witness_ms\n";
    auto row = [&](const std::string& family, const Automaton& aut, uint64_t s, bool dfa_path) {
        RankReport rep;
        double rank_ms = time_median_ms([&] { rep = rank(aut); });
        double witness_ms = time_median_ms([&] { min_rank_word(aut); });
        out << family << "," << aut.states() << "," << aut.letters() << "," << s << ","
            << rank_ms << "," << witness_ms << ",";
        if (dfa_path) out << time_median_ms([&] { dfa_min_rank_word(aut, rep.total); });
        out << "\n";
    };
    for (int n : {10, 20, 40}) row("cerny", gen_cerny(n), 0, true);
    for (int n : {8, 16, 32})
        row("random", random_codeterministic_ufa(n, 2, seed + n), seed + n, false);
    return out.str();
}

}  // namespace detail

/// Command-line entry point; returns the process exit code (0 ok, 1 input
/// error, 2 internal assertion failure).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"minimum rank of zero-one matrix monoids / unambiguous automata"};
    app.require_subcommand(1);

    std::string format = "text", out_path, input, family;
    bool expand = false;
    long max_monoid = 20000;
    uint64_t seed = 1;
    int n = 4, m = 2;
    double density = 0.35;

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--out", out_path, "write the report to a file");
        if (needs_input) sub->add_option("input", input, "automaton file")->required();
    };

    CLI::App* c_check = app.add_subcommand("check", "unambiguity, SCCs, completeness, DFA flag");
    add_common(c_check, true);
    CLI::App* c_rank = app.add_subcommand("rank", "minimum rank of the monoid");
    add_common(c_rank, true);
    CLI::App* c_weights = app.add_subcommand("weights", "alpha, beta, mcw, mrw, U basis");
    add_common(c_weights, true);
    CLI::App* c_mer = app.add_subcommand("mer", "mergeable-state sets");
    add_common(c_mer, true);
    CLI::App* c_witness = app.add_subcommand("witness", "minimum-rank word as an SLP");
    add_common(c_witness, true);
    c_witness->add_flag("--expand", expand, "also print the expanded word (refused above 10^6)");
    CLI::App* c_oracle = app.add_subcommand("oracle", "brute-force monoid enumeration report");
    add_common(c_oracle, true);
    c_oracle->add_option("--max-monoid", max_monoid, "enumeration cap")->default_val(20000);
    CLI::App* c_criterion = app.add_subcommand("criterion", "algebraic synchronisation criteria");
    add_common(c_criterion, true);
    CLI::App* c_gen = app.add_subcommand("gen", "emit a generated automaton file");
    c_gen->add_option("family", family, "ex44 ex46 fig2 fig4 flower cerny random")->required();
    c_gen->add_option("--n", n, "state count (cerny, random)");
    c_gen->add_option("--m", m, "alphabet size (random)");
    c_gen->add_option("--density", density, "edge density (random)");
    c_gen->add_option("--seed", seed, "PRNG seed (random)");
    add_common(c_gen, false);
    CLI::App* c_bench = app.add_subcommand("bench", "timing table (CSV)");
    c_bench->add_option("--seed", seed, "PRNG seed");
    c_bench->add_option("--out", out_path, "write the report to a file");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        std::string payload;
        if (*c_gen) {
            Automaton aut = generate_family(family, n, m, density, seed);
            payload = format == "json" ? serialize_json(aut) : serialize_text(aut);
        } else if (*c_bench) {
            payload = detail::run_bench(seed);
        } else {
            Automaton aut = parse_automaton(read_file(input));
            if (*c_check) payload = detail::run_check(aut, format);
            if (*c_rank) payload = detail::run_rank(aut, format);
            if (*c_weights) payload = detail::run_weights(aut, format);
            if (*c_mer) payload = detail::run_mer(aut, format);
            if (*c_witness) payload = detail::run_witness(aut, format, expand);
            if (*c_oracle) payload = detail::run_oracle(aut, format, max_monoid);
            if (*c_criterion) payload = detail::run_criterion(aut, format);
        }
        emit(out_path, out, payload);
        return 0;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ufa::cli
