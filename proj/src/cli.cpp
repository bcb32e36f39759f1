#include "walab/cli.hpp"

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "walab/commtools.hpp"
#include "walab/errors.hpp"
#include "walab/families.hpp"
#include "walab/fsa.hpp"
#include "walab/hankel.hpp"
#include "walab/learner.hpp"
#include "walab/serialize.hpp"
#include "walab/wautomaton.hpp"
#include "walab/words.hpp"

namespace walab {

namespace {

std::string field_display(const FieldSpec& f) {
    switch (f.kind()) {
    case FieldSpec::Kind::gf2: return "GF2";
    case FieldSpec::Kind::gfp:
        return "GF(" + std::to_string(f.characteristic()) + ")";
    case FieldSpec::Kind::rational: return "Q";
    }
    throw InvariantBreach("unhandled field kind");
}

std::string q_decimal(const mpq_class& q) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", mpq_get_d(q.get_mpq_t()));
    return buf;
}

// "5/16 (0.3125)"; bounds below one bound nothing and say so.
std::string q_pretty(const mpq_class& q, bool flag_vacuous) {
    std::string s = q.get_str() + " (" + q_decimal(q);
    if (flag_vacuous && q < 1) s += ", vacuous";
    return s + ")";
}

std::string closed_form_cell(const NfaBoundReport& rep) {
    if (rep.closed_form) return q_pretty(*rep.closed_form, true);
    if (rep.closed_form_squared) {
        std::string s = "sqrt(" + rep.closed_form_squared->get_str() + ")";
        if (*rep.closed_form_squared < 1) s += " (vacuous)";
        return s;
    }
    return "n/a";
}

Word parse_cli_word(const std::string& text, const std::string& sep) {
    if (sep.empty()) return parse_word(text);
    if (sep.size() != 1)
        throw Error("--sep takes exactly one character");
    return parse_word(text, sep[0]);
}

Semantics semantics_from(const std::string& name) {
    if (name == "wa2") return Semantics::wa2;
    if (name == "nfa") return Semantics::nfa;
    if (name == "dfa") return Semantics::dfa;
    throw InvariantBreach("unchecked semantics name " + name);
}

// "file:PATH" loads an automaton (machines read under parity acceptance
// in their declared field); anything else is a family name.
MembershipOracle resolve_oracle(const std::string& name) {
    if (name.rfind("file:", 0) == 0) {
        LoadedAutomaton la = load_automaton_file(name.substr(5));
        if (la.is_wa()) return wa_oracle(la.wa(), name);
        return fsa_oracle(la.fsa(), Semantics::wa2, la.field, name);
    }
    return family_oracle(name);
}

// The "<n>" suffix of a family-style name, for sizing its table.
std::optional<std::size_t> index_suffix(const std::string& name) {
    const auto colon = name.rfind(':');
    if (colon == std::string::npos) return std::nullopt;
    const std::string digits = name.substr(colon + 1);
    if (digits.empty() ||
        digits.find_first_not_of("0123456789") != std::string::npos)
        return std::nullopt;
    return std::stoul(digits);
}

void run_eval(const std::string& file, const std::string& word,
              const std::string& semantics, const std::string& sep,
              std::ostream& out) {
    const LoadedAutomaton la = load_automaton_file(file);
    const Word w = parse_cli_word(word, sep);
    if (la.is_wa()) {
        if (semantics.empty()) {
            out << evaluate(la.wa(), w).to_string() << "\n";
            return;
        }
        if (semantics == "wa2") {
            out << (wa2_accepts(la.wa(), w) ? "accept" : "reject") << "\n";
            return;
        }
        throw Error("--semantics " + semantics +
                    " needs a machine file (kind \"fsa\")");
    }
    const std::string sem = semantics.empty() ? "wa2" : semantics;
    if (sem == "count") {
        out << count_accepting_paths(la.fsa(), w).get_str() << "\n";
        return;
    }
    out << (accepts(la.fsa(), w, semantics_from(sem)) ? "accept" : "reject")
        << "\n";
}

void run_learn(const std::string& target, bool transcript,
               const std::string& out_path, std::ostream& out) {
    const WeightedAutomaton goal = load_automaton_file(target).as_wa();
    SimulatedTeacher teacher(goal);
    const LearnResult r = learn(teacher, transcript);
    for (const std::string& line : r.transcript) out << line << "\n";
    out << "CORRECT after " << r.equivalence_queries
        << " equivalence queries, " << r.membership_words
        << " membership queries\n";
    save_automaton_file(out_path, automaton_to_text(r.automaton));
}

void run_rank(const std::string& oracle, std::size_t length,
              std::ostream& out) {
    const MembershipOracle o = resolve_oracle(oracle);
    const std::size_t r = hankel_rank(restricted_hankel(o, length));
    out << "Hankel rank (" << field_display(o.field()) << ", len " << length
        << "): " << r << "\n";
}

void run_minimize(const std::string& file, const std::string& out_path,
                  std::ostream& out) {
    const WeightedAutomaton a = load_automaton_file(file).as_wa();
    const WeightedAutomaton m = minimize(a);
    out << "dim " << a.dim() << " -> " << m.dim() << "\n";
    save_automaton_file(out_path, automaton_to_text(m));
}

void run_equiv(const std::string& file_a, const std::string& file_b,
               std::ostream& out) {
    const WeightedAutomaton a = load_automaton_file(file_a).as_wa();
    const WeightedAutomaton b = load_automaton_file(file_b).as_wa();
    const EquivalenceResult r = equivalent(a, b);
    if (r.equivalent)
        out << "CORRECT\n";
    else
        out << word_to_string(*r.witness) << "\n";
}

void run_family(const std::string& name, const std::string& out_path,
                std::ostream& out) {
    const Fsa a = family_fsa(name);
    save_automaton_file(out_path, automaton_to_text(a, FieldSpec::gf2()));
    out << name << ": " << a.size() << " states -> " << out_path << "\n";
}

void run_commc(const std::string& fn, std::optional<std::size_t> length,
               const std::string& mode, std::ostream& out) {
    const MembershipOracle o = resolve_oracle(fn);
    std::optional<std::size_t> n = length ? length : index_suffix(fn);
    if (!n)
        throw Error("cannot infer a table length from '" + fn +
                    "'; pass --length");

    if (mode == "disc") {
        const ZeroOneMatrix table(restricted_hankel(o, *n));
        const std::string pretty = q_pretty(discrepancy_exact(table), false);
        out << "disc(" << fn << ") = " << pretty << "\n";
        return;
    }
    if (mode == "chi1") {
        const ZeroOneMatrix table(restricted_hankel(o, *n));
        const std::size_t cover = chi1_exact(table);
        out << "chi1(" << fn << ") = " << cover << "\n";
        return;
    }
    const NfaBoundReport rep = nfa_size_lower_bound(o, *n);
    out << "n | ones | disc | disc bound | chi1 | closed form\n";
    out << rep.n << " | " << rep.ones << " | "
        << (rep.discrepancy ? q_pretty(*rep.discrepancy, false) : "n/a")
        << " | "
        << (rep.disc_bound ? q_pretty(*rep.disc_bound, true) : "n/a") << " | "
        << (rep.chi1 ? std::to_string(*rep.chi1) : "n/a") << " | "
        << closed_form_cell(rep) << "\n";
}

void run_separation(std::size_t n, std::ostream& out) {
    const FieldSpec g2 = FieldSpec::gf2();
    const std::string tag = std::to_string(n);

    const Fsa marker = waprod_fsa(n);
    const WeightedAutomaton minimized = minimize(fsa_to_wa(marker, g2));
    const MembershipOracle ip = family_oracle("ip:" + tag);
    const std::size_t ip_rank = hankel_rank(restricted_hankel(ip, n));
    const NfaBoundReport rep = nfa_size_lower_bound(ip, n);

    out << "separation at n=" << n << "\n";
    out << "product-marker machine waprod:" << tag << "\n";
    out << "  WA2 states: " << marker.size() << "\n";
    out << "  minimized WA2 dim: " << minimized.dim() << "\n";
    out << "  Hankel rank (GF2, len " << n << "): " << ip_rank << "\n";
    out << "  existence-acceptance lower bounds for ip:" << tag << "\n";
    out << "    ones: " << rep.ones << "\n";
    out << "    discrepancy bound: "
        << (rep.disc_bound ? q_pretty(*rep.disc_bound, true) : "n/a") << "\n";
    if (n <= 2 && rep.chi1)
        out << "    chi1(ip:" << tag << ") = " << *rep.chi1 << "\n";
    out << "    closed-form bound: " << closed_form_cell(rep) << "\n";

    const Fsa neq = neq_nfa(n);
    const MembershipOracle nq = family_oracle("neq:" + tag);
    const std::size_t neq_rank = hankel_rank(restricted_hankel(nq, n));
    out << "inequality machine neq:" << tag << "\n";
    out << "  NFA states: " << neq.size() << "\n";
    out << "  Hankel rank (GF2, len " << n << "): " << neq_rank << "\n";
}

} // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
    CLI::App app{"weighted-automata laboratory", "walab"};
    app.require_subcommand(1);

    std::string file, word, semantics, sep, out_path, target, oracle;
    std::string equiv_a, equiv_b, family_name, commc_fn, commc_mode;
    std::size_t length = 0, demo_n = 0;
    std::optional<std::size_t> commc_length;
    bool transcript = false;

    auto* eval = app.add_subcommand("eval", "evaluate an automaton on a word");
    eval->add_option("--automaton", file, "automaton file")->required();
    eval->add_option("--word", word,
                     "input word; single-character symbols unless --sep");
    eval->add_option("--semantics", semantics,
                     "acceptance for machines (default wa2); weighted "
                     "automata print their value unless wa2 is asked")
        ->check(CLI::IsMember({"wa2", "nfa", "dfa", "count"}));
    eval->add_option("--sep", sep, "symbol separator inside --word");
    eval->callback([&] { run_eval(file, word, semantics, sep, out); });

    auto* learn_cmd =
        app.add_subcommand("learn", "learn a target from queries");
    learn_cmd->add_option("--target", target, "target automaton file")
        ->required();
    learn_cmd->add_flag("--transcript", transcript, "print every query");
    learn_cmd->add_option("-o,--out", out_path, "learned automaton file")
        ->required();
    learn_cmd->callback([&] { run_learn(target, transcript, out_path, out); });

    auto* rank = app.add_subcommand(
        "rank", "rank of the restricted length-n value table");
    rank->add_option("--oracle", oracle,
                     "family name (waprod:n, neq:n, ip:n) or file:PATH")
        ->required();
    rank->add_option("--length", length, "word length n")->required();
    rank->callback([&] { run_rank(oracle, length, out); });

    auto* minimize_cmd =
        app.add_subcommand("minimize", "minimal equivalent weighted automaton");
    minimize_cmd->add_option("--automaton", file, "automaton file")
        ->required();
    minimize_cmd->add_option("-o,--out", out_path, "minimized file")
        ->required();
    minimize_cmd->callback([&] { run_minimize(file, out_path, out); });

    auto* equiv =
        app.add_subcommand("equiv", "compare two automata exactly");
    equiv->add_option("a", equiv_a, "first automaton file")->required();
    equiv->add_option("b", equiv_b, "second automaton file")->required();
    equiv->callback([&] { run_equiv(equiv_a, equiv_b, out); });

    auto* family =
        app.add_subcommand("family", "write a named machine family member");
    family->add_option("name", family_name, "waprod:<n> or neq:<n>")
        ->required();
    family->add_option("-o,--out", out_path, "machine file")->required();
    family->callback([&] { run_family(family_name, out_path, out); });

    auto* commc = app.add_subcommand(
        "commc", "communication measures of a function's value table");
    commc->add_option("--fn", commc_fn, "oracle name, e.g. ip:2")->required();
    commc->add_option("--length", commc_length,
                      "table word length (default: the name's index)");
    commc->add_option("mode", commc_mode, "disc, chi1, or bounds")
        ->required()
        ->check(CLI::IsMember({"disc", "chi1", "bounds"}));
    commc->callback([&] { run_commc(commc_fn, commc_length, commc_mode, out); });

    auto* demo = app.add_subcommand("demo", "stable demonstration tables");
    demo->require_subcommand(1);
    auto* separation = demo->add_subcommand(
        "separation", "weighted-vs-existence acceptance size gap");
    separation->add_option("--n", demo_n, "instance size")->required();
    separation->callback([&] { run_separation(demo_n, out); });

    std::vector<const char*> argv{"walab"};
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace walab
