#include <doctest.h>

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "walab/cli.hpp"
#include "walab/families.hpp"
#include "walab/fsa.hpp"
#include "walab/serialize.hpp"
#include "walab/wautomaton.hpp"
#include "walab/words.hpp"

#include "test_support.hpp"

using namespace walab;
using namespace walab::testing;

namespace {

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

// Writes the product-marker machine for n = 2 and returns the path.
std::string waprod2_path() {
    const std::string path = "cli_waprod2.json";
    const auto r = run({"family", "waprod:2", "-o", path});
    REQUIRE(r.code == 0);
    return path;
}

} // namespace

TEST_CASE("family emits machine files the library reproduces") {
    const auto r = run({"family", "waprod:2", "-o", "cli_fam.json"});
    CHECK(r.code == 0);
    CHECK(r.out == "waprod:2: 4 states -> cli_fam.json\n");
    CHECK(r.err.empty());
    const LoadedAutomaton back = load_automaton_file("cli_fam.json");
    REQUIRE(!back.is_wa());
    CHECK(back.field == FieldSpec::gf2());
    CHECK(back.fsa().states() == waprod_fsa(2).states());
    CHECK(back.fsa().transition_triples().size() ==
          waprod_fsa(2).transition_triples().size());

    const auto r2 = run({"family", "neq:2", "-o", "cli_fam.json"});
    CHECK(r2.code == 0);
    CHECK(r2.out == "neq:2: 6 states -> cli_fam.json\n");
    CHECK(load_automaton_file("cli_fam.json").fsa().states().size() == 6);

    const auto bad = run({"family", "ip:2", "-o", "cli_fam.json"});
    CHECK(bad.code == 1);
    CHECK(bad.out.empty());
    CHECK(contains(bad.err, "no machine family"));
    std::remove("cli_fam.json");
}

TEST_CASE("eval covers every acceptance criterion") {
    const std::string p = waprod2_path();

    CHECK(run({"eval", "--automaton", p, "--word", "1010",
               "--semantics", "wa2"}).out == "accept\n");
    CHECK(run({"eval", "--automaton", p, "--word", "1000",
               "--semantics", "wa2"}).out == "reject\n");
    // Two marker positions pair up: 1111 has two accepting paths.
    CHECK(run({"eval", "--automaton", p, "--word", "1111",
               "--semantics", "count"}).out == "2\n");
    CHECK(run({"eval", "--automaton", p, "--word", "1111",
               "--semantics", "wa2"}).out == "reject\n");
    CHECK(run({"eval", "--automaton", p, "--word", "1111",
               "--semantics", "nfa"}).out == "accept\n");
    // Machine files default to the parity criterion; empty word rejects.
    CHECK(run({"eval", "--automaton", p, "--word", "1010"}).out == "accept\n");
    CHECK(run({"eval", "--automaton", p, "--word", ""}).out == "reject\n");
    // The marker machine guesses a position, so it is no DFA.
    const auto dfa = run({"eval", "--automaton", p, "--word", "10",
                          "--semantics", "dfa"});
    CHECK(dfa.code == 1);
    CHECK(contains(dfa.err, "error:"));
    // Symbols outside the machine's alphabet are domain errors.
    const auto badword = run({"eval", "--automaton", p, "--word", "102"});
    CHECK(badword.code == 1);
    CHECK(badword.out.empty());

    // A weighted file without --semantics prints the exact value.
    const std::string wp = "cli_waprod2_wa.json";
    save_automaton_file(
        wp, automaton_to_text(fsa_to_wa(waprod_fsa(2), FieldSpec::gf2())));
    CHECK(run({"eval", "--automaton", wp, "--word", "1010"}).out == "1\n");
    CHECK(run({"eval", "--automaton", wp, "--word", "1000"}).out == "0\n");
    CHECK(run({"eval", "--automaton", wp, "--word", "1010",
               "--semantics", "wa2"}).out == "accept\n");
    const auto cnt = run({"eval", "--automaton", wp, "--word", "1010",
                          "--semantics", "count"});
    CHECK(cnt.code == 1);
    CHECK(contains(cnt.err, "machine file"));
    std::remove(wp.c_str());
    std::remove(p.c_str());
}

TEST_CASE("eval splits words at the separator") {
    const std::string wp = "cli_const.json";
    const FieldSpec q = FieldSpec::rationals();
    save_automaton_file(
        wp, automaton_to_text(constant_automaton(
                q, Alphabet({"aa", "bb"}), Scalar::parse(q, "5/3"))));
    const auto r = run({"eval", "--automaton", wp, "--word", "aa.bb.aa",
                        "--sep", "."});
    CHECK(r.code == 0);
    CHECK(r.out == "5/3\n");
    // Without the separator the word cannot be split into known symbols.
    CHECK(run({"eval", "--automaton", wp, "--word", "aabb"}).code == 1);
    std::remove(wp.c_str());
}

TEST_CASE("learn recovers the target within the query budget") {
    const std::string p = waprod2_path();
    const auto r = run({"learn", "--target", p, "-o", "cli_learned.json"});
    REQUIRE(r.code == 0);
    CHECK(r.err.empty());
    std::size_t eq = 0, mq = 0;
    REQUIRE(std::sscanf(r.out.c_str(),
                        "CORRECT after %zu equivalence queries, "
                        "%zu membership queries",
                        &eq, &mq) == 2);
    CHECK(eq <= 5);
    CHECK(mq > 0);

    const LoadedAutomaton h = load_automaton_file("cli_learned.json");
    REQUIRE(h.is_wa());
    const auto target = fsa_to_wa(waprod_fsa(2), FieldSpec::gf2());
    CHECK(equivalent(h.wa(), target).equivalent);

    // Same invocation, same bytes.
    const auto r2 = run({"learn", "--target", p, "-o", "cli_learned.json"});
    CHECK(r2.out == r.out);

    const auto tr = run({"learn", "--target", p, "--transcript", "-o",
                         "cli_learned.json"});
    REQUIRE(tr.code == 0);
    std::istringstream lines(tr.out);
    std::string line, last;
    std::size_t mq_lines = 0, eq_lines = 0;
    bool first = true;
    while (std::getline(lines, line)) {
        if (first) {
            CHECK(line == "MQ - -> 1 |S|=1 rank=1");
            first = false;
        }
        if (line.rfind("MQ ", 0) == 0) ++mq_lines;
        if (line.rfind("EQ ", 0) == 0) ++eq_lines;
        last = line;
    }
    CHECK(mq_lines == mq);
    CHECK(eq_lines == eq);
    CHECK(contains(last, "CORRECT after"));
    std::remove("cli_learned.json");
    std::remove(p.c_str());
}

TEST_CASE("rank reports restricted table ranks for every oracle form") {
    CHECK(run({"rank", "--oracle", "ip:2", "--length", "2"}).out ==
          "Hankel rank (GF2, len 2): 2\n");
    CHECK(run({"rank", "--oracle", "ip:4", "--length", "4"}).out ==
          "Hankel rank (GF2, len 4): 4\n");
    CHECK(run({"rank", "--oracle", "neq:3", "--length", "3"}).out ==
          "Hankel rank (GF2, len 3): 8\n");
    CHECK(run({"rank", "--oracle", "waprod:2", "--length", "2"}).out ==
          "Hankel rank (GF2, len 2): 2\n");

    const std::string p = waprod2_path();
    CHECK(run({"rank", "--oracle", "file:" + p, "--length", "2"}).out ==
          "Hankel rank (GF2, len 2): 2\n");
    const std::string wp = "cli_rank_wa.json";
    save_automaton_file(
        wp, automaton_to_text(fsa_to_wa(waprod_fsa(2), FieldSpec::gf2())));
    CHECK(run({"rank", "--oracle", "file:" + wp, "--length", "2"}).out ==
          "Hankel rank (GF2, len 2): 2\n");
    std::remove(wp.c_str());
    std::remove(p.c_str());

    const auto bad = run({"rank", "--oracle", "zeta:3", "--length", "2"});
    CHECK(bad.code == 1);
    CHECK(bad.out.empty());
}

TEST_CASE("minimize reports and writes the compressed machine") {
    const std::string wp = "cli_min_in.json";
    save_automaton_file(
        wp, automaton_to_text(fsa_to_wa(waprod_fsa(2), FieldSpec::gf2())));
    const auto r = run({"minimize", "--automaton", wp, "-o",
                        "cli_min_out.json"});
    CHECK(r.code == 0);
    CHECK(r.out == "dim 4 -> 4\n");
    const LoadedAutomaton m = load_automaton_file("cli_min_out.json");
    REQUIRE(m.is_wa());
    CHECK(m.wa().dim() == 4);
    CHECK(equivalent(m.wa(), fsa_to_wa(waprod_fsa(2), FieldSpec::gf2()))
              .equivalent);
    std::remove(wp.c_str());
    std::remove("cli_min_out.json");
}

TEST_CASE("equiv prints the verdict or a concrete witness") {
    const std::string p = waprod2_path();
    const std::string wp = "cli_equiv_wa.json";
    save_automaton_file(
        wp, automaton_to_text(fsa_to_wa(waprod_fsa(2), FieldSpec::gf2())));
    // A machine file and its embedding agree everywhere.
    const auto same = run({"equiv", p, wp});
    CHECK(same.code == 0);
    CHECK(same.out == "CORRECT\n");

    const std::string np = "cli_equiv_neq.json";
    REQUIRE(run({"family", "neq:2", "-o", np}).code == 0);
    const auto diff = run({"equiv", p, np});
    CHECK(diff.code == 0);
    REQUIRE(!diff.out.empty());
    std::string witness = diff.out;
    witness.pop_back(); // trailing newline
    const Word w =
        witness == "-" ? Word{} : parse_word(witness);
    const auto a = fsa_to_wa(waprod_fsa(2), FieldSpec::gf2());
    const auto b = fsa_to_wa(neq_nfa(2), FieldSpec::gf2());
    CHECK(evaluate(a, w) != evaluate(b, w));
    std::remove(p.c_str());
    std::remove(wp.c_str());
    std::remove(np.c_str());
}

TEST_CASE("commc prints certified quantities in fixed form") {
    CHECK(run({"commc", "--fn", "ip:1", "disc"}).out ==
          "disc(ip:1) = 1/2 (0.5)\n");
    CHECK(run({"commc", "--fn", "ip:2", "disc"}).out ==
          "disc(ip:2) = 5/16 (0.3125)\n");
    CHECK(run({"commc", "--fn", "ip:2", "chi1"}).out == "chi1(ip:2) = 3\n");
    CHECK(run({"commc", "--fn", "neq:2", "chi1"}).out == "chi1(neq:2) = 4\n");
    // An all-zero table has full correlation and an empty cover.
    CHECK(run({"commc", "--fn", "ip:2", "--length", "1", "disc"}).out ==
          "disc(ip:2) = 1 (1)\n");
    CHECK(run({"commc", "--fn", "ip:2", "--length", "1", "chi1"}).out ==
          "chi1(ip:2) = 0\n");

    const auto bounds = run({"commc", "--fn", "ip:2", "bounds"});
    CHECK(bounds.code == 0);
    CHECK(bounds.out ==
          "n | ones | disc | disc bound | chi1 | closed form\n"
          "2 | 6 | 5/16 (0.3125) | 6/5 (1.2) | 3 | 1/2 (0.5, vacuous)\n");
    const auto bounds4 = run({"commc", "--fn", "ip:4", "bounds"});
    CHECK(bounds4.out ==
          "n | ones | disc | disc bound | chi1 | closed form\n"
          "4 | 120 | 7/64 (0.109375) | 30/7 (4.28571) | n/a | 1 (1)\n");

    // Guarded sizes fail cleanly, with nothing on stdout.
    const auto big = run({"commc", "--fn", "ip:5", "disc"});
    CHECK(big.code == 1);
    CHECK(big.out.empty());
    CHECK(contains(big.err, "error:"));
    const auto bigcover = run({"commc", "--fn", "ip:4", "chi1"});
    CHECK(bigcover.code == 1);
    CHECK(bigcover.out.empty());

    // A file-backed table has no length of its own: it must be passed.
    const std::string wp = "cli_commc_wa.json";
    save_automaton_file(
        wp, automaton_to_text(fsa_to_wa(waprod_fsa(2), FieldSpec::gf2())));
    const auto nolen = run({"commc", "--fn", "file:" + wp, "disc"});
    CHECK(nolen.code == 1);
    CHECK(contains(nolen.err, "cannot infer a table length"));
    // At length 2 the file's language table is the bilinear-form table.
    CHECK(run({"commc", "--fn", "file:" + wp, "--length", "2", "disc"}).out ==
          "disc(file:" + wp + ") = 5/16 (0.3125)\n");
    std::remove(wp.c_str());

    const auto nofile = run({"commc", "--fn", "file:nowhere.json",
                             "--length", "2", "disc"});
    CHECK(nofile.code == 1);
    CHECK(contains(nofile.err, "cannot open nowhere.json"));
}

TEST_CASE("demo separation prints the full certified block") {
    const std::string expected =
        "separation at n=2\n"
        "product-marker machine waprod:2\n"
        "  WA2 states: 4\n"
        "  minimized WA2 dim: 4\n"
        "  Hankel rank (GF2, len 2): 2\n"
        "  existence-acceptance lower bounds for ip:2\n"
        "    ones: 6\n"
        "    discrepancy bound: 6/5 (1.2)\n"
        "    chi1(ip:2) = 3\n"
        "    closed-form bound: 1/2 (0.5, vacuous)\n"
        "inequality machine neq:2\n"
        "  NFA states: 6\n"
        "  Hankel rank (GF2, len 2): 4\n";
    const auto r = run({"demo", "separation", "--n", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == expected);
    CHECK(r.err.empty());
    // Byte-identical on a second run.
    CHECK(run({"demo", "separation", "--n", "2"}).out == expected);

    const auto r1 = run({"demo", "separation", "--n", "1"});
    CHECK(r1.code == 0);
    CHECK(contains(r1.out, "chi1(ip:1) = 1"));

    const auto r3 = run({"demo", "separation", "--n", "3"});
    CHECK(r3.code == 0);
    CHECK(contains(r3.out, "  WA2 states: 5\n"));
    CHECK(contains(r3.out, "  Hankel rank (GF2, len 3): 3\n"));
    CHECK(contains(r3.out, "  NFA states: 8\n"));
    CHECK(contains(r3.out, "  Hankel rank (GF2, len 3): 8\n"));
    CHECK(!contains(r3.out, "chi1("));
}

TEST_CASE("usage errors exit two, domain errors one, help zero") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"eval", "--word", "10"}).code == 2);
    CHECK(run({"rank", "--oracle", "ip:2"}).code == 2);
    CHECK(run({"eval", "--automaton", "x.json", "--word", "1",
               "--semantics", "bogus"}).code == 2);
    CHECK(run({"commc", "--fn", "ip:2", "frob"}).code == 2);

    const auto missing = run({"eval", "--automaton", "cli_no_such.json",
                              "--word", "1"});
    CHECK(missing.code == 1);
    CHECK(contains(missing.err, "error:"));
    CHECK(contains(missing.err, "cli_no_such.json"));

    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(contains(help.out, "walab"));
    const auto subhelp = run({"eval", "--help"});
    CHECK(subhelp.code == 0);
    CHECK(contains(subhelp.out, "--automaton"));
}
