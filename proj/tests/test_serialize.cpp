#include <doctest.h>

#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "walab/errors.hpp"
#include "walab/families.hpp"
#include "walab/fsa.hpp"
#include "walab/serialize.hpp"
#include "walab/wautomaton.hpp"

#include "test_support.hpp"

using namespace walab;
using namespace walab::testing;

namespace {

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

// What() of the ParseError raised by the text, or "" if nothing throws.
std::string parse_failure(const std::string& text) {
    try {
        parse_automaton_text(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

void check_same_wa(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    REQUIRE(a.field() == b.field());
    REQUIRE(a.alphabet() == b.alphabet());
    REQUIRE(a.dim() == b.dim());
    CHECK(a.alpha() == b.alpha());
    CHECK(a.omega() == b.omega());
    for (const Symbol& sym : a.alphabet().symbols())
        CHECK(a.transition(sym) == b.transition(sym));
}

void check_same_fsa(const Fsa& a, const Fsa& b) {
    CHECK(a.states() == b.states());
    CHECK(a.alphabet() == b.alphabet());
    CHECK(a.start_states() == b.start_states());
    CHECK(a.final_states() == b.final_states());
    auto ta = a.transition_triples(), tb = b.transition_triples();
    REQUIRE(ta.size() == tb.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
        CHECK(ta[i].from == tb[i].from);
        CHECK(ta[i].symbol == tb[i].symbol);
        CHECK(ta[i].to == tb[i].to);
    }
}

} // namespace

TEST_CASE("weighted automata round trip with all components exact") {
    const Alphabet ab({"a", "b"});
    const std::vector<FieldSpec> fields = {FieldSpec::gf2(), FieldSpec::gfp(5),
                                           FieldSpec::gfp(97),
                                           FieldSpec::rationals()};
    std::mt19937_64 rng(0x5E71A112Eull);
    for (const FieldSpec& f : fields) {
        for (std::size_t dim = 1; dim <= 4; ++dim) {
            const auto a = random_wa(f, ab, dim, rng);
            const std::string text = automaton_to_text(a);
            const LoadedAutomaton back = parse_automaton_text(text);
            REQUIRE(back.is_wa());
            CHECK(back.field == f);
            check_same_wa(back.wa(), a);
            // Reserialization is a fixpoint: same bytes out.
            CHECK(automaton_to_text(back.wa()) == text);
        }
    }
}

TEST_CASE("negative and fractional rationals survive the text form") {
    const FieldSpec q = FieldSpec::rationals();
    const Alphabet ab({"x"});
    const auto s = [&](const char* t) { return Scalar::parse(q, t); };
    Matrix m(q, 2, 2);
    m.set(0, 0, s("-3/4"));
    m.set(0, 1, s("22/7"));
    m.set(1, 0, s("0"));
    m.set(1, 1, s("-100000000000000000001"));
    const WeightedAutomaton a(q, ab, {s("1/2"), s("-2")}, {s("0"), s("5/3")},
                              {m});
    const LoadedAutomaton back = parse_automaton_text(automaton_to_text(a));
    check_same_wa(back.wa(), a);
    CHECK(back.wa().transition_at(0).at(1, 1).to_string() ==
          "-100000000000000000001");
}

TEST_CASE("finite machines round trip with their declared field") {
    std::mt19937_64 rng(0xF5A5EED);
    const Alphabet bits({"0", "1"});
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const FieldSpec& f :
             {FieldSpec::gf2(), FieldSpec::rationals()}) {
            const Fsa a = (n % 2) ? waprod_fsa(n) : neq_nfa(n);
            const std::string text = automaton_to_text(a, f);
            const LoadedAutomaton back = parse_automaton_text(text);
            REQUIRE(!back.is_wa());
            CHECK(back.field == f);
            check_same_fsa(back.fsa(), a);
            CHECK(automaton_to_text(back.fsa(), back.field) == text);

            // The embedding view evaluates like the machine's path counts.
            const WeightedAutomaton emb = back.as_wa();
            const auto r = equivalent(emb, fsa_to_wa(a, f));
            CHECK(r.equivalent);
        }
    }
    for (int i = 0; i < 8; ++i) {
        const Fsa a = random_fsa(1 + i % 5, bits, rng);
        const LoadedAutomaton back =
            parse_automaton_text(automaton_to_text(a, FieldSpec::gf2()));
        check_same_fsa(back.fsa(), a);
    }
}

TEST_CASE("files written to disk load back unchanged") {
    const std::string path = "serialize_roundtrip_tmp.json";
    const auto a = waprod_fsa(2);
    const std::string text = automaton_to_text(a, FieldSpec::gf2());
    save_automaton_file(path, text);
    const LoadedAutomaton back = load_automaton_file(path);
    check_same_fsa(back.fsa(), a);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_automaton_file("no_such_directory/missing.json"),
                    Error);
    try {
        load_automaton_file("no_such_directory/missing.json");
    } catch (const Error& e) {
        CHECK(contains(e.what(), "missing.json"));
    }
}

TEST_CASE("syntax errors carry the position, shape errors the key") {
    CHECK(contains(parse_failure("{\"kind\": "), "automaton file:"));
    CHECK(contains(parse_failure("{\"kind\": "), "line"));
    CHECK(contains(parse_failure("[]"), "expected a JSON object"));
    CHECK(contains(parse_failure("{}"), "missing \"kind\""));

    const std::string base =
        "{\"kind\": \"wa\", \"field\": \"gf2\", \"alphabet\": [\"0\"], "
        "\"dim\": 1, \"alpha\": [\"1\"], \"omega\": [\"1\"], "
        "\"transitions\": {\"0\": [\"1\"]}}";
    CHECK(parse_failure(base).empty());

    auto swap = [&](const std::string& from, const std::string& to) {
        std::string t = base;
        t.replace(t.find(from), from.size(), to);
        return t;
    };
    CHECK(contains(parse_failure(swap("\"wa\"", "\"dfa\"")),
                   "kind: unknown value \"dfa\""));
    CHECK(contains(parse_failure(swap("\"gf2\"", "\"gf3\"")),
                   "field: unknown name \"gf3\""));
    CHECK(contains(parse_failure(swap("\"gf2\"", "{\"gfp\": 6}")),
                   "field:"));
    CHECK(contains(parse_failure(swap("\"alphabet\": [\"0\"]",
                                      "\"alphabet\": [\"0\", \"0\"]")),
                   "alphabet:"));
    CHECK(contains(parse_failure(swap("\"alpha\": [\"1\"]",
                                      "\"alpha\": [\"1\", \"0\"]")),
                   "alpha: expected 1 entries, got 2"));
    CHECK(contains(parse_failure(swap("\"alpha\": [\"1\"]",
                                      "\"alpha\": [\"x\"]")),
                   "alpha[0]: malformed field element: x"));
    CHECK(contains(parse_failure(swap("\"omega\": [\"1\"]",
                                      "\"omega\": [3]")),
                   "omega[0]: expected a string"));
    CHECK(contains(parse_failure(swap("{\"0\": [\"1\"]}", "{}")),
                   "transitions: missing symbol \"0\""));
    CHECK(contains(parse_failure(swap("{\"0\": [\"1\"]}",
                                      "{\"0\": [\"1\"], \"9\": [\"1\"]}")),
                   "transitions: symbol \"9\" is not in the alphabet"));
    CHECK(contains(parse_failure(swap("{\"0\": [\"1\"]}",
                                      "{\"0\": [\"1\", \"1\"]}")),
                   "transitions[\"0\"]: expected 1 entries, got 2"));
    CHECK(contains(parse_failure(swap("\"dim\": 1", "\"dim\": -1")),
                   "dim: expected a nonnegative integer"));
}

TEST_CASE("machine files validate state references") {
    const std::string base =
        "{\"kind\": \"fsa\", \"field\": \"gf2\", \"alphabet\": [\"0\"], "
        "\"states\": [\"s\"], \"start\": [\"s\"], \"final\": [\"s\"], "
        "\"delta\": [[\"s\", \"0\", \"s\"]]}";
    CHECK(parse_failure(base).empty());

    auto swap = [&](const std::string& from, const std::string& to) {
        std::string t = base;
        t.replace(t.find(from), from.size(), to);
        return t;
    };
    CHECK(contains(parse_failure(swap("[[\"s\", \"0\", \"s\"]]",
                                      "[[\"s\", \"0\", \"t\"]]")),
                   "machine:"));
    CHECK(contains(parse_failure(swap("[[\"s\", \"0\", \"s\"]]",
                                      "[[\"s\", \"0\"]]")),
                   "delta[0]: expected [from, symbol, to] strings"));
    CHECK(contains(parse_failure(swap("\"start\": [\"s\"]",
                                      "\"start\": [\"x\"]")),
                   "machine:"));
    CHECK(contains(parse_failure(swap("\"final\": [\"s\"]",
                                      "\"final\": \"s\"")),
                   "final: expected a list of strings"));
}
