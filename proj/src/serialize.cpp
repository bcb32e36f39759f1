#include "walab/serialize.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "walab/errors.hpp"
#include "walab/matrix.hpp"
#include "walab/words.hpp"

namespace walab {

namespace {

using nlohmann::json;

json field_to_json(const FieldSpec& f) {
    switch (f.kind()) {
    case FieldSpec::Kind::gf2: return "gf2";
    case FieldSpec::Kind::gfp: return json{{"gfp", f.characteristic()}};
    case FieldSpec::Kind::rational: return "rational";
    }
    throw InvariantBreach("unhandled field kind");
}

FieldSpec field_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "gf2") return FieldSpec::gf2();
        if (s == "rational") return FieldSpec::rationals();
        throw ParseError("field: unknown name \"" + s +
                         "\" (expected \"gf2\", \"rational\", or {\"gfp\": p})");
    }
    if (j.is_object() && j.size() == 1 && j.contains("gfp") &&
        j["gfp"].is_number_unsigned()) {
        try {
            return FieldSpec::gfp(j["gfp"].get<std::uint64_t>());
        } catch (const Error& e) {
            throw ParseError(std::string("field: ") + e.what());
        }
    }
    throw ParseError("field: expected \"gf2\", \"rational\", or {\"gfp\": p}");
}

// Fetches an object member, naming it on failure.
const json& need(const json& j, const char* key) {
    const auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing \"") + key + "\"");
    return *it;
}

std::vector<std::string> string_list(const json& j, const std::string& what) {
    if (!j.is_array())
        throw ParseError(what + ": expected a list of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string())
            throw ParseError(what + "[" + std::to_string(i) +
                             "]: expected a string");
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

std::vector<Scalar> scalar_list(const json& j, const FieldSpec& f,
                                std::size_t want, const std::string& what) {
    const auto texts = string_list(j, what);
    if (texts.size() != want)
        throw ParseError(what + ": expected " + std::to_string(want) +
                         " entries, got " + std::to_string(texts.size()));
    std::vector<Scalar> out;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        try {
            out.push_back(Scalar::parse(f, texts[i]));
        } catch (const Error& e) {
            throw ParseError(what + "[" + std::to_string(i) +
                             "]: " + e.what());
        }
    }
    return out;
}

WeightedAutomaton wa_from_json(const json& j, const FieldSpec& field,
                               const Alphabet& alphabet) {
    const json& jdim = need(j, "dim");
    if (!jdim.is_number_unsigned())
        throw ParseError("dim: expected a nonnegative integer");
    const std::size_t dim = jdim.get<std::size_t>();

    auto alpha = scalar_list(need(j, "alpha"), field, dim, "alpha");
    auto omega = scalar_list(need(j, "omega"), field, dim, "omega");

    const json& jtr = need(j, "transitions");
    if (!jtr.is_object())
        throw ParseError("transitions: expected a symbol-keyed object");
    for (const auto& item : jtr.items())
        if (!alphabet.contains(item.key()))
            throw ParseError("transitions: symbol \"" + item.key() +
                             "\" is not in the alphabet");
    std::vector<Matrix> mats;
    for (const Symbol& sym : alphabet.symbols()) {
        if (!jtr.contains(sym))
            throw ParseError("transitions: missing symbol \"" + sym + "\"");
        const auto flat = scalar_list(jtr[sym], field, dim * dim,
                                      "transitions[\"" + sym + "\"]");
        Matrix m(field, dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k)
                m.set(i, k, flat[i * dim + k]);
        mats.push_back(std::move(m));
    }
    return WeightedAutomaton(field, alphabet, std::move(alpha),
                             std::move(omega), std::move(mats));
}

Fsa fsa_from_json(const json& j, const Alphabet& alphabet) {
    auto states = string_list(need(j, "states"), "states");
    auto start = string_list(need(j, "start"), "start");
    auto finals = string_list(need(j, "final"), "final");

    const json& jd = need(j, "delta");
    if (!jd.is_array())
        throw ParseError("delta: expected a list of [from, symbol, to]");
    std::vector<FsaTransition> edges;
    for (std::size_t i = 0; i < jd.size(); ++i) {
        const json& t = jd[i];
        if (!t.is_array() || t.size() != 3 || !t[0].is_string() ||
            !t[1].is_string() || !t[2].is_string())
            throw ParseError("delta[" + std::to_string(i) +
                             "]: expected [from, symbol, to] strings");
        edges.push_back({t[0].get<std::string>(), t[1].get<std::string>(),
                         t[2].get<std::string>()});
    }
    try {
        return Fsa(std::move(states), alphabet, edges, start, finals);
    } catch (const Error& e) {
        throw ParseError(std::string("machine: ") + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string automaton_to_text(const WeightedAutomaton& a) {
    json j;
    j["kind"] = "wa";
    j["field"] = field_to_json(a.field());
    j["alphabet"] = a.alphabet().symbols();
    j["dim"] = a.dim();
    json alpha = json::array(), omega = json::array();
    for (const Scalar& s : a.alpha()) alpha.push_back(s.to_string());
    for (const Scalar& s : a.omega()) omega.push_back(s.to_string());
    j["alpha"] = std::move(alpha);
    j["omega"] = std::move(omega);
    json tr = json::object();
    for (const Symbol& sym : a.alphabet().symbols()) {
        const Matrix& m = a.transition(sym);
        json flat = json::array();
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k)
                flat.push_back(m.at(i, k).to_string());
        tr[sym] = std::move(flat);
    }
    j["transitions"] = std::move(tr);
    return dump(j);
}

std::string automaton_to_text(const Fsa& a, const FieldSpec& field) {
    json j;
    j["kind"] = "fsa";
    j["field"] = field_to_json(field);
    j["alphabet"] = a.alphabet().symbols();
    j["states"] = a.states();
    json start = json::array(), finals = json::array();
    for (std::size_t q : a.start_states()) start.push_back(a.states()[q]);
    for (std::size_t q : a.final_states()) finals.push_back(a.states()[q]);
    j["start"] = std::move(start);
    j["final"] = std::move(finals);
    json delta = json::array();
    for (const FsaTransition& t : a.transition_triples())
        delta.push_back(json::array({t.from, t.symbol, t.to}));
    j["delta"] = std::move(delta);
    return dump(j);
}

LoadedAutomaton parse_automaton_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("automaton file: ") + e.what());
    }
    if (!j.is_object())
        throw ParseError("automaton file: expected a JSON object");

    const json& jkind = need(j, "kind");
    if (!jkind.is_string())
        throw ParseError("kind: expected \"wa\" or \"fsa\"");
    const std::string kind = jkind.get<std::string>();

    const FieldSpec field = field_from_json(need(j, "field"));
    const auto symbols = string_list(need(j, "alphabet"), "alphabet");
    const Alphabet alphabet = [&] {
        try {
            return Alphabet(symbols);
        } catch (const Error& e) {
            throw ParseError(std::string("alphabet: ") + e.what());
        }
    }();

    if (kind == "wa")
        return LoadedAutomaton{wa_from_json(j, field, alphabet), field};
    if (kind == "fsa")
        return LoadedAutomaton{fsa_from_json(j, alphabet), field};
    throw ParseError("kind: unknown value \"" + kind + "\"");
}

LoadedAutomaton load_automaton_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_automaton_text(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void save_automaton_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write " + path);
    out << text;
    if (!out.flush())
        throw Error("short write to " + path);
}

} // namespace walab
