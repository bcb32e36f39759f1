#ifndef WALAB_SERIALIZE_HPP
#define WALAB_SERIALIZE_HPP

#include <string>
#include <variant>

#include "walab/field.hpp"
#include "walab/fsa.hpp"
#include "walab/wautomaton.hpp"

namespace walab {

// A parsed automaton file: either kind, plus the field the file declared.
// For weighted automata the field is the automaton's own; for machines it
// names the intended embedding field of fsa_to_wa.
struct LoadedAutomaton {
    std::variant<WeightedAutomaton, Fsa> value;
    FieldSpec field;

    bool is_wa() const { return value.index() == 0; }
    const WeightedAutomaton& wa() const {
        return std::get<WeightedAutomaton>(value);
    }
    const Fsa& fsa() const { return std::get<Fsa>(value); }
    // The weighted view: the automaton itself, or the machine embedded
    // into the declared field by indicator vectors.
    WeightedAutomaton as_wa() const {
        return is_wa() ? wa() : fsa_to_wa(fsa(), field);
    }
};

// Canonical interchange text (JSON): kind "wa" or "fsa"; field "gf2",
// {"gfp": p} or "rational"; alphabet as symbol strings. Weighted automata
// carry dim, alpha, omega and one flat row-major matrix of field-element
// strings per symbol (rationals as "p/q"); machines carry states, start,
// final and [from, symbol, to] delta triples. Output is deterministic:
// keys sorted, two-space indent, trailing newline.
std::string automaton_to_text(const WeightedAutomaton& a);
std::string automaton_to_text(const Fsa& a, const FieldSpec& field);

// Parses either kind. Syntax errors report line and column; structural
// errors name the offending key or element, e.g. "transitions['1'][3]".
LoadedAutomaton parse_automaton_text(const std::string& text);

// File wrappers; failures mention the path. Writing is atomic enough for
// sequential use: the file is replaced wholesale.
LoadedAutomaton load_automaton_file(const std::string& path);
void save_automaton_file(const std::string& path, const std::string& text);

} // namespace walab

#endif
