#ifndef WALAB_FSA_HPP
#define WALAB_FSA_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "walab/wautomaton.hpp"
#include "walab/words.hpp"

namespace walab {

// How a path count turns into acceptance: parity of the count, existence
// of a path, or the exactly-one of a deterministic machine.
enum class Semantics { wa2, nfa, dfa };

struct FsaTransition {
    std::string from;
    Symbol symbol;
    std::string to;
};

// A nondeterministic finite automaton with total transition relation:
// delta(q, sigma) is a (possibly empty) set of states. Immutable after
// construction; all operations are pure.
class Fsa {
public:
    // Throws on duplicate/unknown state names or symbols.
    Fsa(std::vector<std::string> states, Alphabet alphabet,
        const std::vector<FsaTransition>& transitions,
        const std::vector<std::string>& start,
        const std::vector<std::string>& finals);

    std::size_t size() const { return states_.size(); }
    const std::vector<std::string>& states() const { return states_; }
    const Alphabet& alphabet() const { return alphabet_; }
    // Throws UnknownState.
    std::size_t state_index(const std::string& name) const;

    // Sorted target indices for (state, symbol), empty when no edge.
    const std::vector<std::size_t>& delta(std::size_t state,
                                          std::size_t symbol) const;
    const std::vector<std::size_t>& start_states() const { return start_; }
    const std::vector<std::size_t>& final_states() const { return finals_; }
    bool is_start(std::size_t q) const;
    bool is_final(std::size_t q) const;

    // All edges in canonical (state order, symbol order, target order).
    std::vector<FsaTransition> transition_triples() const;

private:
    std::vector<std::string> states_;
    Alphabet alphabet_;
    std::vector<std::vector<std::vector<std::size_t>>> delta_; // [state][symbol]
    std::vector<std::size_t> start_, finals_;                  // sorted
};

// |apaths(w)|: the exact number of paths from a start state to a final
// state labelled w, via products of counting adjacency matrices.
mpz_class count_accepting_paths(const Fsa& a, const Word& w);

// The three acceptance criteria over the path count: odd / at least one /
// exactly one (the last only on machines passing is_dfa, else
// NotDeterministic).
bool accepts(const Fsa& a, const Word& w, Semantics sem);

// Single start state and exactly one successor per (state, symbol).
bool is_dfa(const Fsa& a);

// Indicator-vector embedding: alpha = 1_S, omega = 1_F, M_sigma(q,q') = 1
// iff q' in delta(q,sigma). Over GF(2) acceptance matches the parity
// criterion; over the rationals the value is the exact path count.
WeightedAutomaton fsa_to_wa(const Fsa& a, const FieldSpec& field);

// Words of length <= max_len that can lead from a start state to q,
// length-lexicographic. Throws UnknownState.
std::vector<Word> past(const Fsa& a, const std::string& q, std::size_t max_len);

// Words of length <= max_len leading from q into a final state,
// length-lexicographic. Empty for unreachable q: a state with no past has
// no future. Throws UnknownState.
std::vector<Word> future(const Fsa& a, const std::string& q, std::size_t max_len);

// One rectangle of same-length words per state q: past(q) x future(q)
// restricted to Sigma^n.
struct Rectangle {
    std::string state;
    std::vector<Word> rows, cols; // subsets of Sigma^n, length-lex order
};

// The per-state rectangles of the machine under NFA semantics. Every
// rectangle is 1-monochromatic for the length-n acceptance table and
// together they cover all its ones, so the number of nonempty rectangles
// (at most |Q|) bounds the table's 1-cover number from above. Both
// properties are verified exhaustively while building when the table has
// at most 64 rows; a violation throws InvariantBreach.
std::vector<Rectangle> nfa_rectangle_cover(const Fsa& a, std::size_t n);

} // namespace walab

#endif
