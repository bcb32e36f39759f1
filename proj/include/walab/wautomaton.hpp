#ifndef WALAB_WAUTOMATON_HPP
#define WALAB_WAUTOMATON_HPP

#include <optional>
#include <utility>
#include <vector>

#include "walab/matrix.hpp"
#include "walab/words.hpp"

namespace walab {

// A weighted automaton over a field: initial weights alpha, final weights
// omega, and one n x n transition matrix per alphabet symbol. The function
// it computes is w |-> alpha^T M_{w_1} ... M_{w_m} omega. Immutable after
// construction; all operations on it are pure.
class WeightedAutomaton {
public:
    // transitions are ordered like the alphabet. Throws on any shape or
    // field inconsistency.
    WeightedAutomaton(FieldSpec field, Alphabet alphabet,
                      std::vector<Scalar> alpha, std::vector<Scalar> omega,
                      std::vector<Matrix> transitions);

    const FieldSpec& field() const { return field_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t dim() const { return alpha_.size(); }
    const std::vector<Scalar>& alpha() const { return alpha_; }
    const std::vector<Scalar>& omega() const { return omega_; }
    // Throws UnknownSymbol for symbols outside the alphabet.
    const Matrix& transition(const Symbol& s) const;
    const Matrix& transition_at(std::size_t symbol_index) const;

private:
    FieldSpec field_;
    Alphabet alphabet_;
    std::vector<Scalar> alpha_, omega_;
    std::vector<Matrix> transitions_;
};

// alpha^T M_{w_1} ... M_{w_m} omega, evaluated left to right.
Scalar evaluate(const WeightedAutomaton& a, const Word& w);

// Direct sum computing c_a * f_a + c_b * f_b; the coefficients scale the
// alpha blocks. Requires equal fields and alphabets.
WeightedAutomaton combine(const WeightedAutomaton& a, const WeightedAutomaton& b,
                          const std::pair<Scalar, Scalar>& coeffs);

// One-state automaton computing the constant c: alpha = 1, omega = c,
// every transition the 1x1 identity.
WeightedAutomaton constant_automaton(const FieldSpec& field,
                                     const Alphabet& alphabet, const Scalar& c);

struct ZeronessResult {
    bool is_zero;
    // When nonzero: the shortest word with nonzero value, lexicographic
    // ties broken by the declared symbol order.
    std::optional<Word> witness;
};

// Forward-span zeroness test: breadth-first closure of {alpha^T M_w} with
// linear-dependence pruning; at most dim independent vectors arise.
ZeronessResult is_zero_function(const WeightedAutomaton& a);

struct EquivalenceResult {
    bool equivalent;
    std::optional<Word> witness; // a word where the two functions differ
};

// Zeroness of the difference f_a - f_b. Requires equal fields and alphabets.
EquivalenceResult equivalent(const WeightedAutomaton& a, const WeightedAutomaton& b);

// Forward then backward span reduction. The result computes the same
// function with dimension equal to the rank of its Hankel matrix.
WeightedAutomaton minimize(const WeightedAutomaton& a);

// Language view of a GF(2) automaton: w is accepted iff its value is 1.
// Throws FieldMismatch for other fields.
bool wa2_accepts(const WeightedAutomaton& a, const Word& w);

} // namespace walab

#endif
