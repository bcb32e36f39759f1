#ifndef WALAB_HANKEL_HPP
#define WALAB_HANKEL_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "walab/fsa.hpp"
#include "walab/matrix.hpp"
#include "walab/parallel.hpp"
#include "walab/wautomaton.hpp"
#include "walab/words.hpp"

namespace walab {

// A total function from words to field elements, wrapped with a
// synchronized memo table and two counters: calls() counts every query,
// evaluations() counts only the distinct words actually handed to the
// underlying function. Copies share the memo and counters, so handing an
// oracle around by value keeps one account.
class MembershipOracle {
public:
    MembershipOracle(FieldSpec field, Alphabet alphabet,
                     std::function<Scalar(const Word&)> fn,
                     std::string name = "");

    const FieldSpec& field() const { return field_; }
    const Alphabet& alphabet() const { return alphabet_; }
    // Display tag, e.g. a family name like "ip:2". May be empty.
    const std::string& name() const { return name_; }

    Scalar query(const Word& w) const;
    // Values for many words at once. Distinct unmemoized words are
    // evaluated as a batch — in parallel when the execution mode says so;
    // the underlying function must be pure, so results and counters do not
    // depend on the mode.
    std::vector<Scalar> query_batch(const std::vector<Word>& words) const;
    std::vector<Scalar> query_batch(const std::vector<Word>& words,
                                    ExecMode mode) const;

    std::size_t calls() const;
    std::size_t evaluations() const;

private:
    struct Account {
        std::mutex mu;
        std::map<Word, Scalar> memo;
        std::size_t calls = 0;
        std::size_t evaluations = 0;
    };

    FieldSpec field_;
    Alphabet alphabet_;
    std::function<Scalar(const Word&)> fn_;
    std::string name_;
    std::shared_ptr<Account> account_;
};

// Oracle computing a weighted automaton's function.
MembershipOracle wa_oracle(const WeightedAutomaton& a, std::string name = "");

// 0/1-valued oracle of an FSA's language under the given semantics,
// embedded into the given field.
MembershipOracle fsa_oracle(const Fsa& a, Semantics sem, const FieldSpec& field,
                            std::string name = "");

// A rectangular slice of the: (prefix, suffix) |-> f(prefix . suffix)
// table, with its labels.
class HankelBlock {
public:
    HankelBlock(std::vector<Word> rows, std::vector<Word> cols, Matrix entries);

    const std::vector<Word>& rows() const { return rows_; }
    const std::vector<Word>& cols() const { return cols_; }
    const Matrix& entries() const { return entries_; }
    const Scalar& at(std::size_t r, std::size_t c) const {
        return entries_.at(r, c);
    }

private:
    std::vector<Word> rows_, cols_;
    Matrix entries_;
};

// Fills entries[i][j] = oracle(row_i . col_j).
HankelBlock build_block(const MembershipOracle& o, const std::vector<Word>& rows,
                        const std::vector<Word>& cols);

// The square block on all length-n words (lexicographic) both ways.
HankelBlock restricted_hankel(const MembershipOracle& o, std::size_t n);

// Exact rank over the oracle's field; a lower bound on the dimension of
// any weighted automaton computing the function.
std::size_t hankel_rank(const HankelBlock& b);

} // namespace walab

#endif
