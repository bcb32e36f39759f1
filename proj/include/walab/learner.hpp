#ifndef WALAB_LEARNER_HPP
#define WALAB_LEARNER_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "walab/hankel.hpp"
#include "walab/matrix.hpp"
#include "walab/wautomaton.hpp"
#include "walab/words.hpp"

namespace walab {

// The query interface the learner talks to: membership values of the
// hidden function and equivalence checks against a hypothesis, each with
// a call counter. Counterexamples must genuinely disagree with the
// hypothesis, and answers must be deterministic per input. Implementations
// are called from a single thread.
class Teacher {
public:
    virtual ~Teacher() = default;

    const FieldSpec& field() const { return field_; }
    const Alphabet& alphabet() const { return alphabet_; }

    Scalar membership(const Word& w) {
        ++membership_calls_;
        return do_membership(w);
    }
    // Empty result means the hypothesis is correct; otherwise a word on
    // which hypothesis and target differ.
    std::optional<Word> equivalence(const WeightedAutomaton& hypothesis) {
        ++equivalence_calls_;
        return do_equivalence(hypothesis);
    }

    std::size_t membership_calls() const { return membership_calls_; }
    std::size_t equivalence_calls() const { return equivalence_calls_; }

protected:
    Teacher(FieldSpec field, Alphabet alphabet)
        : field_(std::move(field)), alphabet_(std::move(alphabet)) {}

    virtual Scalar do_membership(const Word& w) = 0;
    virtual std::optional<Word> do_equivalence(const WeightedAutomaton& h) = 0;

private:
    FieldSpec field_;
    Alphabet alphabet_;
    std::size_t membership_calls_ = 0;
    std::size_t equivalence_calls_ = 0;
};

// A teacher backed by a known automaton: membership evaluates it,
// equivalence runs the exact zeroness test and hands back its shortest,
// lexicographically least witness.
class SimulatedTeacher : public Teacher {
public:
    explicit SimulatedTeacher(WeightedAutomaton target);
    const WeightedAutomaton& target() const { return target_; }

protected:
    Scalar do_membership(const Word& w) override;
    std::optional<Word> do_equivalence(const WeightedAutomaton& h) override;

private:
    WeightedAutomaton target_;
};

// Presents g = f + 1 on top of a teacher for f: membership answers are
// shifted by one, and a hypothesis H for g is checked by asking the base
// teacher about H - 1. The base teacher must outlive this wrapper.
class ShiftedTeacher : public Teacher {
public:
    explicit ShiftedTeacher(Teacher& base);

protected:
    Scalar do_membership(const Word& w) override;
    std::optional<Word> do_equivalence(const WeightedAutomaton& h) override;

private:
    Teacher& base_;
};

// Observation state of the learning loop. S indexes candidate states
// (prefix-closed, epsilon first), E indexes experiments (epsilon first),
// and Fmat(i, j) = g(S[i] . E[j]) stays square and invertible throughout.
// Tmats holds the per-symbol transition solutions of the latest
// build_hypothesis call and is cleared by every extension.
struct LearnerState {
    // Built by initialize(); wires the memo to the active teacher and
    // seeds S = E = {epsilon}, Fmat = [g(epsilon)].
    LearnerState(Teacher& base, std::unique_ptr<Teacher> shift_owner);

    Teacher* teacher;                    // the (possibly shifted) query target
    std::unique_ptr<Teacher> shift;      // owns the wrapper when shifted
    bool shifted;
    MembershipOracle memo;               // global membership memoization
    std::vector<Word> S, E;
    Matrix Fmat;
    std::vector<Matrix> Tmats;           // ordered like the alphabet
    std::vector<std::string>* transcript = nullptr; // optional query log

    // Membership lookup through the memo; logs fresh queries.
    Scalar member(const Word& w);
};

// Everything recorded about one processed counterexample z: the split
// index k (1-based) where the probe values f_k != f_{k+1} differ, the
// symbol at that position, the suffix beyond it, and the violating state
// s_star whose transition equation failed.
struct CexAnalysis {
    Word z;
    std::size_t k = 0;
    Symbol sigma_k;
    Word suffix; // z beyond position k
    Word s_star;
    Scalar f_k, f_k1;
};

// Starts the loop with S = E = {epsilon}. If the target has value 0 on
// epsilon, the teacher is wrapped so the learned function is g = f + 1
// (g(epsilon) = 1 then); learn() undoes the shift at the end. The teacher
// must outlive the returned state.
LearnerState initialize(Teacher& t);

// Synthesizes the hypothesis automaton from the current observations:
// dimension |S|, start at epsilon's coordinate, measurement column
// g(s . epsilon), and per-symbol transitions T solving T * Fmat = F_sigma
// where F_sigma(i, j) = g(S[i] sigma E[j]). Stores T in st.Tmats. Checks
// that rows of states with sigma-successors inside S are unit vectors.
WeightedAutomaton build_hypothesis(LearnerState& st);

// Coordinate row of the current hypothesis after reading prefix:
// unit(epsilon) * T_{w_1} ... T_{w_m}. Requires a current Tmats.
std::vector<Scalar> hypothesis_run(const LearnerState& st, const Word& prefix);

// Splits a counterexample z via the probe sequence
//   f_i = sum_s run(z_{<i})[s] * g(s . z_{>=i}),
// which walks from f_1 = g(z) to f_{|z|+1} = hypothesis(z): binary search
// finds k with f_k != f_{k+1} (probing mid = (lo+hi)/2, keeping the lower
// half when its endpoints differ), then the first state s in S whose
// sigma_k-transition equation fails on the suffix joins S (as s sigma_k)
// and the suffix joins E. The observation rank must grow by exactly one.
CexAnalysis process_counterexample(LearnerState& st, const Word& z);

struct LearnResult {
    WeightedAutomaton automaton;
    bool shifted = false;
    std::size_t equivalence_queries = 0;
    std::size_t membership_words = 0; // distinct words sent to the teacher
    std::vector<std::string> transcript;
};

// The full loop: initialize, then synthesize/query/extend until the
// teacher answers CORRECT. When the shift was engaged, the result is the
// learned automaton minus the constant one, so it computes f either way.
LearnResult learn(Teacher& t, bool with_transcript = false);

} // namespace walab

#endif
