#include "walab/learner.hpp"

#include <algorithm>
#include <utility>

#include "walab/errors.hpp"

namespace walab {

namespace {

Word append_symbol(const Word& w, const Symbol& s) {
    Word out = w;
    out.push_back(s);
    return out;
}

} // namespace

SimulatedTeacher::SimulatedTeacher(WeightedAutomaton target)
    : Teacher(target.field(), target.alphabet()), target_(std::move(target)) {}

Scalar SimulatedTeacher::do_membership(const Word& w) {
    return evaluate(target_, w);
}

std::optional<Word> SimulatedTeacher::do_equivalence(const WeightedAutomaton& h) {
    auto r = equivalent(h, target_);
    if (r.equivalent)
        return std::nullopt;
    return r.witness;
}

ShiftedTeacher::ShiftedTeacher(Teacher& base)
    : Teacher(base.field(), base.alphabet()), base_(base) {}

Scalar ShiftedTeacher::do_membership(const Word& w) {
    return base_.membership(w) + Scalar::one(field());
}

std::optional<Word> ShiftedTeacher::do_equivalence(const WeightedAutomaton& h) {
    // h approximates g = f + 1, so h is correct exactly when h - 1 matches
    // the base target; a base witness z has f(z) != h(z) - 1, i.e.
    // g(z) != h(z).
    const Scalar one = Scalar::one(field());
    auto minus_one =
        combine(h, constant_automaton(field(), alphabet(), one),
                {one, Scalar(field(), -1)});
    return base_.equivalence(minus_one);
}

LearnerState::LearnerState(Teacher& base, std::unique_ptr<Teacher> shift_owner)
    : teacher(shift_owner ? shift_owner.get() : &base),
      shift(std::move(shift_owner)),
      shifted(shift != nullptr),
      memo(base.field(), base.alphabet(),
           [t = teacher](const Word& w) { return t->membership(w); },
           "learner"),
      S{Word{}},
      E{Word{}},
      Fmat(base.field(), 1, 1) {
    Fmat.set(0, 0, member(Word{}));
    if (Fmat.at(0, 0) == Scalar::zero(base.field()))
        throw InvariantBreach("empty-word value is zero even after shifting");
}

Scalar LearnerState::member(const Word& w) {
    const std::size_t before = memo.evaluations();
    Scalar v = memo.query(w);
    if (transcript && memo.evaluations() != before)
        transcript->push_back("MQ " + word_to_string(w) + " -> " +
                              v.to_string() + " |S|=" +
                              std::to_string(S.size()) +
                              " rank=" + std::to_string(Fmat.rank()));
    return v;
}

LearnerState initialize(Teacher& t) {
    std::unique_ptr<Teacher> owner;
    if (t.membership(Word{}) == Scalar::zero(t.field()))
        owner = std::make_unique<ShiftedTeacher>(t);
    return LearnerState(t, std::move(owner));
}

namespace {

void check_state_invariants(const LearnerState& st) {
    const std::size_t n = st.S.size();
    if (st.E.size() != n)
        throw InvariantBreach("state and experiment counts differ");
    if (n == 0 || !st.S[0].empty() || !st.E[0].empty())
        throw InvariantBreach("the empty word must lead both index sets");
    if (st.Fmat.rows() != n || st.Fmat.cols() != n)
        throw InvariantBreach("observation matrix shape is stale");
    for (const Word& s : st.S) {
        Word prefix = s;
        while (!prefix.empty()) {
            prefix.pop_back();
            if (std::find(st.S.begin(), st.S.end(), prefix) == st.S.end())
                throw InvariantBreach("state set is not prefix-closed");
        }
    }
}

} // namespace

WeightedAutomaton build_hypothesis(LearnerState& st) {
    check_state_invariants(st);
    const FieldSpec& f = st.memo.field();
    const Alphabet& ab = st.memo.alphabet();
    const std::size_t n = st.S.size();
    if (st.Fmat.rank() != n)
        throw SingularBasis("observation matrix lost full rank");

    st.Tmats.clear();
    for (const Symbol& sym : ab.symbols()) {
        Matrix fs(f, n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const Word left = append_symbol(st.S[i], sym);
            for (std::size_t j = 0; j < n; ++j)
                fs.set(i, j, st.member(word_concat(left, st.E[j])));
        }
        Matrix t = solve_rows(st.Fmat, fs);
        // A state whose successor is itself tracked must route straight to
        // it: the successor's observation row already sits in the basis.
        for (std::size_t i = 0; i < n; ++i) {
            const Word succ = append_symbol(st.S[i], sym);
            const auto it = std::find(st.S.begin(), st.S.end(), succ);
            if (it == st.S.end())
                continue;
            const std::size_t p =
                static_cast<std::size_t>(it - st.S.begin());
            for (std::size_t j = 0; j < n; ++j) {
                const Scalar want(f, j == p ? 1 : 0);
                if (!(t.at(i, j) == want))
                    throw InvariantBreach(
                        "tracked successor row is not a unit vector");
            }
        }
        st.Tmats.push_back(std::move(t));
    }

    std::vector<Scalar> alpha, omega;
    for (std::size_t i = 0; i < n; ++i) {
        alpha.emplace_back(f, i == 0 ? 1 : 0);
        omega.push_back(st.Fmat.at(i, 0));
    }
    return WeightedAutomaton(f, ab, std::move(alpha), std::move(omega),
                             st.Tmats);
}

std::vector<Scalar> hypothesis_run(const LearnerState& st, const Word& prefix) {
    const FieldSpec& f = st.memo.field();
    const Alphabet& ab = st.memo.alphabet();
    const std::size_t n = st.S.size();
    if (st.Tmats.size() != ab.size() ||
        (n > 0 && st.Tmats[0].rows() != n))
        throw Error("no current hypothesis; build one first");
    std::vector<Scalar> row;
    for (std::size_t i = 0; i < n; ++i)
        row.emplace_back(f, i == 0 ? 1 : 0);
    for (const Symbol& sym : prefix)
        row = row_times_matrix(row, st.Tmats[ab.index_of(sym)]);
    return row;
}

CexAnalysis process_counterexample(LearnerState& st, const Word& z) {
    check_state_invariants(st);
    const FieldSpec& f = st.memo.field();
    const Alphabet& ab = st.memo.alphabet();
    const std::size_t n = st.S.size();
    const std::size_t m = z.size();
    if (st.Tmats.size() != ab.size() || st.Tmats[0].rows() != n)
        throw Error("no current hypothesis; build one first");

    // Probe i walks the hypothesis over the first i-1 letters, then asks
    // the teacher to finish the rest from each tracked state. Probe 1 is
    // the target's value on z; probe |z|+1 is the hypothesis's.
    std::vector<std::optional<Scalar>> cache(m + 2);
    auto probe = [&](std::size_t i) -> const Scalar& {
        if (!cache[i]) {
            const auto row =
                hypothesis_run(st, Word(z.begin(), z.begin() + (i - 1)));
            const Word rest(z.begin() + (i - 1), z.end());
            Scalar acc = Scalar::zero(f);
            for (std::size_t s = 0; s < n; ++s)
                acc = acc + row[s] * st.member(word_concat(st.S[s], rest));
            cache[i] = acc;
        }
        return *cache[i];
    };

    if (probe(1) == probe(m + 1))
        throw NotACounterexample("hypothesis and target agree on " +
                                 word_to_string(z));

    std::size_t lo = 1, hi = m + 1;
    while (hi - lo > 1) {
        if (probe(lo) == probe(hi))
            throw InvariantBreach("probe endpoints collapsed mid-search");
        const std::size_t mid = (lo + hi) / 2;
        if (!(probe(mid) == probe(lo)))
            hi = mid;
        else
            lo = mid;
    }
    const std::size_t k = lo;
    const Symbol sigma = z[k - 1];
    const Word suffix(z.begin() + static_cast<std::ptrdiff_t>(k), z.end());
    const Matrix& t = st.Tmats[ab.index_of(sigma)];

    // The probe step from k to k+1 rewrote every term through the sigma
    // transition rows, so some tracked state must break that rewrite.
    std::optional<std::size_t> violator;
    for (std::size_t s = 0; s < n && !violator; ++s) {
        const Scalar lhs =
            st.member(word_concat(append_symbol(st.S[s], sigma), suffix));
        Scalar rhs = Scalar::zero(f);
        for (std::size_t sp = 0; sp < n; ++sp)
            rhs = rhs + t.at(s, sp) * st.member(word_concat(st.S[sp], suffix));
        if (!(lhs == rhs))
            violator = s;
    }
    if (!violator)
        throw NoViolatingState("every transition equation holds on " +
                               word_to_string(z));

    const Word violating = st.S[*violator];
    const Scalar f_k = probe(k);
    const Scalar f_k1 = probe(k + 1);
    const Word new_state = append_symbol(violating, sigma);
    if (std::find(st.S.begin(), st.S.end(), new_state) != st.S.end())
        throw InvariantBreach("violating successor is already tracked");
    if (std::find(st.E.begin(), st.E.end(), suffix) != st.E.end())
        throw InvariantBreach("suffix experiment is already tracked");

    st.S.push_back(new_state);
    st.E.push_back(suffix);
    Matrix grown(f, n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = 0; j <= n; ++j)
            grown.set(i, j, st.member(word_concat(st.S[i], st.E[j])));
    if (grown.rank() != n + 1)
        throw RankNotIncreased("extension left the observation rank at " +
                               std::to_string(grown.rank()));
    st.Fmat = std::move(grown);
    st.Tmats.clear();
    check_state_invariants(st);

    return CexAnalysis{z, k, sigma, suffix, violating, f_k, f_k1};
}

LearnResult learn(Teacher& t, bool with_transcript) {
    LearnerState st = initialize(t);
    std::vector<std::string> log;
    if (with_transcript) {
        st.transcript = &log;
        log.push_back("MQ - -> " + st.Fmat.at(0, 0).to_string() +
                      " |S|=1 rank=1");
    }
    const FieldSpec& f = st.memo.field();
    while (true) {
        WeightedAutomaton h = build_hypothesis(st);
        const auto cex = st.teacher->equivalence(h);
        if (with_transcript)
            log.push_back("EQ dim=" + std::to_string(h.dim()) + " -> " +
                          (cex ? "cex=" + word_to_string(*cex) : "CORRECT") +
                          " |S|=" + std::to_string(st.S.size()) +
                          " rank=" + std::to_string(st.Fmat.rank()));
        if (!cex) {
            const Scalar one = Scalar::one(f);
            WeightedAutomaton out =
                st.shifted
                    ? combine(h,
                              constant_automaton(f, st.memo.alphabet(), one),
                              {one, Scalar(f, -1)})
                    : std::move(h);
            return LearnResult{std::move(out), st.shifted,
                               st.teacher->equivalence_calls(),
                               st.memo.evaluations(), std::move(log)};
        }
        process_counterexample(st, *cex);
    }
}

} // namespace walab
