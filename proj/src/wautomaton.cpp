#include "walab/wautomaton.hpp"

#include <deque>

namespace walab {

WeightedAutomaton::WeightedAutomaton(FieldSpec field, Alphabet alphabet,
                                     std::vector<Scalar> alpha,
                                     std::vector<Scalar> omega,
                                     std::vector<Matrix> transitions)
    : field_(field), alphabet_(std::move(alphabet)), alpha_(std::move(alpha)),
      omega_(std::move(omega)), transitions_(std::move(transitions)) {
    std::size_t n = alpha_.size();
    if (omega_.size() != n)
        throw LengthMismatch("alpha and omega lengths differ");
    if (transitions_.size() != alphabet_.size())
        throw AlphabetMismatch("one transition matrix per symbol required");
    for (const auto& v : {alpha_, omega_})
        for (const auto& x : v)
            if (x.field() != field_)
                throw FieldMismatch("weight vector entry in wrong field");
    for (const auto& m : transitions_) {
        if (m.rows() != n || m.cols() != n)
            throw LengthMismatch("transition matrix is not dim x dim");
        if (m.field() != field_)
            throw FieldMismatch("transition matrix in wrong field");
    }
}

const Matrix& WeightedAutomaton::transition(const Symbol& s) const {
    return transitions_[alphabet_.index_of(s)];
}

const Matrix& WeightedAutomaton::transition_at(std::size_t symbol_index) const {
    return transitions_[symbol_index];
}

Scalar evaluate(const WeightedAutomaton& a, const Word& w) {
    if (a.dim() == 0) {
        for (const auto& s : w)
            a.alphabet().index_of(s); // still reject foreign symbols
        return Scalar::zero(a.field());
    }
    std::vector<Scalar> v = a.alpha();
    for (const auto& s : w)
        v = row_times_matrix(v, a.transition(s));
    return dot(v, a.omega());
}

WeightedAutomaton combine(const WeightedAutomaton& a, const WeightedAutomaton& b,
                          const std::pair<Scalar, Scalar>& coeffs) {
    if (a.field() != b.field())
        throw FieldMismatch("combining automata over different fields");
    if (a.alphabet() != b.alphabet())
        throw AlphabetMismatch("combining automata over different alphabets");
    const FieldSpec& f = a.field();
    std::size_t na = a.dim(), nb = b.dim();

    std::vector<Scalar> alpha, omega;
    alpha.reserve(na + nb);
    omega.reserve(na + nb);
    for (std::size_t i = 0; i < na; ++i) {
        alpha.push_back(coeffs.first * a.alpha()[i]);
        omega.push_back(a.omega()[i]);
    }
    for (std::size_t i = 0; i < nb; ++i) {
        alpha.push_back(coeffs.second * b.alpha()[i]);
        omega.push_back(b.omega()[i]);
    }

    std::vector<Matrix> ts;
    for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
        Matrix m(f, na + nb, na + nb);
        const Matrix& ma = a.transition_at(s);
        const Matrix& mb = b.transition_at(s);
        for (std::size_t i = 0; i < na; ++i)
            for (std::size_t j = 0; j < na; ++j)
                m.set(i, j, ma.at(i, j));
        for (std::size_t i = 0; i < nb; ++i)
            for (std::size_t j = 0; j < nb; ++j)
                m.set(na + i, na + j, mb.at(i, j));
        ts.push_back(std::move(m));
    }
    return WeightedAutomaton(f, a.alphabet(), std::move(alpha), std::move(omega),
                             std::move(ts));
}

WeightedAutomaton constant_automaton(const FieldSpec& field,
                                     const Alphabet& alphabet, const Scalar& c) {
    if (c.field() != field)
        throw FieldMismatch("constant in wrong field");
    std::vector<Matrix> ts(alphabet.size(), Matrix::identity(field, 1));
    return WeightedAutomaton(field, alphabet, {Scalar::one(field)}, {c},
                             std::move(ts));
}

ZeronessResult is_zero_function(const WeightedAutomaton& a) {
    if (a.dim() == 0)
        return {true, std::nullopt};
    const Scalar zero = Scalar::zero(a.field());
    // Breadth-first over fresh row vectors alpha^T M_w; candidates appear
    // in length-lexicographic word order, so the first one with a nonzero
    // value is the least witness. Vectors already in the span of earlier
    // ones are pruned: they cannot reach any value their span cannot.
    std::deque<std::pair<std::vector<Scalar>, Word>> queue;
    queue.emplace_back(a.alpha(), Word{});
    RowSpan span(a.field(), a.dim());
    while (!queue.empty()) {
        auto [v, w] = std::move(queue.front());
        queue.pop_front();
        if (dot(v, a.omega()) != zero)
            return {false, std::move(w)};
        if (!span.absorb(v))
            continue;
        for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
            Word wn = w;
            wn.push_back(a.alphabet().at(s));
            queue.emplace_back(row_times_matrix(v, a.transition_at(s)),
                               std::move(wn));
        }
    }
    return {true, std::nullopt};
}

EquivalenceResult equivalent(const WeightedAutomaton& a, const WeightedAutomaton& b) {
    const FieldSpec& f = a.field();
    auto diff = combine(a, b, {Scalar::one(f), -Scalar::one(f)});
    auto z = is_zero_function(diff);
    return {z.is_zero, std::move(z.witness)};
}

namespace {

WeightedAutomaton reversed(const WeightedAutomaton& a) {
    std::vector<Matrix> ts;
    for (std::size_t s = 0; s < a.alphabet().size(); ++s)
        ts.push_back(a.transition_at(s).transposed());
    return WeightedAutomaton(a.field(), a.alphabet(), a.omega(), a.alpha(),
                             std::move(ts));
}

// Restricts the automaton to the span of its reachable row vectors
// {alpha^T M_w}. New dimension = rank of the reachability space.
WeightedAutomaton forward_reduce(const WeightedAutomaton& a) {
    const FieldSpec& f = a.field();
    std::deque<std::vector<Scalar>> queue;
    queue.push_back(a.alpha());
    RowSpan span(f, a.dim());
    std::vector<std::vector<Scalar>> basis; // original vectors, absorption order
    while (!queue.empty()) {
        auto v = std::move(queue.front());
        queue.pop_front();
        if (!span.absorb(v))
            continue;
        for (std::size_t s = 0; s < a.alphabet().size(); ++s)
            queue.push_back(row_times_matrix(v, a.transition_at(s)));
        basis.push_back(std::move(v));
    }
    std::size_t k = basis.size();
    if (k == 0) {
        std::vector<Matrix> ts(a.alphabet().size(), Matrix(f, 0, 0));
        return WeightedAutomaton(f, a.alphabet(), {}, {}, std::move(ts));
    }
    Matrix b = Matrix::from_rows(f, basis);
    // On the span's pivot columns the basis is invertible, so coordinates
    // relative to it can be read off there: X * B = Y with Y's rows in the
    // row space of B is equivalent to X * B_c = Y_c.
    const auto& pcols = span.pivot_columns();
    auto restrict_cols = [&](const Matrix& m) {
        Matrix r(f, m.rows(), k);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < k; ++j)
                r.set(i, j, m.at(i, pcols[j]));
        return r;
    };
    Matrix bc = restrict_cols(b);
    std::vector<Matrix> ts;
    for (std::size_t s = 0; s < a.alphabet().size(); ++s)
        ts.push_back(solve_rows(bc, restrict_cols(b * a.transition_at(s))));
    Matrix alpha_row(f, 1, a.dim());
    for (std::size_t c = 0; c < a.dim(); ++c)
        alpha_row.set(0, c, a.alpha()[c]);
    Matrix alpha_new = solve_rows(bc, restrict_cols(alpha_row));
    std::vector<Scalar> alpha, omega;
    for (std::size_t i = 0; i < k; ++i) {
        alpha.push_back(alpha_new.at(0, i));
        omega.push_back(dot(basis[i], a.omega()));
    }
    return WeightedAutomaton(f, a.alphabet(), std::move(alpha), std::move(omega),
                             std::move(ts));
}

} // namespace

WeightedAutomaton minimize(const WeightedAutomaton& a) {
    return reversed(forward_reduce(reversed(forward_reduce(a))));
}

bool wa2_accepts(const WeightedAutomaton& a, const Word& w) {
    if (a.field() != FieldSpec::gf2())
        throw FieldMismatch("acceptance-by-parity needs a GF(2) automaton");
    return evaluate(a, w).is_one();
}

} // namespace walab
