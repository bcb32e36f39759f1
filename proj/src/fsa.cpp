#include "walab/fsa.hpp"

#include <algorithm>
#include <set>

namespace walab {

Fsa::Fsa(std::vector<std::string> states, Alphabet alphabet,
         const std::vector<FsaTransition>& transitions,
         const std::vector<std::string>& start,
         const std::vector<std::string>& finals)
    : states_(std::move(states)), alphabet_(std::move(alphabet)) {
    std::set<std::string> seen;
    for (const auto& s : states_) {
        if (s.empty())
            throw Error("state names must be nonempty");
        if (!seen.insert(s).second)
            throw Error("duplicate state name: " + s);
    }
    delta_.assign(states_.size(),
                  std::vector<std::vector<std::size_t>>(alphabet_.size()));
    for (const auto& t : transitions) {
        std::size_t from = state_index(t.from);
        std::size_t sym = alphabet_.index_of(t.symbol);
        std::size_t to = state_index(t.to);
        auto& targets = delta_[from][sym];
        if (std::find(targets.begin(), targets.end(), to) == targets.end())
            targets.push_back(to);
    }
    for (auto& per_state : delta_)
        for (auto& targets : per_state)
            std::sort(targets.begin(), targets.end());

    std::set<std::size_t> s0, f0;
    for (const auto& name : start)
        s0.insert(state_index(name));
    for (const auto& name : finals)
        f0.insert(state_index(name));
    start_.assign(s0.begin(), s0.end());
    finals_.assign(f0.begin(), f0.end());
}

std::size_t Fsa::state_index(const std::string& name) const {
    auto it = std::find(states_.begin(), states_.end(), name);
    if (it == states_.end())
        throw UnknownState("no such state: " + name);
    return static_cast<std::size_t>(it - states_.begin());
}

const std::vector<std::size_t>& Fsa::delta(std::size_t state,
                                           std::size_t symbol) const {
    return delta_.at(state).at(symbol);
}

bool Fsa::is_start(std::size_t q) const {
    return std::binary_search(start_.begin(), start_.end(), q);
}

bool Fsa::is_final(std::size_t q) const {
    return std::binary_search(finals_.begin(), finals_.end(), q);
}

std::vector<FsaTransition> Fsa::transition_triples() const {
    std::vector<FsaTransition> out;
    for (std::size_t q = 0; q < states_.size(); ++q)
        for (std::size_t s = 0; s < alphabet_.size(); ++s)
            for (std::size_t to : delta_[q][s])
                out.push_back({states_[q], alphabet_.at(s), states_[to]});
    return out;
}

mpz_class count_accepting_paths(const Fsa& a, const Word& w) {
    std::vector<mpz_class> cur(a.size(), 0);
    for (std::size_t q : a.start_states())
        cur[q] = 1;
    for (const auto& letter : w) {
        std::size_t sym = a.alphabet().index_of(letter);
        std::vector<mpz_class> next(a.size(), 0);
        for (std::size_t q = 0; q < a.size(); ++q) {
            if (cur[q] == 0)
                continue;
            for (std::size_t to : a.delta(q, sym))
                next[to] += cur[q];
        }
        cur = std::move(next);
    }
    mpz_class total = 0;
    for (std::size_t q : a.final_states())
        total += cur[q];
    return total;
}

bool accepts(const Fsa& a, const Word& w, Semantics sem) {
    if (sem == Semantics::dfa && !is_dfa(a))
        throw NotDeterministic("exactly-one-path semantics requires a DFA");
    mpz_class c = count_accepting_paths(a, w);
    switch (sem) {
    case Semantics::wa2:
        return mpz_odd_p(c.get_mpz_t()) != 0;
    case Semantics::nfa:
        return c > 0;
    case Semantics::dfa:
        return c == 1;
    }
    return false;
}

bool is_dfa(const Fsa& a) {
    if (a.start_states().size() != 1)
        return false;
    for (std::size_t q = 0; q < a.size(); ++q)
        for (std::size_t s = 0; s < a.alphabet().size(); ++s)
            if (a.delta(q, s).size() != 1)
                return false;
    return true;
}

WeightedAutomaton fsa_to_wa(const Fsa& a, const FieldSpec& field) {
    std::size_t n = a.size();
    Scalar one = Scalar::one(field), zero = Scalar::zero(field);
    std::vector<Scalar> alpha(n, zero), omega(n, zero);
    for (std::size_t q : a.start_states())
        alpha[q] = one;
    for (std::size_t q : a.final_states())
        omega[q] = one;
    std::vector<Matrix> ts;
    for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
        Matrix m(field, n, n);
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t to : a.delta(q, s))
                m.set(q, to, one);
        ts.push_back(std::move(m));
    }
    return WeightedAutomaton(field, a.alphabet(), std::move(alpha),
                             std::move(omega), std::move(ts));
}

namespace {

// One forward simulation step on a state subset.
std::vector<char> step(const Fsa& a, const std::vector<char>& from,
                       std::size_t sym) {
    std::vector<char> to(a.size(), 0);
    for (std::size_t q = 0; q < a.size(); ++q)
        if (from[q])
            for (std::size_t t : a.delta(q, sym))
                to[t] = 1;
    return to;
}

// States reachable from the start set by any word.
std::vector<char> reachable_states(const Fsa& a) {
    std::vector<char> seen(a.size(), 0);
    std::vector<std::size_t> stack(a.start_states().begin(),
                                   a.start_states().end());
    for (std::size_t q : stack)
        seen[q] = 1;
    while (!stack.empty()) {
        std::size_t q = stack.back();
        stack.pop_back();
        for (std::size_t s = 0; s < a.alphabet().size(); ++s)
            for (std::size_t t : a.delta(q, s))
                if (!seen[t]) {
                    seen[t] = 1;
                    stack.push_back(t);
                }
    }
    return seen;
}

// Words of length <= max_len whose simulation from the given subset makes
// `keep` true, in length-lex order. Layered breadth-first walk.
template <typename Keep>
std::vector<Word> words_where(const Fsa& a, std::vector<char> initial,
                              std::size_t max_len, Keep keep) {
    std::vector<Word> out;
    std::vector<std::pair<Word, std::vector<char>>> layer;
    layer.emplace_back(Word{}, std::move(initial));
    for (std::size_t len = 0;; ++len) {
        for (const auto& [w, subset] : layer)
            if (keep(subset))
                out.push_back(w);
        if (len == max_len)
            break;
        std::vector<std::pair<Word, std::vector<char>>> next;
        next.reserve(layer.size() * a.alphabet().size());
        for (const auto& [w, subset] : layer) {
            for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
                Word wn = w;
                wn.push_back(a.alphabet().at(s));
                next.emplace_back(std::move(wn), step(a, subset, s));
            }
        }
        layer = std::move(next);
    }
    return out;
}

} // namespace

std::vector<Word> past(const Fsa& a, const std::string& q, std::size_t max_len) {
    std::size_t target = a.state_index(q);
    std::vector<char> initial(a.size(), 0);
    for (std::size_t s : a.start_states())
        initial[s] = 1;
    return words_where(a, std::move(initial), max_len,
                       [target](const std::vector<char>& subset) {
                           return subset[target] != 0;
                       });
}

std::vector<Word> future(const Fsa& a, const std::string& q, std::size_t max_len) {
    std::size_t source = a.state_index(q);
    if (!reachable_states(a)[source])
        return {}; // no past, hence no future
    std::vector<char> initial(a.size(), 0);
    initial[source] = 1;
    return words_where(a, std::move(initial), max_len,
                       [&a](const std::vector<char>& subset) {
                           for (std::size_t f : a.final_states())
                               if (subset[f])
                                   return true;
                           return false;
                       });
}

std::vector<Rectangle> nfa_rectangle_cover(const Fsa& a, std::size_t n) {
    auto words = a.alphabet().words_of_length(n);
    std::vector<char> reach = reachable_states(a);

    // forward[u]: states reachable from the start set on u.
    // backward[v]: states from which v leads into a final state.
    std::vector<std::vector<char>> forward, backward;
    forward.reserve(words.size());
    backward.reserve(words.size());
    std::vector<char> start_set(a.size(), 0), final_set(a.size(), 0);
    for (std::size_t q : a.start_states())
        start_set[q] = 1;
    for (std::size_t q : a.final_states())
        final_set[q] = 1;
    for (const auto& w : words) {
        std::vector<char> cur = start_set;
        for (const auto& letter : w)
            cur = step(a, cur, a.alphabet().index_of(letter));
        forward.push_back(std::move(cur));

        std::vector<char> back = final_set;
        for (auto it = w.rbegin(); it != w.rend(); ++it) {
            std::size_t sym = a.alphabet().index_of(*it);
            std::vector<char> prev(a.size(), 0);
            for (std::size_t q = 0; q < a.size(); ++q) {
                for (std::size_t t : a.delta(q, sym))
                    if (back[t]) {
                        prev[q] = 1;
                        break;
                    }
            }
            back = std::move(prev);
        }
        backward.push_back(std::move(back));
    }

    std::vector<Rectangle> rects;
    for (std::size_t q = 0; q < a.size(); ++q) {
        Rectangle r;
        r.state = a.states()[q];
        for (std::size_t i = 0; i < words.size(); ++i) {
            if (forward[i][q])
                r.rows.push_back(words[i]);
            if (reach[q] && backward[i][q])
                r.cols.push_back(words[i]);
        }
        rects.push_back(std::move(r));
    }

    // Desk-size sanity sweep: the rectangles must tile exactly the pairs
    // (u, v) whose concatenation has an accepting path.
    if (words.size() <= 64) {
        auto index_of_word = [&](const Word& w) {
            return static_cast<std::size_t>(
                std::lower_bound(words.begin(), words.end(), w,
                                 [&](const Word& x, const Word& y) {
                                     return a.alphabet().length_lex_less(x, y);
                                 }) -
                words.begin());
        };
        std::vector<std::vector<char>> covered(
            words.size(), std::vector<char>(words.size(), 0));
        for (const auto& r : rects)
            for (const auto& u : r.rows)
                for (const auto& v : r.cols)
                    covered[index_of_word(u)][index_of_word(v)] = 1;
        for (std::size_t i = 0; i < words.size(); ++i)
            for (std::size_t j = 0; j < words.size(); ++j) {
                bool one = false;
                for (std::size_t q = 0; q < a.size(); ++q)
                    if (forward[i][q] && backward[j][q]) {
                        one = true;
                        break;
                    }
                if (covered[i][j] && !one)
                    throw InvariantBreach("rectangle covers a zero entry");
                if (!covered[i][j] && one)
                    throw InvariantBreach("accepted pair left uncovered");
            }
    }
    return rects;
}

} // namespace walab
