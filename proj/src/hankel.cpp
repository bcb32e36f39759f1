#include "walab/hankel.hpp"

#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace walab {

MembershipOracle::MembershipOracle(FieldSpec field, Alphabet alphabet,
                                   std::function<Scalar(const Word&)> fn,
                                   std::string name)
    : field_(field), alphabet_(std::move(alphabet)), fn_(std::move(fn)),
      name_(std::move(name)), account_(std::make_shared<Account>()) {}

Scalar MembershipOracle::query(const Word& w) const {
    std::lock_guard<std::mutex> lock(account_->mu);
    ++account_->calls;
    auto it = account_->memo.find(w);
    if (it != account_->memo.end())
        return it->second;
    Scalar v = fn_(w);
    if (v.field() != field_)
        throw FieldMismatch("oracle produced a value outside its field");
    ++account_->evaluations;
    account_->memo.emplace(w, v);
    return v;
}

std::vector<Scalar> MembershipOracle::query_batch(
    const std::vector<Word>& words) const {
    return query_batch(words, exec_mode());
}

std::vector<Scalar> MembershipOracle::query_batch(const std::vector<Word>& words,
                                                  ExecMode mode) const {
    // Collect the distinct words that still need evaluating.
    std::vector<const Word*> missing;
    {
        std::lock_guard<std::mutex> lock(account_->mu);
        account_->calls += words.size();
        std::set<Word> scheduled;
        for (const auto& w : words)
            if (!account_->memo.count(w) && scheduled.insert(w).second)
                missing.push_back(&w);
    }

    // Evaluate them outside the lock; the function is pure, so the order
    // (and the thread count) cannot influence any value.
    std::vector<std::pair<const Word*, Scalar>> fresh;
    fresh.reserve(missing.size());
    for (const auto* w : missing)
        fresh.emplace_back(w, Scalar::zero(field_));
    if (mode == ExecMode::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::size_t i = 0; i < fresh.size(); ++i)
            fresh[i].second = fn_(*fresh[i].first);
    } else {
        for (std::size_t i = 0; i < fresh.size(); ++i)
            fresh[i].second = fn_(*fresh[i].first);
    }

    std::lock_guard<std::mutex> lock(account_->mu);
    for (auto& [w, v] : fresh) {
        if (v.field() != field_)
            throw FieldMismatch("oracle produced a value outside its field");
        ++account_->evaluations;
        account_->memo.emplace(*w, std::move(v));
    }
    std::vector<Scalar> out;
    out.reserve(words.size());
    for (const auto& w : words)
        out.push_back(account_->memo.at(w));
    return out;
}

std::size_t MembershipOracle::calls() const {
    std::lock_guard<std::mutex> lock(account_->mu);
    return account_->calls;
}

std::size_t MembershipOracle::evaluations() const {
    std::lock_guard<std::mutex> lock(account_->mu);
    return account_->evaluations;
}

MembershipOracle wa_oracle(const WeightedAutomaton& a, std::string name) {
    return MembershipOracle(
        a.field(), a.alphabet(),
        [a](const Word& w) { return evaluate(a, w); }, std::move(name));
}

MembershipOracle fsa_oracle(const Fsa& a, Semantics sem, const FieldSpec& field,
                            std::string name) {
    return MembershipOracle(
        field, a.alphabet(),
        [a, sem, field](const Word& w) {
            return accepts(a, w, sem) ? Scalar::one(field) : Scalar::zero(field);
        },
        std::move(name));
}

HankelBlock::HankelBlock(std::vector<Word> rows, std::vector<Word> cols,
                         Matrix entries)
    : rows_(std::move(rows)), cols_(std::move(cols)), entries_(std::move(entries)) {
    if (entries_.rows() != rows_.size() || entries_.cols() != cols_.size())
        throw LengthMismatch("block shape differs from its labels");
}

HankelBlock build_block(const MembershipOracle& o, const std::vector<Word>& rows,
                        const std::vector<Word>& cols) {
    std::vector<Word> products;
    products.reserve(rows.size() * cols.size());
    for (const auto& u : rows)
        for (const auto& v : cols)
            products.push_back(word_concat(u, v));
    std::vector<Scalar> values = o.query_batch(products);
    Matrix m(o.field(), rows.size(), cols.size());
    std::size_t k = 0;
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            m.set(r, c, values[k++]);
    return HankelBlock(rows, cols, std::move(m));
}

HankelBlock restricted_hankel(const MembershipOracle& o, std::size_t n) {
    auto words = o.alphabet().words_of_length(n);
    return build_block(o, words, words);
}

std::size_t hankel_rank(const HankelBlock& b) { return b.entries().rank(); }

} // namespace walab
