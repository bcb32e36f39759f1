#include "walab/words.hpp"

#include <algorithm>
#include <set>

#include "walab/errors.hpp"

namespace walab {

Alphabet::Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    std::set<Symbol> seen;
    for (const auto& s : symbols_) {
        if (s.empty())
            throw Error("alphabet symbols must be nonempty");
        if (!seen.insert(s).second)
            throw Error("duplicate alphabet symbol: " + s);
    }
}

bool Alphabet::contains(const Symbol& s) const {
    return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end();
}

std::size_t Alphabet::index_of(const Symbol& s) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), s);
    if (it == symbols_.end())
        throw UnknownSymbol("symbol not in alphabet: " + s);
    return static_cast<std::size_t>(it - symbols_.begin());
}

bool Alphabet::length_lex_less(const Word& a, const Word& b) const {
    if (a.size() != b.size())
        return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::size_t ia = index_of(a[i]);
        std::size_t ib = index_of(b[i]);
        if (ia != ib)
            return ia < ib;
    }
    return false;
}

std::vector<Word> Alphabet::words_of_length(std::size_t len) const {
    std::vector<Word> result;
    if (len == 0) {
        result.push_back(Word{});
        return result;
    }
    std::vector<Word> shorter = words_of_length(len - 1);
    for (const auto& w : shorter) {
        for (const auto& s : symbols_) {
            Word next = w;
            next.push_back(s);
            result.push_back(std::move(next));
        }
    }
    return result;
}

std::vector<Word> Alphabet::words_up_to(std::size_t max_len) const {
    std::vector<Word> result;
    for (std::size_t len = 0; len <= max_len; ++len) {
        auto level = words_of_length(len);
        result.insert(result.end(), level.begin(), level.end());
    }
    return result;
}

Word word_concat(const Word& a, const Word& b) {
    Word w = a;
    w.insert(w.end(), b.begin(), b.end());
    return w;
}

std::string word_to_string(const Word& w) {
    if (w.empty())
        return "-";
    std::string out;
    for (const auto& s : w)
        out += s;
    return out;
}

Word parse_word(const std::string& text, char sep) {
    Word w;
    if (text.empty())
        return w;
    if (sep == '\0') {
        for (char c : text)
            w.push_back(std::string(1, c));
        return w;
    }
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            w.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    w.push_back(cur);
    return w;
}

} // namespace walab
