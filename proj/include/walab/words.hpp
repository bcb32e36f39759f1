#ifndef WALAB_WORDS_HPP
#define WALAB_WORDS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace walab {

// Symbols are opaque tokens, typically "0"/"1". A word is a finite symbol
// sequence; the empty vector is the empty word.
using Symbol = std::string;
using Word = std::vector<Symbol>;

// An ordered alphabet of distinct symbols. The declared order fixes every
// word ordering and enumeration in the library.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<Symbol> symbols);

    std::size_t size() const { return symbols_.size(); }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    const Symbol& at(std::size_t i) const { return symbols_[i]; }

    bool contains(const Symbol& s) const;
    // Throws UnknownSymbol if s is not declared.
    std::size_t index_of(const Symbol& s) const;

    bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }
    bool operator!=(const Alphabet& other) const { return !(*this == other); }

    // Length-lexicographic order: shorter first, ties broken by the declared
    // symbol order position by position.
    bool length_lex_less(const Word& a, const Word& b) const;

    // All |alphabet|^len words of exactly the given length, lexicographic.
    std::vector<Word> words_of_length(std::size_t len) const;
    // All words of length 0..max_len, length-lexicographic.
    std::vector<Word> words_up_to(std::size_t max_len) const;

private:
    std::vector<Symbol> symbols_;
};

Word word_concat(const Word& a, const Word& b);

// Renders a word by joining its symbols; the empty word prints as "-".
std::string word_to_string(const Word& w);

// Splits a string into single-character symbols ("1010" -> {"1","0","1","0"}),
// or on sep when nonzero ("a.b" with '.' -> {"a","b"}). An empty string is
// the empty word.
Word parse_word(const std::string& text, char sep = '\0');

} // namespace walab

#endif
