#ifndef WALAB_COMMTOOLS_HPP
#define WALAB_COMMTOOLS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "walab/hankel.hpp"
#include "walab/parallel.hpp"

namespace walab {

// A pair of index sets; the communication-matrix notion of a rectangle.
struct BoolRect {
    std::vector<std::size_t> rows, cols;
};

// A 0/1 matrix, typically a Hankel block viewed as a truth table.
// Construction rejects entries outside {0, 1}.
class ZeroOneMatrix {
public:
    explicit ZeroOneMatrix(const HankelBlock& b);
    explicit ZeroOneMatrix(std::vector<std::vector<char>> bits);

    std::size_t rows() const { return bits_.size(); }
    std::size_t cols() const { return bits_.empty() ? 0 : bits_[0].size(); }
    bool at(std::size_t r, std::size_t c) const { return bits_[r][c] != 0; }
    std::size_t ones() const;

private:
    std::vector<std::vector<char>> bits_;
};

// Parity of the positionwise AND of two equal-length bitstrings.
// Throws LengthMismatch on unequal lengths, ParseError on non-binary text.
int inner_product(const std::string& x, const std::string& y);

// Number of pairs (x, y) of n-bit strings with odd inner product, counted
// by brute force over all 2^{2n} pairs and checked against the closed form
// 2^{n-1} (2^n - 1). Throws TooLarge for n > 14.
std::size_t ones_count(std::size_t n);

// Exact discrepancy: max over row subsets A and column subsets B of
// |sum_{x in A, y in B} (-1)^{m(x,y)}| / side^2. The matrix side must be a
// power of two; sides above 8 throw TooLarge (the subset scan is 2^side).
// For fixed A the best B takes every column whose signed column sum has
// the majority sign, so only row subsets are enumerated.
mpq_class discrepancy_exact(const ZeroOneMatrix& m);

// Exact minimum number of 1-monochromatic rectangles covering all
// 1-entries: enumerates the maximal 1-monochromatic rectangles, then runs
// branch-and-bound set cover branching on the lowest-index uncovered
// 1-entry, candidates ordered by lexicographic rowset. Throws TooLarge
// beyond 64 one-entries.
std::size_t chi1_exact(const ZeroOneMatrix& m);

// The discrepancy lower bound on the cover number:
// ones / (side^2 * discrepancy). When the exact cover number is also
// computable it is checked to dominate the bound.
mpq_class chi1_lower_bound(const ZeroOneMatrix& m);

// Evidence that any existence-semantics acceptor of the oracle's language
// needs many states, from its length-n acceptance table.
struct NfaBoundReport {
    std::size_t n = 0;
    std::size_t ones = 0;                    // 1-entries of the table
    std::optional<mpq_class> discrepancy;    // exact, when the table side <= 16
    std::optional<mpq_class> disc_bound;    // ones / (side^2 * disc)
    std::optional<std::size_t> chi1;         // exact cover number, when ones <= 64
    // Closed-form bound 2^{n/2 - 2} for the inner-product family: a
    // rational for even n; for odd n only its square is rational.
    std::optional<mpq_class> closed_form;
    std::optional<mpq_class> closed_form_squared;
    mpq_class best = 0;  // largest of the rational bounds above
    bool vacuous = true; // best < 1 bounds nothing
};

// Builds the restricted length-n table of the oracle and assembles the
// report. The closed form is attached only when the oracle is tagged as
// the inner-product kernel of the same n ("ip:<n>"). Throws TooLarge when
// no bound is computable at this size.
NfaBoundReport nfa_size_lower_bound(const MembershipOracle& o, std::size_t n);

namespace kernels {

// Brute-force count of odd-inner-product pairs; the parallel variant
// splits the outer loop, summing order-independently.
std::uint64_t ip_ones_serial(std::size_t n);
std::uint64_t ip_ones_parallel(std::size_t n);
std::uint64_t ip_ones(std::size_t n, ExecMode mode);

// Max over row subsets of the best signed rectangle sum. col_masks[y] has
// bit x set iff m(x, y) = 1; nrows <= 16. Order-free max reduction.
std::int64_t disc_numerator_serial(const std::vector<std::uint64_t>& col_masks,
                                   std::size_t nrows);
std::int64_t disc_numerator_parallel(const std::vector<std::uint64_t>& col_masks,
                                     std::size_t nrows);
std::int64_t disc_numerator(const std::vector<std::uint64_t>& col_masks,
                            std::size_t nrows, ExecMode mode);

} // namespace kernels

} // namespace walab

#endif
