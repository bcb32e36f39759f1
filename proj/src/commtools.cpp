#include "walab/commtools.hpp"

#include <algorithm>
#include <bit>

#include "walab/errors.hpp"

namespace walab {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

mpq_class pow2q(long e) {
    mpz_class big = mpz_class(1) << static_cast<unsigned long>(e < 0 ? -e : e);
    if (e >= 0) return mpq_class(big);
    mpq_class q(1, big);
    q.canonicalize();
    return q;
}

} // namespace

ZeroOneMatrix::ZeroOneMatrix(const HankelBlock& b) {
    const Matrix& m = b.entries();
    const Scalar zero(m.field(), 0), one(m.field(), 1);
    bits_.assign(m.rows(), std::vector<char>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Scalar& v = m.at(r, c);
            if (v == one)
                bits_[r][c] = 1;
            else if (!(v == zero))
                throw Error("entry outside {0,1} at (" + std::to_string(r) +
                            ", " + std::to_string(c) + "): " + v.to_string());
        }
}

ZeroOneMatrix::ZeroOneMatrix(std::vector<std::vector<char>> bits)
    : bits_(std::move(bits)) {
    for (const auto& row : bits_) {
        if (row.size() != bits_[0].size())
            throw LengthMismatch("ragged 0/1 matrix");
        for (char v : row)
            if (v != 0 && v != 1) throw Error("entry outside {0,1}");
    }
}

std::size_t ZeroOneMatrix::ones() const {
    std::size_t total = 0;
    for (const auto& row : bits_)
        for (char v : row) total += static_cast<std::size_t>(v);
    return total;
}

int inner_product(const std::string& x, const std::string& y) {
    if (x.size() != y.size())
        throw LengthMismatch("inner product of lengths " +
                             std::to_string(x.size()) + " and " +
                             std::to_string(y.size()));
    int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if ((x[i] != '0' && x[i] != '1') || (y[i] != '0' && y[i] != '1'))
            throw ParseError("non-binary character in bitstring");
        acc ^= (x[i] == '1' && y[i] == '1') ? 1 : 0;
    }
    return acc;
}

namespace kernels {

std::uint64_t ip_ones_serial(std::size_t n) {
    const std::uint64_t side = std::uint64_t{1} << n;
    std::uint64_t total = 0;
    for (std::uint64_t x = 0; x < side; ++x)
        for (std::uint64_t y = 0; y < side; ++y)
            total += std::popcount(x & y) & 1u;
    return total;
}

std::uint64_t ip_ones_parallel(std::size_t n) {
    const std::int64_t side = std::int64_t{1} << n;
    std::uint64_t total = 0;
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (std::int64_t x = 0; x < side; ++x) {
        std::uint64_t local = 0;
        for (std::int64_t y = 0; y < side; ++y)
            local += std::popcount(static_cast<std::uint64_t>(x & y)) & 1u;
        total += local;
    }
    return total;
}

std::uint64_t ip_ones(std::size_t n, ExecMode mode) {
    return mode == ExecMode::parallel ? ip_ones_parallel(n) : ip_ones_serial(n);
}

namespace {

// Best |rectangle sum| for one fixed row subset: the optimal column set
// takes every column whose signed sum over the chosen rows has the
// majority sign, so the answer is max(sum of positives, -sum of negatives).
std::int64_t best_for_rowset(std::uint64_t rowset,
                             const std::vector<std::uint64_t>& col_masks,
                             std::size_t nrows) {
    const int picked = std::popcount(rowset);
    std::int64_t pos = 0, neg = 0;
    for (std::uint64_t mask : col_masks) {
        // ones contribute -1, zeros +1
        const int ones_here = std::popcount(rowset & mask);
        const std::int64_t s = static_cast<std::int64_t>(picked) - 2 * ones_here;
        if (s > 0)
            pos += s;
        else
            neg -= s;
    }
    (void)nrows;
    return std::max(pos, neg);
}

} // namespace

std::int64_t disc_numerator_serial(const std::vector<std::uint64_t>& col_masks,
                                   std::size_t nrows) {
    const std::uint64_t subsets = std::uint64_t{1} << nrows;
    std::int64_t best = 0;
    for (std::uint64_t a = 0; a < subsets; ++a)
        best = std::max(best, best_for_rowset(a, col_masks, nrows));
    return best;
}

std::int64_t disc_numerator_parallel(const std::vector<std::uint64_t>& col_masks,
                                     std::size_t nrows) {
    const std::int64_t subsets = std::int64_t{1} << nrows;
    std::int64_t best = 0;
#pragma omp parallel for schedule(static) reduction(max : best)
    for (std::int64_t a = 0; a < subsets; ++a)
        best = std::max(best, best_for_rowset(static_cast<std::uint64_t>(a),
                                              col_masks, nrows));
    return best;
}

std::int64_t disc_numerator(const std::vector<std::uint64_t>& col_masks,
                            std::size_t nrows, ExecMode mode) {
    return mode == ExecMode::parallel ? disc_numerator_parallel(col_masks, nrows)
                                      : disc_numerator_serial(col_masks, nrows);
}

} // namespace kernels

std::size_t ones_count(std::size_t n) {
    if (n > 14) throw TooLarge("ones_count scans 2^(2n) pairs; n > 14");
    const std::uint64_t got = kernels::ip_ones(n, exec_mode());
    const std::uint64_t side = std::uint64_t{1} << n;
    const std::uint64_t expected = (side / 2) * (side - 1);
    if (got != expected)
        throw InvariantBreach("odd-product pair count " + std::to_string(got) +
                              " != closed form " + std::to_string(expected));
    return static_cast<std::size_t>(got);
}

namespace {

// Shared discrepancy core; callers enforce their own size limits.
mpq_class disc_of(const ZeroOneMatrix& m) {
    const std::size_t side = m.rows();
    if (m.cols() != side || !is_power_of_two(side))
        throw Error("discrepancy needs a square matrix with power-of-two side");
    std::vector<std::uint64_t> col_masks(side, 0);
    for (std::size_t c = 0; c < side; ++c)
        for (std::size_t r = 0; r < side; ++r)
            if (m.at(r, c)) col_masks[c] |= std::uint64_t{1} << r;
    const std::int64_t num = kernels::disc_numerator(col_masks, side, exec_mode());
    mpq_class q(num, mpz_class(side) * mpz_class(side));
    q.canonicalize();
    return q;
}

} // namespace

mpq_class discrepancy_exact(const ZeroOneMatrix& m) {
    if (m.rows() != m.cols() || !is_power_of_two(m.rows()))
        throw Error("discrepancy needs a square matrix with power-of-two side");
    if (m.rows() > 8)
        throw TooLarge("discrepancy scans 2^side row subsets; side > 8");
    return disc_of(m);
}

namespace {

// A maximal 1-monochromatic rectangle of the compressed table, plus which
// 1-entries it covers (entries indexed row-major over the compressed table).
struct RectCandidate {
    std::vector<std::size_t> rowset;  // compressed row indices, ascending
    std::uint64_t colset = 0;         // bitmask over compressed columns
    std::uint64_t covers = 0;         // bitmask over 1-entries
};

struct CoverProblem {
    std::vector<RectCandidate> candidates;
    std::uint64_t all_ones = 0;
    std::size_t num_ones = 0;
};

// Close-by-One enumeration of all concepts (maximal rectangles): closure
// of a column set B is (rows containing B, columns common to those rows);
// a closure is accepted only when it adds no column below the generator,
// so each concept is produced exactly once.
void enumerate_concepts(const std::vector<std::uint64_t>& row_masks,
                        std::uint64_t cur_cols, std::size_t min_col,
                        std::size_t ncols, std::vector<std::uint64_t>& out) {
    for (std::size_t j = min_col; j < ncols; ++j) {
        const std::uint64_t jbit = std::uint64_t{1} << j;
        if (cur_cols & jbit) continue;
        const std::uint64_t gen = cur_cols | jbit;
        std::uint64_t closed = (ncols == 64) ? ~std::uint64_t{0}
                                             : (std::uint64_t{1} << ncols) - 1;
        bool any_row = false;
        for (std::uint64_t rm : row_masks)
            if ((rm & gen) == gen) {
                closed &= rm;
                any_row = true;
            }
        if (!any_row) continue;  // no row carries these columns together
        const std::uint64_t below = jbit - 1;
        if ((closed & below) != (cur_cols & below)) continue;  // not canonical
        out.push_back(closed);
        enumerate_concepts(row_masks, closed, j + 1, ncols, out);
    }
}

struct CoverSearch {
    const CoverProblem& p;
    std::size_t best;

    explicit CoverSearch(const CoverProblem& prob, std::size_t upper)
        : p(prob), best(upper) {}

    void run(std::uint64_t covered, std::size_t used) {
        if (covered == p.all_ones) {
            best = std::min(best, used);
            return;
        }
        const std::uint64_t uncovered = p.all_ones & ~covered;
        // Optimistic completion: no candidate adds more than max_gain entries.
        int max_gain = 0;
        for (const auto& c : p.candidates)
            max_gain = std::max(max_gain, std::popcount(c.covers & uncovered));
        if (max_gain == 0) throw InvariantBreach("uncoverable 1-entry");
        const std::size_t lb =
            used + (static_cast<std::size_t>(std::popcount(uncovered)) +
                    static_cast<std::size_t>(max_gain) - 1) /
                       static_cast<std::size_t>(max_gain);
        if (lb >= best) return;
        // Branch on the lowest-index uncovered 1-entry; every cover must pick
        // some rectangle containing it. Candidates are kept in lexicographic
        // rowset order, fixing the traversal.
        const std::uint64_t pivot = uncovered & (~uncovered + 1);
        for (const auto& c : p.candidates) {
            if (!(c.covers & pivot)) continue;
            run(covered | c.covers, used + 1);
        }
    }
};

} // namespace

std::size_t chi1_exact(const ZeroOneMatrix& m) {
    // Compress to the rows and columns that contain a 1 at all; with at
    // most 64 one-entries both lists fit in 64-bit masks.
    std::vector<std::size_t> live_rows, live_cols;
    {
        std::vector<char> row_has(m.rows(), 0), col_has(m.cols(), 0);
        std::size_t total = 0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (m.at(r, c)) {
                    row_has[r] = col_has[c] = 1;
                    ++total;
                }
        if (total == 0) return 0;
        if (total > 64) throw TooLarge("cover search needs <= 64 one-entries");
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (row_has[r]) live_rows.push_back(r);
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (col_has[c]) live_cols.push_back(c);
    }
    const std::size_t nrows = live_rows.size(), ncols = live_cols.size();

    std::vector<std::uint64_t> row_masks(nrows, 0);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j)
            if (m.at(live_rows[i], live_cols[j]))
                row_masks[i] |= std::uint64_t{1} << j;

    // Index the 1-entries row-major over the compressed table.
    std::vector<std::vector<int>> entry_id(nrows, std::vector<int>(ncols, -1));
    int next_id = 0;
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j)
            if (row_masks[i] & (std::uint64_t{1} << j)) entry_id[i][j] = next_id++;

    CoverProblem prob;
    prob.num_ones = static_cast<std::size_t>(next_id);
    prob.all_ones = (next_id == 64) ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << next_id) - 1;

    std::vector<std::uint64_t> concepts;
    enumerate_concepts(row_masks, 0, 0, ncols, concepts);
    for (std::uint64_t cols : concepts) {
        if (cols == 0) continue;
        RectCandidate cand;
        cand.colset = cols;
        for (std::size_t i = 0; i < nrows; ++i) {
            if ((row_masks[i] & cols) != cols) continue;
            cand.rowset.push_back(i);
            for (std::size_t j = 0; j < ncols; ++j)
                if (cols & (std::uint64_t{1} << j))
                    cand.covers |= std::uint64_t{1} << entry_id[i][j];
        }
        if (!cand.rowset.empty()) prob.candidates.push_back(std::move(cand));
    }
    std::sort(prob.candidates.begin(), prob.candidates.end(),
              [](const RectCandidate& a, const RectCandidate& b) {
                  return a.rowset < b.rowset;
              });

    // Greedy cover seeds the upper bound: most new entries, earliest
    // candidate on ties.
    std::size_t greedy_size = 0;
    for (std::uint64_t covered = 0; covered != prob.all_ones; ++greedy_size) {
        int best_gain = 0;
        std::size_t best_idx = 0;
        for (std::size_t k = 0; k < prob.candidates.size(); ++k) {
            const int gain =
                std::popcount(prob.candidates[k].covers & ~covered);
            if (gain > best_gain) {
                best_gain = gain;
                best_idx = k;
            }
        }
        if (best_gain == 0) throw InvariantBreach("uncoverable 1-entry");
        covered |= prob.candidates[best_idx].covers;
    }

    CoverSearch search(prob, greedy_size);
    search.run(0, 0);
    return search.best;
}

mpq_class chi1_lower_bound(const ZeroOneMatrix& m) {
    const mpq_class disc = discrepancy_exact(m);
    const std::size_t ones = m.ones();
    if (ones == 0) return 0;
    // disc >= 1/side^2 whenever the matrix is nonempty, so the division
    // below cannot hit zero.
    mpq_class bound =
        mpq_class(ones) / (mpq_class(m.rows()) * mpq_class(m.cols()) * disc);
    bound.canonicalize();
    if (ones <= 64) {
        const std::size_t exact = chi1_exact(m);
        if (mpq_class(exact) < bound)
            throw InvariantBreach("cover number below its discrepancy bound");
    }
    return bound;
}

NfaBoundReport nfa_size_lower_bound(const MembershipOracle& o, std::size_t n) {
    const ZeroOneMatrix table{restricted_hankel(o, n)};
    NfaBoundReport rep;
    rep.n = n;
    rep.ones = table.ones();

    const std::size_t side = table.rows();
    if (is_power_of_two(side) && side <= 16) {
        rep.discrepancy = disc_of(table);
        mpq_class denom =
            mpq_class(side) * mpq_class(side) * rep.discrepancy.value();
        if (rep.ones == 0)
            rep.disc_bound = mpq_class(0);
        else {
            mpq_class b = mpq_class(rep.ones) / denom;
            b.canonicalize();
            rep.disc_bound = b;
        }
    }
    if (rep.ones <= 64) rep.chi1 = chi1_exact(table);

    if (o.name() == "ip:" + std::to_string(n)) {
        // 2^{n/2 - 2}: rational only when n is even; otherwise carry its
        // square so comparisons stay exact.
        if (n % 2 == 0)
            rep.closed_form = pow2q(static_cast<long>(n) / 2 - 2);
        rep.closed_form_squared = pow2q(static_cast<long>(n) - 4);
    }

    if (!rep.disc_bound && !rep.closed_form && !rep.closed_form_squared &&
        !rep.chi1)
        throw TooLarge("no bound computable at this size");

    rep.best = 0;
    if (rep.disc_bound) rep.best = std::max(rep.best, rep.disc_bound.value());
    if (rep.closed_form) rep.best = std::max(rep.best, rep.closed_form.value());
    rep.vacuous = rep.best < 1;
    return rep;
}

} // namespace walab
