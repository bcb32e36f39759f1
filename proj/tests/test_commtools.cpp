#include <doctest.h>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "walab/commtools.hpp"
#include "walab/errors.hpp"
#include "walab/fsa.hpp"
#include "walab/hankel.hpp"

#include "test_support.hpp"

using namespace walab;
using namespace walab::testing;

namespace {

// Truth table of the positionwise-AND parity on n-bit halves, rows and
// columns in the length-lex word order the Hankel builders use (which for
// fixed length is plain binary counting).
ZeroOneMatrix and_tensor_table(std::size_t n) {
    const std::size_t side = std::size_t{1} << n;
    std::vector<std::vector<char>> bits(side, std::vector<char>(side, 0));
    for (std::size_t x = 0; x < side; ++x)
        for (std::size_t y = 0; y < side; ++y)
            bits[x][y] = static_cast<char>(std::popcount(x & y) & 1u);
    return ZeroOneMatrix(std::move(bits));
}

ZeroOneMatrix neq_table(std::size_t side) {
    std::vector<std::vector<char>> bits(side, std::vector<char>(side, 1));
    for (std::size_t i = 0; i < side; ++i)
        bits[i][i] = 0;
    return ZeroOneMatrix(std::move(bits));
}

// Literal maximum over every pair of row and column subsets.
mpq_class disc_brute(const ZeroOneMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    REQUIRE(nr <= 8);
    REQUIRE(nc <= 8);
    long best = 0;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << nr); ++a)
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << nc); ++b) {
            long s = 0;
            for (std::size_t r = 0; r < nr; ++r) {
                if (!(a & (std::uint64_t{1} << r)))
                    continue;
                for (std::size_t c = 0; c < nc; ++c)
                    if (b & (std::uint64_t{1} << c))
                        s += m.at(r, c) ? -1 : 1;
            }
            best = std::max(best, s < 0 ? -s : s);
        }
    mpq_class q(best, static_cast<unsigned long>(nr) * nc);
    q.canonicalize();
    return q;
}

// Independent minimum 1-cover: every nonempty monochromatic subset pair is
// a move in a shortest-path search over covered-entry bitmasks.
std::size_t chi1_brute(const ZeroOneMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    std::vector<std::vector<int>> id(nr, std::vector<int>(nc, -1));
    int ones = 0;
    for (std::size_t r = 0; r < nr; ++r)
        for (std::size_t c = 0; c < nc; ++c)
            if (m.at(r, c))
                id[r][c] = ones++;
    if (ones == 0)
        return 0;
    REQUIRE(ones <= 16);
    std::vector<std::uint64_t> moves;
    for (std::uint64_t a = 1; a < (std::uint64_t{1} << nr); ++a)
        for (std::uint64_t b = 1; b < (std::uint64_t{1} << nc); ++b) {
            std::uint64_t cover = 0;
            bool mono = true;
            for (std::size_t r = 0; r < nr && mono; ++r) {
                if (!(a & (std::uint64_t{1} << r)))
                    continue;
                for (std::size_t c = 0; c < nc; ++c) {
                    if (!(b & (std::uint64_t{1} << c)))
                        continue;
                    if (id[r][c] < 0) {
                        mono = false;
                        break;
                    }
                    cover |= std::uint64_t{1} << id[r][c];
                }
            }
            if (mono)
                moves.push_back(cover);
        }
    const std::uint64_t full = (std::uint64_t{1} << ones) - 1;
    std::vector<int> dist(std::size_t{1} << ones, -1);
    dist[0] = 0;
    std::vector<std::uint64_t> frontier{0};
    while (dist[full] < 0) {
        REQUIRE(!frontier.empty());
        std::vector<std::uint64_t> next;
        for (std::uint64_t state : frontier)
            for (std::uint64_t mv : moves) {
                const std::uint64_t to = state | mv;
                if (dist[to] < 0) {
                    dist[to] = dist[state] + 1;
                    next.push_back(to);
                }
            }
        frontier = std::move(next);
    }
    return static_cast<std::size_t>(dist[full]);
}

ZeroOneMatrix random_table(std::size_t side, std::mt19937_64& rng) {
    std::vector<std::vector<char>> bits(side, std::vector<char>(side, 0));
    for (auto& row : bits)
        for (auto& v : row)
            v = rng() % 3 == 0 ? 1 : 0;
    return ZeroOneMatrix(std::move(bits));
}

} // namespace

TEST_CASE("inner product of bitstrings") {
    CHECK(inner_product("00", "11") == 0);
    CHECK(inner_product("11", "11") == 0);
    CHECK(inner_product("10", "10") == 1);
    CHECK(inner_product("", "") == 0);
    CHECK(inner_product("111", "111") == 1);
    CHECK_THROWS_AS(inner_product("01", "011"), LengthMismatch);
    CHECK_THROWS_AS(inner_product("0x", "01"), ParseError);
    CHECK_THROWS_AS(inner_product("01", "21"), ParseError);
}

TEST_CASE("inner product matches the kernel oracle on every pair") {
    auto o = ip_oracle_direct(2);
    auto g = FieldSpec::gf2();
    const char* bits[] = {"00", "01", "10", "11"};
    for (const char* x : bits)
        for (const char* y : bits) {
            Word w = parse_word(std::string(x) + y);
            CHECK(o.query(w) == Scalar(g, inner_product(x, y)));
        }
}

TEST_CASE("odd-product pair counts match the closed form") {
    CHECK(ones_count(1) == 1);
    CHECK(ones_count(2) == 6);
    CHECK(ones_count(3) == 28);
    for (std::size_t n = 0; n <= 6; ++n) {
        const std::size_t side = std::size_t{1} << n;
        CHECK(ones_count(n) == (side / 2) * (side - 1));
    }
    CHECK(and_tensor_table(3).ones() == 28);
    CHECK_THROWS_AS(ones_count(15), TooLarge);
}

TEST_CASE("pair-count kernels agree across modes") {
    for (std::size_t n = 0; n <= 8; ++n)
        CHECK(kernels::ip_ones_serial(n) == kernels::ip_ones_parallel(n));
}

TEST_CASE("exact discrepancy on pinned tables") {
    std::vector<std::vector<char>> zero2(2, std::vector<char>(2, 0));
    CHECK(discrepancy_exact(ZeroOneMatrix(zero2)) == mpq_class(1));
    CHECK(discrepancy_exact(and_tensor_table(1)) == mpq_class(1, 2));
    CHECK(discrepancy_exact(and_tensor_table(2)) == mpq_class(5, 16));
    CHECK(discrepancy_exact(and_tensor_table(3)) == mpq_class(11, 64));
    CHECK(discrepancy_exact(neq_table(4)) == mpq_class(1, 2));
}

TEST_CASE("greedy-column reduction equals the all-subset-pairs scan") {
    CHECK(discrepancy_exact(and_tensor_table(1)) ==
          disc_brute(and_tensor_table(1)));
    CHECK(discrepancy_exact(and_tensor_table(2)) ==
          disc_brute(and_tensor_table(2)));
    CHECK(discrepancy_exact(and_tensor_table(3)) ==
          disc_brute(and_tensor_table(3)));
    CHECK(discrepancy_exact(neq_table(4)) == disc_brute(neq_table(4)));
    std::mt19937_64 rng(20260816);
    for (int trial = 0; trial < 12; ++trial) {
        auto m = random_table(4, rng);
        CHECK(discrepancy_exact(m) == disc_brute(m));
    }
}

TEST_CASE("discrepancy of the product-parity table is at most 2^(-n/2)") {
    for (std::size_t n = 1; n <= 3; ++n) {
        const mpq_class d = discrepancy_exact(and_tensor_table(n));
        mpq_class limit(1, mpz_class(1) << n);
        limit.canonicalize();
        CHECK(d * d <= limit);
    }
}

TEST_CASE("discrepancy domain errors") {
    std::vector<std::vector<char>> r23(2, std::vector<char>(3, 0));
    CHECK_THROWS_AS(discrepancy_exact(ZeroOneMatrix(r23)), Error);
    std::vector<std::vector<char>> r33(3, std::vector<char>(3, 0));
    CHECK_THROWS_AS(discrepancy_exact(ZeroOneMatrix(r33)), Error);
    std::vector<std::vector<char>> r16(16, std::vector<char>(16, 0));
    CHECK_THROWS_AS(discrepancy_exact(ZeroOneMatrix(r16)), TooLarge);
}

TEST_CASE("discrepancy kernels agree across modes") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 15; ++trial) {
        const std::size_t nrows = 1 + rng() % 12;
        const std::size_t ncols = 1 + rng() % 12;
        std::vector<std::uint64_t> masks(ncols);
        for (auto& mk : masks)
            mk = rng() & ((std::uint64_t{1} << nrows) - 1);
        CHECK(kernels::disc_numerator_serial(masks, nrows) ==
              kernels::disc_numerator_parallel(masks, nrows));
    }
    ExecMode saved = exec_mode();
    set_exec_mode(ExecMode::serial);
    auto ds = discrepancy_exact(and_tensor_table(2));
    set_exec_mode(ExecMode::parallel);
    auto dp = discrepancy_exact(and_tensor_table(2));
    set_exec_mode(saved);
    CHECK(ds == dp);
}

TEST_CASE("exact cover numbers on pinned tables") {
    std::vector<std::vector<char>> single(3, std::vector<char>(3, 0));
    single[1][2] = 1;
    CHECK(chi1_exact(ZeroOneMatrix(single)) == 1);
    std::vector<std::vector<char>> zero(3, std::vector<char>(3, 0));
    CHECK(chi1_exact(ZeroOneMatrix(zero)) == 0);
    std::vector<std::vector<char>> full(2, std::vector<char>(2, 1));
    CHECK(chi1_exact(ZeroOneMatrix(full)) == 1);
    CHECK(chi1_exact(and_tensor_table(1)) == 1);
    CHECK(chi1_exact(and_tensor_table(2)) == 3);
    CHECK(chi1_exact(and_tensor_table(3)) == 7);
    CHECK(chi1_exact(neq_table(4)) == 4);
    std::vector<std::vector<char>> wide(13, std::vector<char>(5, 1));
    CHECK_THROWS_AS(chi1_exact(ZeroOneMatrix(wide)), TooLarge);
}

TEST_CASE("branch-and-bound cover equals the bitmask shortest path") {
    CHECK(chi1_exact(and_tensor_table(2)) == chi1_brute(and_tensor_table(2)));
    CHECK(chi1_exact(neq_table(4)) == chi1_brute(neq_table(4)));
    std::mt19937_64 rng(20260817);
    int compared = 0;
    for (int trial = 0; trial < 20 && compared < 10; ++trial) {
        auto m = random_table(4, rng);
        if (m.ones() > 16)
            continue;
        CHECK(chi1_exact(m) == chi1_brute(m));
        ++compared;
    }
    CHECK(compared == 10);
}

TEST_CASE("cover number dominates its discrepancy bound") {
    CHECK(chi1_lower_bound(and_tensor_table(1)) == mpq_class(1, 2));
    CHECK(chi1_lower_bound(and_tensor_table(2)) == mpq_class(6, 5));
    CHECK(chi1_lower_bound(neq_table(4)) == mpq_class(3, 2));
    std::vector<std::vector<char>> full(2, std::vector<char>(2, 1));
    CHECK(chi1_lower_bound(ZeroOneMatrix(full)) == mpq_class(1));
    std::vector<std::vector<char>> zero(2, std::vector<char>(2, 0));
    CHECK(chi1_lower_bound(ZeroOneMatrix(zero)) == mpq_class(0));
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 8; ++trial) {
        auto m = random_table(4, rng);
        const mpq_class bound = chi1_lower_bound(m);
        CHECK(mpq_class(chi1_exact(m)) >= bound);
    }
}

TEST_CASE("acceptor size evidence for the kernel family") {
    auto rep2 = nfa_size_lower_bound(ip_oracle_direct(2), 2);
    CHECK(rep2.ones == 6);
    CHECK(rep2.discrepancy == mpq_class(5, 16));
    CHECK(rep2.disc_bound == mpq_class(6, 5));
    CHECK(rep2.chi1 == 3);
    CHECK(rep2.closed_form == mpq_class(1, 2));
    CHECK(rep2.closed_form_squared == mpq_class(1, 4));
    CHECK(rep2.best == mpq_class(6, 5));
    CHECK_FALSE(rep2.vacuous);

    auto rep1 = nfa_size_lower_bound(ip_oracle_direct(1), 1);
    CHECK(rep1.ones == 1);
    CHECK(rep1.disc_bound == mpq_class(1, 2));
    CHECK(rep1.chi1 == 1);
    CHECK_FALSE(rep1.closed_form.has_value()); // odd n: only the square is rational
    CHECK(rep1.closed_form_squared == mpq_class(1, 8));
    CHECK(rep1.best == mpq_class(1, 2));
    CHECK(rep1.vacuous);

    auto rep3 = nfa_size_lower_bound(ip_oracle_direct(3), 3);
    CHECK(rep3.ones == 28);
    CHECK(rep3.discrepancy == mpq_class(11, 64));
    CHECK(rep3.disc_bound == mpq_class(28, 11));
    CHECK(rep3.chi1 == 7);
    CHECK(rep3.closed_form_squared == mpq_class(1, 2));
    CHECK(rep3.best == mpq_class(28, 11));
    CHECK_FALSE(rep3.vacuous);

    // Side-16 table: the numeric bound is still reported, the exact cover
    // number is out of range, and the even-n closed form is 2^0 = 1.
    auto rep4 = nfa_size_lower_bound(ip_oracle_direct(4), 4);
    CHECK(rep4.ones == 120);
    CHECK(rep4.discrepancy == mpq_class(7, 64));
    CHECK(rep4.disc_bound == mpq_class(30, 7));
    CHECK_FALSE(rep4.chi1.has_value());
    CHECK(rep4.closed_form == mpq_class(1));
    CHECK(rep4.best == mpq_class(30, 7));
    CHECK_FALSE(rep4.vacuous);
}

TEST_CASE("acceptor size evidence for the inequality family") {
    auto rep = nfa_size_lower_bound(neq_oracle_direct(2), 2);
    CHECK(rep.ones == 12);
    CHECK(rep.discrepancy == mpq_class(1, 2));
    CHECK(rep.disc_bound == mpq_class(3, 2));
    CHECK(rep.chi1 == 4);
    CHECK_FALSE(rep.closed_form.has_value()); // closed form is kernel-family only
    CHECK_FALSE(rep.closed_form_squared.has_value());
    CHECK(rep.best == mpq_class(3, 2));
    // The hand-built acceptor has 2(n+1) = 6 states; the bound must respect it.
    CHECK(mpq_class(neq_nfa_direct(2).states().size()) >= rep.best);
    CHECK(neq_nfa_direct(2).states().size() >= *rep.chi1);
}

TEST_CASE("report is deterministic") {
    auto a = nfa_size_lower_bound(ip_oracle_direct(2), 2);
    auto b = nfa_size_lower_bound(ip_oracle_direct(2), 2);
    CHECK(a.best == b.best);
    CHECK(a.chi1 == b.chi1);
    CHECK(a.discrepancy == b.discrepancy);
}

TEST_CASE("no evidence computable raises") {
    // One accepting state looping on three letters: every word is accepted,
    // so the length-2 table is all-ones on a 9x9 (non-power-of-two) side
    // with more 1-entries than the cover search allows.
    Fsa all(std::vector<std::string>{"q"}, Alphabet({"a", "b", "c"}),
            {{"q", "a", "q"}, {"q", "b", "q"}, {"q", "c", "q"}}, {"q"}, {"q"});
    auto o = fsa_oracle(all, Semantics::nfa, FieldSpec::gf2(), "all:3");
    CHECK_THROWS_AS(nfa_size_lower_bound(o, 2), TooLarge);
}

TEST_CASE("covers from machine states dominate the exact cover number") {
    // Any machine recognizing the table's language yields a cover with one
    // rectangle per useful state, so the optimum can never exceed it.
    auto check_machine = [](const Fsa& machine, std::size_t n) {
        auto o = fsa_oracle(machine, Semantics::nfa, FieldSpec::gf2());
        ZeroOneMatrix table{restricted_hankel(o, n)};
        if (table.ones() == 0)
            return;
        auto rects = nfa_rectangle_cover(machine, n);
        std::size_t nonempty = 0;
        for (const auto& r : rects)
            if (!r.rows.empty() && !r.cols.empty())
                ++nonempty;
        CHECK(chi1_exact(table) <= nonempty);
        CHECK(nonempty <= machine.states().size());
    };
    check_machine(neq_nfa_direct(2), 2);
    check_machine(waprod_fsa_direct(2), 2);
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 6; ++trial)
        check_machine(random_fsa(4, Alphabet({"0", "1"}), rng), 2);
}

TEST_CASE("table construction rejects non-binary entries") {
    auto q = FieldSpec::rationals();
    MembershipOracle half(
        q, Alphabet({"0", "1"}),
        [q](const Word&) { return Scalar(q, mpq_class(1, 2)); }, "half");
    CHECK_THROWS_AS(ZeroOneMatrix{restricted_hankel(half, 1)}, Error);
    std::vector<std::vector<char>> bad{{0, 2}};
    CHECK_THROWS_AS(ZeroOneMatrix{bad}, Error);
    std::vector<std::vector<char>> ragged{{0, 1}, {0}};
    CHECK_THROWS_AS(ZeroOneMatrix{ragged}, LengthMismatch);
}
