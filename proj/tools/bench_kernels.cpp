// Compares every OpenMP kernel against its serial reference: same inputs,
// equality of results, and (in full mode) wall-clock timings. --quick runs
// small sizes and prints only the agreement verdicts, so its output is
// byte-stable and usable as a smoke test.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "walab/commtools.hpp"
#include "walab/families.hpp"
#include "walab/hankel.hpp"
#include "walab/matrix.hpp"
#include "walab/parallel.hpp"

using namespace walab;

namespace {

using Clock = std::chrono::steady_clock;

double best_seconds(int reps, const std::function<void()>& body) {
    double best = 1e9;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        body();
        const std::chrono::duration<double> dt = Clock::now() - t0;
        best = std::min(best, dt.count());
    }
    return best;
}

struct Row {
    std::string name, size;
    bool agree;
    double serial, parallel;
};

std::vector<std::vector<std::uint64_t>> random_packed(std::size_t nrows,
                                                      std::size_t ncols,
                                                      std::mt19937_64& rng) {
    const std::size_t words = (ncols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(
        nrows, std::vector<std::uint64_t>(words));
    for (auto& r : rows) {
        for (auto& w : r) w = rng();
        if (ncols % 64) r.back() &= (std::uint64_t{1} << (ncols % 64)) - 1;
    }
    return rows;
}

Row bench_gf2_rank(bool quick, int reps, std::mt19937_64& rng) {
    const std::size_t n = quick ? 96 : 2000;
    const auto rows = random_packed(n, n, rng);
    std::size_t rs = 0, rp = 0;
    const double ts =
        best_seconds(reps, [&] { rs = kernels::gf2_rank_serial(rows, n); });
    const double tp =
        best_seconds(reps, [&] { rp = kernels::gf2_rank_parallel(rows, n); });
    return {"gf2_rank", std::to_string(n) + "x" + std::to_string(n), rs == rp,
            ts, tp};
}

Row bench_ip_ones(bool quick, int reps) {
    const std::size_t n = quick ? 8 : 13;
    std::uint64_t vs = 0, vp = 0;
    const double ts =
        best_seconds(reps, [&] { vs = kernels::ip_ones_serial(n); });
    const double tp =
        best_seconds(reps, [&] { vp = kernels::ip_ones_parallel(n); });
    const std::uint64_t closed =
        (std::uint64_t{1} << (n - 1)) * ((std::uint64_t{1} << n) - 1);
    return {"ip_ones", "n=" + std::to_string(n), vs == vp && vs == closed, ts,
            tp};
}

Row bench_disc_numerator(bool quick, int reps, std::mt19937_64& rng) {
    const std::size_t nrows = 16, ncols = quick ? 64 : 4096;
    std::vector<std::uint64_t> masks(ncols);
    for (auto& m : masks) m = rng() & 0xFFFFu;
    std::int64_t vs = 0, vp = 0;
    const double ts = best_seconds(
        reps, [&] { vs = kernels::disc_numerator_serial(masks, nrows); });
    const double tp = best_seconds(
        reps, [&] { vp = kernels::disc_numerator_parallel(masks, nrows); });
    return {"disc_numerator",
            std::to_string(nrows) + "x" + std::to_string(ncols), vs == vp, ts,
            tp};
}

Row bench_block_fill(bool quick, int reps) {
    const std::size_t n = quick ? 3 : 7;
    // Fresh oracles per run: the shared memo would hide the second fill.
    const auto fresh = [&] { return family_oracle("ip:" + std::to_string(n)); };
    bool agree = true;
    const ExecMode before = exec_mode();
    double ts = 0, tp = 0;
    {
        HankelBlock bs(std::vector<Word>{}, std::vector<Word>{},
                       Matrix(FieldSpec::gf2(), 0, 0));
        HankelBlock bp = bs;
        set_exec_mode(ExecMode::serial);
        ts = best_seconds(reps, [&] { bs = restricted_hankel(fresh(), n); });
        set_exec_mode(ExecMode::parallel);
        tp = best_seconds(reps, [&] { bp = restricted_hankel(fresh(), n); });
        agree = bs.entries() == bp.entries();
    }
    set_exec_mode(before);
    const std::string side = std::to_string(std::size_t{1} << n);
    return {"block_fill", side + "x" + side, agree, ts, tp};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial-vs-OpenMP kernel comparison"};
    bool quick = false;
    int reps = 3;
    app.add_flag("--quick", quick,
                 "small sizes, agreement verdicts only (no timings)");
    app.add_option("--reps", reps, "timed repetitions per kernel")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::mt19937_64 rng(0xBE7C4);
    const std::vector<Row> rows = {
        bench_gf2_rank(quick, reps, rng),
        bench_ip_ones(quick, reps),
        bench_disc_numerator(quick, reps, rng),
        bench_block_fill(quick, reps),
    };

    bool all = true;
    for (const Row& r : rows) all = all && r.agree;
    if (quick) {
        for (const Row& r : rows)
            std::cout << r.name << ": "
                      << (r.agree ? "serial and parallel agree"
                                  : "MISMATCH")
                      << "\n";
        std::cout << (all ? "all kernels agree\n" : "kernel mismatch\n");
        return all ? 0 : 1;
    }

    std::printf("%-16s %-12s %10s %10s %9s\n", "kernel", "size", "serial",
                "parallel", "speedup");
    for (const Row& r : rows) {
        std::printf("%-16s %-12s %9.4fs %9.4fs %8.2fx%s\n", r.name.c_str(),
                    r.size.c_str(), r.serial, r.parallel,
                    r.parallel > 0 ? r.serial / r.parallel : 0.0,
                    r.agree ? "" : "  MISMATCH");
    }
    return all ? 0 : 1;
}
