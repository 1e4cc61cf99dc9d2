// Timing comparison of the serial and OpenMP sampling paths. Both paths run
// the same counter-based sample streams, so the reports must agree bit for
// bit; a mismatch makes the benchmark exit nonzero.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "amm/arbitrage.hpp"
#include "amm/properties.hpp"

using namespace amm;

namespace {

template <typename Fn>
double run_ms(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
    return dt.count();
}

void row(const char* kernel, double serial_ms, double parallel_ms) {
    std::printf("%-36s %11.1f %13.1f %8.2fx\n", kernel, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    long long samples = argc > 1 ? std::atoll(argv[1]) : 200000;
    long long grid = argc > 2 ? std::atoll(argv[2]) : 500000;
    int rc = 0;

    std::printf("%-36s %11s %13s %9s\n", "kernel", "serial ms", "parallel ms", "speedup");

    ConstantProduct cp;
    ConstantProductWithFee fee(0.997);
    for (const SwapRateFn* f :
         {static_cast<const SwapRateFn*>(&cp), static_cast<const SwapRateFn*>(&fee)}) {
        PropertyCheckConfig cfg;
        cfg.samples = samples;
        PropertyReport serial, parallel;
        cfg.parallel = false;
        double ts = run_ms([&] { serial = certify(*f, cfg); });
        cfg.parallel = true;
        double tp = run_ms([&] { parallel = certify(*f, cfg); });
        char label[64];
        std::snprintf(label, sizeof label, "certify %s n=%lld", f->name().c_str(), samples);
        row(label, ts, tp);
        if (report_json(serial) != report_json(parallel)) {
            std::printf("  serial and parallel reports differ for %s\n", f->name().c_str());
            rc = 1;
        }
    }

    ArbitrageProblem p;
    p.pool = Pool::make("t0", 18.0, "t1", 6.0);
    p.oracle = PriceOracle({{"t0", 5.0}, {"t1", 9.0}});
    p.user = "B";
    p.user_balance.set(Token::atomic("t1"), 27.0);

    BruteForceResult bs, bp;
    double ts = run_ms([&] { bs = brute_force(p, cp, grid, false); });
    double tp = run_ms([&] { bp = brute_force(p, cp, grid, true); });
    char label[64];
    std::snprintf(label, sizeof label, "brute_force grid=%lld", grid);
    row(label, ts, tp);
    if (bs.empty != bp.empty || bs.t_in != bp.t_in || bs.t_out != bp.t_out || bs.x != bp.x ||
        bs.gain != bp.gain) {
        std::printf("  serial and parallel grid searches differ\n");
        rc = 1;
    }

    return rc;
}
