// End-to-end acceptance checks. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails. Tolerances are
// pinned here on purpose: loosening one is a visible diff.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amm/arbitrage.hpp"
#include "amm/concurrency.hpp"
#include "amm/economics.hpp"
#include "amm/error.hpp"
#include "amm/properties.hpp"
#include "amm/semantics.hpp"
#include "amm/trace_file.hpp"

#include "gen.hpp"
#include "theorem_suites.hpp"

using namespace amm;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

#define REQ(cond, detail)                               \
    do {                                                \
        if (!(cond)) return std::string("line ") + std::to_string(__LINE__) + ": " + (detail); \
    } while (0)

struct Example {
    TraceFile tf;
    State s0;
    PriceOracle oracle;
    RunResult rr;
    std::chrono::duration<double, std::milli> replay_time{};
};

const Example& example() {
    static Example ex = [] {
        std::ifstream in(std::string(AMM_DATA_DIR) + "/worked_example.trace", std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        ParseResult pr = parse_trace(ss.str());
        if (!pr.ok()) throw std::runtime_error("worked_example.trace failed to parse");
        Example e;
        e.tf = pr.file;
        e.s0 = initial_state(e.tf);
        e.oracle = oracle_of(e.tf);
        auto t0 = std::chrono::steady_clock::now();
        e.rr = run(e.s0, e.tf.transactions);
        e.replay_time = std::chrono::steady_clock::now() - t0;
        return e;
    }();
    return ex;
}

// ---- criterion 1: the six-step example replays to the recorded states ----

std::string replay_matches_recorded_states() {
    const Example& ex = example();
    REQ(ex.rr.ok, "replay rejected at step " + std::to_string(ex.rr.failed_index));
    REQ(ex.rr.states.size() == 7, "expected 7 states");

    struct Snap {
        double a0, a1, am, b0, b1;
        bool pool;
        double r0, r1;
    };
    const Snap want[7] = {
        {70, 70, 0, 30, 10, false, 0, 0},
        {0, 0, 70, 30, 10, true, 70, 70},
        {0, 0, 70, 0, 31, true, 100, 49},
        {0, 0, 70, 30, 10, true, 70, 70},
        {30, 30, 40, 30, 10, true, 40, 40},
        {30, 30, 40, 0, 190.0 / 7.0, true, 70, 160.0 / 7.0},
        {82.5, 330.0 / 7.0, 10, 0, 190.0 / 7.0, true, 17.5, 40.0 / 7.0},
    };
    const Token t0 = Token::atomic("t0"), t1 = Token::atomic("t1");
    const Token m = Token::minted("t0", "t1");
    for (int i = 0; i < 7; ++i) {
        const State& s = ex.rr.states[i];
        const Snap& w = want[i];
        std::string at = "state " + std::to_string(i) + ": ";
        REQ(amounts_close(s.balance_of("A", t0), w.a0, 1e-9), at + "A t0");
        REQ(amounts_close(s.balance_of("A", t1), w.a1, 1e-9), at + "A t1");
        REQ(amounts_close(s.balance_of("A", m), w.am, 1e-9), at + "A minted");
        REQ(amounts_close(s.balance_of("B", t0), w.b0, 1e-9), at + "B t0");
        REQ(amounts_close(s.balance_of("B", t1), w.b1, 1e-9), at + "B t1");
        const Pool* p = s.find_pool("t0", "t1");
        REQ((p != nullptr) == w.pool, at + "pool presence");
        if (p) {
            REQ(amounts_close(p->reserve("t0"), w.r0, 1e-9), at + "reserve t0");
            REQ(amounts_close(p->reserve("t1"), w.r1, 1e-9), at + "reserve t1");
        }
    }
    REQ(ex.replay_time.count() < 10.0,
        "replay took " + std::to_string(ex.replay_time.count()) + " ms");
    return {};
}

// ---- criterion 2: atomic and minted supplies follow the deposit/redeem ledger ----

std::string supplies_are_conserved() {
    const Example& ex = example();
    const double minted_supply[7] = {0, 70, 70, 70, 40, 40, 10};
    for (int i = 0; i < 7; ++i) {
        const State& s = ex.rr.states[i];
        std::string at = "state " + std::to_string(i) + ": ";
        REQ(amounts_close(supply(s, Token::atomic("t0")), 100.0, 1e-9), at + "t0 supply");
        REQ(amounts_close(supply(s, Token::atomic("t1")), 80.0, 1e-9), at + "t1 supply");
        double ms = supply(s, Token::minted("t0", "t1"));
        REQ(amounts_close(ms, minted_supply[i], 1e-9) || (ms == 0.0 && minted_supply[i] == 0.0),
            at + "minted supply " + fmt(ms));
    }
    return {};
}

// ---- criterion 3: swaps preserve the reserve product ----

std::string swaps_preserve_reserve_product() {
    const Example& ex = example();
    const int swap_steps[3] = {1, 2, 4};  // state index before each swap
    for (int i : swap_steps) {
        const Pool* before = ex.rr.states[i].find_pool("t0", "t1");
        const Pool* after = ex.rr.states[i + 1].find_pool("t0", "t1");
        REQ(before && after, "pool missing around step " + std::to_string(i));
        double pb = before->r0 * before->r1;
        double pa = after->r0 * after->r1;
        REQ(amounts_close(pb, pa, 1e-9),
            "product " + fmt(pb) + " -> " + fmt(pa) + " across step " + std::to_string(i));
    }
    return {};
}

// ---- criterion 4: the worked wealth figures come out exactly ----

std::string wealth_figures_match() {
    const Example& ex = example();

    State disp;
    disp.wallets["A"].set(Token::atomic("t0"), 82.0);
    disp.wallets["A"].set(Token::atomic("t1"), 47.0);
    disp.wallets["A"].set(Token::minted("t0", "t1"), 10.0);
    disp.wallets["B"].set(Token::atomic("t1"), 27.0);
    disp.pools.push_back(Pool::make("t0", 18.0, "t1", 6.0));

    double minted_price = price(disp, ex.oracle, Token::minted("t0", "t1"));
    REQ(amounts_close(minted_price, 14.4, 1e-9), "minted price " + fmt(minted_price));

    REQ(amounts_close(net_worth(ex.s0, ex.oracle, "A"), 980.0, 1e-9), "initial worth of A");
    REQ(amounts_close(net_worth(ex.s0, ex.oracle, "B"), 240.0, 1e-9), "initial worth of B");
    REQ(amounts_close(net_worth(disp, ex.oracle, "A"), 977.0, 1e-9), "final worth of A");
    REQ(amounts_close(net_worth(disp, ex.oracle, "B"), 243.0, 1e-9), "final worth of B");

    for (std::size_t i = 0; i < ex.rr.states.size(); ++i) {
        double w = global_net_worth(ex.rr.states[i], ex.oracle);
        REQ(amounts_close(w, 1220.0, 1e-9),
            "global worth " + fmt(w) + " at state " + std::to_string(i));
    }

    GainResult ga = gain(ex.s0, ex.oracle, "A", ex.tf.transactions);
    GainResult gb = gain(ex.s0, ex.oracle, "B", ex.tf.transactions);
    REQ(ga.enabled && gb.enabled, "example trace should be enabled");
    REQ(amounts_close(ga.value, -30.0 / 7.0, 1e-9), "gain of A " + fmt(ga.value));
    REQ(amounts_close(gb.value, 30.0 / 7.0, 1e-9), "gain of B " + fmt(gb.value));
    REQ(std::fabs(ga.value + gb.value) < 1e-9, "gains should cancel");
    return {};
}

// ---- criterion 5: the three arbitrage solvers agree on the worked pool ----

std::string arbitrage_solvers_agree() {
    ArbitrageProblem p;
    p.pool = Pool::make("t0", 18.0, "t1", 6.0);
    p.oracle = PriceOracle({{"t0", 5.0}, {"t1", 9.0}});
    p.user = "B";
    p.user_balance.set(Token::atomic("t1"), 27.0);

    const double x0 = std::sqrt(60.0) - 6.0;
    const double gain0 = 144.0 - 18.0 * std::sqrt(60.0);

    ArbitrageSolution closed = solve_constant_product(p);
    REQ(!closed.empty, "closed form found no move");
    REQ(closed.t_in == "t1" && closed.t_out == "t0", "direction " + closed.t_in + "->" + closed.t_out);
    REQ(amounts_close(closed.x0, x0, 1e-12), "closed x0 " + fmt(closed.x0));
    REQ(std::fabs(closed.expected_gain - gain0) < 1e-9, "closed gain " + fmt(closed.expected_gain));
    REQ(std::fabs(closed.expected_gain - 4.573) < 1e-3, "gain far from 4.573");
    REQ(closed.feasible, "move should be fundable");

    ArbitrageSolution bis = solve_generic(p, constant_product(), 1e-12);
    REQ(!bis.empty, "bisection found no move");
    REQ(std::fabs(bis.x0 - x0) < 1e-6, "bisection x0 " + fmt(bis.x0));

    const long long grid = 100000;
    BruteForceResult bf = brute_force(p, constant_product(), grid, true);
    REQ(!bf.empty, "grid search found no move");
    double cell = x0 * (std::pow(1e9, 1.0 / static_cast<double>(grid - 1)) - 1.0);
    REQ(std::fabs(bf.x - x0) < cell * 1.0001,
        "grid argmax " + fmt(bf.x) + " more than one cell from " + fmt(x0));
    REQ(std::fabs(bf.gain - gain0) < 1e-3, "grid gain " + fmt(bf.gain));

    // after the optimal swap the marginal rate sits on the price ratio
    State s = problem_state(p);
    StepResult step = apply(s, Transaction::swap("B", closed.x0, "t1", "t0"), constant_product());
    REQ(step.ok(), "optimal swap rejected");
    const Pool* after = step.next->find_pool("t0", "t1");
    double marginal = constant_product().rate(0.0, after->reserve("t1"), after->reserve("t0"));
    REQ(std::fabs(marginal - 1.8) < 1e-6, "post-swap marginal rate " + fmt(marginal));
    return {};
}

// ---- criterion 6: sampled certification separates the rate functions ----

std::string certification_separates_rates() {
    PropertyCheckConfig cfg;
    cfg.samples = 10000;
    cfg.rng_seed = 1;

    PropertyReport cp = certify(constant_product(), cfg);
    for (const char* key :
         {"output_bound", "monotonic", "strict_monotonic", "additive", "reversible", "homogeneous"})
        REQ(cp.passed(key), std::string("constant product failed ") + key);
    REQ(cp.declared_mismatches.empty(), "constant product mismatches");

    ConstantProductWithFee fee(0.997);
    PropertyReport fr = certify(fee, cfg);
    for (const char* key : {"output_bound", "monotonic", "strict_monotonic", "homogeneous"})
        REQ(fr.passed(key), std::string("fee rate failed ") + key);
    for (const char* key : {"additive", "reversible"}) {
        REQ(!fr.passed(key), std::string("fee rate should fail ") + key);
        REQ(fr.properties.at(key).counterexample.has_value(),
            std::string("no counterexample for ") + key);
    }
    REQ(fr.declared_mismatches.empty(), "fee rate mismatches");
    return {};
}

// ---- criterion 7: the randomized structural suites hold ----

std::string randomized_suites_hold() {
    auto t0 = std::chrono::steady_clock::now();
    std::vector<suites::SuiteResult> results = suites::run_theorem_suites(1000);
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    REQ(!results.empty(), "no suites ran");
    for (const suites::SuiteResult& r : results) {
        REQ(r.failures == 0,
            r.name + ": " + std::to_string(r.failures) + " failures; first: " + r.first_failure);
        REQ(r.skipped * 2 < r.cases, r.name + " skipped too many cases");
    }
    REQ(dt.count() < 60.0, "suites took " + std::to_string(dt.count()) + " s");
    return {};
}

// ---- criterion 8: concurrent pairs commute and reorderings agree ----

std::string concurrency_reordering_sound() {
    long long tested = 0;
    for (int i = 0; i < 40000 && tested < 1000; ++i) {
        std::mt19937_64 r(7000 + i);
        gen::Market m = gen::make_market(r(), 2, true);
        auto random_tx = [&]() -> Transaction {
            int kind = gen::pick(r, 3);
            const auto& pr = m.pairs[gen::pick(r, 2)];
            if (kind == 0) return gen::random_swap(r, m, gen::pick(r, 2) ? "A" : "B");
            if (kind == 1)
                return dep_exact(m.state, gen::pick(r, 2) ? "A" : "B", gen::uni(r, 1.0, 20.0),
                                 pr.first, pr.second);
            double hold = m.state.balance_of("C", Token::minted(pr.first, pr.second));
            return Transaction::rdm("C", gen::uni(r, 0.05, 0.4) * hold, pr.first, pr.second);
        };
        Transaction tx1 = random_tx();
        Transaction tx2 = random_tx();
        if (tx1 == tx2 || !concurrent(tx1, tx2)) continue;
        try {
            bool same = commutes(m.state, tx1, tx2, 1e-9);
            REQ(same, "pair disagrees: " + to_string(tx1) + " / " + to_string(tx2));
            ++tested;
        } catch (const Error&) {
            // one order was not enabled; not a concurrent enabled pair
        }
    }
    REQ(tested >= 1000, "only " + std::to_string(tested) + " concurrent enabled pairs sampled");

    for (int seed = 0; seed < 40; ++seed) {
        std::mt19937_64 r(9100 + seed);
        gen::Market m = gen::make_market(r(), 2, true);
        State s = m.state;
        Trace tr;
        int len = 2 + gen::pick(r, 7);
        int attempts = 0;
        while (static_cast<int>(tr.size()) < len && ++attempts < 500) {
            Transaction tx = [&]() -> Transaction {
                int kind = gen::pick(r, 3);
                const auto& pr = m.pairs[gen::pick(r, 2)];
                std::string user = gen::pick(r, 2) ? "A" : "B";
                if (kind == 0) {
                    bool flip = gen::pick(r, 2) == 1;
                    std::string t_in = flip ? pr.second : pr.first;
                    std::string t_out = flip ? pr.first : pr.second;
                    const Pool* pool = s.find_pool(t_in, t_out);
                    double cap = std::min(s.balance_of(user, Token::atomic(t_in)), pool->reserve(t_in));
                    return Transaction::swap(user, gen::uni(r, 0.05, 0.3) * cap, t_in, t_out);
                }
                if (kind == 1)
                    return dep_exact(s, user, gen::uni(r, 1.0, 20.0), pr.first, pr.second);
                double hold = s.balance_of("C", Token::minted(pr.first, pr.second));
                return Transaction::rdm("C", gen::uni(r, 0.05, 0.3) * hold, pr.first, pr.second);
            }();
            StepResult step = apply(s, tx, constant_product());
            if (!step.ok()) continue;
            s = *step.next;
            tr.push_back(tx);
        }
        ReorderReport rep = check_reorder_soundness(m.state, tr, 1e-9, 3000);
        REQ(rep.ok, "reordering disagreed at seed " + std::to_string(seed));
    }
    return {};
}

// ---- criterion 9: the scenario generator hits requested reserve targets ----

std::string generator_hits_targets() {
    for (int i = 0; i < 100; ++i) {
        std::mt19937_64 r(400 + i);
        gen::Market m = gen::make_market(r(), 2, i % 2 == 0);
        const auto& [a, b] = m.pairs[gen::pick(r, 2)];
        double target = gen::uni(r, 0.1, 0.95) * m.state.find_pool(a, b)->reserve(a);
        std::optional<State> drained = gen::drain_to(m.state, a, b, target);
        REQ(drained.has_value(), "drain refused at case " + std::to_string(i));
        double got = drained->find_pool(a, b)->reserve(a);
        REQ(amounts_close(got, target, 1e-9),
            "case " + std::to_string(i) + ": reserve " + fmt(got) + " vs target " + fmt(target));
    }
    return {};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        std::string (*fn)();
    };
    const Criterion criteria[] = {
        {"example trace replays the recorded state sequence", replay_matches_recorded_states},
        {"token supplies follow the deposit/redeem ledger", supplies_are_conserved},
        {"swaps preserve the reserve product", swaps_preserve_reserve_product},
        {"worked wealth and gain figures match", wealth_figures_match},
        {"arbitrage solvers agree on the worked pool", arbitrage_solvers_agree},
        {"sampled certification separates the rate functions", certification_separates_rates},
        {"randomized structural suites hold", randomized_suites_hold},
        {"concurrent pairs commute and reorderings agree", concurrency_reordering_sound},
        {"scenario generator hits requested reserve targets", generator_hits_targets},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        try {
            detail = c.fn();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (detail.empty()) {
            std::cout << "PASS  " << c.name << "\n";
        } else {
            std::cout << "FAIL  " << c.name << " (" << detail << ")\n";
            ++failed;
        }
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
              << "\n";
    return failed == 0 ? 0 : 1;
}
