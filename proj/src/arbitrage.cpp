#include "amm/arbitrage.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "amm/error.hpp"
#include "amm/semantics.hpp"

namespace amm {

namespace {

void check_problem(const ArbitrageProblem& p) {
    p.oracle.at(p.pool.tok0);
    p.oracle.at(p.pool.tok1);
    if (p.user_balance.get(p.pool.minted()) != 0.0)
        throw Error(Errc::PreconditionViolated, p.user + " holds " + p.pool.minted().str());
}

std::array<SwapDirection, 2> directions(const ArbitrageProblem& p) {
    return {SwapDirection{p.pool.tok0, p.pool.tok1}, SwapDirection{p.pool.tok1, p.pool.tok0}};
}

// marginal rate after a swap of x, minus the exchange rate; the equilibrium
// condition is the root of this
double marginal_gap(const ArbitrageProblem& p, const SwapRateFn& f, const SwapDirection& d,
                    double x) {
    double r_in = p.pool.reserve(d.t_in);
    double r_out = p.pool.reserve(d.t_out);
    double y = x * f.rate(x, r_in, r_out);
    return f.rate(0.0, r_in + x, r_out - y) - exchange_rate(p.oracle, d.t_in, d.t_out);
}

State state_funded_for(const ArbitrageProblem& p, const std::string& t_in, double need) {
    State s = problem_state(p);
    Balance& w = s.wallets[p.user];
    Token tok = Token::atomic(t_in);
    if (w.get(tok) < need) w.set(tok, need);
    return s;
}

// gain of the swap through the step semantics, topping the balance up so the
// move is never rejected for funding
double realized_gain(const ArbitrageProblem& p, const SwapRateFn& f, const SwapDirection& d,
                     double x) {
    State s = state_funded_for(p, d.t_in, x);
    return gain(s, p.oracle, p.user, Trace{Transaction::swap(p.user, x, d.t_in, d.t_out)}, f).value;
}

ArbitrageSolution finish(const ArbitrageProblem& p, const SwapRateFn& f, const SwapDirection& d,
                         double x0) {
    ArbitrageSolution sol;
    sol.empty = false;
    sol.t_in = d.t_in;
    sol.t_out = d.t_out;
    sol.x0 = x0;
    sol.expected_gain = realized_gain(p, f, d, x0);
    sol.feasible = apply(problem_state(p), Transaction::swap(p.user, x0, d.t_in, d.t_out), f).ok();
    return sol;
}

// hi with marginal_gap(hi) < 0, found by doubling from 1; grid fallback when
// the sign never flips within the doubling budget
constexpr int kMaxDoublings = 200;

std::optional<double> bracket_hi(const ArbitrageProblem& p, const SwapRateFn& f,
                                 const SwapDirection& d) {
    double hi = 1.0;
    for (int i = 0; i <= kMaxDoublings; ++i) {
        if (marginal_gap(p, f, d, hi) < 0.0) return hi;
        hi *= 2.0;
    }
    return std::nullopt;
}

}  // namespace

State problem_state(const ArbitrageProblem& p) {
    State s;
    s.wallets[p.user] = p.user_balance;
    s.pools.push_back(p.pool);
    return s;
}

std::optional<SwapDirection> pick_direction(const ArbitrageProblem& p, const SwapRateFn& f,
                                            double rel_tol) {
    check_problem(p);
    for (const SwapDirection& d : directions(p)) {
        double sx0 = f.rate(0.0, p.pool.reserve(d.t_in), p.pool.reserve(d.t_out));
        double x_rate = exchange_rate(p.oracle, d.t_in, d.t_out);
        if (sx0 - x_rate > rel_tol * std::max(sx0, x_rate)) return d;
    }
    return std::nullopt;
}

ArbitrageSolution solve_constant_product(const ArbitrageProblem& p) {
    std::optional<SwapDirection> d = pick_direction(p);
    if (!d) return {};
    double r_in = p.pool.reserve(d->t_in);
    double r_out = p.pool.reserve(d->t_out);
    double x0 = std::sqrt(p.oracle.at(d->t_out) / p.oracle.at(d->t_in) * r_in * r_out) - r_in;
    if (!(x0 > 0.0)) return {};
    return finish(p, constant_product(), *d, x0);
}

ArbitrageSolution solve_generic(const ArbitrageProblem& p, const SwapRateFn& f, double tol) {
    check_problem(p);
    RatePropertySet have = f.declared();
    for (RateProperty need : {RateProperty::OutputBound, RateProperty::StrictlyMonotonic,
                              RateProperty::Additive, RateProperty::Reversible}) {
        if (!have.contains(need))
            throw Error(Errc::UncertifiedFunction,
                        f.name() + " lacks " + std::string(rate_property_name(need)));
    }

    std::optional<SwapDirection> dir;
    for (const SwapDirection& d : directions(p)) {
        if (marginal_gap(p, f, d, 0.0) > 0.0) {
            dir = d;
            break;
        }
    }
    if (!dir) return {};

    std::optional<double> hi = bracket_hi(p, f, *dir);
    if (!hi)
        throw Error(Errc::NotBracketable,
                    "marginal rate still above the exchange rate at x = 2^" +
                        std::to_string(kMaxDoublings));

    double x_rate = exchange_rate(p.oracle, dir->t_in, dir->t_out);
    double lo = 0.0;
    double up = *hi;
    double x0 = 0.5 * up;
    for (int i = 0; i < 256; ++i) {
        x0 = 0.5 * (lo + up);
        double g = marginal_gap(p, f, *dir, x0);
        if (std::fabs(g) <= tol * x_rate) break;
        (g > 0.0 ? lo : up) = x0;
    }
    return finish(p, f, *dir, x0);
}

BruteForceResult brute_force(const ArbitrageProblem& p, const SwapRateFn& f, long long grid,
                             bool parallel) {
    check_problem(p);
    if (grid < 2) throw std::invalid_argument("grid must be at least 2");

    BruteForceResult best;  // stays empty unless some sampled swap gains
    std::vector<double> gains(static_cast<std::size_t>(grid));
    for (const SwapDirection& d : directions(p)) {
        double x_hi = bracket_hi(p, f, d).value_or(10.0 * p.pool.reserve(d.t_in));
        double x_lo = x_hi * 1e-9;
        State s = state_funded_for(p, d.t_in, x_hi);
        auto x_at = [&](long long j) {
            return x_lo * std::pow(x_hi / x_lo, static_cast<double>(j) / static_cast<double>(grid - 1));
        };
        auto eval = [&](long long j) {
            return gain(s, p.oracle, p.user, Trace{Transaction::swap(p.user, x_at(j), d.t_in, d.t_out)}, f)
                .value;
        };
#ifdef _OPENMP
        if (parallel) {
#pragma omp parallel for schedule(static)
            for (long long j = 0; j < grid; ++j) gains[static_cast<std::size_t>(j)] = eval(j);
        } else
#endif
        {
            for (long long j = 0; j < grid; ++j) gains[static_cast<std::size_t>(j)] = eval(j);
        }
        for (long long j = 0; j < grid; ++j) {
            double g = gains[static_cast<std::size_t>(j)];
            if (g > best.gain) {  // best.gain starts at 0, so losing swaps never win
                best.empty = false;
                best.t_in = d.t_in;
                best.t_out = d.t_out;
                best.x = x_at(j);
                best.gain = g;
            }
        }
    }
    return best;
}

nlohmann::json solution_json(const ArbitrageSolution& sol) {
    nlohmann::json move;
    if (sol.empty)
        move = {{"kind", "empty"}};
    else
        move = {{"kind", "swap"}, {"x", sol.x0}, {"in", sol.t_in}, {"out", sol.t_out}};
    return {{"move", move}, {"gain", sol.expected_gain}, {"feasible", sol.feasible}};
}

}  // namespace amm
