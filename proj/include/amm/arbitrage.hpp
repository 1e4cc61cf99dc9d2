#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "amm/economics.hpp"
#include "amm/state.hpp"
#include "amm/swap_rate.hpp"

namespace amm {

// Single-pool, single-move setup: which one swap (if any) maximizes the
// user's gain. The user must hold none of the pool's minted token and the
// oracle must price both pool tokens.
struct ArbitrageProblem {
    Pool pool;
    PriceOracle oracle;
    std::string user;
    Balance user_balance;
};

// State containing exactly the problem's pool and the user's wallet.
State problem_state(const ArbitrageProblem& p);

struct SwapDirection {
    std::string t_in, t_out;
    friend bool operator==(const SwapDirection&, const SwapDirection&) = default;
};

// The direction whose marginal rate beats the exchange rate:
// f(0, r_in, r_out) > X(t_in, t_out) beyond the relative band. nullopt at
// equilibrium. At most one direction can qualify.
std::optional<SwapDirection> pick_direction(const ArbitrageProblem& p,
                                            const SwapRateFn& f = constant_product(),
                                            double rel_tol = 1e-9);

struct ArbitrageSolution {
    bool empty = true;  // no profitable move
    std::string t_in, t_out;
    double x0 = 0.0;
    double expected_gain = 0.0;
    bool feasible = true;  // user_balance funds x0; x0 is reported either way

    friend bool operator==(const ArbitrageSolution&, const ArbitrageSolution&) = default;
};

// Closed form under the constant product rule:
//   x0 = sqrt((P(t_out)/P(t_in)) * r_in * r_out) - r_in
// for the profitable direction; empty at equilibrium.
ArbitrageSolution solve_constant_product(const ArbitrageProblem& p);

// Root of g(x) = f(0, r_in + x, r_out - x*f(x, r_in, r_out)) - X(t_in, t_out)
// by bisection; g is strictly decreasing for rate functions with the four
// properties required below, so the root is the gain maximizer. Empty when
// g(0) <= 0 in both directions. Stops at |g| <= tol*X.
// Throws Error(UncertifiedFunction) unless f declares output_bound,
// strict_monotonic, additive and reversible; Error(NotBracketable) when g
// stays positive through 200 bracket doublings.
ArbitrageSolution solve_generic(const ArbitrageProblem& p, const SwapRateFn& f, double tol = 1e-12);

struct BruteForceResult {
    bool empty = true;  // no sampled swap gained
    std::string t_in, t_out;
    double x = 0.0;
    double gain = 0.0;
};

// Independent check: sample `grid` log-spaced swap sizes per direction and
// return the best realized gain. Samples span (x_hi*1e-9, x_hi] with x_hi
// the same bracket the bisection would use (10*r_in when not bracketable).
BruteForceResult brute_force(const ArbitrageProblem& p, const SwapRateFn& f, long long grid,
                             bool parallel = true);

nlohmann::json solution_json(const ArbitrageSolution& sol);

}  // namespace amm
