#pragma once

#include <optional>
#include <string_view>

#include "amm/state.hpp"
#include "amm/swap_rate.hpp"
#include "amm/tx.hpp"

namespace amm {

// Rule-premise identifiers for rejected steps; stable public contract.
enum class Reject {
    NonPositiveAmount,
    InsufficientBalance,
    PoolExists,
    PoolMissing,
    RatioMismatch,
    SupplyDepleted,
    OutputExceedsReserve,
    GuardViolated,
};

constexpr std::string_view reject_name(Reject r) {
    switch (r) {
        case Reject::NonPositiveAmount: return "NonPositiveAmount";
        case Reject::InsufficientBalance: return "InsufficientBalance";
        case Reject::PoolExists: return "PoolExists";
        case Reject::PoolMissing: return "PoolMissing";
        case Reject::RatioMismatch: return "RatioMismatch";
        case Reject::SupplyDepleted: return "SupplyDepleted";
        case Reject::OutputExceedsReserve: return "OutputExceedsReserve";
        case Reject::GuardViolated: return "GuardViolated";
    }
    return "UnknownReject";
}

struct StepResult {
    std::optional<State> next;
    Reject reason = Reject::NonPositiveAmount;

    bool ok() const { return next.has_value(); }
    const State& state() const { return *next; }

    static StepResult accepted(State s) { return {std::move(s), Reject::NonPositiveAmount}; }
    static StepResult rejected(Reject r) { return {std::nullopt, r}; }
};

struct RunResult {
    std::vector<State> states;  // states[0] is the input; one more per accepted step
    bool ok = true;
    std::size_t failed_index = 0;  // valid when !ok
    Reject reason = Reject::NonPositiveAmount;

    const State& final_state() const { return states.back(); }
};

// Tolerance for the r1*v0 = r0*v1 deposit premise and other rule-level
// amount comparisons.
inline constexpr double kRuleRelTol = 1e-9;

// Reserve of the given side of the pair's pool (canonical order: side 0 is the
// smaller symbol) divided by the minted supply.
// Throws Error(NoSuchPool) and Error(ZeroMintedSupply).
double redeem_rate(const State& s, const Token& minted_tok, int side);

// One transition step; pure. Premises are checked in a fixed order per action:
//   dep:  NonPositiveAmount, PoolExists/PoolMissing dispatch, InsufficientBalance,
//         RatioMismatch (pool path), SupplyDepleted (zero minted supply on an
//         existing pool)
//   swap: NonPositiveAmount, PoolMissing, InsufficientBalance,
//         OutputExceedsReserve, GuardViolated (y < y_min)
//   rdm:  NonPositiveAmount, PoolMissing, SupplyDepleted (v >= supply),
//         InsufficientBalance, GuardViolated (paid amount below its floor)
// Guarded dep resolves its amount ranges first (GuardViolated when no case
// fits), then follows the dep path.
StepResult apply(const State& s, const Transaction& tx, const SwapRateFn& rate = constant_product());

// Folds apply over the trace; on the first rejection reports the executed
// prefix, failing index and reason.
RunResult run(const State& s, const Trace& tr, const SwapRateFn& rate = constant_product());

// Deposit on an existing pool with v1 = v0 * r1/r0 computed from the current
// reserves. Throws Error(NoSuchPool).
Transaction dep_exact(const State& s, const std::string& user, double v0, const std::string& t0,
                      const std::string& t1);

// Dep+Dep, Rdm+Rdm, or same-direction Swap+Swap of one user on one pair,
// summed; nullopt otherwise. The swap merge is only state-equivalent under an
// additive rate function.
std::optional<Transaction> merge(const Transaction& a, const Transaction& b);

// The transaction undoing tx from the state tx leads to: dep -> rdm of the
// minted amount, rdm -> dep of the paid amounts, swap -> opposite swap of the
// received amount (state-equivalent under a reversible rate). nullopt for a
// pool-creating dep or when tx is not enabled in s.
std::optional<Transaction> invert(const State& s, const Transaction& tx,
                                  const SwapRateFn& rate = constant_product());

}  // namespace amm
