#pragma once

#include <map>
#include <string>

#include "amm/state.hpp"
#include "amm/swap_rate.hpp"
#include "amm/tx.hpp"

namespace amm {

// Prices atomic tokens. Immutable; set_price builds an updated copy, and the
// conservation results below only hold while the oracle stays fixed.
class PriceOracle {
public:
    PriceOracle() = default;
    explicit PriceOracle(std::map<std::string, double> prices);

    bool has(const std::string& sym) const { return prices_.count(sym) != 0; }

    // Throws Error(UnpricedToken).
    double at(const std::string& sym) const;

    const std::map<std::string, double>& prices() const { return prices_; }

    friend bool operator==(const PriceOracle&, const PriceOracle&) = default;

private:
    std::map<std::string, double> prices_;
};

// Copy of o with sym priced at p. Throws Error(NonPositivePrice).
PriceOracle set_price(const PriceOracle& o, const std::string& sym, double p);

// Atomic tokens read the oracle; a minted token is worth its pool's reserves
// divided by the minted supply: (r0*P(t0) + r1*P(t1)) / supply.
// Throws Error(UnpricedToken), Error(NoSuchPool), Error(ZeroMintedSupply).
double price(const State& s, const PriceOracle& o, const Token& t);

// Units of t1 per unit of t0: P(t0)/P(t1).
double exchange_rate(const PriceOracle& o, const std::string& t0, const std::string& t1);

// Oracle-priced wallet value; 0 for an absent user.
double net_worth(const State& s, const PriceOracle& o, const std::string& user);

// Sum over all wallets. Constant across accepted steps under a fixed oracle.
double global_net_worth(const State& s, const PriceOracle& o);

struct GainResult {
    double value = 0.0;
    bool enabled = true;  // a disabled trace gains 0 by definition

    friend bool operator==(const GainResult&, const GainResult&) = default;
};

// Net-worth change of user across tr run from s; {0, false} when some step
// is rejected.
GainResult gain(const State& s, const PriceOracle& o, const std::string& user, const Trace& tr,
                const SwapRateFn& rate = constant_product());

// Closed-form gain of holder when actor performs the swap:
//   edge = x * (SX(x, r_in, r_out)*P(t_out) - P(t_in))
//   holder == actor:  edge * (1 - share)     share = holder's minted / supply
//   holder != actor: -edge * share
// Matches gain() on the single-swap trace within rule tolerance.
// Throws Error(NotEnabled) when the swap is rejected from s.
double swap_gain_closed(const State& s, const PriceOracle& o, const std::string& actor,
                        const std::string& holder, const SwapAction& sw,
                        const SwapRateFn& rate = constant_product());

// Sign of SX(x, r_in, r_out) - X(t_in, t_out), which is the sign of the
// swapper's gain when the swapper holds none of the pool's minted token.
// 0 when the difference is within rel_tol relatively.
// Throws Error(PreconditionViolated) if actor holds minted tokens of the pair.
int gain_sign(const State& s, const PriceOracle& o, const std::string& actor, const SwapAction& sw,
              const SwapRateFn& rate = constant_product(), double rel_tol = 1e-12);

}  // namespace amm
