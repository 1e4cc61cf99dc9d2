#include "amm/economics.hpp"

#include <cmath>

#include "amm/error.hpp"
#include "amm/semantics.hpp"

namespace amm {

namespace {

void require_positive_price(const std::string& sym, double p) {
    if (!(p > 0.0) || !std::isfinite(p))
        throw Error(Errc::NonPositivePrice, sym + " priced " + std::to_string(p));
}

}  // namespace

PriceOracle::PriceOracle(std::map<std::string, double> prices) : prices_(std::move(prices)) {
    for (const auto& [sym, p] : prices_) require_positive_price(sym, p);
}

double PriceOracle::at(const std::string& sym) const {
    auto it = prices_.find(sym);
    if (it == prices_.end()) throw Error(Errc::UnpricedToken, sym);
    return it->second;
}

PriceOracle set_price(const PriceOracle& o, const std::string& sym, double p) {
    require_positive_price(sym, p);
    std::map<std::string, double> next = o.prices();
    next[sym] = p;
    return PriceOracle(std::move(next));
}

double price(const State& s, const PriceOracle& o, const Token& t) {
    if (t.is_atomic()) return o.at(t.sym());
    const Pool* pool = s.find_pool(t.pair0(), t.pair1());
    if (!pool) throw Error(Errc::NoSuchPool, t.str());
    double sply = supply(s, t);
    if (!(sply > 0.0)) throw Error(Errc::ZeroMintedSupply, t.str());
    return (pool->r0 * o.at(pool->tok0) + pool->r1 * o.at(pool->tok1)) / sply;
}

double exchange_rate(const PriceOracle& o, const std::string& t0, const std::string& t1) {
    return o.at(t0) / o.at(t1);
}

double net_worth(const State& s, const PriceOracle& o, const std::string& user) {
    auto it = s.wallets.find(user);
    if (it == s.wallets.end()) return 0.0;
    double w = 0.0;
    for (const auto& [tok, amt] : it->second.entries) {
        if (amt == 0.0) continue;
        w += amt * price(s, o, tok);
    }
    return w;
}

double global_net_worth(const State& s, const PriceOracle& o) {
    double w = 0.0;
    for (const auto& [user, bal] : s.wallets) w += net_worth(s, o, user);
    return w;
}

GainResult gain(const State& s, const PriceOracle& o, const std::string& user, const Trace& tr,
                const SwapRateFn& rate) {
    RunResult rr = run(s, tr, rate);
    if (!rr.ok) return {0.0, false};
    return {net_worth(rr.final_state(), o, user) - net_worth(s, o, user), true};
}

double swap_gain_closed(const State& s, const PriceOracle& o, const std::string& actor,
                        const std::string& holder, const SwapAction& sw, const SwapRateFn& rate) {
    StepResult step = apply(s, Transaction{actor, sw}, rate);
    if (!step.ok()) throw Error(Errc::NotEnabled, std::string(reject_name(step.reason)));
    const Pool* pool = s.find_pool(sw.t_in, sw.t_out);
    double sx = rate.rate(sw.x, pool->reserve(sw.t_in), pool->reserve(sw.t_out));
    double edge = sw.x * (sx * o.at(sw.t_out) - o.at(sw.t_in));
    double share = s.balance_of(holder, pool->minted()) / supply(s, pool->minted());
    return holder == actor ? edge * (1.0 - share) : -edge * share;
}

int gain_sign(const State& s, const PriceOracle& o, const std::string& actor, const SwapAction& sw,
              const SwapRateFn& rate, double rel_tol) {
    const Pool* pool = s.find_pool(sw.t_in, sw.t_out);
    if (!pool) throw Error(Errc::NoSuchPool, "{" + sw.t_in + "," + sw.t_out + "}");
    if (s.balance_of(actor, pool->minted()) != 0.0)
        throw Error(Errc::PreconditionViolated, actor + " holds " + pool->minted().str());
    double sx = rate.rate(sw.x, pool->reserve(sw.t_in), pool->reserve(sw.t_out));
    double x_rate = exchange_rate(o, sw.t_in, sw.t_out);
    if (std::fabs(sx - x_rate) <= rel_tol * std::max(std::fabs(sx), std::fabs(x_rate))) return 0;
    return sx > x_rate ? 1 : -1;
}

}  // namespace amm
