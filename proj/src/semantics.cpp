#include "amm/semantics.hpp"

#include <cmath>

#include "amm/error.hpp"

namespace amm {

namespace {

// |r1*v0 - r0*v1| <= tol * max(r1*v0, r0*v1, 1)
bool ratio_holds(double r0, double r1, double v0, double v1) {
    double lhs = r1 * v0;
    double rhs = r0 * v1;
    return std::fabs(lhs - rhs) <= kRuleRelTol * std::max({lhs, rhs, 1.0});
}

StepResult apply_dep(const State& s, const std::string& user, const DepAction& a) {
    if (!(a.v0 > 0.0) || !(a.v1 > 0.0)) return StepResult::rejected(Reject::NonPositiveAmount);
    Token minted = Token::minted(a.t0, a.t1);
    const Pool* pool = s.find_pool(a.t0, a.t1);
    if (pool == nullptr) {
        if (supply(s, minted) != 0.0) return StepResult::rejected(Reject::PoolExists);
        if (s.balance_of(user, Token::atomic(a.t0)) < a.v0 ||
            s.balance_of(user, Token::atomic(a.t1)) < a.v1)
            return StepResult::rejected(Reject::InsufficientBalance);
        State next = s;
        Balance& w = next.wallets[user];
        w.sub(Token::atomic(a.t0), a.v0);
        w.sub(Token::atomic(a.t1), a.v1);
        w.add(minted, a.v0);
        next.pools.push_back(Pool::make(a.t0, a.v0, a.t1, a.v1));
        return StepResult::accepted(std::move(next));
    }
    double sply = supply(s, minted);
    if (!(sply > 0.0)) return StepResult::rejected(Reject::SupplyDepleted);
    if (s.balance_of(user, Token::atomic(a.t0)) < a.v0 ||
        s.balance_of(user, Token::atomic(a.t1)) < a.v1)
        return StepResult::rejected(Reject::InsufficientBalance);
    if (!ratio_holds(pool->r0, pool->r1, a.v0, a.v1)) return StepResult::rejected(Reject::RatioMismatch);
    double v = a.v0 * sply / pool->r0;  // v0 / RX0
    State next = s;
    Balance& w = next.wallets[user];
    w.sub(Token::atomic(a.t0), a.v0);
    w.sub(Token::atomic(a.t1), a.v1);
    w.add(minted, v);
    Pool* p = next.find_pool(a.t0, a.t1);
    p->r0 += a.v0;
    p->r1 += a.v1;
    return StepResult::accepted(std::move(next));
}

StepResult apply_swap(const State& s, const std::string& user, const std::string& t_in,
                      const std::string& t_out, double x, double y_min, bool guarded,
                      const SwapRateFn& rate) {
    if (!(x > 0.0)) return StepResult::rejected(Reject::NonPositiveAmount);
    const Pool* pool = s.find_pool(t_in, t_out);
    if (pool == nullptr) return StepResult::rejected(Reject::PoolMissing);
    if (s.balance_of(user, Token::atomic(t_in)) < x)
        return StepResult::rejected(Reject::InsufficientBalance);
    double r_in = pool->reserve(t_in);
    double r_out = pool->reserve(t_out);
    double y = x * rate.rate(x, r_in, r_out);
    if (!(y < r_out)) return StepResult::rejected(Reject::OutputExceedsReserve);
    if (guarded && y < y_min) return StepResult::rejected(Reject::GuardViolated);
    State next = s;
    Balance& w = next.wallets[user];
    w.sub(Token::atomic(t_in), x);
    w.add(Token::atomic(t_out), y);
    Pool* p = next.find_pool(t_in, t_out);
    p->reserve_ref(t_in) += x;
    p->reserve_ref(t_out) -= y;
    return StepResult::accepted(std::move(next));
}

StepResult apply_rdm(const State& s, const std::string& user, const std::string& t0,
                     const std::string& t1, double v, double v0_min, double v1_min, bool guarded) {
    if (!(v > 0.0)) return StepResult::rejected(Reject::NonPositiveAmount);
    Token minted = Token::minted(t0, t1);
    const Pool* pool = s.find_pool(t0, t1);
    if (pool == nullptr) return StepResult::rejected(Reject::PoolMissing);
    double sply = supply(s, minted);
    if (!(v < sply)) return StepResult::rejected(Reject::SupplyDepleted);
    if (s.balance_of(user, minted) < v) return StepResult::rejected(Reject::InsufficientBalance);
    double v0 = v * pool->r0 / sply;
    double v1 = v * pool->r1 / sply;
    if (guarded && (v0 < v0_min || v1 < v1_min)) return StepResult::rejected(Reject::GuardViolated);
    State next = s;
    Balance& w = next.wallets[user];
    w.sub(minted, v);
    w.add(Token::atomic(t0), v0);
    w.add(Token::atomic(t1), v1);
    Pool* p = next.find_pool(t0, t1);
    p->r0 -= v0;
    p->r1 -= v1;
    return StepResult::accepted(std::move(next));
}

StepResult apply_gdep(const State& s, const std::string& user, const GDepAction& a) {
    const Pool* pool = s.find_pool(a.t0, a.t1);
    if (pool == nullptr) return StepResult::rejected(Reject::PoolMissing);
    double ratio10 = pool->r1 / pool->r0;
    double ratio01 = pool->r0 / pool->r1;
    double v0 = 0.0, v1 = 0.0;
    if (double c1 = a.v0_max * ratio10; a.v1_min <= c1 && c1 <= a.v1_max) {
        v0 = a.v0_max;
        v1 = c1;
    } else if (double c2 = a.v1_max * ratio01; a.v0_min <= c2 && c2 <= a.v0_max) {
        v0 = c2;
        v1 = a.v1_max;
    } else {
        return StepResult::rejected(Reject::GuardViolated);
    }
    // the resolved point carries an exact-ratio v1, so the dep premise holds
    return apply_dep(s, user, DepAction{a.t0, a.t1, v0, v1});
}

}  // namespace

double redeem_rate(const State& s, const Token& minted_tok, int side) {
    const Pool* pool = s.find_pool(minted_tok.pair0(), minted_tok.pair1());
    if (pool == nullptr) throw Error(Errc::NoSuchPool, minted_tok.str());
    double sply = supply(s, minted_tok);
    if (!(sply > 0.0)) throw Error(Errc::ZeroMintedSupply, minted_tok.str());
    return (side == 0 ? pool->r0 : pool->r1) / sply;
}

StepResult apply(const State& s, const Transaction& tx, const SwapRateFn& rate) {
    return std::visit(
        [&](const auto& a) -> StepResult {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, DepAction>)
                return apply_dep(s, tx.user, a);
            else if constexpr (std::is_same_v<T, SwapAction>)
                return apply_swap(s, tx.user, a.t_in, a.t_out, a.x, 0.0, false, rate);
            else if constexpr (std::is_same_v<T, RdmAction>)
                return apply_rdm(s, tx.user, a.t0, a.t1, a.v, 0.0, 0.0, false);
            else if constexpr (std::is_same_v<T, GDepAction>)
                return apply_gdep(s, tx.user, a);
            else if constexpr (std::is_same_v<T, GSwapAction>)
                return apply_swap(s, tx.user, a.t_in, a.t_out, a.x, a.y_min, true, rate);
            else
                return apply_rdm(s, tx.user, a.t0, a.t1, a.v, a.v0_min, a.v1_min, true);
        },
        tx.action);
}

RunResult run(const State& s, const Trace& tr, const SwapRateFn& rate) {
    RunResult out;
    out.states.reserve(tr.size() + 1);
    out.states.push_back(s);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        StepResult step = apply(out.states.back(), tr[i], rate);
        if (!step.ok()) {
            out.ok = false;
            out.failed_index = i;
            out.reason = step.reason;
            return out;
        }
        out.states.push_back(std::move(*step.next));
    }
    return out;
}

Transaction dep_exact(const State& s, const std::string& user, double v0, const std::string& t0,
                      const std::string& t1) {
    const Pool* pool = s.find_pool(t0, t1);
    if (pool == nullptr) throw Error(Errc::NoSuchPool, "{" + t0 + "," + t1 + "}");
    double v1 = v0 * pool->reserve(t1) / pool->reserve(t0);
    return Transaction::dep(user, v0, t0, v1, t1);
}

std::optional<Transaction> merge(const Transaction& a, const Transaction& b) {
    if (a.user != b.user) return std::nullopt;
    if (kind(a) != kind(b)) return std::nullopt;
    switch (kind(a)) {
        case ActionKind::Dep: {
            const auto& da = std::get<DepAction>(a.action);
            const auto& db = std::get<DepAction>(b.action);
            if (da.t0 != db.t0 || da.t1 != db.t1) return std::nullopt;
            return Transaction::dep(a.user, da.v0 + db.v0, da.t0, da.v1 + db.v1, da.t1);
        }
        case ActionKind::Rdm: {
            const auto& ra = std::get<RdmAction>(a.action);
            const auto& rb = std::get<RdmAction>(b.action);
            if (ra.t0 != rb.t0 || ra.t1 != rb.t1) return std::nullopt;
            return Transaction::rdm(a.user, ra.v + rb.v, ra.t0, ra.t1);
        }
        case ActionKind::Swap: {
            const auto& sa = std::get<SwapAction>(a.action);
            const auto& sb = std::get<SwapAction>(b.action);
            if (sa.t_in != sb.t_in || sa.t_out != sb.t_out) return std::nullopt;
            return Transaction::swap(a.user, sa.x + sb.x, sa.t_in, sa.t_out);
        }
        default:
            return std::nullopt;
    }
}

std::optional<Transaction> invert(const State& s, const Transaction& tx, const SwapRateFn& rate) {
    switch (kind(tx)) {
        case ActionKind::Dep:
        case ActionKind::GDep: {
            StepResult step = apply(s, tx, rate);
            if (!step.ok()) return std::nullopt;
            const std::string *t0, *t1;
            if (kind(tx) == ActionKind::Dep) {
                const auto& a = std::get<DepAction>(tx.action);
                t0 = &a.t0;
                t1 = &a.t1;
            } else {
                const auto& a = std::get<GDepAction>(tx.action);
                t0 = &a.t0;
                t1 = &a.t1;
            }
            if (s.find_pool(*t0, *t1) == nullptr) return std::nullopt;  // pool-creating dep
            Token minted = Token::minted(*t0, *t1);
            double v = step.state().balance_of(tx.user, minted) - s.balance_of(tx.user, minted);
            return Transaction::rdm(tx.user, v, *t0, *t1);
        }
        case ActionKind::Rdm:
        case ActionKind::GRdm: {
            const std::string *t0, *t1;
            double v;
            if (kind(tx) == ActionKind::Rdm) {
                const auto& a = std::get<RdmAction>(tx.action);
                t0 = &a.t0;
                t1 = &a.t1;
                v = a.v;
            } else {
                const auto& a = std::get<GRdmAction>(tx.action);
                t0 = &a.t0;
                t1 = &a.t1;
                v = a.v;
            }
            if (!apply(s, tx, rate).ok()) return std::nullopt;
            Token minted = Token::minted(*t0, *t1);
            double sply = supply(s, minted);
            const Pool* pool = s.find_pool(*t0, *t1);
            return Transaction::dep(tx.user, v * pool->r0 / sply, *t0, v * pool->r1 / sply, *t1);
        }
        case ActionKind::Swap:
        case ActionKind::GSwap: {
            const std::string *t_in, *t_out;
            double x;
            if (kind(tx) == ActionKind::Swap) {
                const auto& a = std::get<SwapAction>(tx.action);
                t_in = &a.t_in;
                t_out = &a.t_out;
                x = a.x;
            } else {
                const auto& a = std::get<GSwapAction>(tx.action);
                t_in = &a.t_in;
                t_out = &a.t_out;
                x = a.x;
            }
            if (!apply(s, tx, rate).ok()) return std::nullopt;
            const Pool* pool = s.find_pool(*t_in, *t_out);
            double y = x * rate.rate(x, pool->reserve(*t_in), pool->reserve(*t_out));
            return Transaction::swap(tx.user, y, *t_out, *t_in);
        }
    }
    return std::nullopt;
}

}  // namespace amm
