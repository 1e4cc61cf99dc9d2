#include "amm/tx.hpp"

#include <cstdio>

namespace amm {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ActionKind kind(const Transaction& tx) {
    return std::visit(
        [](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, DepAction>) return ActionKind::Dep;
            else if constexpr (std::is_same_v<T, SwapAction>) return ActionKind::Swap;
            else if constexpr (std::is_same_v<T, RdmAction>) return ActionKind::Rdm;
            else if constexpr (std::is_same_v<T, GDepAction>) return ActionKind::GDep;
            else if constexpr (std::is_same_v<T, GSwapAction>) return ActionKind::GSwap;
            else return ActionKind::GRdm;
        },
        tx.action);
}

bool is_swap_kind(const Transaction& tx) {
    ActionKind k = kind(tx);
    return k == ActionKind::Swap || k == ActionKind::GSwap;
}

std::set<Token> tokens(const Transaction& tx) {
    return std::visit(
        [](const auto& a) -> std::set<Token> {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, SwapAction> || std::is_same_v<T, GSwapAction>)
                return {Token::atomic(a.t_in), Token::atomic(a.t_out)};
            else
                return {Token::atomic(a.t0), Token::atomic(a.t1), Token::minted(a.t0, a.t1)};
        },
        tx.action);
}

std::string to_string(const Transaction& tx) {
    return tx.user + ": " +
           std::visit(
               [](const auto& a) -> std::string {
                   using T = std::decay_t<decltype(a)>;
                   if constexpr (std::is_same_v<T, DepAction>)
                       return "dep(" + num(a.v0) + ":" + a.t0 + ", " + num(a.v1) + ":" + a.t1 + ")";
                   else if constexpr (std::is_same_v<T, SwapAction>)
                       return "swap(" + num(a.x) + ":" + a.t_in + ", " + a.t_out + ")";
                   else if constexpr (std::is_same_v<T, RdmAction>)
                       return "rdm(" + num(a.v) + ":{" + a.t0 + "," + a.t1 + "})";
                   else if constexpr (std::is_same_v<T, GDepAction>)
                       return "dep(min=" + num(a.v0_min) + ":" + a.t0 + ", max=" + num(a.v0_max) + ":" + a.t0 +
                              ", min=" + num(a.v1_min) + ":" + a.t1 + ", max=" + num(a.v1_max) + ":" + a.t1 + ")";
                   else if constexpr (std::is_same_v<T, GSwapAction>)
                       return "swap(" + num(a.x) + ":" + a.t_in + ", " + a.t_out + ", min=" + num(a.y_min) + ")";
                   else
                       return "rdm(" + num(a.v) + ":{" + a.t0 + "," + a.t1 + "}, min=" + num(a.v0_min) + ":" + a.t0 +
                              ", min=" + num(a.v1_min) + ":" + a.t1 + ")";
               },
               tx.action);
}

bool tx_less(const Transaction& a, const Transaction& b) {
    auto key = [](const Transaction& tx) {
        std::vector<std::string> toks;
        std::vector<double> amts;
        std::visit(
            [&](const auto& act) {
                using T = std::decay_t<decltype(act)>;
                if constexpr (std::is_same_v<T, DepAction>) {
                    toks = {act.t0, act.t1};
                    amts = {act.v0, act.v1};
                } else if constexpr (std::is_same_v<T, SwapAction>) {
                    toks = {act.t_in, act.t_out};
                    amts = {act.x};
                } else if constexpr (std::is_same_v<T, RdmAction>) {
                    toks = {act.t0, act.t1};
                    amts = {act.v};
                } else if constexpr (std::is_same_v<T, GDepAction>) {
                    toks = {act.t0, act.t1};
                    amts = {act.v0_min, act.v0_max, act.v1_min, act.v1_max};
                } else if constexpr (std::is_same_v<T, GSwapAction>) {
                    toks = {act.t_in, act.t_out};
                    amts = {act.x, act.y_min};
                } else {
                    toks = {act.t0, act.t1};
                    amts = {act.v, act.v0_min, act.v1_min};
                }
            },
            tx.action);
        return std::tuple(tx.user, static_cast<int>(kind(tx)), std::move(toks), std::move(amts));
    };
    return key(a) < key(b);
}

}  // namespace amm
