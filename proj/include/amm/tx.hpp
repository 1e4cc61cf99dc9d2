#pragma once

#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "amm/token.hpp"

namespace amm {

// Pair-valued actions keep t0 < t1; amounts and bounds follow their token.
struct DepAction {
    std::string t0, t1;
    double v0 = 0.0, v1 = 0.0;
    friend bool operator==(const DepAction&, const DepAction&) = default;
};

struct SwapAction {
    std::string t_in, t_out;
    double x = 0.0;
    friend bool operator==(const SwapAction&, const SwapAction&) = default;
};

struct RdmAction {
    std::string t0, t1;
    double v = 0.0;
    friend bool operator==(const RdmAction&, const RdmAction&) = default;
};

struct GDepAction {
    std::string t0, t1;
    double v0_min = 0.0, v0_max = 0.0, v1_min = 0.0, v1_max = 0.0;
    friend bool operator==(const GDepAction&, const GDepAction&) = default;
};

struct GSwapAction {
    std::string t_in, t_out;
    double x = 0.0, y_min = 0.0;
    friend bool operator==(const GSwapAction&, const GSwapAction&) = default;
};

struct GRdmAction {
    std::string t0, t1;
    double v = 0.0, v0_min = 0.0, v1_min = 0.0;
    friend bool operator==(const GRdmAction&, const GRdmAction&) = default;
};

using Action = std::variant<DepAction, SwapAction, RdmAction, GDepAction, GSwapAction, GRdmAction>;

enum class ActionKind { Dep, Swap, Rdm, GDep, GSwap, GRdm };

struct Transaction {
    std::string user;
    Action action;

    static Transaction dep(std::string user, double v0, std::string t0, double v1, std::string t1) {
        if (t0 == t1) throw std::invalid_argument("dep tokens must differ: '" + t0 + "'");
        if (t1 < t0) {
            std::swap(t0, t1);
            std::swap(v0, v1);
        }
        return {std::move(user), DepAction{std::move(t0), std::move(t1), v0, v1}};
    }
    static Transaction swap(std::string user, double x, std::string t_in, std::string t_out) {
        if (t_in == t_out) throw std::invalid_argument("swap tokens must differ: '" + t_in + "'");
        return {std::move(user), SwapAction{std::move(t_in), std::move(t_out), x}};
    }
    static Transaction rdm(std::string user, double v, std::string a, std::string b) {
        Token m = Token::minted(std::move(a), std::move(b));
        return {std::move(user), RdmAction{m.pair0(), m.pair1(), v}};
    }
    static Transaction gdep(std::string user, double v0_min, double v0_max, std::string t0,
                            double v1_min, double v1_max, std::string t1) {
        if (t0 == t1) throw std::invalid_argument("dep tokens must differ: '" + t0 + "'");
        if (t1 < t0) {
            std::swap(t0, t1);
            std::swap(v0_min, v1_min);
            std::swap(v0_max, v1_max);
        }
        return {std::move(user), GDepAction{std::move(t0), std::move(t1), v0_min, v0_max, v1_min, v1_max}};
    }
    static Transaction gswap(std::string user, double x, std::string t_in, std::string t_out, double y_min) {
        if (t_in == t_out) throw std::invalid_argument("swap tokens must differ: '" + t_in + "'");
        return {std::move(user), GSwapAction{std::move(t_in), std::move(t_out), x, y_min}};
    }
    static Transaction grdm(std::string user, double v, std::string a, std::string b,
                            double va_min, double vb_min) {
        if (b < a) {
            std::swap(a, b);
            std::swap(va_min, vb_min);
        }
        Token m = Token::minted(a, b);
        return {std::move(user), GRdmAction{m.pair0(), m.pair1(), v, va_min, vb_min}};
    }

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

using Trace = std::vector<Transaction>;

ActionKind kind(const Transaction& tx);
bool is_swap_kind(const Transaction& tx);

// All token types the transaction mentions; dep/rdm include the pair's minted token.
std::set<Token> tokens(const Transaction& tx);

// DSL-syntax rendering, e.g. "A: swap(30:t0, t1)".
std::string to_string(const Transaction& tx);

// Lexicographic on (user, action kind, tokens, amounts); total order for
// canonical forms.
bool tx_less(const Transaction& a, const Transaction& b);

}  // namespace amm
