#pragma once

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "amm/token.hpp"

namespace amm {

// Amounts are nonnegative finite binary64 values.
inline bool valid_amount(double v) { return std::isfinite(v) && v >= 0.0; }

// |a-b| <= tol*max(|a|,|b|,1): relative tolerance with an absolute floor near zero.
inline bool amounts_close(double a, double b, double rel_tol) {
    double scale = std::max({std::fabs(a), std::fabs(b), 1.0});
    return std::fabs(a - b) <= rel_tol * scale;
}

// Token balance; an absent entry reads as 0. Zero entries may be kept.
struct Balance {
    std::map<Token, double> entries;

    double get(const Token& t) const {
        auto it = entries.find(t);
        return it == entries.end() ? 0.0 : it->second;
    }
    void set(const Token& t, double v) { entries[t] = v; }
    void add(const Token& t, double v) { entries[t] += v; }
    void sub(const Token& t, double v) { entries[t] -= v; }

    friend bool operator==(const Balance&, const Balance&) = default;
};

// One pool per unordered pair of distinct atomic tokens; tok0 < tok1.
struct Pool {
    std::string tok0, tok1;
    double r0 = 0.0, r1 = 0.0;

    static Pool make(std::string a, double ra, std::string b, double rb) {
        if (b < a) {
            std::swap(a, b);
            std::swap(ra, rb);
        }
        return Pool{std::move(a), std::move(b), ra, rb};
    }

    Token minted() const { return Token::minted(tok0, tok1); }

    bool holds(const std::string& sym) const { return sym == tok0 || sym == tok1; }
    double reserve(const std::string& sym) const { return sym == tok0 ? r0 : r1; }
    double& reserve_ref(const std::string& sym) { return sym == tok0 ? r0 : r1; }

    friend bool operator==(const Pool&, const Pool&) = default;
};

struct State {
    std::map<std::string, Balance> wallets;
    std::vector<Pool> pools;

    const Pool* find_pool(const std::string& a, const std::string& b) const {
        for (const auto& p : pools)
            if (p.holds(a) && p.holds(b) && a != b) return &p;
        return nullptr;
    }
    Pool* find_pool(const std::string& a, const std::string& b) {
        return const_cast<Pool*>(static_cast<const State*>(this)->find_pool(a, b));
    }

    double balance_of(const std::string& user, const Token& t) const {
        auto it = wallets.find(user);
        return it == wallets.end() ? 0.0 : it->second.get(t);
    }
};

// Sum of t over all wallets plus, for atomic t, all pool reserves of t.
double supply(const State& s, const Token& t);

// Structural checks; returns human-readable violations, empty means ok.
std::vector<std::string> validate(const State& s);

// Same wallet set, same pool-pair set, every matched amount within tolerance
// (absent balance entries read as 0 on both sides).
bool state_eq(const State& a, const State& b, double rel_tol);

// No pools, wallets hold atomic tokens only.
bool is_initial(const State& s);

}  // namespace amm
