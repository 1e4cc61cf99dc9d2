#include "amm/state.hpp"

#include <set>

namespace amm {

double supply(const State& s, const Token& t) {
    double total = 0.0;
    for (const auto& [user, bal] : s.wallets) total += bal.get(t);
    if (t.is_atomic()) {
        for (const auto& p : s.pools)
            if (p.holds(t.sym())) total += p.reserve(t.sym());
    }
    return total;
}

std::vector<std::string> validate(const State& s) {
    std::vector<std::string> out;
    for (const auto& [user, bal] : s.wallets) {
        if (user.empty()) out.push_back("empty user identifier");
        for (const auto& [tok, amt] : bal.entries) {
            if (std::isnan(amt)) out.push_back("NaN amount: " + user + " " + tok.str());
            else if (!std::isfinite(amt)) out.push_back("non-finite amount: " + user + " " + tok.str());
            else if (amt < 0) out.push_back("negative amount: " + user + " " + tok.str());
        }
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& p : s.pools) {
        if (p.tok0 == p.tok1) {
            out.push_back("identical pool tokens: " + p.tok0);
            continue;
        }
        auto key = p.tok0 < p.tok1 ? std::pair{p.tok0, p.tok1} : std::pair{p.tok1, p.tok0};
        if (!pairs.insert(key).second)
            out.push_back("duplicate pool: {" + key.first + "," + key.second + "}");
        for (double r : {p.r0, p.r1}) {
            if (std::isnan(r)) out.push_back("NaN reserve: {" + key.first + "," + key.second + "}");
            else if (!std::isfinite(r)) out.push_back("non-finite reserve: {" + key.first + "," + key.second + "}");
            else if (r < 0) out.push_back("negative reserve: {" + key.first + "," + key.second + "}");
        }
    }
    return out;
}

bool state_eq(const State& a, const State& b, double rel_tol) {
    std::set<std::string> users;
    for (const auto& [u, _] : a.wallets) users.insert(u);
    for (const auto& [u, _] : b.wallets) users.insert(u);
    for (const auto& u : users) {
        std::set<Token> toks;
        auto ita = a.wallets.find(u);
        auto itb = b.wallets.find(u);
        if (ita != a.wallets.end())
            for (const auto& [t, _] : ita->second.entries) toks.insert(t);
        if (itb != b.wallets.end())
            for (const auto& [t, _] : itb->second.entries) toks.insert(t);
        for (const auto& t : toks)
            if (!amounts_close(a.balance_of(u, t), b.balance_of(u, t), rel_tol)) return false;
    }

    auto pair_set = [](const State& s) {
        std::map<std::pair<std::string, std::string>, const Pool*> m;
        for (const auto& p : s.pools) m[{p.tok0, p.tok1}] = &p;
        return m;
    };
    auto pa = pair_set(a);
    auto pb = pair_set(b);
    if (pa.size() != pb.size()) return false;
    for (const auto& [key, pool_a] : pa) {
        auto it = pb.find(key);
        if (it == pb.end()) return false;
        if (!amounts_close(pool_a->r0, it->second->r0, rel_tol)) return false;
        if (!amounts_close(pool_a->r1, it->second->r1, rel_tol)) return false;
    }
    return true;
}

bool is_initial(const State& s) {
    if (!s.pools.empty()) return false;
    for (const auto& [user, bal] : s.wallets)
        for (const auto& [tok, amt] : bal.entries)
            if (tok.is_minted() && amt != 0.0) return false;
    return true;
}

}  // namespace amm
