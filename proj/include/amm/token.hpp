#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace amm {

// A token type: an atomic symbol, or the share token of an unordered pair of
// two distinct atomic symbols. Pair members are stored sorted, so
// minted("a","b") and minted("b","a") compare and serialize identically.
class Token {
public:
    Token() = default;

    static bool valid_symbol(const std::string& s) {
        if (s.empty()) return false;
        auto head = [](char c) { return c == '_' || (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); };
        auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
        if (!head(s[0])) return false;
        for (std::size_t i = 1; i < s.size(); ++i)
            if (!tail(s[i])) return false;
        return true;
    }

    static Token atomic(std::string sym) {
        if (!valid_symbol(sym)) throw std::invalid_argument("bad token symbol: '" + sym + "'");
        Token t;
        t.sym0_ = std::move(sym);
        return t;
    }

    static Token minted(std::string a, std::string b) {
        if (!valid_symbol(a)) throw std::invalid_argument("bad token symbol: '" + a + "'");
        if (!valid_symbol(b)) throw std::invalid_argument("bad token symbol: '" + b + "'");
        if (a == b) throw std::invalid_argument("minted pair members must differ: '" + a + "'");
        if (b < a) std::swap(a, b);
        Token t;
        t.sym0_ = std::move(a);
        t.sym1_ = std::move(b);
        return t;
    }

    // "t0" or "{t0,t1}"
    static Token parse(const std::string& text) {
        if (!text.empty() && text.front() == '{') {
            if (text.back() != '}') throw std::invalid_argument("bad token text: '" + text + "'");
            auto comma = text.find(',');
            if (comma == std::string::npos) throw std::invalid_argument("bad token text: '" + text + "'");
            return minted(text.substr(1, comma - 1), text.substr(comma + 1, text.size() - comma - 2));
        }
        return atomic(text);
    }

    bool is_minted() const { return !sym1_.empty(); }
    bool is_atomic() const { return sym1_.empty(); }

    const std::string& sym() const {
        if (is_minted()) throw std::logic_error("sym() on minted token");
        return sym0_;
    }
    const std::string& pair0() const { return sym0_; }
    const std::string& pair1() const { return sym1_; }

    std::string str() const { return is_minted() ? "{" + sym0_ + "," + sym1_ + "}" : sym0_; }

    friend auto operator<=>(const Token&, const Token&) = default;

private:
    std::string sym0_;
    std::string sym1_;  // empty for atomic tokens
};

}  // namespace amm
