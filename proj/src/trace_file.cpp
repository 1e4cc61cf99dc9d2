#include "amm/trace_file.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace amm {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

enum class Lex { Ident, Number, LParen, RParen, LBrace, RBrace, Comma, Colon, MinEq, MaxEq, End };

const char* lex_name(Lex k) {
    switch (k) {
        case Lex::Ident: return "identifier";
        case Lex::Number: return "number";
        case Lex::LParen: return "'('";
        case Lex::RParen: return "')'";
        case Lex::LBrace: return "'{'";
        case Lex::RBrace: return "'}'";
        case Lex::Comma: return "','";
        case Lex::Colon: return "':'";
        case Lex::MinEq: return "'min='";
        case Lex::MaxEq: return "'max='";
        case Lex::End: return "end of line";
    }
    return "?";
}

struct LexTok {
    Lex kind;
    std::string text;
    double num = 0.0;
    std::size_t col = 0;  // 1-based
};

// Carries the column; the caller attaches the line number.
struct LineError {
    std::size_t col;
    std::string message;
};

std::string found(const LexTok& t) {
    return t.kind == Lex::End ? "end of line" : "'" + t.text + "'";
}

bool ident_head(char c) { return c == '_' || std::isalpha(static_cast<unsigned char>(c)); }
bool ident_tail(char c) { return ident_head(c) || std::isdigit(static_cast<unsigned char>(c)); }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<LexTok> lex_line(const std::string& line) {
    std::vector<LexTok> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        std::size_t col = i + 1;
        if (ident_head(c)) {
            std::size_t j = i;
            while (j < line.size() && ident_tail(line[j])) ++j;
            std::string word = line.substr(i, j - i);
            if ((word == "min" || word == "max") && j < line.size() && line[j] == '=') {
                out.push_back({word == "min" ? Lex::MinEq : Lex::MaxEq, word + "=", 0.0, col});
                i = j + 1;
            } else {
                out.push_back({Lex::Ident, std::move(word), 0.0, col});
                i = j;
            }
            continue;
        }
        bool signed_number = (c == '+' || c == '-') && i + 1 < line.size() &&
                             (digit(line[i + 1]) || line[i + 1] == '.');
        if (digit(c) || c == '.' || signed_number) {
            // decimal literal: sign? digits? ('.' digits?)? exponent?
            std::size_t j = i;
            if (line[j] == '+' || line[j] == '-') ++j;
            std::size_t ndigits = 0;
            while (j < line.size() && digit(line[j])) ++j, ++ndigits;
            if (j < line.size() && line[j] == '.') {
                ++j;
                while (j < line.size() && digit(line[j])) ++j, ++ndigits;
            }
            if (ndigits == 0) throw LineError{col, "bad number"};
            if (j < line.size() && (line[j] == 'e' || line[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < line.size() && (line[k] == '+' || line[k] == '-')) ++k;
                std::size_t edigits = 0;
                while (k < line.size() && digit(line[k])) ++k, ++edigits;
                if (edigits > 0) j = k;  // otherwise the 'e' lexes as an identifier
            }
            std::string text = line.substr(i, j - i);
            double v = std::strtod(text.c_str(), nullptr);
            if (!std::isfinite(v)) throw LineError{col, "number out of range"};
            out.push_back({Lex::Number, std::move(text), v, col});
            i = j;
            continue;
        }
        switch (c) {
            case '(': out.push_back({Lex::LParen, "(", 0.0, col}); break;
            case ')': out.push_back({Lex::RParen, ")", 0.0, col}); break;
            case '{': out.push_back({Lex::LBrace, "{", 0.0, col}); break;
            case '}': out.push_back({Lex::RBrace, "}", 0.0, col}); break;
            case ',': out.push_back({Lex::Comma, ",", 0.0, col}); break;
            case ':': out.push_back({Lex::Colon, ":", 0.0, col}); break;
            default: throw LineError{col, std::string("unexpected character '") + c + "'"};
        }
        ++i;
    }
    out.push_back({Lex::End, "", 0.0, line.size() + 1});
    return out;
}

struct Cursor {
    const std::vector<LexTok>& toks;
    std::size_t pos = 0;

    const LexTok& peek() const { return toks[pos]; }
    bool at(Lex k) const { return toks[pos].kind == k; }
    LexTok take() {
        const LexTok& t = toks[pos];
        if (t.kind != Lex::End) ++pos;
        return t;
    }
    LexTok expect(Lex k) {
        if (!at(k))
            throw LineError{peek().col,
                            std::string("expected ") + lex_name(k) + ", found " + found(peek())};
        return take();
    }
};

Token parse_token(Cursor& c) {
    if (c.at(Lex::LBrace)) {
        c.take();
        LexTok a = c.expect(Lex::Ident);
        c.expect(Lex::Comma);
        LexTok b = c.expect(Lex::Ident);
        c.expect(Lex::RBrace);
        if (a.text == b.text) throw LineError{b.col, "minted pair members must differ"};
        return Token::minted(a.text, b.text);
    }
    return Token::atomic(c.expect(Lex::Ident).text);
}

enum class ArgKind { Plain, Bare, Min, Max };

struct ArgItem {
    ArgKind kind = ArgKind::Plain;
    double num = 0.0;
    bool has_tok = false;
    Token tok;
    std::size_t col = 0;
};

std::vector<ArgItem> parse_args(Cursor& c) {
    std::vector<ArgItem> items;
    c.expect(Lex::LParen);
    while (!c.at(Lex::RParen)) {
        ArgItem item;
        item.col = c.peek().col;
        if (c.at(Lex::MinEq) || c.at(Lex::MaxEq)) {
            item.kind = c.take().kind == Lex::MinEq ? ArgKind::Min : ArgKind::Max;
            item.num = c.expect(Lex::Number).num;
            if (c.at(Lex::Colon)) {
                c.take();
                item.tok = parse_token(c);
                item.has_tok = true;
            }
        } else if (c.at(Lex::Number)) {
            item.kind = ArgKind::Plain;
            item.num = c.take().num;
            c.expect(Lex::Colon);
            item.tok = parse_token(c);
            item.has_tok = true;
        } else if (c.at(Lex::Ident)) {
            item.kind = ArgKind::Bare;
            item.tok = Token::atomic(c.take().text);
            item.has_tok = true;
        } else {
            throw LineError{c.peek().col, "expected argument, found " + found(c.peek())};
        }
        items.push_back(std::move(item));
        if (!c.at(Lex::Comma)) break;
        c.take();
    }
    c.expect(Lex::RParen);
    return items;
}

Transaction assemble_dep(const std::string& user, const LexTok& head,
                         const std::vector<ArgItem>& items) {
    bool guarded = false;
    for (const ArgItem& it : items)
        if (it.kind == ArgKind::Min || it.kind == ArgKind::Max) guarded = true;

    if (!guarded) {
        if (items.size() != 2 || items[0].kind != ArgKind::Plain || items[1].kind != ArgKind::Plain)
            throw LineError{head.col, "dep takes two amount:token arguments"};
        for (const ArgItem& it : items)
            if (!it.tok.is_atomic()) throw LineError{it.col, "dep tokens must be atomic"};
        if (items[0].tok == items[1].tok) throw LineError{items[1].col, "dep tokens must differ"};
        return Transaction::dep(user, items[0].num, items[0].tok.sym(), items[1].num,
                                items[1].tok.sym());
    }

    // guarded form: min= and max= once for each of two atomic tokens
    struct Range {
        std::optional<double> lo, hi;
        std::size_t col = 0;
    };
    std::vector<std::pair<std::string, Range>> ranges;  // first-appearance order
    for (const ArgItem& it : items) {
        if (it.kind == ArgKind::Plain || it.kind == ArgKind::Bare)
            throw LineError{it.col, "guarded dep takes only min=/max= arguments"};
        if (!it.has_tok || !it.tok.is_atomic())
            throw LineError{it.col, "dep bound needs an atomic token"};
        const std::string& sym = it.tok.sym();
        auto found_range =
            std::find_if(ranges.begin(), ranges.end(), [&](const auto& r) { return r.first == sym; });
        if (found_range == ranges.end()) {
            ranges.emplace_back(sym, Range{{}, {}, it.col});
            found_range = ranges.end() - 1;
        }
        std::optional<double>& slot =
            it.kind == ArgKind::Min ? found_range->second.lo : found_range->second.hi;
        if (slot)
            throw LineError{it.col, std::string("duplicate ") +
                                        (it.kind == ArgKind::Min ? "min=" : "max=") + " for '" +
                                        sym + "'"};
        slot = it.num;
    }
    if (ranges.size() != 2) throw LineError{head.col, "guarded dep needs bounds for exactly two tokens"};
    for (const auto& [sym, r] : ranges)
        if (!r.lo || !r.hi) throw LineError{r.col, "'" + sym + "' needs both min= and max="};
    if (ranges[0].first == ranges[1].first)
        throw LineError{ranges[1].second.col, "dep tokens must differ"};
    return Transaction::gdep(user, *ranges[0].second.lo, *ranges[0].second.hi, ranges[0].first,
                             *ranges[1].second.lo, *ranges[1].second.hi, ranges[1].first);
}

Transaction assemble_swap(const std::string& user, const LexTok& head,
                          const std::vector<ArgItem>& items) {
    if (items.size() < 2 || items[0].kind != ArgKind::Plain || items[1].kind != ArgKind::Bare)
        throw LineError{head.col, "swap takes amount:token_in, token_out"};
    if (!items[0].tok.is_atomic()) throw LineError{items[0].col, "swap input must be an atomic token"};
    if (items[0].tok == items[1].tok) throw LineError{items[1].col, "swap tokens must differ"};
    const std::string& t_in = items[0].tok.sym();
    const std::string& t_out = items[1].tok.sym();
    if (items.size() == 2) return Transaction::swap(user, items[0].num, t_in, t_out);
    if (items.size() == 3 && items[2].kind == ArgKind::Min && !items[2].has_tok)
        return Transaction::gswap(user, items[0].num, t_in, t_out, items[2].num);
    throw LineError{items[2].col, "swap takes at most one min= bound, with no token"};
}

Transaction assemble_rdm(const std::string& user, const LexTok& head,
                         const std::vector<ArgItem>& items) {
    if (items.empty() || items[0].kind != ArgKind::Plain || !items[0].tok.is_minted())
        throw LineError{head.col, "rdm takes amount:{t0,t1}"};
    const Token& m = items[0].tok;
    std::optional<double> floor0, floor1;
    for (std::size_t i = 1; i < items.size(); ++i) {
        const ArgItem& it = items[i];
        if (it.kind != ArgKind::Min || !it.has_tok || !it.tok.is_atomic())
            throw LineError{it.col, "rdm bound is min=amount:token"};
        std::optional<double>* slot = nullptr;
        if (it.tok.sym() == m.pair0()) slot = &floor0;
        else if (it.tok.sym() == m.pair1()) slot = &floor1;
        else throw LineError{it.col, "'" + it.tok.sym() + "' is not in " + m.str()};
        if (*slot) throw LineError{it.col, "duplicate min= for '" + it.tok.sym() + "'"};
        *slot = it.num;
    }
    if (!floor0 && !floor1) return Transaction::rdm(user, items[0].num, m.pair0(), m.pair1());
    return Transaction::grdm(user, items[0].num, m.pair0(), m.pair1(), floor0.value_or(0.0),
                             floor1.value_or(0.0));
}

struct FileState {
    std::set<std::string> price_seen;
    std::set<std::string> wallet_seen;
};

void parse_line(const std::string& raw, TraceFile& tf, FileState& fs) {
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);

    std::vector<LexTok> toks = lex_line(line);
    Cursor c{toks};
    if (c.at(Lex::End)) return;

    LexTok first = c.expect(Lex::Ident);

    if (first.text == "price") {
        LexTok sym = c.expect(Lex::Ident);
        LexTok p = c.expect(Lex::Number);
        c.expect(Lex::End);
        if (!(p.num > 0.0)) throw LineError{p.col, "price must be positive"};
        if (!fs.price_seen.insert(sym.text).second)
            throw LineError{sym.col, "duplicate price for '" + sym.text + "'"};
        tf.prices.emplace_back(sym.text, p.num);
        return;
    }

    if (first.text == "wallet") {
        LexTok user = c.expect(Lex::Ident);
        Balance bal;
        while (!c.at(Lex::End)) {
            LexTok amt = c.expect(Lex::Number);
            c.expect(Lex::Colon);
            std::size_t tok_col = c.peek().col;
            Token t = parse_token(c);
            if (t.is_minted()) throw LineError{tok_col, "wallet entries must be atomic tokens"};
            if (amt.num < 0.0) throw LineError{amt.col, "wallet amounts must be nonnegative"};
            if (bal.entries.count(t))
                throw LineError{tok_col, "duplicate token '" + t.str() + "' in wallet"};
            bal.set(t, amt.num);
        }
        if (!fs.wallet_seen.insert(user.text).second)
            throw LineError{user.col, "duplicate wallet '" + user.text + "'"};
        tf.wallets.emplace_back(user.text, std::move(bal));
        return;
    }

    c.expect(Lex::Colon);
    LexTok head = c.expect(Lex::Ident);
    if (head.text != "dep" && head.text != "swap" && head.text != "rdm")
        throw LineError{head.col, "unknown action '" + head.text + "' (dep, swap or rdm)"};
    std::vector<ArgItem> items = parse_args(c);
    c.expect(Lex::End);

    if (head.text == "dep") tf.transactions.push_back(assemble_dep(first.text, head, items));
    else if (head.text == "swap") tf.transactions.push_back(assemble_swap(first.text, head, items));
    else tf.transactions.push_back(assemble_rdm(first.text, head, items));
}

}  // namespace

std::string format_issue(const ParseIssue& issue) {
    return std::to_string(issue.line) + ":" + std::to_string(issue.col) + ": " + issue.message;
}

ParseResult parse_trace(const std::string& text) {
    ParseResult out;
    FileState fs;
    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::string line =
            nl == std::string::npos ? text.substr(start) : text.substr(start, nl - start);
        ++lineno;
        if (!(nl == std::string::npos && line.empty())) {
            try {
                parse_line(line, out.file, fs);
            } catch (const LineError& e) {
                out.issues.push_back({lineno, e.col, e.message});
            } catch (const std::invalid_argument& e) {
                out.issues.push_back({lineno, 1, e.what()});
            }
        }
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    return out;
}

std::string render_trace(const TraceFile& tf) {
    std::string out;
    for (const auto& [sym, p] : tf.prices) out += "price " + sym + " " + num17(p) + "\n";
    for (const auto& [user, bal] : tf.wallets) {
        out += "wallet " + user;
        for (const auto& [tok, amt] : bal.entries) out += " " + num17(amt) + ":" + tok.str();
        out += "\n";
    }
    for (const Transaction& tx : tf.transactions) out += to_string(tx) + "\n";
    return out;
}

State initial_state(const TraceFile& tf) {
    State s;
    for (const auto& [user, bal] : tf.wallets) s.wallets[user] = bal;
    return s;
}

PriceOracle oracle_of(const TraceFile& tf) {
    std::map<std::string, double> prices;
    for (const auto& [sym, p] : tf.prices) prices[sym] = p;
    return PriceOracle(std::move(prices));
}

}  // namespace amm
