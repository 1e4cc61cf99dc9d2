#include "amm/json_io.hpp"

#include <cstdio>
#include <map>
#include <stdexcept>

namespace amm {

nlohmann::json state_json(const State& s, const PriceOracle* oracle) {
    nlohmann::json j = nlohmann::json::object();
    if (oracle) {
        nlohmann::json prices = nlohmann::json::object();
        for (const auto& [sym, p] : oracle->prices()) prices[sym] = p;
        j["prices"] = std::move(prices);
    }
    nlohmann::json wallets = nlohmann::json::object();
    for (const auto& [user, bal] : s.wallets) {
        nlohmann::json w = nlohmann::json::object();
        for (const auto& [tok, amt] : bal.entries) w[tok.str()] = amt;
        wallets[user] = std::move(w);
    }
    j["wallets"] = std::move(wallets);
    nlohmann::json pools = nlohmann::json::array();
    for (const Pool& p : s.pools)
        pools.push_back({{"pair", {p.tok0, p.tok1}}, {"reserves", {p.r0, p.r1}}});
    j["pools"] = std::move(pools);
    return j;
}

StateDoc load_state_json(const nlohmann::json& j) {
    StateDoc doc;
    if (j.contains("prices")) {
        std::map<std::string, double> prices;
        for (const auto& [sym, p] : j.at("prices").items()) prices[sym] = p.get<double>();
        doc.oracle = PriceOracle(std::move(prices));
    }
    if (j.contains("wallets")) {
        for (const auto& [user, entries] : j.at("wallets").items()) {
            Balance bal;
            for (const auto& [tok, amt] : entries.items())
                bal.set(Token::parse(tok), amt.get<double>());
            doc.state.wallets[user] = std::move(bal);
        }
    }
    if (j.contains("pools")) {
        for (const auto& p : j.at("pools")) {
            const auto& pair = p.at("pair");
            const auto& reserves = p.at("reserves");
            doc.state.pools.push_back(Pool::make(pair.at(0).get<std::string>(),
                                                 reserves.at(0).get<double>(),
                                                 pair.at(1).get<std::string>(),
                                                 reserves.at(1).get<double>()));
        }
    }
    if (std::vector<std::string> problems = validate(doc.state); !problems.empty())
        throw std::runtime_error("invalid state: " + problems.front());
    return doc;
}

namespace {

void dump17(const nlohmann::json& j, std::string& out) {
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += nlohmann::json(it.key()).dump();
                out += ':';
                dump17(it.value(), out);
            }
            out += '}';
            break;
        }
        case nlohmann::json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& el : j) {
                if (!first) out += ',';
                first = false;
                dump17(el, out);
            }
            out += ']';
            break;
        }
        case nlohmann::json::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            out += buf;
            break;
        }
        default:
            out += j.dump();
            break;
    }
}

}  // namespace

std::string dump_json17(const nlohmann::json& j) {
    std::string out;
    dump17(j, out);
    return out;
}

}  // namespace amm
