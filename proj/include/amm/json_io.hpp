#pragma once

#include <string>

#include <json.hpp>

#include "amm/economics.hpp"
#include "amm/state.hpp"

namespace amm {

// {"prices": {sym: price}, "wallets": {user: {token: amount}},
//  "pools": [{"pair": [t0, t1], "reserves": [r0, r1]}]}
// The prices field is present only when an oracle is supplied.
nlohmann::json state_json(const State& s, const PriceOracle* oracle = nullptr);

struct StateDoc {
    State state;
    PriceOracle oracle;
};

// Inverse of state_json; a missing prices field yields an empty oracle.
// Throws nlohmann::json::exception on shape errors and std::runtime_error
// when the decoded state fails validation.
StateDoc load_state_json(const nlohmann::json& j);

// Compact one-line dump with every float at 17 significant digits, the
// fixed-width binary64 round-trip format.
std::string dump_json17(const nlohmann::json& j);

}  // namespace amm
