#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace amm {

// Stable error codes; the names are part of the public contract.
enum class Errc {
    NoSuchPool,
    ZeroMintedSupply,
    UnpricedToken,
    NonPositivePrice,
    PreconditionViolated,
    NotBracketable,
    UncertifiedFunction,
    IdenticalTransactions,
    NotEnabled,
};

constexpr std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::NoSuchPool: return "NoSuchPool";
        case Errc::ZeroMintedSupply: return "ZeroMintedSupply";
        case Errc::UnpricedToken: return "UnpricedToken";
        case Errc::NonPositivePrice: return "NonPositivePrice";
        case Errc::PreconditionViolated: return "PreconditionViolated";
        case Errc::NotBracketable: return "NotBracketable";
        case Errc::UncertifiedFunction: return "UncertifiedFunction";
        case Errc::IdenticalTransactions: return "IdenticalTransactions";
        case Errc::NotEnabled: return "NotEnabled";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

}  // namespace amm
