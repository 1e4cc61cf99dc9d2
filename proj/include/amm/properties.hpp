#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "amm/swap_rate.hpp"

namespace amm {

struct PropertyCheckConfig {
    long long samples = 10000;
    double lo = 1e-6, hi = 1e6;  // sampling range, log-uniform
    double rel_tol = 1e-9;       // algebraic identities
    std::uint64_t rng_seed = 1;
    bool parallel = true;  // distribute samples across threads when built with OpenMP
};

// Inequality checks use strict signs with this relative guard band: a
// violation must exceed the band, and a strictness failure is one whose
// computed margin falls inside it.
inline constexpr double kInequalityBand = 1e-12;

struct Counterexample {
    std::map<std::string, double> values;
    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct CheckResult {
    bool pass = true;
    long long tested = 0;
    long long skipped = 0;
    std::optional<Counterexample> counterexample;  // lowest violating sample index
    friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

// Sampled checks of the five rate-function properties. Probabilistic
// evidence over the configured range, not proof. Each check draws its own
// sample stream from cfg.rng_seed; results are identical for serial and
// parallel runs of the same seed.

// SX(x, r0, r1) < r1/x for all x > 0
CheckResult check_output_bound(const SwapRateFn& f, const PropertyCheckConfig& cfg);

// x' <= x, r0' <= r0, r1 <= r1' implies SX(x,r0,r1) <= SX(x',r0',r1');
// strict mode additionally demands < when any coordinate strictly improves
CheckResult check_monotonic(const SwapRateFn& f, const PropertyCheckConfig& cfg, bool strict);

// alpha = SX(x,r0,r1), beta = SX(y, r0+x, r1-alpha*x) implies
// SX(x+y, r0, r1) = (alpha*x + beta*y)/(x+y); samples with r1-alpha*x <= 0
// are skipped
CheckResult check_additive(const SwapRateFn& f, const PropertyCheckConfig& cfg);

// alpha = SX(x,r0,r1) implies SX(alpha*x, r1-alpha*x, r0+x) = 1/alpha
CheckResult check_reversible(const SwapRateFn& f, const PropertyCheckConfig& cfg);

// SX(a*x, a*r0, a*r1) = SX(x, r0, r1)
CheckResult check_homogeneous(const SwapRateFn& f, const PropertyCheckConfig& cfg);

struct PropertyReport {
    std::string function;
    std::uint64_t seed = 0;
    // keys: output_bound, monotonic, strict_monotonic, additive, reversible,
    // homogeneous
    std::map<std::string, CheckResult> properties;
    std::vector<std::string> declared_mismatches;

    bool passed(const std::string& key) const { return properties.at(key).pass; }
};

// Runs all checkers (monotonic in both modes) and compares the outcome
// against the function's declared properties.
PropertyReport certify(const SwapRateFn& f, const PropertyCheckConfig& cfg);

nlohmann::json report_json(const PropertyReport& rep);

}  // namespace amm
