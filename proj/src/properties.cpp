#include "amm/properties.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "amm/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace amm {

namespace {

enum class Outcome : unsigned char { Ok, Skip, Fail };

void check_config(const PropertyCheckConfig& cfg) {
    if (cfg.samples <= 0) throw std::invalid_argument("samples must be positive");
    if (!(cfg.lo > 0.0) || !(cfg.hi > cfg.lo)) throw std::invalid_argument("need 0 < lo < hi");
    if (!(cfg.rel_tol >= 0.0)) throw std::invalid_argument("rel_tol must be nonnegative");
}

// Evaluates every sample into an outcome array (the parallel part), then
// scans serially for the lowest failing index, so the result does not depend
// on thread count or schedule.
template <class Eval, class Describe>
CheckResult drive(const PropertyCheckConfig& cfg, Eval&& eval, Describe&& describe) {
    check_config(cfg);
    const long long n = cfg.samples;
    std::vector<Outcome> outcome(static_cast<std::size_t>(n));
#ifdef _OPENMP
    if (cfg.parallel) {
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < n; ++i) outcome[static_cast<std::size_t>(i)] = eval(i);
    } else
#endif
    {
        for (long long i = 0; i < n; ++i) outcome[static_cast<std::size_t>(i)] = eval(i);
    }

    CheckResult res;
    for (long long i = 0; i < n; ++i) {
        switch (outcome[static_cast<std::size_t>(i)]) {
            case Outcome::Ok:
                ++res.tested;
                break;
            case Outcome::Skip:
                ++res.skipped;
                break;
            case Outcome::Fail:
                ++res.tested;
                if (res.pass) {
                    res.pass = false;
                    res.counterexample = describe(i);
                }
                break;
        }
    }
    return res;
}

bool identity_holds(double a, double b, double rel_tol) {
    return std::fabs(a - b) <= rel_tol * std::max(std::fabs(a), std::fabs(b));
}

double band(double a, double b) { return kInequalityBand * std::max(std::fabs(a), std::fabs(b)); }

// Sample streams; one per checker so draws never alias.
constexpr std::uint64_t kStreamOutputBound = 1;
constexpr std::uint64_t kStreamMonotonic = 2;
constexpr std::uint64_t kStreamStrictMonotonic = 3;
constexpr std::uint64_t kStreamAdditive = 4;
constexpr std::uint64_t kStreamReversible = 5;
constexpr std::uint64_t kStreamHomogeneous = 6;

struct MonotoneSample {
    double xw, r0w, r1w;  // the side the rate must not favor
    double xb, r0b, r1b;  // the improved side
};

// Perturbations are scaled to the coordinate's own magnitude so genuinely
// strict functions show margins far above the guard band at every corner of
// the range, while flat regions still produce exact ties.
MonotoneSample monotone_sample(const CounterRng& rng, const PropertyCheckConfig& cfg, long long i) {
    MonotoneSample s;
    double x = rng.log_uniform(cfg.lo, cfg.hi, i, 0);
    double r0 = rng.log_uniform(cfg.lo, cfg.hi, i, 1);
    double r1 = rng.log_uniform(cfg.lo, cfg.hi, i, 2);
    unsigned mask = 1u + static_cast<unsigned>(rng.bits(i, 3) % 7u);  // at least one coordinate moves
    double dx = rng.uniform(0.5, 2.0, i, 4) * (x + r0);
    double dr0 = rng.uniform(0.5, 2.0, i, 5) * (x + r0);
    double fr1 = rng.uniform(1.5, 3.0, i, 6);
    s.xb = x;
    s.r0b = r0;
    s.r1w = r1;
    s.xw = (mask & 1u) ? x + dx : x;
    s.r0w = (mask & 2u) ? r0 + dr0 : r0;
    s.r1b = (mask & 4u) ? r1 * fr1 : r1;
    return s;
}

}  // namespace

CheckResult check_output_bound(const SwapRateFn& f, const PropertyCheckConfig& cfg) {
    CounterRng rng(cfg.rng_seed, kStreamOutputBound);
    auto sample = [&](long long i) {
        double x = rng.log_uniform(cfg.lo, cfg.hi, i, 0);
        double r0 = rng.log_uniform(cfg.lo, cfg.hi, i, 1);
        double r1 = rng.log_uniform(cfg.lo, cfg.hi, i, 2);
        return std::array{x, r0, r1};
    };
    return drive(
        cfg,
        [&](long long i) {
            auto [x, r0, r1] = sample(i);
            double v = f.rate(x, r0, r1);
            double bound = r1 / x;
            return v - bound >= band(v, bound) ? Outcome::Fail : Outcome::Ok;
        },
        [&](long long i) {
            auto [x, r0, r1] = sample(i);
            return Counterexample{{{"x", x},
                                   {"r0", r0},
                                   {"r1", r1},
                                   {"rate", f.rate(x, r0, r1)},
                                   {"bound", r1 / x}}};
        });
}

CheckResult check_monotonic(const SwapRateFn& f, const PropertyCheckConfig& cfg, bool strict) {
    CounterRng rng(cfg.rng_seed, strict ? kStreamStrictMonotonic : kStreamMonotonic);
    return drive(
        cfg,
        [&](long long i) {
            MonotoneSample s = monotone_sample(rng, cfg, i);
            double fw = f.rate(s.xw, s.r0w, s.r1w);
            double fb = f.rate(s.xb, s.r0b, s.r1b);
            if (fw - fb > band(fw, fb)) return Outcome::Fail;
            if (strict && fb - fw <= band(fw, fb)) return Outcome::Fail;
            return Outcome::Ok;
        },
        [&](long long i) {
            MonotoneSample s = monotone_sample(rng, cfg, i);
            return Counterexample{{{"x", s.xw},
                                   {"r0", s.r0w},
                                   {"r1", s.r1w},
                                   {"x_better", s.xb},
                                   {"r0_better", s.r0b},
                                   {"r1_better", s.r1b},
                                   {"rate", f.rate(s.xw, s.r0w, s.r1w)},
                                   {"rate_better", f.rate(s.xb, s.r0b, s.r1b)}}};
        });
}

CheckResult check_additive(const SwapRateFn& f, const PropertyCheckConfig& cfg) {
    CounterRng rng(cfg.rng_seed, kStreamAdditive);
    auto sample = [&](long long i) {
        double x = rng.log_uniform(cfg.lo, cfg.hi, i, 0);
        double y = rng.log_uniform(cfg.lo, cfg.hi, i, 1);
        double r0 = rng.log_uniform(cfg.lo, cfg.hi, i, 2);
        double r1 = rng.log_uniform(cfg.lo, cfg.hi, i, 3);
        return std::array{x, y, r0, r1};
    };
    return drive(
        cfg,
        [&](long long i) {
            auto [x, y, r0, r1] = sample(i);
            double alpha = f.rate(x, r0, r1);
            if (r1 - alpha * x <= 0.0) return Outcome::Skip;
            double beta = f.rate(y, r0 + x, r1 - alpha * x);
            double lhs = f.rate(x + y, r0, r1);
            double rhs = (alpha * x + beta * y) / (x + y);
            return identity_holds(lhs, rhs, cfg.rel_tol) ? Outcome::Ok : Outcome::Fail;
        },
        [&](long long i) {
            auto [x, y, r0, r1] = sample(i);
            double alpha = f.rate(x, r0, r1);
            double beta = f.rate(y, r0 + x, r1 - alpha * x);
            return Counterexample{{{"x", x},
                                   {"y", y},
                                   {"r0", r0},
                                   {"r1", r1},
                                   {"alpha", alpha},
                                   {"beta", beta},
                                   {"combined", f.rate(x + y, r0, r1)},
                                   {"split", (alpha * x + beta * y) / (x + y)}}};
        });
}

CheckResult check_reversible(const SwapRateFn& f, const PropertyCheckConfig& cfg) {
    CounterRng rng(cfg.rng_seed, kStreamReversible);
    auto sample = [&](long long i) {
        double x = rng.log_uniform(cfg.lo, cfg.hi, i, 0);
        double r0 = rng.log_uniform(cfg.lo, cfg.hi, i, 1);
        double r1 = rng.log_uniform(cfg.lo, cfg.hi, i, 2);
        return std::array{x, r0, r1};
    };
    return drive(
        cfg,
        [&](long long i) {
            auto [x, r0, r1] = sample(i);
            double alpha = f.rate(x, r0, r1);
            if (r1 - alpha * x <= 0.0) return Outcome::Skip;
            double back = f.rate(alpha * x, r1 - alpha * x, r0 + x);
            return identity_holds(back, 1.0 / alpha, cfg.rel_tol) ? Outcome::Ok : Outcome::Fail;
        },
        [&](long long i) {
            auto [x, r0, r1] = sample(i);
            double alpha = f.rate(x, r0, r1);
            return Counterexample{{{"x", x},
                                   {"r0", r0},
                                   {"r1", r1},
                                   {"alpha", alpha},
                                   {"back", f.rate(alpha * x, r1 - alpha * x, r0 + x)},
                                   {"inverse", 1.0 / alpha}}};
        });
}

CheckResult check_homogeneous(const SwapRateFn& f, const PropertyCheckConfig& cfg) {
    CounterRng rng(cfg.rng_seed, kStreamHomogeneous);
    auto sample = [&](long long i) {
        double a = rng.log_uniform(cfg.lo, cfg.hi, i, 0);
        double x = rng.log_uniform(cfg.lo, cfg.hi, i, 1);
        double r0 = rng.log_uniform(cfg.lo, cfg.hi, i, 2);
        double r1 = rng.log_uniform(cfg.lo, cfg.hi, i, 3);
        return std::array{a, x, r0, r1};
    };
    return drive(
        cfg,
        [&](long long i) {
            auto [a, x, r0, r1] = sample(i);
            return identity_holds(f.rate(a * x, a * r0, a * r1), f.rate(x, r0, r1), cfg.rel_tol)
                       ? Outcome::Ok
                       : Outcome::Fail;
        },
        [&](long long i) {
            auto [a, x, r0, r1] = sample(i);
            return Counterexample{{{"a", a},
                                   {"x", x},
                                   {"r0", r0},
                                   {"r1", r1},
                                   {"scaled", f.rate(a * x, a * r0, a * r1)},
                                   {"unscaled", f.rate(x, r0, r1)}}};
        });
}

PropertyReport certify(const SwapRateFn& f, const PropertyCheckConfig& cfg) {
    PropertyReport rep;
    rep.function = f.name();
    rep.seed = cfg.rng_seed;
    rep.properties["output_bound"] = check_output_bound(f, cfg);
    rep.properties["monotonic"] = check_monotonic(f, cfg, false);
    rep.properties["strict_monotonic"] = check_monotonic(f, cfg, true);
    rep.properties["additive"] = check_additive(f, cfg);
    rep.properties["reversible"] = check_reversible(f, cfg);
    rep.properties["homogeneous"] = check_homogeneous(f, cfg);

    RatePropertySet declared = f.declared();
    for (RateProperty p :
         {RateProperty::OutputBound, RateProperty::Monotonic, RateProperty::StrictlyMonotonic,
          RateProperty::Additive, RateProperty::Reversible, RateProperty::Homogeneous}) {
        std::string key(rate_property_name(p));
        bool measured = rep.properties.at(key).pass;
        bool claimed = declared.contains(p);
        if (claimed && !measured) rep.declared_mismatches.push_back(key + ": declared but failed");
        if (!claimed && measured) rep.declared_mismatches.push_back(key + ": passed but undeclared");
    }
    return rep;
}

nlohmann::json report_json(const PropertyReport& rep) {
    nlohmann::json props = nlohmann::json::object();
    nlohmann::json cex = nlohmann::json::object();
    for (const auto& [key, res] : rep.properties) {
        props[key] = {{"pass", res.pass}, {"tested", res.tested}, {"skipped", res.skipped}};
        if (res.counterexample) {
            nlohmann::json vals = nlohmann::json::object();
            for (const auto& [name, v] : res.counterexample->values) vals[name] = v;
            cex[key] = vals;
        }
    }
    return {{"function", rep.function},
            {"seed", rep.seed},
            {"properties", props},
            {"counterexamples", cex},
            {"declared_mismatches", rep.declared_mismatches}};
}

}  // namespace amm
