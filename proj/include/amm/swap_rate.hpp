#pragma once

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace amm {

enum class RateProperty { OutputBound, Monotonic, StrictlyMonotonic, Additive, Reversible, Homogeneous };

using RatePropertySet = std::set<RateProperty>;

constexpr std::string_view rate_property_name(RateProperty p) {
    switch (p) {
        case RateProperty::OutputBound: return "output_bound";
        case RateProperty::Monotonic: return "monotonic";
        case RateProperty::StrictlyMonotonic: return "strict_monotonic";
        case RateProperty::Additive: return "additive";
        case RateProperty::Reversible: return "reversible";
        case RateProperty::Homogeneous: return "homogeneous";
    }
    return "unknown";
}

// Output-per-input rate SX(x, r_in, r_out) for a swap of size x against
// reserves (r_in, r_out). Must be defined, finite and positive for all
// x >= 0 and r_in, r_out > 0.
class SwapRateFn {
public:
    virtual ~SwapRateFn() = default;
    virtual double rate(double x, double r_in, double r_out) const = 0;
    virtual std::string name() const = 0;
    virtual RatePropertySet declared() const = 0;
};

// r_out / (r_in + x); preserves the reserve product.
class ConstantProduct final : public SwapRateFn {
public:
    double rate(double x, double r_in, double r_out) const override { return r_out / (r_in + x); }
    std::string name() const override { return "constprod"; }
    RatePropertySet declared() const override {
        return {RateProperty::OutputBound, RateProperty::Monotonic, RateProperty::StrictlyMonotonic,
                RateProperty::Additive, RateProperty::Reversible, RateProperty::Homogeneous};
    }
};

// phi*r_out / (r_in + phi*x); phi = 1 gives the constant product formula.
class ConstantProductWithFee final : public SwapRateFn {
public:
    explicit ConstantProductWithFee(double phi) : phi_(phi) {
        if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("fee factor must be in [0,1]");
    }
    double phi() const { return phi_; }
    double rate(double x, double r_in, double r_out) const override {
        return phi_ * r_out / (r_in + phi_ * x);
    }
    std::string name() const override {
        char buf[48];
        std::snprintf(buf, sizeof buf, "constprod-fee:%g", phi_);
        return buf;
    }
    RatePropertySet declared() const override {
        return {RateProperty::OutputBound, RateProperty::Monotonic, RateProperty::StrictlyMonotonic,
                RateProperty::Homogeneous};
    }

private:
    double phi_;
};

// r_out * (1 - (r_in/(r_in+x))^(w_in/w_out)) / x, extended by its limit
// w*r_out/r_in at x = 0; preserves r_in^w_in * r_out^w_out. Computed via
// expm1/log1p: the literal 1-pow form loses ~12 digits when x << r_in.
// Which of the rate properties hold for general weights is left open here;
// none are declared.
class WeightedMean final : public SwapRateFn {
public:
    WeightedMean(double w_in, double w_out) : w_in_(w_in), w_out_(w_out) {
        if (!(w_in > 0.0) || !(w_out > 0.0)) throw std::invalid_argument("weights must be positive");
    }
    double rate(double x, double r_in, double r_out) const override {
        double w = w_in_ / w_out_;
        if (x == 0.0) return w * r_out / r_in;
        return r_out * (-std::expm1(w * std::log1p(-x / (r_in + x)))) / x;
    }
    std::string name() const override {
        char buf[64];
        std::snprintf(buf, sizeof buf, "weighted:%g:%g", w_in_, w_out_);
        return buf;
    }
    RatePropertySet declared() const override { return {}; }

private:
    double w_in_, w_out_;
};

// Shared default instance used by the step function.
inline const ConstantProduct& constant_product() {
    static const ConstantProduct cp;
    return cp;
}

}  // namespace amm
