#pragma once

#include <cassert>
#include <cmath>
#include <limits>

namespace cgmldp {

/// Value in R ∪ {+inf}. +inf propagates through addition, positive scaling,
/// exp and log; results are never NaN.
class ExtReal {
public:
    ExtReal() : v_(0.0) {}
    ExtReal(double v) : v_(v) { assert(!std::isnan(v)); }

    static ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }

    [[nodiscard]] bool is_finite() const { return std::isfinite(v_); }
    [[nodiscard]] bool is_infinite() const { return std::isinf(v_); }

    /// Underlying double; +inf when infinite.
    [[nodiscard]] double value() const { return v_; }

    /// Finite value; asserts finiteness.
    [[nodiscard]] double finite() const {
        assert(is_finite());
        return v_;
    }

    friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v_ + b.v_); }
    friend ExtReal operator*(double c, ExtReal a) {
        if (a.is_infinite()) {
            assert(c > 0.0);
            return a;
        }
        return ExtReal(c * a.v_);
    }
    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
    friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
    friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
    friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

private:
    double v_;
};

inline ExtReal ext_log(ExtReal a) {
    if (a.is_infinite()) return a;
    return ExtReal(std::log(a.value()));
}

inline ExtReal ext_exp(ExtReal a) {
    if (a.is_infinite()) return a;
    return ExtReal(std::exp(a.value()));
}

}  // namespace cgmldp
