#pragma once

#include <cmath>
#include <limits>
#include <ostream>

#include "infconv/errors.hpp"

namespace infconv {

// A real number extended with +inf. There is deliberately no -inf: values
// of that kind are rejected at construction, so sums can never produce NaN.
class ExtReal {
  public:
    ExtReal() : v_(0.0), inf_(false) {}

    // Implicit from double; +inf maps to the infinite tag, -inf/NaN throw.
    ExtReal(double v) : v_(v), inf_(false) {
        if (std::isnan(v)) throw ValueError("ExtReal: NaN is not a value");
        if (std::isinf(v)) {
            if (v < 0) throw ValueError("ExtReal: -inf is not representable");
            inf_ = true;
            v_ = 0.0;
        }
    }

    static ExtReal infinity() {
        ExtReal r;
        r.inf_ = true;
        return r;
    }

    bool is_inf() const { return inf_; }
    bool is_finite() const { return !inf_; }

    // Finite value; throws on +inf.
    double value() const {
        if (inf_) throw ValueError("ExtReal: value() on +inf");
        return v_;
    }

    // Double view with +inf mapped to the IEEE infinity. Handy for kernels
    // and serialization; never produces NaN because -inf does not exist.
    double as_double() const {
        return inf_ ? std::numeric_limits<double>::infinity() : v_;
    }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        if (a.inf_ || b.inf_) return infinity();
        double s = a.v_ + b.v_;
        if (std::isinf(s)) {
            if (s < 0) throw ValueError("ExtReal: sum overflowed to -inf");
            return infinity();
        }
        return ExtReal(s);
    }
    ExtReal& operator+=(ExtReal o) { return *this = *this + o; }

    friend bool operator==(ExtReal a, ExtReal b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(ExtReal a, ExtReal b) { return !(a == b); }
    // Total order: every finite value < +inf.
    friend bool operator<(ExtReal a, ExtReal b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.v_ < b.v_;
    }
    friend bool operator<=(ExtReal a, ExtReal b) { return a < b || a == b; }
    friend bool operator>(ExtReal a, ExtReal b) { return b < a; }
    friend bool operator>=(ExtReal a, ExtReal b) { return b <= a; }

    friend std::ostream& operator<<(std::ostream& os, ExtReal x) {
        if (x.inf_) return os << "inf";
        return os << x.v_;
    }

  private:
    double v_;
    bool inf_;
};

inline ExtReal min(ExtReal a, ExtReal b) { return a < b ? a : b; }

}  // namespace infconv
