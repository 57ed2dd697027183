// Copyright 2026 The opmean authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "opmean/errors.hpp"

namespace opmean {

// Extended real with the arithmetic conventions used throughout:
//   0 * (+-inf) = 0,   e^{-inf} = 0,   e^{+inf} = +inf,
//   log 0 = -inf,      0^0 = 1.
// IEEE doubles give NaN for 0*inf, which is exactly what must not leak into
// any downstream decision, hence the dedicated type.
class ExtReal {
  public:
    constexpr ExtReal() : v_(0.0) {}
    constexpr ExtReal(double v) : v_(v) {}  // NOLINT: implicit by design

    static constexpr ExtReal infinity() {
        return ExtReal(std::numeric_limits<double>::infinity());
    }
    static constexpr ExtReal neg_infinity() {
        return ExtReal(-std::numeric_limits<double>::infinity());
    }

    bool is_finite() const { return std::isfinite(v_); }
    bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
    bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

    // Finite value; throws on +-inf so infinities cannot be silently used as
    // ordinary doubles.
    double finite() const {
        if (!is_finite()) throw DomainError("ExtReal: value is not finite");
        return v_;
    }
    // Raw double including +-inf.
    double raw() const { return v_; }

    friend ExtReal operator-(ExtReal a) { return ExtReal(-a.v_); }

    friend ExtReal operator+(ExtReal a, ExtReal b) {
        if (a.is_pos_inf() && b.is_neg_inf())
            throw DomainError("ExtReal: (+inf) + (-inf)");
        if (a.is_neg_inf() && b.is_pos_inf())
            throw DomainError("ExtReal: (-inf) + (+inf)");
        return ExtReal(a.v_ + b.v_);
    }
    friend ExtReal operator-(ExtReal a, ExtReal b) { return a + (-b); }

    friend ExtReal operator*(ExtReal a, ExtReal b) {
        if (a.v_ == 0.0 || b.v_ == 0.0) return ExtReal(0.0);  // 0 * inf = 0
        return ExtReal(a.v_ * b.v_);
    }

    friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
    friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
    friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
    friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
    friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, ExtReal a) {
        if (a.is_pos_inf()) return os << "+inf";
        if (a.is_neg_inf()) return os << "-inf";
        return os << a.v_;
    }

  private:
    double v_;
};

inline ExtReal ext_log(ExtReal x) {
    if (x < 0.0) throw DomainError("ext_log: negative argument");
    if (x.raw() == 0.0) return ExtReal::neg_infinity();
    if (x.is_pos_inf()) return ExtReal::infinity();
    return ExtReal(std::log(x.raw()));
}

inline ExtReal ext_exp(ExtReal x) {
    if (x.is_neg_inf()) return ExtReal(0.0);
    if (x.is_pos_inf()) return ExtReal::infinity();
    return ExtReal(std::exp(x.raw()));
}

// x^p with 0^0 = 1.
inline ExtReal ext_pow(ExtReal x, double p) {
    if (x < 0.0) throw DomainError("ext_pow: negative base");
    if (p == 0.0) return ExtReal(1.0);  // includes 0^0 = 1
    if (x.raw() == 0.0) return p > 0 ? ExtReal(0.0) : ExtReal::infinity();
    if (x.is_pos_inf()) return p > 0 ? ExtReal::infinity() : ExtReal(0.0);
    return ExtReal(std::pow(x.raw(), p));
}

}  // namespace opmean
