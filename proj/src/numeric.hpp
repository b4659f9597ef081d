#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace casimir {

using real = long double;
using cplx = std::complex<real>;

inline constexpr real pi = std::numbers::pi_v<real>;
inline constexpr real euler_gamma = std::numbers::egamma_v<real>;
inline constexpr real eps = std::numeric_limits<real>::epsilon();

// Neumaier summation. Order of add() calls fixes the result bit for bit.
class CompensatedSum {
public:
    void add(real x) {
        real t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        abs_ += std::fabs(x);
        ++count_;
    }
    real value() const { return sum_ + comp_; }
    // rough bound on accumulated rounding
    real rounding() const { return 4 * eps * abs_ + eps * std::fabs(value()); }
    real abs_total() const { return abs_; }
    std::int64_t count() const { return count_; }

private:
    real sum_ = 0, comp_ = 0, abs_ = 0;
    std::int64_t count_ = 0;
};

class CompensatedComplexSum {
public:
    void add(cplx x) {
        re_.add(x.real());
        im_.add(x.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }
    real rounding() const { return re_.rounding() + im_.rounding(); }

private:
    CompensatedSum re_, im_;
};

// exp(2πi t) with exact values at quarter turns
inline cplx unit_turn(real t) {
    t -= std::floor(t);
    if (t == 0) return {1, 0};
    if (t == 0.25L) return {0, 1};
    if (t == 0.5L) return {-1, 0};
    if (t == 0.75L) return {0, -1};
    real a = 2 * pi * t;
    return {std::cos(a), std::sin(a)};
}

// frac(nu * j) in turns, reduced before scaling by 2π
inline real turns(real nu, std::int64_t j) {
    real t = std::fmod(nu * static_cast<real>(j), 1.0L);
    return t < 0 ? t + 1 : t;
}

inline bool is_nonpositive_integer(real x) { return x <= 0 && std::floor(x) == x; }

}  // namespace casimir
