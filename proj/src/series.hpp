#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace casimir {

enum class TailPolicy { integral_bound, averaged_tail };

// Re(w · e^{2πi ν j})
struct Oscillation {
    real nu;
    cplx w;
};

// Σ_j R(j) · (mean + Σ_m Re(w_m e^{2πi ν_m j}))
struct Channel {
    std::function<real(real)> envelope;
    real mean = 0;
    std::vector<Oscillation> osc;
    std::int64_t period = 0;  // > 0: every ν is a multiple of 1/period
};

struct SumControl {
    real rel_tol = 1e-10L;
    real abs_tol = 0;
    std::int64_t max_modes = 10000000;
    TailPolicy policy = TailPolicy::averaged_tail;
    std::int64_t fixed_modes = 0;  // > 0: evaluate with exactly this many head terms
    std::int64_t first_modes = 32;
    int abel_order = 6;
};

struct SumResult {
    real value = 0;
    real error = 0;
    std::int64_t modes = 0;
    TailPolicy policy = TailPolicy::averaged_tail;
};

// Sum over j ≥ 1 of the channels. Head terms are added in ascending j with
// compensated summation; the tail beyond the head follows ctl.policy.
SumResult sum_modes(std::vector<Channel> channels, const SumControl& ctl);

struct TailResult {
    real value = 0;
    real bound = 0;
};

// Σ_{j>N} of one channel under the given policy. Oscillations with ν ≡ 0 must
// already be folded into the mean (normalize_channel does this).
TailResult channel_tail(const Channel& ch, std::int64_t N, TailPolicy policy, int abel_order = 6);
void normalize_channel(Channel& ch);

// ∫_a^∞ f(t) dt with an error estimate
real integrate_to_infinity(const std::function<real(real)>& f, real a, real* error);

}  // namespace casimir
