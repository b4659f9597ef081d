#pragma once

#include <cstdint>

#include "error.hpp"
#include "numeric.hpp"

namespace casimir {

enum class Accelerator { none, levin_u, euler };

struct SeriesAccuracy {
    real abs_tol = 1e-12L;
    std::int64_t max_terms = 1000000;
    Accelerator accelerator = Accelerator::levin_u;
};

struct Estimate {
    cplx value;
    real error = 0;
    std::int64_t terms = 0;
};

void validate(const SeriesAccuracy& acc);

// Φ(z,s,a) = Σ_{n≥0} z^n / (n+a)^s
Estimate lerch_phi(cplx z, real s, cplx a, const SeriesAccuracy& acc = {});

// H(x) = x Σ_{k≥1} 1/(k(x+k)) = ψ(x+1) + γ
real gen_harmonic(real x);

Estimate gauss_2f1(cplx a, cplx b, cplx c, cplx z, const SeriesAccuracy& acc = {});

// ψ^(n)(x)
cplx polygamma(int n, cplx x);

// B(z;a,b) = ∫_0^z t^{a-1}(1-t)^{b-1} dt, principal branch of z^a
Estimate inc_beta(cplx z, cplx a, cplx b, const SeriesAccuracy& acc = {});

cplx pochhammer(cplx p, std::int64_t n);

// log Γ(x) up to a multiple of 2πi in the imaginary part
cplx log_gamma(cplx x);

// ζ(s,a) for s > 1
cplx hurwitz_zeta(real s, cplx a);

}  // namespace casimir
