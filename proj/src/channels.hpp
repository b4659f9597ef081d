#pragma once

#include "model.hpp"
#include "series.hpp"

namespace casimir::detail {

// sin²(πjx/L) for Dirichlet, cos²(πjx/L) for Neumann
inline Channel squared_mode(Boundary b, real ratio, std::function<real(real)> envelope) {
    real w = b == Boundary::Dirichlet ? -0.5L : 0.5L;
    return {std::move(envelope), 0.5L, {{ratio, cplx(w, 0)}}};
}

// sin(2πjx/L) times the sign
inline Channel double_angle_sine(real ratio, real sign, std::function<real(real)> envelope) {
    return {std::move(envelope), 0, {{ratio, cplx(0, -sign)}}};
}

inline Channel plain(std::function<real(real)> envelope, real mean = 1) { return {std::move(envelope), mean, {}}; }

// +1 Dirichlet, -1 Neumann
inline real parity(Boundary b) { return b == Boundary::Dirichlet ? 1 : -1; }

struct Scalars {
    real L, x, Omega, lambda, a0, lam2, c;  // c = LΩ/π
    explicit Scalars(const CavitySpec& cav, const AtomSpec& atom)
        : L(cav.length_L),
          x(atom.position_x),
          Omega(atom.gap_Omega),
          lambda(atom.coupling_lambda),
          a0(atom.radius_a0),
          lam2(atom.coupling_lambda * atom.coupling_lambda),
          c(cav.length_L * atom.gap_Omega / pi) {}
    real ratio() const { return x / L; }
    real f2(real t) const {
        real f = mode_weight(t, L, a0);
        return f * f;
    }
};

}  // namespace casimir::detail
