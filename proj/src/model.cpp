#include "model.hpp"

#include <cmath>

namespace casimir {

void validate(const CavitySpec& cavity) {
    if (!(cavity.length_L > 0) || !std::isfinite(cavity.length_L))
        fail(ErrorKind::InvalidArgument, "cavity length L must be positive and finite");
}

void validate(const CavitySpec& cavity, const AtomSpec& atom) {
    validate(cavity);
    const real L = cavity.length_L;
    if (!std::isfinite(atom.position_x) || atom.position_x < 0 || atom.position_x > L)
        fail(ErrorKind::InvalidArgument, "atom position must lie in [0, L]");
    if (!(atom.gap_Omega > 0) || !std::isfinite(atom.gap_Omega))
        fail(ErrorKind::InvalidArgument, "gap Omega must be positive and finite");
    if (!(atom.coupling_lambda >= 0) || !std::isfinite(atom.coupling_lambda))
        fail(ErrorKind::InvalidArgument, "coupling lambda must be non-negative and finite");
    if (!(atom.radius_a0 >= 0) || !std::isfinite(atom.radius_a0))
        fail(ErrorKind::InvalidArgument, "radius a0 must be non-negative and finite");
}

void validate(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model) {
    validate(cavity, atom);
    if (model.kind == Coupling::SmearedDiamagnetic) {
        if (!(model.alpha >= 0) || !std::isfinite(model.alpha))
            fail(ErrorKind::InvalidArgument, "alpha must be non-negative and finite");
        if (atom.radius_a0 == 0)
            fail(ErrorKind::DomainError, "smeared coupling needs a0 > 0: point fluctuations of phi^2 diverge");
    }
}

void validate(const SeriesControl& ctl) {
    if (!(ctl.rel_tol > 0)) fail(ErrorKind::InvalidArgument, "rel_tol must be positive");
    if (ctl.abs_tol < 0 || !std::isfinite(ctl.abs_tol)) fail(ErrorKind::InvalidArgument, "abs_tol must be positive");
    if (ctl.max_modes < 1) fail(ErrorKind::InvalidArgument, "max_modes must be at least 1");
    if (ctl.fixed_modes < 0) fail(ErrorKind::InvalidArgument, "fixed_modes must be non-negative");
}

real mode_weight(real j, real L, real a0) {
    real k = a0 * pi * j / L;
    return 2 / (k * k + 1);
}

real momentum_matrix_element_1s2s(real a0) {
    if (!(a0 > 0)) fail(ErrorKind::DomainError, "matrix element needs a0 > 0");
    return 4 * std::sqrt(real(2)) / (27 * a0);
}

real to_si(real value, Unit unit, real L_meters) {
    if (!(L_meters > 0)) fail(ErrorKind::InvalidArgument, "L_meters must be positive");
    return unit == Unit::energy ? value * hbar_c / L_meters : value * hbar_c / (L_meters * L_meters);
}

const char* to_string(Boundary b) { return b == Boundary::Dirichlet ? "dirichlet" : "neumann"; }
const char* to_string(Coupling c) { return c == Coupling::BarePoint ? "bare" : "smeared"; }
const char* to_string(EvalPath p) { return p == EvalPath::series ? "series" : "closed_form"; }
const char* to_string(TailPolicy p) { return p == TailPolicy::averaged_tail ? "averaged_tail" : "integral_bound"; }

SumControl sum_control(const SeriesControl& ctl, const AtomSpec& atom, Coupling kind) {
    validate(ctl);
    SumControl s;
    s.rel_tol = ctl.rel_tol;
    real lam2 = atom.coupling_lambda * atom.coupling_lambda;
    s.abs_tol = ctl.abs_tol > 0 ? ctl.abs_tol : std::max(1e-14L * lam2, std::numeric_limits<real>::min());
    s.max_modes = ctl.max_modes;
    if (ctl.policy_set)
        s.policy = ctl.tail_policy;
    else
        s.policy = kind == Coupling::BarePoint ? TailPolicy::averaged_tail : TailPolicy::integral_bound;
    s.fixed_modes = ctl.fixed_modes;
    return s;
}

}  // namespace casimir
