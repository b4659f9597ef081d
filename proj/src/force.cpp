#include "force.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "channels.hpp"
#include "energy.hpp"

namespace casimir {

using detail::Scalars;

namespace {

ForceResult from_sum(const SumResult& s, Constraint c, bool extension) {
    ForceResult f;
    f.value = s.value;
    f.error_bound = s.error;
    f.constraint = c;
    f.method = ForceMethod::analytic;
    f.derived_extension = extension;
    f.modes_used = s.modes;
    return f;
}

Channel ratio_channel(const Scalars& p, Boundary b, Coupling kind) {
    if (kind == Coupling::BarePoint) {
        auto R = [p](real t) {
            real d = pi * t + p.L * p.Omega;
            return p.lam2 / (d * d);
        };
        return detail::squared_mode(b, p.ratio(), R);
    }
    auto R = [p](real t) {
        const real L = p.L, L3 = L * L * L;
        real k2 = pi * pi * p.a0 * p.a0 * t * t;
        real q = k2 + L * L;
        real d = pi * t + L * p.Omega;
        return 4 * p.lam2 * L3 * (L3 * p.Omega - k2 * (4 * pi * t + 3 * L * p.Omega)) / (p.Omega * q * q * q * d * d);
    };
    return detail::squared_mode(b, p.ratio(), R);
}

// the second series of the fixed-position force
Channel position_channel(const Scalars& p, Boundary b, Coupling kind, real flip) {
    real par = detail::parity(b) * flip;
    if (kind == Coupling::BarePoint) {
        auto R = [p](real t) { return p.lam2 * p.x / ((pi * t + p.L * p.Omega) * p.L); };
        return detail::double_angle_sine(p.ratio(), -par, R);
    }
    auto R = [p](real t) { return p.lam2 * p.f2(t) * pi * t * p.x / (p.Omega * p.L * p.L * (pi * t + p.L * p.Omega)); };
    return detail::double_angle_sine(p.ratio(), par, R);
}

struct AtomComponents {
    SumResult udw;
    SumResult phi2;  // coefficient of alpha
};

AtomComponents smeared_atom_components(const Scalars& p, Boundary b, const SumControl& sc) {
    real par = detail::parity(b);
    auto Ru = [p](real t) { return p.lam2 * p.f2(t) / (pi * t + p.L * p.Omega); };
    auto Rp = [p](real t) { return -p.lam2 * p.f2(t) / (p.Omega * p.L); };
    return {sum_modes({detail::double_angle_sine(p.ratio(), par, Ru)}, sc),
            sum_modes({detail::double_angle_sine(p.ratio(), par, Rp)}, sc)};
}

ForceResult assemble(const AtomComponents& c, real alpha) {
    ForceResult f;
    f.value = c.udw.value + alpha * c.phi2.value;
    f.error_bound = c.udw.error + alpha * c.phi2.error + eps * std::fabs(f.value);
    f.constraint = Constraint::atom_position;
    f.method = ForceMethod::analytic;
    f.modes_used = std::max(c.udw.modes, c.phi2.modes);
    return f;
}

// smallest P ≤ 65536 with every ν a multiple of 1/P, or 0
std::int64_t lattice_period(const std::vector<Oscillation>& osc) {
    constexpr std::int64_t limit = 65536;
    std::int64_t P = 1;
    for (const auto& o : osc) {
        std::int64_t q = 1;
        while (q <= limit) {
            real k = std::round(o.nu * static_cast<real>(q));
            // positions often arrive in double precision
            if (std::fabs(o.nu - k / static_cast<real>(q)) <= 4 * std::numeric_limits<double>::epsilon()) break;
            ++q;
        }
        if (q > limit) return 0;
        P = std::lcm(P, q);
        if (P > limit) return 0;
    }
    return P;
}

bool smeared_needs_fd(const CouplingModel& model) {
    return model.kind == Coupling::SmearedDiamagnetic && model.alpha != 1;
}

}  // namespace

ForceResult wall_force_fixed_ratio(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                                   const SeriesControl& ctl) {
    validate(cavity, atom, model);
    if (smeared_needs_fd(model)) return force_finite_difference(cavity, atom, model, ctl, Constraint::fixed_ratio);
    Scalars p(cavity, atom);
    SumControl sc = sum_control(ctl, atom, model.kind);
    auto s = sum_modes({ratio_channel(p, cavity.boundary, model.kind)}, sc);
    return from_sum(s, Constraint::fixed_ratio, cavity.boundary == Boundary::Neumann);
}

ForceResult wall_force_fixed_position(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                                      const SeriesControl& ctl, const ForceFixture& fixture) {
    validate(cavity, atom, model);
    if (smeared_needs_fd(model)) return force_finite_difference(cavity, atom, model, ctl, Constraint::fixed_position);
    Scalars p(cavity, atom);
    SumControl sc = sum_control(ctl, atom, model.kind);
    real flip = fixture.flip_fixed_position_sign ? -1 : 1;
    auto s = sum_modes({ratio_channel(p, cavity.boundary, model.kind),
                        position_channel(p, cavity.boundary, model.kind, flip)},
                       sc);
    return from_sum(s, Constraint::fixed_position, cavity.boundary == Boundary::Neumann);
}

ForceResult summed_wall_force(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                              const SeriesControl& ctl, Constraint constraint, const std::vector<real>& xs) {
    if (constraint == Constraint::atom_position || smeared_needs_fd(model))
        fail(ErrorKind::InvalidArgument, "summed wall forces need a wall constraint and an analytic model");
    AtomSpec unit = atom;
    unit.position_x = cavity.length_L / 2;
    validate(cavity, unit, model);
    if (xs.empty()) return from_sum({}, constraint, cavity.boundary == Boundary::Neumann);
    // envelopes do not depend on x apart from a linear factor, which moves into the weights
    Scalars p(cavity, unit);
    p.x = 1;
    Channel ratio = ratio_channel(p, cavity.boundary, model.kind);
    Channel position = position_channel(p, cavity.boundary, model.kind, 1);
    const Oscillation ro = ratio.osc.front(), po = position.osc.front();
    ratio.osc.clear();
    position.osc.clear();
    ratio.mean *= static_cast<real>(xs.size());
    for (real x : xs) {
        real r = x / p.L;
        ratio.osc.push_back({r, ro.w});
        position.osc.push_back({r, po.w * x});
    }
    ratio.period = position.period = lattice_period(ratio.osc);
    std::vector<Channel> channels{ratio};
    if (constraint == Constraint::fixed_position) channels.push_back(position);
    auto s = sum_modes(std::move(channels), sum_control(ctl, atom, model.kind));
    return from_sum(s, constraint, cavity.boundary == Boundary::Neumann);
}

ForceResult atom_force(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                       const SeriesControl& ctl) {
    validate(cavity, atom, model);
    Scalars p(cavity, atom);
    SumControl sc = sum_control(ctl, atom, model.kind);
    if (model.kind == Coupling::BarePoint) {
        auto R = [p](real t) { return p.lam2 / (pi * t + p.L * p.Omega); };
        auto s = sum_modes({detail::double_angle_sine(p.ratio(), detail::parity(cavity.boundary), R)}, sc);
        return from_sum(s, Constraint::atom_position, false);
    }
    return assemble(smeared_atom_components(p, cavity.boundary, sc), model.alpha);
}

ForceResult wall_force(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                       const SeriesControl& ctl, Constraint constraint) {
    switch (constraint) {
        case Constraint::fixed_ratio:
            return wall_force_fixed_ratio(cavity, atom, model, ctl);
        case Constraint::fixed_position:
            return wall_force_fixed_position(cavity, atom, model, ctl);
        case Constraint::atom_position:
            return atom_force(cavity, atom, model, ctl);
    }
    fail(ErrorKind::InvalidArgument, "unknown constraint");
}

ForceResult force_finite_difference(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                                    const SeriesControl& ctl, Constraint constraint) {
    validate(cavity, atom, model);
    const real L = cavity.length_L, x = atom.position_x;
    const real h = 1e-6L * L;
    if (constraint == Constraint::fixed_position && x > L - 4 * h)
        fail(ErrorKind::DomainError, "finite difference at fixed position needs x < L - 4h");
    if (constraint == Constraint::atom_position && (x < 4 * h || x > L - 4 * h))
        fail(ErrorKind::DomainError, "finite difference in x needs the atom 4h away from the walls");

    SeriesControl tight = ctl;
    tight.rel_tol = std::min(ctl.rel_tol, 1e-12L);
    tight.tail_policy = TailPolicy::averaged_tail;
    tight.policy_set = true;
    tight.fixed_modes = 0;

    auto energy_at = [&](real d, const SeriesControl& c) {
        CavitySpec cv = cavity;
        AtomSpec at = atom;
        switch (constraint) {
            case Constraint::fixed_ratio:
                cv.length_L = L + d;
                at.position_x = x / L * (L + d);
                break;
            case Constraint::fixed_position:
                cv.length_L = L + d;
                break;
            case Constraint::atom_position:
                at.position_x = x + d;
                break;
        }
        return energy_series(cv, at, model, c);
    };

    auto center = energy_at(0, tight);
    SeriesControl fixed = tight;
    fixed.fixed_modes = center.result.modes_used;
    auto E = [&](real d) { return energy_at(d, fixed).result.value; };
    real e1p = E(h), e1m = E(-h), e2p = E(2 * h), e2m = E(-2 * h), e4p = E(4 * h), e4m = E(-4 * h);
    real d1 = (-e2p + 8 * e1p - 8 * e1m + e2m) / (12 * h);
    real d2 = (-e4p + 8 * e2p - 8 * e2m + e4m) / (24 * h);
    real d = d1 + (d1 - d2) / 15;

    ForceResult f;
    f.value = -d;
    real N = static_cast<real>(fixed.fixed_modes);
    real scale = std::fabs(center.result.value) + center.result.error_bound;
    f.error_bound = std::fabs(d1 - d2) / 15 + center.result.error_bound * (10 + 2 * pi * N) / L + 64 * eps * scale / h;
    f.constraint = constraint;
    f.method = ForceMethod::fd;
    f.derived_extension = constraint != Constraint::atom_position && cavity.boundary == Boundary::Neumann;
    f.modes_used = fixed.fixed_modes;
    return f;
}

AlphaSweep alpha_sweep(const CavitySpec& cavity, const AtomSpec& atom, const SeriesControl& ctl,
                       const std::vector<real>& alphas) {
    if (alphas.empty()) fail(ErrorKind::InvalidArgument, "alpha list is empty");
    CouplingModel model{Coupling::SmearedDiamagnetic, 1};
    validate(cavity, atom, model);
    for (real a : alphas)
        if (!(a >= 0) || !std::isfinite(a)) fail(ErrorKind::InvalidArgument, "alpha must be non-negative and finite");
    Scalars p(cavity, atom);
    SumControl sc = sum_control(ctl, atom, model.kind);
    auto comp = smeared_atom_components(p, cavity.boundary, sc);

    AlphaSweep out;
    for (real a : alphas) out.points.emplace_back(a, assemble(comp, a));
    for (std::size_t i = 0; i + 1 < out.points.size(); ++i) {
        real f0 = out.points[i].second.value, f1 = out.points[i + 1].second.value;
        if ((f0 < 0 && f1 > 0) || (f0 > 0 && f1 < 0) || (f0 == 0 && f1 != 0 && i == 0)) {
            ++out.sign_changes;
            if (!out.has_crossing) {
                real a0 = out.points[i].first, a1 = out.points[i + 1].first;
                out.has_crossing = true;
                out.crossing_index = i;
                out.alpha_star = a0 + (a1 - a0) * f0 / (f0 - f1);
            }
        }
    }
    return out;
}

const char* to_string(Constraint c) {
    switch (c) {
        case Constraint::fixed_ratio:
            return "fixed_ratio";
        case Constraint::fixed_position:
            return "fixed_position";
        case Constraint::atom_position:
            return "atom_position";
    }
    return "?";
}

const char* to_string(ForceMethod m) { return m == ForceMethod::analytic ? "analytic" : "fd"; }

}  // namespace casimir
