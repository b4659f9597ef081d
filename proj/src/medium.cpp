#include "medium.hpp"

#include <algorithm>
#include <cmath>

#include "channels.hpp"
#include "energy.hpp"
#include "specfun.hpp"

namespace casimir {

using detail::Scalars;

namespace {

// beyond this many cells the cot-weighted digamma sum switches to its large-M form
constexpr std::int64_t exact_cot_limit = std::int64_t(1) << 20;
constexpr std::int64_t max_pair_atoms = 16;
// up to this many cells the smeared position term is summed in blocks of M modes
constexpr std::int64_t block_cot_limit = 4096;

real digamma_pos(real x) {
    real acc = 0;
    while (x < 16) {
        acc -= 1 / x;
        x += 1;
    }
    real y = 1 / (x * x);
    real series = y * (1.0L / 12 - y * (1.0L / 120 - y * (1.0L / 252 - y * (1.0L / 240 - y * (1.0L / 132 - y * (691.0L / 32760 - y / 12))))));
    return acc + std::log(x) - 1 / (2 * x) - series;
}

real trigamma(real x) { return polygamma(1, cplx(x, 0)).real(); }

struct Aggregate {
    real value = 0, error = 0;
    std::int64_t modes = 0;
};

// Σ_{j ≥ 1, M ∤ j} cot(πj/M) / (j (j + c))
Aggregate cot_series(std::int64_t M, real c) {
    const real Mr = static_cast<real>(M);
    if (M <= exact_cot_limit) {
        CompensatedSum s;
        for (std::int64_t r = 1; 2 * r < M; ++r) {
            real u = static_cast<real>(r) / Mr;
            real ct = 1 / std::tan(pi * u);
            s.add(ct * (digamma_pos(u + c / Mr) - digamma_pos(1 + (c - static_cast<real>(r)) / Mr) + pi * ct));
        }
        real v = s.value() / (c * Mr);
        return {v, s.rounding() / (c * Mr) + 64 * eps * std::fabs(v), M};
    }
    real Z = (pi * pi / 6 - gen_harmonic(c) / c) / c;
    return {Mr / pi * Z, pi / (3 * Mr) * (std::log(Mr) + 3), 0};
}

struct Uniform {
    std::int64_t N, M;
    real Nr, Mr;
};

Uniform uniform(std::int64_t N) { return {N, N + 1, static_cast<real>(N), static_cast<real>(N + 1)}; }

// Σ_n s²(πj x_n/L) = W_base for M ∤ j and W_base + W_multiple for M | j
std::pair<real, real> squared_weights(Boundary b, const Uniform& u) {
    if (b == Boundary::Dirichlet) return {u.Mr / 2, -u.Mr / 2};
    return {u.Nr - u.Mr / 2, u.Mr / 2};
}

EnergyResult bare_uniform_energy(const Scalars& p, Boundary b, const Uniform& u) {
    const real c = p.c;
    real Hc = gen_harmonic(c), HcM = gen_harmonic(c / u.Mr);
    real pre = -p.lam2 * p.L / (pi * pi * c);
    real v = b == Boundary::Dirichlet ? pre * (u.Mr * Hc - HcM) / 2 : pre * ((u.Nr - u.Mr / 2) * Hc + HcM / 2);
    return {v, 64 * eps * std::fabs(pre) * (u.Mr * Hc + HcM), 0, EvalPath::closed_form};
}

// Σ over all j of R(j)·W_base, corrected at the multiples of M
SumResult aggregated_sum(const std::function<real(real)>& R, Boundary b, const Uniform& u, const SumControl& sc) {
    auto [base, multiple] = squared_weights(b, u);
    auto main = sum_modes({detail::plain(R, base)}, sc);
    real Mr = u.Mr;
    SumControl sc2 = sc;
    sc2.abs_tol = std::max(sc.abs_tol, sc.rel_tol * std::fabs(main.value)) / 4;
    auto corr = sum_modes({detail::plain([R, Mr](real k) { return R(Mr * k); }, multiple)}, sc2);
    return {main.value + corr.value, main.error + corr.error, std::max(main.modes, corr.modes),
            main.policy == TailPolicy::averaged_tail || corr.policy == TailPolicy::averaged_tail
                ? TailPolicy::averaged_tail
                : TailPolicy::integral_bound};
}

EnergyResult smeared_uniform_energy(const Scalars& p, Boundary b, const Uniform& u, real alpha, const SumControl& sc) {
    auto R = [p, alpha](real t) {
        real e2 = -p.lam2 * p.f2(t) * p.L / (pi * t * (pi * t + p.L * p.Omega));
        real e1 = p.lam2 * p.f2(t) / (p.Omega * pi * t);
        return e2 + alpha * e1;
    };
    auto s = aggregated_sum(R, b, u, sc);
    return {s.value, s.error, s.modes, EvalPath::series};
}

real bare_uniform_ratio_force(const Scalars& p, Boundary b, const Uniform& u) {
    real a = trigamma(1 + p.c), m = trigamma(1 + p.c / u.Mr) / (u.Mr * u.Mr);
    real pre = p.lam2 / (pi * pi);
    if (b == Boundary::Dirichlet) return pre * u.Mr / 2 * (a - m);
    return pre * ((u.Nr - u.Mr / 2) * a + u.Mr / 2 * m);
}

// Σ_n [fixed-position force − fixed-ratio force] for the bare coupling, Dirichlet sign
Aggregate bare_uniform_position_term(const Scalars& p, const Uniform& u) {
    if (u.M <= 2) return {};
    auto S = cot_series(u.M, p.c);
    real lead = p.lam2 * (u.Mr - 1) * (u.Mr - 2) / (12 * u.Mr);
    real k = p.lam2 * p.c / (2 * pi);
    return {lead - k * S.value, k * S.error + 16 * eps * (std::fabs(lead) + k * std::fabs(S.value)), S.modes};
}

// Σ_{M ∤ j} G(j)·(−L/2)·cot(πj/M), smeared coupling, Dirichlet sign
Aggregate smeared_uniform_position_term(const Scalars& p, const Uniform& u, const SumControl& sc) {
    if (u.M <= 2) return {};
    auto G = [p](real t) { return p.lam2 * p.f2(t) * pi * t / (p.Omega * p.L * p.L * (pi * t + p.L * p.Omega)); };
    const real Mr = u.Mr;
    if (u.M <= block_cot_limit) {
        // blocks of M consecutive modes; the block sum is smooth in the block index
        std::vector<real> cots(u.M);
        for (std::int64_t r = 1; r < u.M; ++r) cots[r] = -p.L / 2 / std::tan(pi * static_cast<real>(r) / Mr);
        auto block = [G, cots, Mr](real k) {
            real acc = 0;
            for (std::size_t r = 1; r < cots.size(); ++r) acc += cots[r] * G((k - 1) * Mr + static_cast<real>(r));
            return acc;
        };
        auto s = sum_modes({detail::plain(block, 1)}, sc);
        return {s.value, s.error, s.modes * u.M};
    }
    const real cot_max = 1 / std::tan(pi / Mr);
    CompensatedSum s;
    std::int64_t done = 0, J = std::min<std::int64_t>(sc.first_modes, sc.max_modes);
    while (true) {
        for (std::int64_t j = done + 1; j <= J; ++j) {
            if (j % u.M == 0) continue;
            real ct = 1 / std::tan(pi * static_cast<real>(j % u.M) / Mr);
            s.add(-p.L / 2 * ct * G(static_cast<real>(j)));
        }
        done = J;
        real e1 = 0, e2 = 0, e3 = 0;
        real Jr = static_cast<real>(J);
        real full = cot_max * (integrate_to_infinity([&](real t) { return std::fabs(G(t)); }, Jr, &e1) + e1);
        real bound = full;
        if (2 * Jr <= Mr) {
            real near = integrate_to_infinity([&](real t) { return std::fabs(G(t)) / t; }, Jr, &e2) + e2;
            real far = integrate_to_infinity([&](real t) { return std::fabs(G(t)); }, Mr / 2, &e3) + e3;
            bound = std::min(full, Mr / pi * (near + far));
        }
        bound *= p.L / 2;
        real v = s.value();
        real err = bound + s.rounding();
        if (err <= std::max(sc.abs_tol, sc.rel_tol * std::fabs(v)) || J >= sc.max_modes) {
            if (err > std::max(sc.abs_tol, sc.rel_tol * std::fabs(v)))
                fail(ErrorKind::NoConvergence, "medium position series did not reach tolerance within max_modes");
            return {v, err, J};
        }
        J = std::min(2 * J, sc.max_modes);
    }
}

ForceResult smeared_uniform_force(const Scalars& p, Boundary b, const Uniform& u, const SumControl& sc,
                                  Constraint constraint) {
    auto R = [p](real t) {
        const real L = p.L, L3 = L * L * L;
        real k2 = pi * pi * p.a0 * p.a0 * t * t;
        real q = k2 + L * L;
        real d = pi * t + L * p.Omega;
        return 4 * p.lam2 * L3 * (L3 * p.Omega - k2 * (4 * pi * t + 3 * L * p.Omega)) / (p.Omega * q * q * q * d * d);
    };
    auto s = aggregated_sum(R, b, u, sc);
    ForceResult f;
    f.value = s.value;
    f.error_bound = s.error;
    f.modes_used = s.modes;
    if (constraint == Constraint::fixed_position) {
        auto extra = smeared_uniform_position_term(p, u, sc);
        f.value += detail::parity(b) * extra.value;
        f.error_bound += extra.error;
        f.modes_used = std::max(f.modes_used, extra.modes);
    }
    return f;
}

void check_wall_constraint(Constraint constraint) {
    if (constraint == Constraint::atom_position)
        fail(ErrorKind::InvalidArgument, "medium forces are wall forces: use fixed_ratio or fixed_position");
}

}  // namespace

std::int64_t atom_count(const MediumSpec& medium) {
    if (medium.placement == Placement::uniform) {
        if (medium.count < 0) fail(ErrorKind::InvalidArgument, "atom count must be non-negative");
        return medium.count;
    }
    return static_cast<std::int64_t>(medium.positions.size());
}

std::vector<real> atom_positions(const CavitySpec& cavity, const MediumSpec& medium) {
    validate(cavity);
    const real L = cavity.length_L;
    std::vector<real> xs;
    if (medium.placement == Placement::uniform) {
        std::int64_t N = atom_count(medium);
        xs.reserve(N);
        for (std::int64_t n = 1; n <= N; ++n) xs.push_back(L * static_cast<real>(n) / static_cast<real>(N + 1));
        return xs;
    }
    for (real x : medium.positions)
        if (!(x > 0 && x < L)) fail(ErrorKind::InvalidArgument, "medium atoms must lie strictly inside (0, L)");
    return medium.positions;
}

bool pws_warning(std::int64_t n_atoms, const CavitySpec& cavity, const AtomSpec& atom) {
    real g = atom.coupling_lambda * cavity.length_L;
    return static_cast<real>(n_atoms) * g * g >= 0.01L;
}

MediumEnergy medium_energy(const CavitySpec& cavity, const AtomSpec& atom, const MediumSpec& medium,
                           const CouplingModel& model, const SeriesControl& ctl) {
    AtomSpec probe = atom;
    probe.position_x = cavity.length_L / 2;
    validate(cavity, probe, model);
    validate(ctl);
    MediumEnergy out;
    const std::int64_t N = atom_count(medium);
    out.pws_warning = pws_warning(N, cavity, atom);
    if (N == 0) return out;

    if (medium.placement == Placement::uniform && ctl.fixed_modes == 0) {
        Scalars p(cavity, probe);
        auto u = uniform(N);
        if (model.kind == Coupling::BarePoint)
            out.result = bare_uniform_energy(p, cavity.boundary, u);
        else
            out.result = smeared_uniform_energy(p, cavity.boundary, u, model.alpha, sum_control(ctl, atom, model.kind));
        return out;
    }

    CompensatedSum s;
    real err = 0;
    for (real x : atom_positions(cavity, medium)) {
        AtomSpec a = atom;
        a.position_x = x;
        auto e = energy_series(cavity, a, model, ctl);
        s.add(e.result.value);
        err += e.result.error_bound;
        out.result.modes_used = std::max(out.result.modes_used, e.result.modes_used);
    }
    out.result.value = s.value();
    out.result.error_bound = err + s.rounding();
    return out;
}

MediumForce medium_wall_force(const CavitySpec& cavity, const AtomSpec& atom, const MediumSpec& medium,
                              const CouplingModel& model, const SeriesControl& ctl, Constraint constraint) {
    check_wall_constraint(constraint);
    AtomSpec probe = atom;
    probe.position_x = cavity.length_L / 2;
    validate(cavity, probe, model);
    validate(ctl);
    MediumForce out;
    out.result.constraint = constraint;
    out.result.derived_extension = cavity.boundary == Boundary::Neumann;
    const std::int64_t N = atom_count(medium);
    out.pws_warning = pws_warning(N, cavity, atom);
    if (N == 0) return out;

    const bool smeared_fd = model.kind == Coupling::SmearedDiamagnetic && model.alpha != 1;
    if (medium.placement == Placement::uniform && ctl.fixed_modes == 0 && !smeared_fd) {
        Scalars p(cavity, probe);
        auto u = uniform(N);
        if (model.kind == Coupling::BarePoint) {
            real v = bare_uniform_ratio_force(p, cavity.boundary, u);
            real e = 64 * eps * p.lam2 * u.Mr;
            std::int64_t modes = 0;
            if (constraint == Constraint::fixed_position) {
                auto t = bare_uniform_position_term(p, u);
                v += detail::parity(cavity.boundary) * t.value;
                e += t.error;
                modes = t.modes;
            }
            out.result.value = v;
            out.result.error_bound = e;
            out.result.modes_used = modes;
        } else {
            auto f = smeared_uniform_force(p, cavity.boundary, u, sum_control(ctl, atom, model.kind), constraint);
            out.result.value = f.value;
            out.result.error_bound = f.error_bound;
            out.result.modes_used = f.modes_used;
        }
        return out;
    }

    if (!smeared_fd) {
        auto f = summed_wall_force(cavity, atom, model, ctl, constraint, atom_positions(cavity, medium));
        out.result.value = f.value;
        out.result.error_bound = f.error_bound;
        out.result.method = f.method;
        out.result.modes_used = f.modes_used;
        return out;
    }

    CompensatedSum s;
    real err = 0;
    for (real x : atom_positions(cavity, medium)) {
        AtomSpec a = atom;
        a.position_x = x;
        auto f = wall_force(cavity, a, model, ctl, constraint);
        s.add(f.value);
        err += f.error_bound;
        out.result.method = f.method;
        out.result.modes_used = std::max(out.result.modes_used, f.modes_used);
    }
    out.result.value = s.value();
    out.result.error_bound = err + s.rounding();
    return out;
}

real empty_casimir_force(real L) {
    if (!(L > 0) || !std::isfinite(L)) fail(ErrorKind::InvalidArgument, "cavity length L must be positive and finite");
    return -pi / (24 * L * L);
}

CriticalScan critical_scan(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                           const SeriesControl& ctl, Constraint constraint, std::int64_t n_max,
                           const CriticalOptions& opts) {
    check_wall_constraint(constraint);
    if (n_max < 0) fail(ErrorKind::InvalidArgument, "n_max must be non-negative");
    if (opts.include_pairs) {
        if (n_max > max_pair_atoms) fail(ErrorKind::InvalidArgument, "pair terms are limited to 16 atoms");
        if (model.kind != Coupling::BarePoint)
            fail(ErrorKind::DomainError, "pair terms are available for the bare coupling only");
    }
    const real F0 = empty_casimir_force(cavity.length_L);

    auto row_at = [&](std::int64_t n) {
        CriticalRow r;
        r.n = n;
        MediumSpec m{Placement::uniform, n, {}};
        r.medium_force = medium_wall_force(cavity, atom, m, model, ctl, constraint).result.value;
        if (opts.include_pairs && n >= 2) {
            auto xs = atom_positions(cavity, m);
            CompensatedSum s;
            for (std::size_t a = 0; a < xs.size(); ++a)
                for (std::size_t b = a + 1; b < xs.size(); ++b) {
                    PairSpec pr{xs[a], xs[b]};
                    s.add(constraint == Constraint::fixed_ratio
                              ? pair_wall_force_fixed_ratio(cavity, atom, pr, ctl).value
                              : pair_force_finite_difference(cavity, atom, pr, ctl, constraint).value);
                }
            r.pair_force = s.value();
        }
        r.total_force = r.medium_force + r.pair_force + F0;
        return r;
    };

    std::vector<std::int64_t> grid;
    if (n_max <= 2000 || opts.table_points < 2) {
        for (std::int64_t n = 1; n <= n_max; ++n) grid.push_back(n);
    } else {
        const real top = std::log(static_cast<real>(n_max));
        const auto K = opts.table_points;
        for (std::size_t i = 0; i < K; ++i) {
            auto n = static_cast<std::int64_t>(std::llround(std::exp(top * static_cast<real>(i) / static_cast<real>(K - 1))));
            n = std::clamp<std::int64_t>(n, 1, n_max);
            if (grid.empty() || n > grid.back()) grid.push_back(n);
        }
        if (grid.back() != n_max) grid.push_back(n_max);
    }

    CriticalScan out;
    out.pws_warning = pws_warning(n_max, cavity, atom);
    CriticalRow prev{0, 0, 0, F0};
    for (auto n : grid) {
        auto r = row_at(n);
        out.table.push_back(r);
        if (!out.found && (r.total_force >= 0) != (prev.total_force >= 0)) {
            CriticalRow lo = prev, hi = r;
            while (hi.n - lo.n > 1) {
                auto mid = row_at(lo.n + (hi.n - lo.n) / 2);
                ((mid.total_force >= 0) == (lo.total_force >= 0) ? lo : hi) = mid;
            }
            out.found = true;
            out.n_below = lo.n;
            out.n_above = hi.n;
            out.n_star = static_cast<real>(lo.n) + lo.total_force / (lo.total_force - hi.total_force);
            out.pws_warning = pws_warning(hi.n, cavity, atom);
        }
        prev = r;
    }
    return out;
}

CriticalScan critical_atom_number(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                                  const SeriesControl& ctl, Constraint constraint, std::int64_t n_max,
                                  const CriticalOptions& opts) {
    if (n_max < 1) fail(ErrorKind::InvalidArgument, "n_max must be at least 1");
    auto scan = critical_scan(cavity, atom, model, ctl, constraint, n_max, opts);
    if (!scan.found) fail(ErrorKind::NoCrossing, "no sign change of the total wall force up to n_max");
    return scan;
}

}  // namespace casimir
