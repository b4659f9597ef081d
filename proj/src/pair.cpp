#include <algorithm>
#include <cmath>
#include <map>

#include "medium.hpp"

namespace casimir {

namespace {

constexpr std::int64_t first_inner = 256;
constexpr std::int64_t max_inner = 16384;

// sin(π j r) with exact zeros at the walls
real half_sine(real r, std::int64_t j) { return unit_turn(turns(r / 2, j)).imag(); }

struct Kernel {
    real k1, k2, k3;
};

// The double series is Σ_j Σ_l of
//   k1(j,l)·s_ja s_jb s_la s_lb + s_ja²(k2 s_la² + k3 s_lb²) + s_jb²(k3 s_la² + k2 s_lb²),
// with λ⁴ taken out.
class PairSeries {
public:
    PairSeries(real L, real Omega, real ra, real rb, bool force)
        : L_(L), W_(L * Omega), Omega_(Omega), ra_(ra), rb_(rb), force_(force) {}

    struct Outer {
        real value, error;
        std::int64_t modes, inner;
    };

    Kernel kernel(real t, real l) const {
        const real p = pi, W = W_;
        if (!force_) {
            real d = p * t + W;
            real pre = -L_ * L_ / (p * p * p * t * l * Omega_ * (t + l) * d * d * (p * l + W));
            real A = 2 * p * W * (t + 2 * l) + p * p * t * (t + l) + 2 * W * W;
            real B = p * t + 3 * p * l + 2 * W;
            real C = 2 * p * (t + l);
            return {pre * 2 * A, pre * W * B, pre * W * C};
        }
        real d = p * t + W, e = p * l + W;
        real pre = L_ / (p * p * p * t * l * Omega_ * (t + l) * d * d * d * e * e);
        real p2 = p * p, p3 = p2 * p, W2 = W * W, W3 = W2 * W;
        real P = p2 * W * (2 * t * t + 15 * t * l + 3 * l * l) + 2 * p * W2 * (3 * t + 2 * l) +
                 3 * p3 * t * l * (t + 3 * l) + 2 * W3;
        real Q = 2 * p2 * (t + l) * (W * (2 * t + l) + 3 * p * t * l);
        real R = p2 * W2 * (3 * t * t + 17 * t * l + 4 * l * l) + 2 * p2 * p2 * t * t * l * (t + l) +
                 2 * p * W3 * (3 * t + 2 * l) + p3 * t * W * (t + 3 * l) * (t + 4 * l) + 2 * W2 * W2;
        return {pre * 2 * R, pre * W * P, pre * W * Q};
    }

    struct Inner {
        real g1 = 0, g2 = 0, g3 = 0, err = 0;
    };

    void set_inner(std::int64_t n) {
        n_inner_ = n;
        sab_.assign(n + 1, 0);
        saa_.assign(n + 1, 0);
        sbb_.assign(n + 1, 0);
        for (std::int64_t l = 1; l <= n; ++l) {
            real a = half_sine(ra_, l), b = half_sine(rb_, l);
            sab_[l] = a * b;
            saa_[l] = a * a;
            sbb_[l] = b * b;
        }
        cache_.clear();
    }

    Inner inner(real t) const {
        auto hit = cache_.find(t);
        if (hit != cache_.end()) return hit->second;
        CompensatedSum s1, s2, s3;
        for (std::int64_t l = 1; l <= n_inner_; ++l) {
            Kernel k = kernel(t, static_cast<real>(l));
            s1.add(k.k1 * sab_[l]);
            s2.add(k.k2 * saa_[l] + k.k3 * sbb_[l]);
            s3.add(k.k3 * saa_[l] + k.k2 * sbb_[l]);
        }
        auto env = [this, t](int which) {
            return [this, t, which](real l) {
                Kernel k = kernel(t, l);
                return which == 1 ? k.k1 : which == 2 ? k.k2 : k.k3;
            };
        };
        auto sq = [](real r) { return std::vector<Oscillation>{{r, cplx(-0.5L, 0)}}; };
        Channel c1{env(1), 0, {{(ra_ - rb_) / 2, cplx(0.5L, 0)}, {(ra_ + rb_) / 2, cplx(-0.5L, 0)}}};
        Channel c2a{env(2), 0.5L, sq(ra_)}, c3b{env(3), 0.5L, sq(rb_)};
        Channel c3a{env(3), 0.5L, sq(ra_)}, c2b{env(2), 0.5L, sq(rb_)};
        auto tail = [this](Channel ch) {
            normalize_channel(ch);
            return channel_tail(ch, n_inner_, TailPolicy::averaged_tail);
        };
        auto t1 = tail(c1), t2a = tail(c2a), t3b = tail(c3b), t3a = tail(c3a), t2b = tail(c2b);
        Inner out;
        out.g1 = s1.value() + t1.value;
        out.g2 = s2.value() + t2a.value + t3b.value;
        out.g3 = s3.value() + t3a.value + t2b.value;
        out.err = t1.bound + t2a.bound + t3b.bound + t3a.bound + t2b.bound + s1.rounding() + s2.rounding() +
                  s3.rounding();
        cache_.emplace(t, out);
        return out;
    }

    Outer outer(real rel_tol, real abs_tol, std::int64_t max_modes, std::int64_t fixed_modes) const {
        CompensatedSum head;
        real head_err = 0;
        std::int64_t done = 0;
        std::int64_t N = fixed_modes > 0 ? fixed_modes : std::min<std::int64_t>(32, max_modes);
        while (true) {
            for (std::int64_t j = done + 1; j <= N; ++j) {
                Inner g = inner(static_cast<real>(j));
                real a = half_sine(ra_, j), b = half_sine(rb_, j);
                head.add(g.g1 * a * b + g.g2 * a * a + g.g3 * b * b);
                head_err += g.err;
            }
            done = N;
            auto env = [this](int which) {
                return [this, which](real t) {
                    Inner g = inner(t);
                    return which == 1 ? g.g1 : which == 2 ? g.g2 : g.g3;
                };
            };
            Channel c1{env(1), 0, {{(ra_ - rb_) / 2, cplx(0.5L, 0)}, {(ra_ + rb_) / 2, cplx(-0.5L, 0)}}};
            Channel c2{env(2), 0.5L, {{ra_, cplx(-0.5L, 0)}}};
            Channel c3{env(3), 0.5L, {{rb_, cplx(-0.5L, 0)}}};
            CompensatedSum tail;
            real bound = 0;
            for (Channel* ch : {&c1, &c2, &c3}) {
                normalize_channel(*ch);
                auto t = channel_tail(*ch, N, TailPolicy::averaged_tail);
                tail.add(t.value);
                bound += t.bound;
            }
            // inner errors beyond the head decay at least as fast as t⁻²
            real inner_tail = inner(static_cast<real>(N)).err * static_cast<real>(N);
            real value = head.value() + tail.value();
            real error = bound + head_err + inner_tail + head.rounding() + tail.rounding();
            if (!std::isfinite(value)) fail(ErrorKind::NoConvergence, "pair series is not finite");
            real tol = std::max(abs_tol, rel_tol * std::fabs(value));
            if (fixed_modes > 0 || error <= tol || N >= max_modes) return {value, error, N, n_inner_};
            // more outer modes cannot help once the inner truncation dominates
            if (head_err + inner_tail > tol / 2) return {value, error, N, n_inner_};
            N = std::min(2 * N, max_modes);
        }
    }

private:
    real L_, W_, Omega_, ra_, rb_;
    bool force_;
    std::int64_t n_inner_ = 0;
    std::vector<real> sab_, saa_, sbb_;
    mutable std::map<real, Inner> cache_;
};

void check_pair(const CavitySpec& cavity, const AtomSpec& atom, const PairSpec& pair) {
    if (cavity.boundary != Boundary::Dirichlet)
        fail(ErrorKind::DomainError, "pair terms are available for a Dirichlet cavity only");
    AtomSpec a = atom, b = atom;
    a.position_x = pair.x_a;
    b.position_x = pair.x_b;
    validate(cavity, a);
    validate(cavity, b);
}

struct PairRun {
    real value, error;
    std::int64_t outer, inner;
};

PairRun run_pair(const CavitySpec& cavity, const AtomSpec& atom, const PairSpec& pair, const SeriesControl& ctl,
                 bool force, std::int64_t fixed_outer = 0, std::int64_t fixed_inner = 0) {
    validate(ctl);
    const real L = cavity.length_L;
    const real lam4 = std::pow(atom.coupling_lambda, 4);
    PairSeries s(L, atom.gap_Omega, pair.x_a / L, pair.x_b / L, force);
    if (lam4 == 0 || ((pair.x_a == 0 || pair.x_a == L) && (pair.x_b == 0 || pair.x_b == L))) return {0, 0, 0, 0};
    // tolerances on the λ⁴-free series
    real abs_tol = ctl.abs_tol > 0 ? ctl.abs_tol / lam4 : 1e-14L;
    std::int64_t n_in = fixed_inner > 0 ? fixed_inner : first_inner;
    while (true) {
        s.set_inner(n_in);
        auto o = s.outer(ctl.rel_tol, abs_tol, ctl.max_modes, fixed_outer);
        bool ok = o.error <= std::max(abs_tol, ctl.rel_tol * std::fabs(o.value));
        if (fixed_inner > 0 || fixed_outer > 0 || ok) return {o.value * lam4, o.error * lam4, o.modes, n_in};
        if (n_in >= max_inner)
            fail(ErrorKind::NoConvergence, "pair series did not reach tolerance");
        n_in *= 2;
    }
}

}  // namespace

EnergyResult pair_energy_4th(const CavitySpec& cavity, const AtomSpec& atom, const PairSpec& pair,
                             const SeriesControl& ctl) {
    check_pair(cavity, atom, pair);
    auto r = run_pair(cavity, atom, pair, ctl, false);
    return {r.value, r.error, r.outer, EvalPath::series};
}

ForceResult pair_wall_force_fixed_ratio(const CavitySpec& cavity, const AtomSpec& atom, const PairSpec& pair,
                                        const SeriesControl& ctl) {
    check_pair(cavity, atom, pair);
    auto r = run_pair(cavity, atom, pair, ctl, true);
    ForceResult f;
    f.value = r.value;
    f.error_bound = r.error;
    f.constraint = Constraint::fixed_ratio;
    f.modes_used = r.outer;
    return f;
}

ForceResult pair_force_finite_difference(const CavitySpec& cavity, const AtomSpec& atom, const PairSpec& pair,
                                         const SeriesControl& ctl, Constraint constraint) {
    check_pair(cavity, atom, pair);
    if (constraint == Constraint::atom_position)
        fail(ErrorKind::InvalidArgument, "pair forces are wall forces: use fixed_ratio or fixed_position");
    const real L = cavity.length_L, h = 1e-4L * L;
    if (constraint == Constraint::fixed_position && std::max(pair.x_a, pair.x_b) > L - 4 * h)
        fail(ErrorKind::DomainError, "finite difference at fixed position needs both atoms below L - 4h");
    SeriesControl tight = ctl;
    tight.rel_tol = std::min(ctl.rel_tol, 1e-12L);
    auto centre = run_pair(cavity, atom, pair, tight, false);
    auto E = [&](real d) {
        CavitySpec cv = cavity;
        cv.length_L = L + d;
        PairSpec p = pair;
        if (constraint == Constraint::fixed_ratio) p = {pair.x_a / L * (L + d), pair.x_b / L * (L + d)};
        return run_pair(cv, atom, p, tight, false, centre.outer, centre.inner).value;
    };
    real e1p = E(h), e1m = E(-h), e2p = E(2 * h), e2m = E(-2 * h), e4p = E(4 * h), e4m = E(-4 * h);
    real d1 = (-e2p + 8 * e1p - 8 * e1m + e2m) / (12 * h);
    real d2 = (-e4p + 8 * e2p - 8 * e2m + e4m) / (24 * h);
    ForceResult f;
    f.value = -(d1 + (d1 - d2) / 15);
    f.error_bound = std::fabs(d1 - d2) / 15 + 64 * eps * (std::fabs(centre.value) + centre.error) / h;
    f.constraint = constraint;
    f.method = ForceMethod::fd;
    f.modes_used = centre.outer;
    return f;
}

}  // namespace casimir
