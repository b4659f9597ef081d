#include "series.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

namespace casimir {

namespace {

// beyond this head size the integral bound stops paying for itself
constexpr std::int64_t integral_bound_limit = 65536;

using TailEstimate = TailResult;

}  // namespace

void normalize_channel(Channel& ch) {
    std::vector<Oscillation> kept;
    for (auto o : ch.osc) {
        if (o.w == real(0)) continue;
        o.nu -= std::floor(o.nu);
        if (o.nu == 0)
            ch.mean += o.w.real();
        else
            kept.push_back(o);
    }
    ch.osc = std::move(kept);
}

namespace {

bool absolutely_summable(const Channel& ch) {
    const real t = 1e6L;
    real r1 = std::fabs(ch.envelope(t));
    if (r1 == 0) return true;
    return std::fabs(ch.envelope(2 * t)) / r1 < 0.4L;
}

real term(const Channel& ch, std::int64_t j) {
    real weight = ch.mean;
    for (const auto& o : ch.osc) weight += (o.w * unit_turn(turns(o.nu, j))).real();
    if (weight == 0) return 0;
    return ch.envelope(static_cast<real>(j)) * weight;
}

TailEstimate mean_tail(const Channel& ch, std::int64_t N) {
    if (ch.mean == 0) return {};
    const auto& R = ch.envelope;
    real a = static_cast<real>(N) + 0.5L;
    real qerr = 0;
    real integral = integrate_to_infinity(R, a, &qerr);
    real fm15 = R(a - 1.5L), fm05 = R(a - 0.5L), fp05 = R(a + 0.5L), fp15 = R(a + 1.5L);
    real d1 = (-fp15 + 27 * fp05 - 27 * fm05 + fm15) / 24;
    real d3 = fp15 - 3 * fp05 + 3 * fm05 - fm15;
    real sum = integral + d1 / 24 - 7 * d3 / 5760;
    real bound = qerr + std::fabs(d3) * 7 / 5760 + 8 * eps * (std::fabs(integral) + std::fabs(d1));
    return {ch.mean * sum, std::fabs(ch.mean) * bound};
}

TailEstimate abel_tail(const Channel& ch, const Oscillation& o, std::int64_t N, int K) {
    cplx z = unit_turn(o.nu);
    cplx one_minus = real(1) - z;
    std::vector<real> row(K + 1);
    real rmax = 0;
    for (int i = 0; i <= K; ++i) {
        row[i] = ch.envelope(static_cast<real>(N + 1 + i));
        rmax = std::max(rmax, std::fabs(row[i]));
    }
    std::vector<real> diffs(K + 1);
    for (int k = 0; k <= K; ++k) {
        diffs[k] = row[0];
        for (int i = 0; i < K - k; ++i) row[i] = row[i + 1] - row[i];
    }
    cplx acc = 0, zk = 1, denom = one_minus;
    real round = 0;
    for (int k = 0; k < K; ++k) {
        acc += zk * diffs[k] / denom;
        round += std::ldexp(eps, k + 1) * rmax / std::abs(denom);
        zk *= z;
        denom *= one_minus;
    }
    cplx lead = o.w * unit_turn(turns(o.nu, N + 1));
    real value = (lead * acc).real();
    real ratio = std::abs(z / one_minus);
    real remainder = std::pow(ratio, K) * std::fabs(diffs[K]) * 2 / std::abs(one_minus);
    return {value, std::abs(o.w) * (remainder + round + 4 * eps * std::abs(acc))};
}

TailEstimate bound_tail(const Channel& ch, std::int64_t N) {
    real weight = std::fabs(ch.mean);
    for (const auto& o : ch.osc) weight += std::abs(o.w);
    if (weight == 0) return {};
    real qerr = 0;
    const auto& R = ch.envelope;
    real integral = integrate_to_infinity([&R](real t) { return std::fabs(R(t)); }, static_cast<real>(N), &qerr);
    return {0, weight * (integral + qerr)};
}

}  // namespace

TailResult channel_tail(const Channel& ch, std::int64_t N, TailPolicy policy, int abel_order) {
    if (policy == TailPolicy::integral_bound) return bound_tail(ch, N);
    TailResult out = mean_tail(ch, N);
    for (const auto& o : ch.osc) {
        auto t = abel_tail(ch, o, N, abel_order);
        out.value += t.value;
        out.bound += t.bound;
    }
    return out;
}

real integrate_to_infinity(const std::function<real(real)>& f, real a, real* error) {
    using boost::math::quadrature::gauss_kronrod;
    real err = 0;
    real l1 = 0;
    real v;
    if (a > 0) {
        // t = a·e^u: power-law envelopes become exponentially decaying and
        // features at any scale t ≫ a stay a few units wide in u
        auto g = [&f, a](real u) {
            if (u > 690) return real(0);  // t > 1e300·a
            real t = a * std::exp(u);
            return f(t) * t;
        };
        v = gauss_kronrod<real, 31>::integrate(g, 0, std::numeric_limits<real>::infinity(), 15, 1e-15L, &err, &l1);
    } else {
        v = gauss_kronrod<real, 31>::integrate(f, a, std::numeric_limits<real>::infinity(), 15, 1e-15L, &err, &l1);
    }
    if (!std::isfinite(v)) fail(ErrorKind::NoConvergence, "tail integral is not finite");
    if (error) *error = err + 16 * eps * l1;
    return v;
}

SumResult sum_modes(std::vector<Channel> channels, const SumControl& ctl) {
    if (!(ctl.rel_tol > 0) || !(ctl.abs_tol > 0)) fail(ErrorKind::InvalidArgument, "tolerances must be positive");
    if (ctl.max_modes < 1) fail(ErrorKind::InvalidArgument, "max_modes must be at least 1");
    for (auto& ch : channels) normalize_channel(ch);
    // periodic weights are tabulated once per residue
    std::vector<std::vector<real>> tables(channels.size());
    for (std::size_t c = 0; c < channels.size(); ++c) {
        const auto& ch = channels[c];
        const std::int64_t P = ch.period;
        if (P <= 0 || ch.osc.empty()) continue;
        auto& tab = tables[c];
        tab.assign(P, ch.mean);
        for (const auto& o : ch.osc) {
            std::int64_t k = std::llround(o.nu * static_cast<real>(P));
            for (std::int64_t r = 0; r < P; ++r)
                tab[r] += (o.w * unit_turn(static_cast<real>((k * r) % P) / static_cast<real>(P))).real();
        }
    }

    std::vector<bool> averaged(channels.size());
    TailPolicy effective = ctl.policy;
    for (std::size_t c = 0; c < channels.size(); ++c) {
        averaged[c] = ctl.policy == TailPolicy::averaged_tail || !absolutely_summable(channels[c]);
        if (averaged[c]) effective = TailPolicy::averaged_tail;
    }

    CompensatedSum head;
    std::int64_t done = 0;
    std::int64_t N = ctl.fixed_modes > 0 ? ctl.fixed_modes : std::min(ctl.first_modes, ctl.max_modes);
    while (true) {
        for (std::int64_t j = done + 1; j <= N; ++j) {
            real t = 0;
            for (std::size_t c = 0; c < channels.size(); ++c) {
                const auto& tab = tables[c];
                if (tab.empty()) {
                    t += term(channels[c], j);
                } else {
                    real w = tab[j % static_cast<std::int64_t>(tab.size())];
                    if (w != 0) t += channels[c].envelope(static_cast<real>(j)) * w;
                }
            }
            head.add(t);
        }
        done = N;

        CompensatedSum tail;
        real bound = 0;
        for (std::size_t c = 0; c < channels.size(); ++c) {
            const auto& ch = channels[c];
            if (averaged[c] || N > integral_bound_limit) {
                effective = TailPolicy::averaged_tail;
                auto m = mean_tail(ch, N);
                tail.add(m.value);
                bound += m.bound;
                for (const auto& o : ch.osc) {
                    auto t = abel_tail(ch, o, N, ctl.abel_order);
                    tail.add(t.value);
                    bound += t.bound;
                }
            } else {
                bound += bound_tail(ch, N).bound;
            }
        }
        real value = head.value() + tail.value();
        real error = bound + head.rounding() + tail.rounding();
        if (!std::isfinite(value)) fail(ErrorKind::NoConvergence, "mode sum is not finite");
        if (ctl.fixed_modes > 0) return {value, error, N, effective};
        if (error <= std::max(ctl.abs_tol, ctl.rel_tol * std::fabs(value))) return {value, error, N, effective};
        if (N >= ctl.max_modes)
            fail(ErrorKind::NoConvergence, "mode sum did not reach tolerance within max_modes");
        N = std::min(2 * N, ctl.max_modes);
    }
}

}  // namespace casimir
