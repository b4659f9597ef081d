#include "specfun.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace casimir {

namespace {

// B_2 .. B_30
constexpr std::array<real, 15> bernoulli2k = {
    1.0L / 6,          -1.0L / 30,           1.0L / 42,         -1.0L / 30,
    5.0L / 66,         -691.0L / 2730,       7.0L / 6,          -3617.0L / 510,
    43867.0L / 798,    -174611.0L / 330,     854513.0L / 138,   -236364091.0L / 2730,
    8553103.0L / 6,    -23749461029.0L / 870, 8615841276005.0L / 14322,
};

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_finite(cplx z, const char* what) {
    if (!finite(z)) fail(ErrorKind::InvalidArgument, std::string(what) + " is not finite");
}

bool is_pole(cplx a) { return a.imag() == 0 && is_nonpositive_integer(a.real()); }

real factorial(int n) {
    real f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

cplx inv_pow(cplx base, real s) {
    if (s == 1) return real(1) / base;
    if (s == 2) return real(1) / (base * base);
    return std::pow(base, -s);
}

// Coefficients g_n of Σ g_n z^n
class Coefficients {
public:
    virtual ~Coefficients() = default;
    virtual cplx at(std::int64_t n) = 0;
    // sup over m ≥ n of |g_{m+1}/g_m|, or infinity when unknown
    virtual real ratio_bound(std::int64_t n) const = 0;
    virtual bool has_exact_diff() const { return false; }
    virtual cplx exact_diff(std::int64_t, int) const { return 0; }
    virtual std::int64_t monotone_from() const { return 0; }
};

class LerchCoefficients final : public Coefficients {
public:
    LerchCoefficients(real s, cplx a) : s_(s), a_(a) {}
    cplx at(std::int64_t n) override { return inv_pow(real(n) + a_, s_); }
    real ratio_bound(std::int64_t n) const override {
        if (real(n) + a_.real() <= 0) return std::numeric_limits<real>::infinity();
        if (s_ >= 0) return 1;
        return std::pow(1 + 1 / std::abs(real(n) + a_), -s_);
    }
    bool has_exact_diff() const override { return s_ == 1 || s_ == 2; }
    cplx exact_diff(std::int64_t n, int k) const override {
        cplx prod = 1;
        cplx harm = 0;
        for (int i = 0; i <= k; ++i) {
            cplx d = real(n + i) + a_;
            prod /= d;
            harm += real(1) / d;
        }
        real sign = (k % 2) ? -1 : 1;
        cplx v = sign * factorial(k) * prod;
        return s_ == 1 ? v : v * harm;
    }
    std::int64_t monotone_from() const override {
        return std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(-a_.real())) + 1);
    }

private:
    real s_;
    cplx a_;
};

class HyperCoefficients final : public Coefficients {
public:
    HyperCoefficients(cplx a, cplx b, cplx c) : a_(a), b_(b), c_(c) { cache_.push_back(1); }
    cplx at(std::int64_t n) override {
        while (static_cast<std::int64_t>(cache_.size()) <= n) {
            real m = static_cast<real>(cache_.size() - 1);
            cache_.push_back(cache_.back() * (a_ + m) * (b_ + m) / ((c_ + m) * (m + 1)));
        }
        return cache_[static_cast<std::size_t>(n)];
    }
    real ratio_bound(std::int64_t n) const override {
        real m = static_cast<real>(n);
        if (m + c_.real() <= 0) return std::numeric_limits<real>::infinity();
        return (1 + std::abs(a_ - real(1)) / (m + 1)) * (1 + std::abs(b_ - c_) / std::abs(c_ + m));
    }
    std::int64_t monotone_from() const override {
        real lead = std::max({-a_.real(), -b_.real(), -c_.real(), real(0)});
        return static_cast<std::int64_t>(std::ceil(lead)) + 1;
    }

private:
    cplx a_, b_, c_;
    std::vector<cplx> cache_;
};

// Levin u transform of a partial-sum sequence
class LevinU {
public:
    explicit LevinU(int capacity) : numer_(capacity), denom_(capacity) {}
    int size() const { return n_; }
    cplx next(cplx sum, cplx omega) {
        const real beta = 1;
        real term = 1 / (beta + n_);
        denom_[n_] = term / omega;
        numer_[n_] = sum * denom_[n_];
        if (n_ > 0) {
            real ratio = (beta + n_ - 1) * term;
            for (int j = 1; j <= n_; ++j) {
                real fact = (n_ - j + beta) * term;
                numer_[n_ - j] = numer_[n_ - j + 1] - fact * numer_[n_ - j];
                denom_[n_ - j] = denom_[n_ - j + 1] - fact * denom_[n_ - j];
                term *= ratio;
            }
        }
        ++n_;
        if (std::abs(denom_[0]) > std::numeric_limits<real>::min() * 1e10L) last_ = numer_[0] / denom_[0];
        return last_;
    }

private:
    std::vector<cplx> numer_, denom_;
    int n_ = 0;
    cplx last_ = 0;
};

constexpr int levin_max_order = 48;

Estimate direct_sum(Coefficients& g, cplx z, const SeriesAccuracy& acc, bool unit_abel) {
    CompensatedComplexSum sum;
    real az = std::abs(z);
    cplx zn = 1;
    real abs_terms = 0;
    for (std::int64_t n = 0; n < acc.max_terms; ++n) {
        cplx t = g.at(n) * zn;
        sum.add(t);
        abs_terms += static_cast<real>(n + 1) * std::abs(t);
        real round = sum.rounding() + 2 * eps * abs_terms;
        real bound = std::numeric_limits<real>::infinity();
        real q = az * g.ratio_bound(n);
        if (q < 1)
            bound = std::abs(t) * q / (1 - q);
        else if (unit_abel && n + 1 >= g.monotone_from())
            bound = 4 * std::abs(g.at(n + 1)) / std::abs(real(1) - z);
        if (bound + round <= acc.abs_tol) return {sum.value(), bound + round, n + 1};
        zn *= z;
    }
    fail(ErrorKind::NoConvergence, "series did not reach tolerance within max_terms");
}

std::pair<cplx, bool> levin_sum(Coefficients& g, cplx z, const SeriesAccuracy& acc, real& err, std::int64_t& used) {
    LevinU levin(levin_max_order + 1);
    cplx partial = 0, zn = 1;
    cplx prev = 0, prev2 = 0;
    real best_err = std::numeric_limits<real>::infinity();
    cplx best = 0;
    int limit = static_cast<int>(std::min<std::int64_t>(levin_max_order, acc.max_terms));
    for (int n = 0; n < limit; ++n) {
        cplx t = g.at(n) * zn;
        if (t == real(0)) return {0, false};
        partial += t;
        cplx val = levin.next(partial, (real(1) + n) * t);
        if (n >= 3) {
            real d1 = std::abs(val - prev), d2 = std::abs(prev - prev2);
            real e = 8 * std::max(d1, d2) + 64 * eps * (n + 1) * std::abs(val);
            if (e < best_err) {
                best_err = e;
                best = val;
                used = n + 1;
            }
            if (e <= acc.abs_tol) break;
        }
        prev2 = prev;
        prev = val;
        zn *= z;
    }
    err = best_err;
    return {best, best_err <= acc.abs_tol && finite(best)};
}

// Σ_{n≥N} g_n z^n ≈ z^N Σ_{k<K} z^k Δ^k g_N / (1-z)^{k+1}
Estimate euler_sum(Coefficients& g, cplx z, const SeriesAccuracy& acc) {
    const bool exact = g.has_exact_diff();
    const int K = exact ? 10 : 8;
    cplx one_minus = real(1) - z;
    real r = std::abs(z / one_minus);
    real abel = 2 / std::abs(one_minus);

    CompensatedComplexSum head;
    real abs_terms = 0;
    cplx zn = 1;
    std::int64_t n = 0;
    std::int64_t N = std::max<std::int64_t>(32, 2 * g.monotone_from());
    while (true) {
        if (N + K > acc.max_terms) break;
        for (; n < N; ++n) {
            cplx t = g.at(n) * zn;
            head.add(t);
            abs_terms += static_cast<real>(n + 1) * std::abs(t);
            zn *= z;
        }
        std::vector<cplx> diffs(K + 1);
        std::vector<real> gabs(K + 1);
        for (int i = 0; i <= K; ++i) gabs[i] = std::abs(g.at(N + i));
        if (exact) {
            for (int k = 0; k <= K; ++k) diffs[k] = g.exact_diff(N, k);
        } else {
            std::vector<cplx> row(K + 1);
            for (int i = 0; i <= K; ++i) row[i] = g.at(N + i);
            for (int k = 0; k <= K; ++k) {
                diffs[k] = row[0];
                for (int i = 0; i + 1 < static_cast<int>(row.size()) - k; ++i) row[i] = row[i + 1] - row[i];
            }
        }
        cplx tail = 0, zk = 1, denom = one_minus;
        real diff_round = 0;
        real gmax = *std::max_element(gabs.begin(), gabs.end());
        for (int k = 0; k < K; ++k) {
            tail += zk * diffs[k] / denom;
            if (!exact) diff_round += std::ldexp(eps, k + 1) * gmax / std::abs(denom);
            zk *= z;
            denom *= one_minus;
        }
        tail *= zn;
        real remainder = std::pow(r, K) * std::abs(diffs[K]) * abel * 2 * std::abs(zn);
        real round = head.rounding() + 2 * eps * abs_terms + diff_round * std::abs(zn) +
                     4 * eps * std::abs(tail);
        real err = remainder + round;
        if (err <= acc.abs_tol) return {head.value() + tail, err, N + K};
        N *= 2;
    }
    fail(ErrorKind::NoConvergence, "series did not reach tolerance within max_terms");
}

Estimate power_sum(Coefficients& g, cplx z, const SeriesAccuracy& acc) {
    real az = std::abs(z);
    if (az <= 0.5L) return direct_sum(g, z, acc, false);
    switch (acc.accelerator) {
        case Accelerator::none:
            return direct_sum(g, z, acc, true);
        case Accelerator::euler:
            return euler_sum(g, z, acc);
        case Accelerator::levin_u: {
            real err = 0;
            std::int64_t used = 0;
            auto [v, ok] = levin_sum(g, z, acc, err, used);
            if (ok) return {v, err, used};
            return euler_sum(g, z, acc);
        }
    }
    fail(ErrorKind::InvalidArgument, "unknown accelerator");
}

bool near_one(cplx z) { return std::abs(z - real(1)) <= 16 * eps; }

}  // namespace

void validate(const SeriesAccuracy& acc) {
    if (!(acc.abs_tol > 0)) fail(ErrorKind::InvalidArgument, "abs_tol must be positive");
    if (acc.max_terms < 1) fail(ErrorKind::InvalidArgument, "max_terms must be at least 1");
}

cplx pochhammer(cplx p, std::int64_t n) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "pochhammer order must be non-negative");
    cplx r = 1;
    for (std::int64_t k = 0; k < n; ++k) r *= p + real(k);
    return r;
}

cplx polygamma(int n, cplx x) {
    if (n < 0) fail(ErrorKind::InvalidArgument, "polygamma order must be non-negative");
    require_finite(x, "polygamma argument");
    if (is_pole(x)) fail(ErrorKind::PoleOnPath, "polygamma at a non-positive integer");
    if (x.real() < -1e6L) fail(ErrorKind::DomainError, "polygamma argument outside operating range");

    const real threshold = 20 + 2 * n;
    const real nfact = factorial(n);
    const real sign = (n % 2) ? -1 : 1;
    CompensatedComplexSum shift;
    while (x.real() < 1 || std::abs(x) < threshold) {
        shift.add(-sign * nfact * inv_pow(x, n + 1));
        x += real(1);
    }
    cplx inv = real(1) / x;
    cplx inv2 = inv * inv;
    cplx asym;
    if (n == 0) {
        asym = std::log(x) - inv / real(2);
        cplx p = inv2;
        for (std::size_t k = 1; k <= 12; ++k) {
            asym -= bernoulli2k[k - 1] / real(2 * k) * p;
            p *= inv2;
        }
    } else {
        cplx xn = std::pow(inv, n);
        asym = factorial(n - 1) * xn + nfact / real(2) * xn * inv;
        cplx p = xn * inv2;
        for (std::size_t k = 1; k <= 12; ++k) {
            int m = static_cast<int>(2 * k);
            real coef = bernoulli2k[k - 1] * factorial(m + n - 1) / factorial(m);
            asym += coef * p;
            p *= inv2;
        }
        asym *= -sign;
    }
    return asym + shift.value();
}

cplx log_gamma(cplx x) {
    require_finite(x, "log_gamma argument");
    if (is_pole(x)) fail(ErrorKind::PoleOnPath, "gamma at a non-positive integer");
    cplx shift = 0;
    while (x.real() < 1 || std::abs(x) < 20) {
        shift -= std::log(x);
        x += real(1);
    }
    cplx inv = real(1) / x, inv2 = inv * inv;
    cplx s = (x - real(0.5)) * std::log(x) - x + std::log(2 * pi) / real(2);
    cplx p = inv;
    for (std::size_t k = 1; k <= 12; ++k) {
        s += bernoulli2k[k - 1] / real(2 * k * (2 * k - 1)) * p;
        p *= inv2;
    }
    return s + shift;
}

cplx hurwitz_zeta(real s, cplx a) {
    if (!(s > 1)) fail(ErrorKind::DomainError, "Hurwitz zeta requires s > 1");
    require_finite(a, "Hurwitz zeta offset");
    if (is_pole(a)) fail(ErrorKind::PoleOnPath, "Hurwitz zeta offset hits a non-positive integer");
    CompensatedComplexSum head;
    std::int64_t N = 0;
    while ((real(N) + a).real() < 1 || std::abs(real(N) + a) < 30) {
        head.add(inv_pow(real(N) + a, s));
        ++N;
    }
    cplx w = real(N) + a;
    cplx ws = inv_pow(w, s);
    cplx tail = w * ws / (s - 1) + ws / real(2);
    cplx inv2 = real(1) / (w * w);
    cplx p = ws / w;
    real poch = s;  // (s)_{2k-1}
    for (std::size_t k = 1; k <= 12; ++k) {
        tail += bernoulli2k[k - 1] / factorial(static_cast<int>(2 * k)) * poch * p;
        poch *= (s + 2 * k - 1) * (s + 2 * k);
        p *= inv2;
    }
    return head.value() + tail;
}

real gen_harmonic(real x) {
    if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "gen_harmonic argument is not finite");
    if (x <= -1 && std::floor(x) == x) fail(ErrorKind::PoleOnPath, "gen_harmonic at a negative integer");
    if (x <= -1) fail(ErrorKind::DomainError, "gen_harmonic requires x > -1");
    if (x == 0) return 0;
    return polygamma(0, cplx(x + 1, 0)).real() + euler_gamma;
}

Estimate lerch_phi(cplx z, real s, cplx a, const SeriesAccuracy& acc) {
    validate(acc);
    require_finite(z, "Lerch argument z");
    require_finite(a, "Lerch offset a");
    if (!std::isfinite(s)) fail(ErrorKind::InvalidArgument, "Lerch order s is not finite");
    if (is_pole(a)) fail(ErrorKind::PoleOnPath, "Lerch offset a hits a non-positive integer");
    real az = std::abs(z);
    if (az > 1 + 8 * eps) fail(ErrorKind::DomainError, "Lerch transcendent requires |z| <= 1");
    if (z == real(0)) {
        cplx v = inv_pow(a, s);
        return {v, 2 * eps * std::abs(v), 1};
    }
    if (near_one(z)) {
        if (s <= 1) fail(ErrorKind::DomainError, "Lerch transcendent diverges at z = 1 for s <= 1");
        cplx v = hurwitz_zeta(s, a);
        return {v, 64 * eps * std::abs(v), 0};
    }
    LerchCoefficients g(s, a);
    return power_sum(g, z, acc);
}

Estimate gauss_2f1(cplx a, cplx b, cplx c, cplx z, const SeriesAccuracy& acc) {
    validate(acc);
    require_finite(a, "2F1 parameter a");
    require_finite(b, "2F1 parameter b");
    require_finite(c, "2F1 parameter c");
    require_finite(z, "2F1 argument z");
    if (is_pole(c)) fail(ErrorKind::DomainError, "2F1 parameter c is a non-positive integer");
    if (std::abs(z) > 1 + 8 * eps) fail(ErrorKind::DomainError, "2F1 series requires |z| <= 1");

    for (cplx p : {a, b}) {
        if (is_pole(p)) {
            // terminating polynomial
            std::int64_t m = static_cast<std::int64_t>(-p.real());
            CompensatedComplexSum sum;
            cplx t = 1;
            for (std::int64_t n = 0; n <= m; ++n) {
                sum.add(t);
                t *= (a + real(n)) * (b + real(n)) / ((c + real(n)) * real(n + 1)) * z;
            }
            return {sum.value(), sum.rounding() * (m + 1), m + 1};
        }
    }
    if (z == real(0)) return {1, 0, 1};
    if (near_one(z)) {
        if (!((c - a - b).real() > 0)) fail(ErrorKind::DomainError, "2F1 at z = 1 requires Re(c-a-b) > 0");
        cplx v = std::exp(log_gamma(c) + log_gamma(c - a - b) - log_gamma(c - a) - log_gamma(c - b));
        return {v, 256 * eps * std::abs(v), 0};
    }
    // 2F1(1,b;b+1;z) = b Φ(z,1,b)
    auto lerch_form = [&](cplx p) -> Estimate {
        SeriesAccuracy inner = acc;
        inner.abs_tol = acc.abs_tol / std::max(real(1), std::abs(p));
        Estimate e = lerch_phi(z, 1, p, inner);
        return {p * e.value, std::abs(p) * e.error + 2 * eps * std::abs(p * e.value), e.terms};
    };
    if (a == real(1) && c == b + real(1)) return lerch_form(b);
    if (b == real(1) && c == a + real(1)) return lerch_form(a);

    HyperCoefficients g(a, b, c);
    return power_sum(g, z, acc);
}

Estimate inc_beta(cplx z, cplx a, cplx b, const SeriesAccuracy& acc) {
    validate(acc);
    require_finite(z, "incomplete beta argument z");
    require_finite(a, "incomplete beta parameter a");
    require_finite(b, "incomplete beta parameter b");
    if (is_pole(a)) fail(ErrorKind::PoleOnPath, "incomplete beta parameter a is a non-positive integer");
    if (z == real(0)) {
        if (a.real() > 0) return {0, 0, 0};
        fail(ErrorKind::DomainError, "incomplete beta at z = 0 requires Re(a) > 0");
    }
    if (near_one(z) && !(b.real() > 0)) fail(ErrorKind::DomainError, "incomplete beta at z = 1 requires Re(b) > 0");
    if (std::abs(z) > 1 + 8 * eps) fail(ErrorKind::DomainError, "incomplete beta series requires |z| <= 1");

    // B(z;a,b) = z^a/a · 2F1(a, 1-b; a+1; z)
    cplx pref = std::exp(a * std::log(z)) / a;
    real scale = std::max(std::abs(pref), std::numeric_limits<real>::min());
    SeriesAccuracy inner = acc;
    inner.abs_tol = acc.abs_tol / std::max(real(1), scale);
    Estimate f = gauss_2f1(a, real(1) - b, a + real(1), z, inner);
    cplx v = pref * f.value;
    return {v, scale * f.error + 4 * eps * std::abs(v), f.terms};
}

}  // namespace casimir
