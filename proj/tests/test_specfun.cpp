#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/trigamma.hpp>
#include <random>

#include "doctest.h"
#include "oracles/oracle_values.hpp"
#include "specfun.hpp"

using namespace casimir;

namespace {

bool close(real a, real b, real rel, real abs = 0) { return std::fabs(a - b) <= rel * std::fabs(b) + abs; }

SeriesAccuracy tight(real tol = 1e-17L) {
    SeriesAccuracy acc;
    acc.abs_tol = tol;
    acc.max_terms = 4000000;
    return acc;
}

}  // namespace

TEST_CASE("lerch_phi reference values") {
    auto a = lerch_phi(0.5L, 2, 1.5L, tight());
    CHECK(close(a.value.real(), oracle::lerch_a, 1e-15L));
    CHECK(std::fabs(a.value.imag()) < 1e-18L);

    cplx z = std::polar(1.0L, 2 * pi * 0.3L);
    auto b = lerch_phi(z, 1, 3.0L, tight(1e-15L));
    CHECK(close(b.value.real(), oracle::lerch_b_re, 1e-13L, 1e-16L));
    CHECK(close(b.value.imag(), oracle::lerch_b_im, 1e-13L, 1e-16L));

    auto c = lerch_phi({-0.9L, 0.2L}, 3, {0.7L, 0.4L}, tight());
    CHECK(close(c.value.real(), oracle::lerch_c_re, 1e-14L, 1e-16L));
    CHECK(close(c.value.imag(), oracle::lerch_c_im, 1e-14L, 1e-16L));
}

TEST_CASE("lerch_phi special cases and errors") {
    // Φ(1, 2, 1) = ζ(2)
    CHECK(close(lerch_phi(1.0L, 2, 1.0L, tight()).value.real(), pi * pi / 6, 1e-14L));
    // Φ(z, 0, a) = 1/(1-z)
    auto g = lerch_phi(0.25L, 0, 2.0L, tight());
    CHECK(close(g.value.real(), 4.0L / 3, 1e-15L));
    CHECK_THROWS_AS(lerch_phi(1.5L, 2, 1.0L), Error);
    CHECK_THROWS_AS(lerch_phi(1.0L, 1, 1.0L), Error);
    try {
        lerch_phi(0.5L, 2, -2.0L);
        FAIL("expected PoleOnPath");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleOnPath);
    }
}

TEST_CASE("lerch_phi conjugate symmetry") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 20; ++i) {
        cplx z = std::polar<real>(u(rng), 2 * pi * u(rng));
        cplx a(0.2L + 4 * u(rng), 3 * (u(rng) - 0.5L));
        real s = 1 + 2 * u(rng);
        cplx v = lerch_phi(z, s, a, tight(1e-15L)).value;
        cplx w = lerch_phi(std::conj(z), s, std::conj(a), tight(1e-15L)).value;
        CHECK(std::abs(v - std::conj(w)) < 1e-13L * std::max<real>(1, std::abs(v)));
    }
}

TEST_CASE("gauss_2f1 reference values and identities") {
    auto a = gauss_2f1(0.5L, 1.5L, 2.25L, 0.6L, tight());
    CHECK(close(a.value.real(), oracle::hyp2f1_a, 1e-14L));
    auto b = gauss_2f1(1.0L, {1, 2}, {2, 2}, {0.3L, 0.8L}, tight());
    CHECK(close(b.value.real(), oracle::hyp2f1_b_re, 1e-13L, 1e-15L));
    CHECK(close(b.value.imag(), oracle::hyp2f1_b_im, 1e-13L, 1e-15L));
    auto c = gauss_2f1(0.25L, 0.75L, 1.5L, -0.95L, tight());
    CHECK(close(c.value.real(), oracle::hyp2f1_c, 1e-13L));

    // 2F1(a, b; b; z) = (1 - z)^(-a)
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 20; ++i) {
        cplx z = std::polar<real>(0.9L * u(rng), 2 * pi * u(rng));
        cplx aa(2 * u(rng), u(rng) - 0.5L), bb(0.5L + 2 * u(rng), u(rng));
        cplx v = gauss_2f1(aa, bb, bb, z, tight(1e-15L)).value;
        cplx w = std::pow(cplx(1) - z, -aa);
        CHECK(std::abs(v - w) < 1e-12L * std::abs(w));
    }
    // z = 1: Gauss summation Γ(c)Γ(c-a-b)/(Γ(c-a)Γ(c-b))
    cplx g = gauss_2f1(0.5L, 0.5L, 2.5L, 1.0L, tight(1e-14L)).value;
    real gauss = std::exp(std::lgamma(2.5L) + std::lgamma(1.5L) - 2 * std::lgamma(2.0L));
    CHECK(close(g.real(), gauss, 1e-12L));
    CHECK_THROWS_AS(gauss_2f1(0.5L, 0.5L, -2.0L, 0.3L), Error);
    CHECK_THROWS_AS(gauss_2f1(0.5L, 0.5L, 1.5L, 1.2L), Error);
}

TEST_CASE("inc_beta reference value and the complete limit") {
    auto v = inc_beta({0.4L, 0.3L}, {2, 1}, 3.0L, tight());
    CHECK(close(v.value.real(), oracle::incbeta_re, 1e-13L, 1e-16L));
    CHECK(close(v.value.imag(), oracle::incbeta_im, 1e-13L, 1e-16L));
    // B(1; a, b) = Γ(a)Γ(b)/Γ(a+b)
    auto w = inc_beta(1.0L, 2.5L, 1.5L, tight(1e-14L));
    real beta = std::exp(std::lgamma(2.5L) + std::lgamma(1.5L) - std::lgamma(4.0L));
    CHECK(close(w.value.real(), beta, 1e-12L));
    // B(z; 1, 1) = z
    auto z = inc_beta({0.3L, -0.2L}, 1.0L, 1.0L, tight());
    CHECK(std::abs(z.value - cplx(0.3L, -0.2L)) < 1e-15L);
}

TEST_CASE("polygamma and gen_harmonic") {
    cplx t = polygamma(1, {2.5L, -1.25L});
    CHECK(close(t.real(), oracle::trigamma_re, 1e-15L));
    CHECK(close(t.imag(), oracle::trigamma_im, 1e-15L));
    CHECK(close(polygamma(0, 0.001L).real(), oracle::digamma_small, 1e-15L));
    CHECK(close(polygamma(2, 1234.5L).real(), oracle::tetragamma_large, 1e-14L));
    CHECK(close(gen_harmonic(0.5L), oracle::harmonic_half, 1e-16L));
    CHECK(close(gen_harmonic(2), oracle::harmonic_2, 1e-16L));
    CHECK(close(gen_harmonic(1000), oracle::harmonic_big, 1e-16L));
    CHECK(gen_harmonic(0) == 0);
    CHECK(close(gen_harmonic(1), 1, 1e-18L));
    CHECK_THROWS_AS(polygamma(0, -3.0L), Error);
    CHECK_THROWS_AS(gen_harmonic(-2), Error);
}

TEST_CASE("digamma recurrence, harmonic relation and cross-check against Boost") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 50; ++i) {
        real x = 0.05L + 30 * u(rng);
        real psi = polygamma(0, x).real();
        CHECK(close(polygamma(0, x + 1).real(), psi + 1 / x, 1e-15L, 1e-15L));
        CHECK(close(gen_harmonic(x), psi + 1 / x + euler_gamma, 1e-14L, 1e-15L));
        CHECK(close(psi, boost::math::digamma(x), 1e-15L, 1e-16L));
        CHECK(close(polygamma(1, x).real(), boost::math::trigamma(x), 1e-15L));
        cplx zc(x, 10 * (u(rng) - 0.5L));
        cplx d = polygamma(1, zc) - polygamma(1, zc + cplx(1));
        CHECK(std::abs(d - cplx(1) / (zc * zc)) < 1e-14L * std::abs(d));
    }
}

TEST_CASE("pochhammer and log_gamma") {
    CHECK(close(pochhammer(3.0L, 4).real(), 360, 1e-18L));
    CHECK(pochhammer(-2.0L, 3) == cplx(0));
    CHECK(close(log_gamma(5.0L).real(), std::log(24.0L), 1e-17L));
    CHECK(close(hurwitz_zeta(2, 1.0L).real(), pi * pi / 6, 1e-16L));
    CHECK_THROWS_AS(hurwitz_zeta(1, 1.0L), Error);
}

TEST_CASE("reported error bounds dominate the true error") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0, 1);
    SeriesAccuracy loose;
    loose.abs_tol = 1e-9L;
    for (int i = 0; i < 30; ++i) {
        cplx z = std::polar<real>(0.3L + 0.7L * u(rng), 2 * pi * u(rng));
        cplx a(0.3L + 3 * u(rng), u(rng) - 0.5L);
        real s = 1 + 2 * u(rng);
        auto coarse = lerch_phi(z, s, a, loose);
        auto fine = lerch_phi(z, s, a, tight(1e-16L));
        CHECK(std::abs(coarse.value - fine.value) <= coarse.error + fine.error);
    }
}
