#include <random>

#include "doctest.h"
#include "energy.hpp"
#include "oracles/oracle_values.hpp"

using namespace casimir;

namespace {

const CavitySpec dir1{1, Boundary::Dirichlet};
const CavitySpec neu1{1, Boundary::Neumann};
const CouplingModel bare{};

AtomSpec atom(real x, real Omega = 2 * pi, real lam = 1e-4L, real a0 = 0) { return {x, Omega, lam, a0}; }

CouplingModel smeared(real alpha = 1) { return {Coupling::SmearedDiamagnetic, alpha}; }

SeriesControl precise() {
    SeriesControl c;
    c.rel_tol = 1e-12L;
    return c;
}

void check_energy(const EnergyResult& r, long double expected, real rel) {
    CAPTURE(static_cast<double>(r.value));
    CAPTURE(static_cast<double>(expected));
    CHECK(std::fabs(r.value - expected) <= rel * std::fabs(expected) + r.error_bound);
    CHECK(std::fabs(r.value - expected) <= 1e-9L * std::fabs(expected));
}

}  // namespace

TEST_CASE("series energies against high-precision references") {
    check_energy(energy_series(dir1, atom(0.3L), bare, precise()).result, oracle::e_dir_bare_a, 1e-10L);
    check_energy(energy_series({1.3L, Boundary::Dirichlet}, atom(0.35L * 1.3L, 4 * pi, 2e-4L), bare,
                               precise())
                     .result,
                 oracle::e_dir_bare_b, 1e-10L);
    check_energy(energy_series(neu1, atom(0.3L), bare, precise()).result, oracle::e_neu_bare_a, 1e-10L);
    check_energy(energy_series({1.3L, Boundary::Neumann}, atom(0.35L * 1.3L, 4 * pi, 2e-4L), bare, precise()).result,
                 oracle::e_neu_bare_b, 1e-10L);
    check_energy(energy_series(dir1, atom(0.3L, 2 * pi, 1e-4L, 1e-3L), smeared(), precise()).result,
                 oracle::e_dir_sm_a, 1e-10L);
    check_energy(energy_series(neu1, atom(0.3L, 2 * pi, 1e-4L, 1e-3L), smeared(), precise()).result,
                 oracle::e_neu_sm_a, 1e-10L);
    check_energy(energy_series({0.8L, Boundary::Dirichlet}, atom(0.2L, 6 * pi, 1e-4L, 1e-2L), smeared(0.5L),
                               precise())
                     .result,
                 oracle::e_dir_sm_half, 1e-10L);
    check_energy(energy_series(dir1, atom(0.5L), bare, precise()).result, oracle::e_dir_bare_mid, 1e-10L);
}

TEST_CASE("closed forms agree with the series") {
    check_energy(energy_closed_form(dir1, atom(0.3L), bare), oracle::e_dir_bare_a, 1e-10L);
    check_energy(energy_closed_form(neu1, atom(0.3L), bare), oracle::e_neu_bare_a, 1e-10L);
    check_energy(energy_closed_form(dir1, atom(0.3L, 2 * pi, 1e-4L, 1e-3L), smeared()), oracle::e_dir_sm_a, 1e-10L);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 12; ++i) {
        real L = 0.5L + 1.5L * u(rng);
        CavitySpec cav{L, i % 2 ? Boundary::Neumann : Boundary::Dirichlet};
        AtomSpec a = atom(L * (0.05L + 0.9L * u(rng)), pi / L * (0.5L + 5.5L * u(rng)), 1e-4L,
                          i % 3 == 0 ? 1e-2L * L : 0);
        CouplingModel m = a.radius_a0 > 0 ? smeared() : bare;
        real s = energy_series(cav, a, m, precise()).result.value;
        real c = energy_closed_form(cav, a, m).value;
        CAPTURE(i);
        CHECK(std::fabs(s - c) <= 1e-8L * std::fabs(c));
    }
}

TEST_CASE("energy series breakdown") {
    auto r = energy_series(dir1, atom(0.3L, 2 * pi, 1e-4L, 1e-3L), smeared(), precise());
    CHECK(r.breakdown.e2_udw < 0);
    CHECK(r.breakdown.e1_phi2 > 0);
    CHECK(std::fabs(r.breakdown.e2_udw + r.breakdown.e1_phi2 - r.breakdown.total) <=
          1e-15L * std::fabs(r.breakdown.e1_phi2));
    CHECK(energy_series(dir1, atom(0.3L, 2 * pi, 1e-4L, 1e-2L), smeared()).policy == TailPolicy::integral_bound);
    auto b = energy_series(dir1, atom(0.3L), bare, precise());
    CHECK(b.breakdown.e1_phi2 == 0);
    CHECK(b.policy == TailPolicy::averaged_tail);
}

TEST_CASE("Dirichlet energy vanishes at the walls") {
    for (real x : {0.0L, 1.0L}) {
        CHECK(energy_series(dir1, atom(x), bare).result.value == 0);
        CHECK_THROWS_AS(energy_closed_form(dir1, atom(x), bare), Error);
        CHECK(std::fabs(energy_series(dir1, atom(x, 2 * pi, 1e-4L, 1e-3L), smeared()).result.value) < 1e-20L);
    }
}

TEST_CASE("energy is mirror symmetric and scales as lambda squared") {
    for (real x : {0.1L, 0.27L, 0.44L}) {
        real e = energy_series(dir1, atom(x), bare, precise()).result.value;
        real m = energy_series(dir1, atom(1 - x), bare, precise()).result.value;
        CHECK(std::fabs(e - m) <= 1e-10L * std::fabs(e));
        real e2 = energy_series(dir1, atom(x, 2 * pi, 3e-4L), bare, precise()).result.value;
        CHECK(std::fabs(e2 - 9 * e) <= 1e-10L * std::fabs(e2));
    }
}

TEST_CASE("Dirichlet plus Neumann sum rule") {
    AtomSpec a = atom(0.3L);
    real s = boundary_sum_rule(dir1, neu1, a, bare, precise());
    CHECK(std::fabs(s - oracle::sum_rule_2pi) <= 1e-9L * std::fabs(oracle::sum_rule_2pi));
    CHECK(std::fabs(bare_sum_rule_value(dir1, a) - oracle::sum_rule_2pi) <= 1e-15L * std::fabs(oracle::sum_rule_2pi));
    // independent of the atom position
    for (real x : {0.05L, 0.5L, 0.81L}) {
        real v = boundary_sum_rule(dir1, neu1, atom(x), bare, precise());
        CHECK(std::fabs(v - oracle::sum_rule_2pi) <= 1e-9L * std::fabs(oracle::sum_rule_2pi));
    }
    // LΩ/π = 1 gives H(1) = 1
    AtomSpec one = atom(0.4L, pi);
    CHECK(std::fabs(bare_sum_rule_value(dir1, one) + 1e-8L / (pi * pi)) < 1e-22L);
}

TEST_CASE("Neumann closed form as printed is not real") {
    cplx v = neumann_bare_closed_form_as_printed(neu1, atom(0.3L));
    CHECK(std::fabs(v.imag()) > 1e-3L * std::fabs(oracle::e_neu_bare_a));
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(energy_series({-1, Boundary::Dirichlet}, atom(0.3L), bare), Error);
    CHECK_THROWS_AS(energy_series(dir1, atom(1.2L), bare), Error);
    CHECK_THROWS_AS(energy_series(dir1, atom(0.3L), smeared()), Error);
}
