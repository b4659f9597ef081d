#include <random>

#include "doctest.h"
#include "energy.hpp"
#include "force.hpp"
#include "oracles/oracle_values.hpp"

using namespace casimir;

namespace {

const CouplingModel bare{};
const CouplingModel smeared{Coupling::SmearedDiamagnetic, 1};

SeriesControl precise() {
    SeriesControl c;
    c.rel_tol = 1e-12L;
    return c;
}

void check_force(const ForceResult& f, long double expected, real rel) {
    CAPTURE(static_cast<double>(f.value));
    CAPTURE(static_cast<double>(expected));
    CHECK(std::fabs(f.value - expected) <= rel * std::fabs(expected) + f.error_bound);
    CHECK(std::fabs(f.value - expected) <= 1e-7L * std::fabs(expected));
}

struct Case {
    CavitySpec cav;
    AtomSpec atom;
    CouplingModel model;
    long double ratio, pos, at;
};

std::vector<Case> cases() {
    return {
        {{1, Boundary::Dirichlet}, {0.3L, 2 * pi, 1e-4L, 0}, bare, oracle::f_ratio_dir_bare, oracle::f_pos_dir_bare,
         oracle::f_atom_dir_bare},
        {{1, Boundary::Neumann}, {0.3L, 2 * pi, 1e-4L, 0}, bare, oracle::f_ratio_neu_bare, oracle::f_pos_neu_bare,
         oracle::f_atom_neu_bare},
        {{1, Boundary::Dirichlet}, {0.3L, 2 * pi, 1e-4L, 1e-3L}, smeared, oracle::f_ratio_dir_sm, oracle::f_pos_dir_sm,
         oracle::f_atom_dir_sm},
        {{1.3L, Boundary::Neumann}, {0.35L * 1.3L, 4 * pi, 1e-4L, 1e-2L}, smeared, oracle::f_ratio_neu_sm,
         oracle::f_pos_neu_sm, oracle::f_atom_neu_sm},
    };
}

}  // namespace

TEST_CASE("analytic forces against high-precision references") {
    int i = 0;
    for (const auto& c : cases()) {
        CAPTURE(i++);
        check_force(wall_force_fixed_ratio(c.cav, c.atom, c.model, precise()), c.ratio, 1e-8L);
        check_force(wall_force_fixed_position(c.cav, c.atom, c.model, precise()), c.pos, 1e-8L);
        check_force(atom_force(c.cav, c.atom, c.model, precise()), c.at, 1e-8L);
    }
}

TEST_CASE("finite differences agree with the analytic forces") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < 8; ++i) {
        real L = 0.5L + 1.5L * u(rng);
        CavitySpec cav{L, i % 2 ? Boundary::Neumann : Boundary::Dirichlet};
        bool sm = i % 4 >= 2;
        AtomSpec a{L * (0.05L + 0.9L * u(rng)), pi / L * (0.5L + 5.5L * u(rng)), 1e-4L, sm ? 5e-3L * L : 0};
        CouplingModel m = sm ? CouplingModel{Coupling::SmearedDiamagnetic, static_cast<real>(u(rng))} : bare;
        for (auto k : {Constraint::fixed_ratio, Constraint::fixed_position, Constraint::atom_position}) {
            auto an = wall_force(cav, a, m, precise(), k);
            auto fd = force_finite_difference(cav, a, m, precise(), k);
            CAPTURE(i);
            CAPTURE(to_string(k));
            CHECK(fd.method == ForceMethod::fd);
            real scale = std::max(std::fabs(an.value), std::fabs(fd.value));
            CHECK(std::fabs(an.value - fd.value) <= 1e-6L * scale + an.error_bound + fd.error_bound);
        }
    }
}

TEST_CASE("bare atom force vanishes at the midpoint and pushes away from the nearer wall") {
    CavitySpec cav{1, Boundary::Dirichlet};
    CHECK(std::fabs(atom_force(cav, {0.5L, 2 * pi, 1e-4L, 0}, bare, precise()).value) < 1e-18L);
    CHECK(atom_force(cav, {0.2L, 2 * pi, 1e-4L, 0}, bare, precise()).value > 0);
    CHECK(atom_force(cav, {0.8L, 2 * pi, 1e-4L, 0}, bare, precise()).value < 0);
    auto l = atom_force(cav, {0.3L, 2 * pi, 1e-4L, 0}, bare, precise()).value;
    auto r = atom_force(cav, {0.7L, 2 * pi, 1e-4L, 0}, bare, precise()).value;
    CHECK(std::fabs(l + r) <= 1e-10L * std::fabs(l));
}

TEST_CASE("wall force flags") {
    CavitySpec neu{1, Boundary::Neumann}, dir{1, Boundary::Dirichlet};
    AtomSpec a{0.3L, 2 * pi, 1e-4L, 0};
    CHECK(wall_force_fixed_ratio(neu, a, bare).derived_extension);
    CHECK_FALSE(wall_force_fixed_ratio(dir, a, bare).derived_extension);
    CHECK_FALSE(atom_force(neu, a, bare).derived_extension);
    auto f = wall_force(dir, a, bare, {}, Constraint::fixed_position);
    CHECK(f.constraint == Constraint::fixed_position);
    CHECK(f.method == ForceMethod::analytic);
}

TEST_CASE("injected sign flip changes the fixed-position force") {
    CavitySpec dir{1, Boundary::Dirichlet};
    AtomSpec a{0.3L, 2 * pi, 1e-4L, 0};
    auto good = wall_force_fixed_position(dir, a, bare, precise());
    auto bad = wall_force_fixed_position(dir, a, bare, precise(), ForceFixture{true});
    auto fd = force_finite_difference(dir, a, bare, precise(), Constraint::fixed_position);
    CHECK(std::fabs(good.value - fd.value) < 1e-6L * std::fabs(fd.value));
    CHECK(std::fabs(bad.value - fd.value) > 1e-3L * std::fabs(fd.value));
}

TEST_CASE("smeared force is affine in alpha with a single crossing") {
    CavitySpec dir{1, Boundary::Dirichlet};
    AtomSpec a{0.1L, 2 * pi, 1e-4L, 1e-3L};
    auto at = [&](real alpha) { return atom_force(dir, a, {Coupling::SmearedDiamagnetic, alpha}, precise()).value; };
    real f0 = at(0), f1 = at(1), fh = at(0.5L);
    CHECK(std::fabs(fh - (f0 + f1) / 2) <= 1e-9L * (std::fabs(f0) + std::fabs(f1)));
    CHECK(f0 * f1 < 0);

    std::vector<real> alphas;
    for (int i = 0; i <= 20; ++i) alphas.push_back(i / 20.0L);
    auto s = alpha_sweep(dir, a, precise(), alphas);
    CHECK(s.has_crossing);
    CHECK(s.sign_changes == 1);
    CHECK(s.points.size() == alphas.size());
    real linear = f0 / (f0 - f1);
    CHECK(std::fabs(s.alpha_star - linear) < 1e-9L);
    CHECK(std::fabs(s.alpha_star - 0.6737717L) < 1e-6L);
    CHECK(s.points[s.crossing_index].first <= s.alpha_star);
    CHECK(s.points[s.crossing_index + 1].first >= s.alpha_star);
}

TEST_CASE("to_string names") {
    CHECK(std::string(to_string(Constraint::fixed_ratio)) != to_string(Constraint::fixed_position));
    CHECK(std::string(to_string(ForceMethod::fd)) != to_string(ForceMethod::analytic));
}
