#pragma once

#include <cstdint>
#include <vector>

#include "force.hpp"
#include "model.hpp"

namespace casimir {

enum class Placement { uniform, explicit_list };

// N identical atoms sharing Ω, λ and a0. Uniform placement puts atom n at L·n/(N+1).
struct MediumSpec {
    Placement placement = Placement::uniform;
    std::int64_t count = 0;
    std::vector<real> positions;  // explicit_list only
};

struct PairSpec {
    real x_a = 0.25L;
    real x_b = 0.75L;
};

struct MediumEnergy {
    EnergyResult result;
    bool pws_warning = false;
};

struct MediumForce {
    ForceResult result;
    bool pws_warning = false;
};

std::int64_t atom_count(const MediumSpec& medium);
std::vector<real> atom_positions(const CavitySpec& cavity, const MediumSpec& medium);

// the sum of independent atoms stops being trustworthy once N ~ 1/λ²
bool pws_warning(std::int64_t n_atoms, const CavitySpec& cavity, const AtomSpec& atom);

MediumEnergy medium_energy(const CavitySpec& cavity, const AtomSpec& atom, const MediumSpec& medium,
                           const CouplingModel& model, const SeriesControl& ctl = {});

MediumForce medium_wall_force(const CavitySpec& cavity, const AtomSpec& atom, const MediumSpec& medium,
                              const CouplingModel& model, const SeriesControl& ctl, Constraint constraint);

// −π/(24L²)
real empty_casimir_force(real L);

struct CriticalRow {
    std::int64_t n = 0;
    real medium_force = 0;
    real pair_force = 0;
    real total_force = 0;
};

struct CriticalScan {
    bool found = false;
    real n_star = 0;
    std::int64_t n_below = 0;  // last N with the sign of the empty cavity
    std::int64_t n_above = 0;
    bool pws_warning = false;
    std::vector<CriticalRow> table;
};

struct CriticalOptions {
    bool include_pairs = false;  // adds Σ over all pairs, N ≤ 16 only
    std::size_t table_points = 400;
};

// Scans uniform media N = 1..n_max for the first sign change of medium + empty-cavity force.
CriticalScan critical_scan(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                           const SeriesControl& ctl, Constraint constraint, std::int64_t n_max,
                           const CriticalOptions& opts = {});

// as critical_scan, but NoCrossing is an error
CriticalScan critical_atom_number(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                                  const SeriesControl& ctl, Constraint constraint, std::int64_t n_max,
                                  const CriticalOptions& opts = {});

// fourth order pair terms, Dirichlet cavity, no diamagnetic coupling
EnergyResult pair_energy_4th(const CavitySpec& cavity, const AtomSpec& atom, const PairSpec& pair,
                             const SeriesControl& ctl = {});

ForceResult pair_wall_force_fixed_ratio(const CavitySpec& cavity, const AtomSpec& atom, const PairSpec& pair,
                                        const SeriesControl& ctl = {});

// −dE/dL of pair_energy_4th, atoms at fixed x/L or at fixed x
ForceResult pair_force_finite_difference(const CavitySpec& cavity, const AtomSpec& atom, const PairSpec& pair,
                                         const SeriesControl& ctl = {},
                                         Constraint constraint = Constraint::fixed_ratio);

}  // namespace casimir
