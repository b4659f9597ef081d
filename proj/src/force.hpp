#pragma once

#include <vector>

#include "model.hpp"

namespace casimir {

enum class Constraint { fixed_ratio, fixed_position, atom_position };
enum class ForceMethod { analytic, fd };

struct ForceResult {
    real value = 0;
    real error_bound = 0;
    Constraint constraint = Constraint::fixed_ratio;
    ForceMethod method = ForceMethod::analytic;
    bool derived_extension = false;  // Neumann wall forces have no printed formula
    std::int64_t modes_used = 0;
};

// Test hook: flips the sign of the second series of the fixed-position force.
struct ForceFixture {
    bool flip_fixed_position_sign = false;
};

ForceResult wall_force_fixed_ratio(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                                   const SeriesControl& ctl = {});

ForceResult wall_force_fixed_position(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                                      const SeriesControl& ctl = {}, const ForceFixture& fixture = {});

ForceResult atom_force(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                       const SeriesControl& ctl = {});

ForceResult wall_force(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                       const SeriesControl& ctl, Constraint constraint);

// -dE/dL (wall constraints) or -dE/dx (atom) from the energy series: 4th-order
// central stencil, step h = 1e-6·L, one Richardson step, one fixed mode count.
ForceResult force_finite_difference(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                                    const SeriesControl& ctl, Constraint constraint);

struct AlphaSweep {
    std::vector<std::pair<real, ForceResult>> points;
    bool has_crossing = false;
    real alpha_star = 0;
    std::size_t crossing_index = 0;  // crossing lies between points[i] and points[i+1]
    int sign_changes = 0;
};

AlphaSweep alpha_sweep(const CavitySpec& cavity, const AtomSpec& atom, const SeriesControl& ctl,
                       const std::vector<real>& alphas);

// Σ over atoms at xs of the analytic wall force, as one mode sum (bare, or smeared with α = 1)
ForceResult summed_wall_force(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                              const SeriesControl& ctl, Constraint constraint, const std::vector<real>& xs);

const char* to_string(Constraint c);
const char* to_string(ForceMethod m);

}  // namespace casimir
