#pragma once

#include "model.hpp"

namespace casimir {

struct EnergyBreakdown {
    real e2_udw = 0;
    real e1_phi2 = 0;
    real total = 0;
};

struct EnergySeriesResult {
    EnergyResult result;
    EnergyBreakdown breakdown;
    TailPolicy policy = TailPolicy::averaged_tail;
};

EnergySeriesResult energy_series(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model,
                                 const SeriesControl& ctl = {});

EnergyResult energy_closed_form(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model);

// Neumann bare closed form with the Lerch pair signs exactly as in the source
// text (-zΦ(z) + z̄Φ(z̄)). Returned as a complex number; it is not real.
cplx neumann_bare_closed_form_as_printed(const CavitySpec& cavity, const AtomSpec& atom);

// E_D(x) + E_N(x)
real boundary_sum_rule(const CavitySpec& cavity_D, const CavitySpec& cavity_N, const AtomSpec& atom,
                       const CouplingModel& model, const SeriesControl& ctl = {});

// -λ² H(LΩ/π) / (πΩ)
real bare_sum_rule_value(const CavitySpec& cavity, const AtomSpec& atom);

}  // namespace casimir
