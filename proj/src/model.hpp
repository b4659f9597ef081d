#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"
#include "series.hpp"

namespace casimir {

enum class Boundary { Dirichlet, Neumann };
enum class Coupling { BarePoint, SmearedDiamagnetic };
enum class EvalPath { series, closed_form };
enum class Unit { energy, force };

struct CavitySpec {
    real length_L = 1;
    Boundary boundary = Boundary::Dirichlet;
};

struct AtomSpec {
    real position_x = 0.5L;
    real gap_Omega = 2 * pi;
    real coupling_lambda = 1e-4L;
    real radius_a0 = 0;
};

struct CouplingModel {
    Coupling kind = Coupling::BarePoint;
    real alpha = 1;
};

struct SeriesControl {
    real rel_tol = 1e-10L;
    real abs_tol = 0;  // 0 selects 1e-14·λ²
    std::int64_t max_modes = 10000000;
    TailPolicy tail_policy = TailPolicy::averaged_tail;
    bool policy_set = false;  // false: averaged_tail for bare, integral_bound for smeared
    std::int64_t fixed_modes = 0;
};

struct EnergyResult {
    real value = 0;
    real error_bound = 0;
    std::int64_t modes_used = 0;
    EvalPath path = EvalPath::series;
};

constexpr real hbar_c = 3.16152677e-26L;  // J·m

void validate(const CavitySpec& cavity);
void validate(const CavitySpec& cavity, const AtomSpec& atom);
void validate(const CavitySpec& cavity, const AtomSpec& atom, const CouplingModel& model);
void validate(const SeriesControl& ctl);

// f_j(L, a0) = 2 / ((a0 π j / L)² + 1)
real mode_weight(real j, real L, real a0);

real momentum_matrix_element_1s2s(real a0);

real to_si(real value, Unit unit, real L_meters);

const char* to_string(Boundary b);
const char* to_string(Coupling c);
const char* to_string(EvalPath p);
const char* to_string(TailPolicy p);

// engine controls for one series of the given coupling
SumControl sum_control(const SeriesControl& ctl, const AtomSpec& atom, Coupling kind);

}  // namespace casimir
