#include "casimir/casimir.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "energy.hpp"
#include "force.hpp"
#include "medium.hpp"
#include "specfun.hpp"
#include "validate.hpp"

using namespace casimir;

struct casimir_system {
    CavitySpec cavity;
    AtomSpec atom;
    CouplingModel model;
    SeriesControl ctl;
};

struct casimir_scan {
    CriticalScan scan;
};

struct casimir_report {
    ValidationReport report;
};

namespace {

thread_local std::string last_error;

casimir_status status_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument:
            return CASIMIR_INVALID_ARGUMENT;
        case ErrorKind::DomainError:
            return CASIMIR_DOMAIN_ERROR;
        case ErrorKind::PoleOnPath:
            return CASIMIR_POLE_ON_PATH;
        case ErrorKind::NoConvergence:
            return CASIMIR_NO_CONVERGENCE;
        case ErrorKind::ImaginaryResidue:
            return CASIMIR_IMAGINARY_RESIDUE;
        case ErrorKind::NoCrossing:
            return CASIMIR_NO_CROSSING;
    }
    return CASIMIR_INTERNAL_ERROR;
}

template <class F>
casimir_status guard(F&& f) {
    try {
        last_error.clear();
        f();
        return CASIMIR_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return CASIMIR_INTERNAL_ERROR;
    } catch (const std::exception& e) {
        last_error = e.what();
        return CASIMIR_INTERNAL_ERROR;
    }
}

void need(const void* p, const char* what) {
    if (!p) fail(ErrorKind::InvalidArgument, std::string(what) + " is null");
}

Constraint constraint_of(casimir_constraint c) {
    switch (c) {
        case CASIMIR_FIXED_RATIO:
            return Constraint::fixed_ratio;
        case CASIMIR_FIXED_POSITION:
            return Constraint::fixed_position;
        case CASIMIR_ATOM_POSITION:
            return Constraint::atom_position;
    }
    fail(ErrorKind::InvalidArgument, "unknown constraint");
}

void put(const EnergyResult& r, casimir_energy* out) {
    out->value = static_cast<double>(r.value);
    out->error_bound = static_cast<double>(r.error_bound);
    out->modes_used = r.modes_used;
    out->closed_form = r.path == EvalPath::closed_form;
}

void put(const ForceResult& r, casimir_force* out) {
    out->value = static_cast<double>(r.value);
    out->error_bound = static_cast<double>(r.error_bound);
    out->modes_used = r.modes_used;
    out->finite_difference = r.method == ForceMethod::fd;
    out->derived_extension = r.derived_extension;
}

MediumSpec medium_of(int64_t count, const double* positions) {
    MediumSpec m;
    if (count < 0) fail(ErrorKind::InvalidArgument, "atom count must be non-negative");
    if (positions) {
        m.placement = Placement::explicit_list;
        m.positions.assign(positions, positions + count);
    } else {
        m.count = count;
    }
    return m;
}

void put_complex(const Estimate& e, double* re, double* im, double* error) {
    if (re) *re = static_cast<double>(e.value.real());
    if (im) *im = static_cast<double>(e.value.imag());
    if (error) *error = static_cast<double>(e.error);
}

cplx c2(const double v[2]) { return {v[0], v[1]}; }

SeriesAccuracy accuracy(double abs_tol) {
    SeriesAccuracy acc;
    if (abs_tol > 0) acc.abs_tol = abs_tol;
    return acc;
}

}  // namespace

extern "C" {

casimir_status casimir_system_create(casimir_system** out) {
    return guard([&] {
        need(out, "output");
        *out = new casimir_system{};
    });
}

void casimir_system_destroy(casimir_system* sys) { delete sys; }

casimir_status casimir_system_clone(const casimir_system* sys, casimir_system** out) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        *out = new casimir_system(*sys);
    });
}

casimir_status casimir_set_cavity(casimir_system* sys, double length, casimir_boundary boundary) {
    return guard([&] {
        need(sys, "system");
        if (boundary != CASIMIR_DIRICHLET && boundary != CASIMIR_NEUMANN)
            fail(ErrorKind::InvalidArgument, "unknown boundary");
        CavitySpec c{length, boundary == CASIMIR_DIRICHLET ? Boundary::Dirichlet : Boundary::Neumann};
        validate(c);
        sys->cavity = c;
    });
}

casimir_status casimir_set_atom(casimir_system* sys, double x, double omega, double lambda, double a0) {
    return guard([&] {
        need(sys, "system");
        AtomSpec a{x, omega, lambda, a0};
        if (!std::isfinite(x) || !(omega > 0) || !std::isfinite(omega) || !(lambda >= 0) || !std::isfinite(lambda) ||
            !(a0 >= 0) || !std::isfinite(a0))
            fail(ErrorKind::InvalidArgument, "atom parameters out of range");
        sys->atom = a;
    });
}

casimir_status casimir_set_position(casimir_system* sys, double x) {
    return guard([&] {
        need(sys, "system");
        if (!std::isfinite(x)) fail(ErrorKind::InvalidArgument, "position must be finite");
        sys->atom.position_x = x;
    });
}

casimir_status casimir_set_coupling(casimir_system* sys, casimir_coupling coupling, double alpha) {
    return guard([&] {
        need(sys, "system");
        if (coupling != CASIMIR_BARE && coupling != CASIMIR_SMEARED) fail(ErrorKind::InvalidArgument, "unknown coupling");
        if (!(alpha >= 0) || !std::isfinite(alpha)) fail(ErrorKind::InvalidArgument, "alpha must be non-negative");
        sys->model = {coupling == CASIMIR_BARE ? Coupling::BarePoint : Coupling::SmearedDiamagnetic, alpha};
    });
}

casimir_status casimir_set_tolerances(casimir_system* sys, double rel_tol, double abs_tol, int64_t max_modes) {
    return guard([&] {
        need(sys, "system");
        SeriesControl c = sys->ctl;
        c.rel_tol = rel_tol;
        c.abs_tol = abs_tol;
        c.max_modes = max_modes;
        validate(c);
        sys->ctl = c;
    });
}

casimir_status casimir_set_tail_policy(casimir_system* sys, casimir_tail_policy policy) {
    return guard([&] {
        need(sys, "system");
        switch (policy) {
            case CASIMIR_TAIL_DEFAULT:
                sys->ctl.policy_set = false;
                return;
            case CASIMIR_TAIL_INTEGRAL_BOUND:
                sys->ctl.tail_policy = TailPolicy::integral_bound;
                break;
            case CASIMIR_TAIL_AVERAGED:
                sys->ctl.tail_policy = TailPolicy::averaged_tail;
                break;
            default:
                fail(ErrorKind::InvalidArgument, "unknown tail policy");
        }
        sys->ctl.policy_set = true;
    });
}

casimir_status casimir_energy_series(const casimir_system* sys, casimir_energy* out) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        put(energy_series(sys->cavity, sys->atom, sys->model, sys->ctl).result, out);
    });
}

casimir_status casimir_energy_closed_form(const casimir_system* sys, casimir_energy* out) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        put(energy_closed_form(sys->cavity, sys->atom, sys->model), out);
    });
}

casimir_status casimir_energy_parts(const casimir_system* sys, double* paramagnetic, double* diamagnetic) {
    return guard([&] {
        need(sys, "system");
        auto r = energy_series(sys->cavity, sys->atom, sys->model, sys->ctl);
        if (paramagnetic) *paramagnetic = static_cast<double>(r.breakdown.e2_udw);
        if (diamagnetic) *diamagnetic = static_cast<double>(r.breakdown.e1_phi2);
    });
}

casimir_status casimir_force_analytic(const casimir_system* sys, casimir_constraint constraint, casimir_force* out) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        put(wall_force(sys->cavity, sys->atom, sys->model, sys->ctl, constraint_of(constraint)), out);
    });
}

casimir_status casimir_force_fd(const casimir_system* sys, casimir_constraint constraint, casimir_force* out) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        put(force_finite_difference(sys->cavity, sys->atom, sys->model, sys->ctl, constraint_of(constraint)), out);
    });
}

casimir_status casimir_alpha_sweep(const casimir_system* sys, const double* alphas, size_t count, casimir_force* out,
                                   int* has_crossing, double* alpha_star, int* sign_changes) {
    return guard([&] {
        need(sys, "system");
        need(alphas, "alpha list");
        need(out, "output");
        std::vector<real> a(alphas, alphas + count);
        auto s = alpha_sweep(sys->cavity, sys->atom, sys->ctl, a);
        for (size_t i = 0; i < count; ++i) put(s.points[i].second, &out[i]);
        if (has_crossing) *has_crossing = s.has_crossing;
        if (alpha_star && s.has_crossing) *alpha_star = static_cast<double>(s.alpha_star);
        if (sign_changes) *sign_changes = s.sign_changes;
    });
}

casimir_status casimir_medium_energy(const casimir_system* sys, int64_t count, const double* positions,
                                     casimir_energy* out, int* pws) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        auto r = medium_energy(sys->cavity, sys->atom, medium_of(count, positions), sys->model, sys->ctl);
        put(r.result, out);
        if (pws) *pws = r.pws_warning;
    });
}

casimir_status casimir_medium_force(const casimir_system* sys, int64_t count, const double* positions,
                                    casimir_constraint constraint, casimir_force* out, int* pws) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        auto r = medium_wall_force(sys->cavity, sys->atom, medium_of(count, positions), sys->model, sys->ctl,
                                   constraint_of(constraint));
        put(r.result, out);
        if (pws) *pws = r.pws_warning;
    });
}

casimir_status casimir_empty_cavity_force(double length, double* out) {
    return guard([&] {
        need(out, "output");
        validate(CavitySpec{length, Boundary::Dirichlet});
        *out = static_cast<double>(empty_casimir_force(length));
    });
}

casimir_status casimir_to_si(double value, int is_force, double length_meters, double* out) {
    return guard([&] {
        need(out, "output");
        *out = static_cast<double>(to_si(value, is_force ? Unit::force : Unit::energy, length_meters));
    });
}

casimir_status casimir_hydrogen_matrix_element(double a0, double* out) {
    return guard([&] {
        need(out, "output");
        *out = static_cast<double>(momentum_matrix_element_1s2s(a0));
    });
}

casimir_status casimir_pair_energy(const casimir_system* sys, double x_a, double x_b, casimir_energy* out) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        put(pair_energy_4th(sys->cavity, sys->atom, {x_a, x_b}, sys->ctl), out);
    });
}

casimir_status casimir_pair_force(const casimir_system* sys, double x_a, double x_b, casimir_constraint constraint,
                                  casimir_force* out) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        Constraint c = constraint_of(constraint);
        if (c == Constraint::fixed_ratio)
            put(pair_wall_force_fixed_ratio(sys->cavity, sys->atom, {x_a, x_b}, sys->ctl), out);
        else
            put(pair_force_finite_difference(sys->cavity, sys->atom, {x_a, x_b}, sys->ctl, c), out);
    });
}

casimir_status casimir_pair_force_fd(const casimir_system* sys, double x_a, double x_b, casimir_constraint constraint,
                                     casimir_force* out) {
    return guard([&] {
        need(sys, "system");
        need(out, "output");
        put(pair_force_finite_difference(sys->cavity, sys->atom, {x_a, x_b}, sys->ctl, constraint_of(constraint)),
            out);
    });
}

casimir_status casimir_critical_scan(const casimir_system* sys, casimir_constraint constraint, int64_t n_max,
                                     int include_pairs, size_t table_points, casimir_scan** out) {
    casimir_scan* scan = nullptr;
    casimir_status st = guard([&] {
        need(sys, "system");
        need(out, "output");
        *out = nullptr;
        CriticalOptions opts;
        opts.include_pairs = include_pairs != 0;
        if (table_points > 0) opts.table_points = table_points;
        scan = new casimir_scan{critical_scan(sys->cavity, sys->atom, sys->model, sys->ctl, constraint_of(constraint),
                                              n_max, opts)};
        *out = scan;
        if (!scan->scan.found) fail(ErrorKind::NoCrossing, "no sign change of the total force up to n_max");
    });
    return st;
}

void casimir_scan_destroy(casimir_scan* scan) { delete scan; }
int casimir_scan_found(const casimir_scan* scan) { return scan && scan->scan.found; }
double casimir_scan_n_star(const casimir_scan* scan) {
    return scan && scan->scan.found ? static_cast<double>(scan->scan.n_star) : NAN;
}
void casimir_scan_bracket(const casimir_scan* scan, int64_t* below, int64_t* above) {
    if (below) *below = scan ? scan->scan.n_below : 0;
    if (above) *above = scan ? scan->scan.n_above : 0;
}
int casimir_scan_pws_warning(const casimir_scan* scan) { return scan && scan->scan.pws_warning; }
size_t casimir_scan_rows(const casimir_scan* scan) { return scan ? scan->scan.table.size() : 0; }

casimir_status casimir_scan_row_at(const casimir_scan* scan, size_t index, casimir_scan_row* row) {
    return guard([&] {
        need(scan, "scan");
        need(row, "output");
        if (index >= scan->scan.table.size()) fail(ErrorKind::InvalidArgument, "row index out of range");
        const auto& r = scan->scan.table[index];
        *row = {r.n, static_cast<double>(r.medium_force), static_cast<double>(r.pair_force),
                static_cast<double>(r.total_force)};
    });
}

casimir_status casimir_validate(uint64_t seed, int sets_per_case, int flags, casimir_report** out) {
    return guard([&] {
        need(out, "output");
        if (sets_per_case < 1) fail(ErrorKind::InvalidArgument, "sets_per_case must be at least 1");
        ValidationOptions o;
        o.seed = seed;
        o.sets_per_case = sets_per_case;
        o.include_pairs = !(flags & CASIMIR_VALIDATE_SKIP_PAIRS);
        o.inject_position_sign_flip = flags & CASIMIR_VALIDATE_INJECT_SIGN_FLIP;
        *out = new casimir_report{run_validation(o)};
    });
}

void casimir_report_destroy(casimir_report* report) { delete report; }
const char* casimir_report_json(const casimir_report* report) { return report ? report->report.json.c_str() : ""; }
int casimir_report_total(const casimir_report* report) { return report ? report->report.total : 0; }
int casimir_report_failed(const casimir_report* report) { return report ? report->report.failed : 0; }
int casimir_report_suspect(const casimir_report* report) { return report ? report->report.suspect : 0; }

casimir_status casimir_lerch_phi(double z_re, double z_im, double s, double a_re, double a_im, double abs_tol,
                                 double* re, double* im, double* error) {
    return guard([&] { put_complex(lerch_phi({z_re, z_im}, s, {a_re, a_im}, accuracy(abs_tol)), re, im, error); });
}

casimir_status casimir_hyp2f1(const double a[2], const double b[2], const double c[2], const double z[2],
                              double abs_tol, double* re, double* im, double* error) {
    return guard([&] {
        need(a, "a");
        need(b, "b");
        need(c, "c");
        need(z, "z");
        put_complex(gauss_2f1(c2(a), c2(b), c2(c), c2(z), accuracy(abs_tol)), re, im, error);
    });
}

casimir_status casimir_inc_beta(const double z[2], const double a[2], const double b[2], double abs_tol, double* re,
                                double* im, double* error) {
    return guard([&] {
        need(a, "a");
        need(b, "b");
        need(z, "z");
        put_complex(inc_beta(c2(z), c2(a), c2(b), accuracy(abs_tol)), re, im, error);
    });
}

casimir_status casimir_polygamma(int n, double x_re, double x_im, double* re, double* im) {
    return guard([&] {
        cplx v = polygamma(n, {x_re, x_im});
        if (re) *re = static_cast<double>(v.real());
        if (im) *im = static_cast<double>(v.imag());
    });
}

casimir_status casimir_gen_harmonic(double x, double* out) {
    return guard([&] {
        need(out, "output");
        *out = static_cast<double>(gen_harmonic(x));
    });
}

const char* casimir_last_error(void) { return last_error.c_str(); }

const char* casimir_status_string(casimir_status status) {
    switch (status) {
        case CASIMIR_OK:
            return "ok";
        case CASIMIR_INVALID_ARGUMENT:
            return "invalid argument";
        case CASIMIR_DOMAIN_ERROR:
            return "domain error";
        case CASIMIR_POLE_ON_PATH:
            return "pole on path";
        case CASIMIR_NO_CONVERGENCE:
            return "no convergence";
        case CASIMIR_IMAGINARY_RESIDUE:
            return "imaginary residue";
        case CASIMIR_NO_CROSSING:
            return "no crossing";
        case CASIMIR_INTERNAL_ERROR:
            return "internal error";
    }
    return "unknown status";
}

const char* casimir_version(void) { return CASIMIR_VERSION; }

}  // extern "C"
