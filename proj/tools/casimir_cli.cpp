// casimir_cavity: figure data, validation and unit conversion on top of the C API.
#include <casimir/casimir.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0, exit_validation = 1, exit_usage = 2, exit_numerical = 3;
const double pi = 3.14159265358979323846;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

// one factor: 2.5, 1e-6, pi, 2pi, 0.5pi
double parse_factor(const std::string& tok, const std::string& whole) {
    std::string t = trim(tok);
    if (t.empty()) throw UsageError("cannot parse number '" + whole + "'");
    double scale = 1;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        scale = pi;
        t = t.substr(0, t.size() - 2);
        if (t.empty()) return scale;
        if (t == "-") return -scale;
    }
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0') throw UsageError("cannot parse number '" + whole + "'");
    return v * scale;
}

// products and quotients of factors: 2pi*3, 1e-6*2pi, 2pi/0.5
double parse_real(const std::string& s) {
    double v = 1;
    char op = '*';
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        bool sep = i == s.size() || s[i] == '*' || s[i] == '/';
        if (!sep) continue;
        double f = parse_factor(s.substr(start, i - start), s);
        if (op == '*')
            v *= f;
        else
            v /= f;
        if (i < s.size()) op = s[i];
        start = i + 1;
    }
    if (!std::isfinite(v)) throw UsageError("number '" + s + "' is not finite");
    return v;
}

std::vector<std::string> split(const std::string& s) {
    std::string body = trim(s);
    if (!body.empty() && body.front() == '[' && body.back() == ']') body = body.substr(1, body.size() - 2);
    std::vector<std::string> out;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    for (const auto& t : split(s)) v.push_back(parse_real(t));
    if (v.empty()) throw UsageError("empty list '" + s + "'");
    return v;
}

// a bare integer is a point count over [lo, hi]; anything else an explicit list
struct Grid {
    bool count = false;
    std::size_t n = 0;
    std::vector<double> values;
};

Grid parse_grid(const std::string& s) {
    std::string t = trim(s);
    bool integer = !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
    Grid g;
    if (integer) {
        g.count = true;
        g.n = std::stoul(t);
        if (g.n < 1) throw UsageError("grid needs at least one point");
    } else {
        g.values = parse_list(t);
    }
    return g;
}

std::vector<double> grid_points(const Grid& g, double lo, double hi) {
    if (!g.count) return g.values;
    std::vector<double> v;
    if (g.n == 1) return {lo};
    for (std::size_t i = 0; i < g.n; ++i)
        v.push_back(i + 1 == g.n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(g.n - 1));
    return v;
}

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* e = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(e, nullptr, 10));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Global {
    std::string out;
    double rel_tol = 1e-10;
    double abs_tol = 0;
    long long max_modes = 10000000;
    int threads = 1;
    std::string tail = "default";
};

int thread_count(const Global& g) {
    int n = g.threads;
    if (const char* e = std::getenv("CASIMIR_CAVITY_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (end == e || *end != '\0' || v < 1) throw UsageError("CASIMIR_CAVITY_THREADS must be a positive integer");
        n = static_cast<int>(v);
    }
    return std::max(1, n);
}

// runs f(i) for i < n on a small pool; results are stored by index so output order never depends on scheduling
template <class F>
void parallel_for(std::size_t n, int threads, F f) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) f(i);
    };
    int k = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), n));
    if (k <= 1) {
        work();
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < k; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

struct Physics {
    std::string boundary = "dirichlet";
    std::string coupling = "bare";
    std::string alpha = "1";
    std::string L = "1";
    std::string Omega = "2pi";
    std::string lambda = "1e-4";
    std::string a0 = "0";

    std::vector<double> Ls, Omegas;
    double alpha_v = 1, lambda_v = 1e-4, a0_v = 0;

    void add(CLI::App* app) {
        app->add_option("--boundary", boundary, "dirichlet or neumann")
            ->check(CLI::IsMember({"dirichlet", "neumann"}))
            ->capture_default_str();
        app->add_option("--coupling", coupling, "bare or smeared")
            ->check(CLI::IsMember({"bare", "smeared"}))
            ->capture_default_str();
        app->add_option("--alpha", alpha, "weight of the phi^2 term (smeared)")->capture_default_str();
        app->add_option("--L", L, "cavity length, comma list for several curves")->capture_default_str();
        app->add_option("--Omega", Omega, "atomic gap, accepts 2pi, 4pi, 2pi*3; comma list for several curves")
            ->capture_default_str();
        app->add_option("--lambda", lambda, "coupling strength")->capture_default_str();
        app->add_option("--a0", a0, "smearing radius (required for smeared coupling)")->capture_default_str();
    }

    void resolve() {
        Ls = parse_list(L);
        Omegas = parse_list(Omega);
        alpha_v = parse_real(alpha);
        lambda_v = parse_real(lambda);
        a0_v = parse_real(a0);
        for (double l : Ls)
            if (!(l > 0)) throw UsageError("--L must be positive");
        for (double o : Omegas)
            if (!(o > 0)) throw UsageError("--Omega must be positive");
        if (lambda_v < 0) throw UsageError("--lambda must be non-negative");
        if (a0_v < 0) throw UsageError("--a0 must be non-negative");
        if (alpha_v < 0) throw UsageError("--alpha must be non-negative");
        if (coupling == "smeared" && !(a0_v > 0)) throw UsageError("smeared coupling needs --a0 > 0");
    }

    json echo() const {
        return {{"boundary", boundary}, {"coupling", coupling}, {"alpha", alpha}, {"L", L},
                {"Omega", Omega},       {"lambda", lambda},     {"a0", a0}};
    }
};

struct Curve {
    double L, Omega;
};

std::vector<Curve> curves(const Physics& p) {
    std::vector<Curve> c;
    for (double l : p.Ls)
        for (double o : p.Omegas) c.push_back({l, o});
    return c;
}

void check(casimir_status st) {
    if (st == CASIMIR_OK) return;
    std::string msg = casimir_status_string(st);
    const char* detail = casimir_last_error();
    if (detail && *detail) msg += std::string(": ") + detail;
    if (st == CASIMIR_INVALID_ARGUMENT) throw UsageError(msg);
    throw NumericalError(msg);
}

std::string error_text(casimir_status st) {
    std::string msg = casimir_status_string(st);
    const char* detail = casimir_last_error();
    if (detail && *detail) msg += std::string(": ") + detail;
    return msg;
}

class System {
public:
    System(const Physics& p, const Global& g, const Curve& c, double x) {
        check(casimir_system_create(&s_));
        check(casimir_set_cavity(s_, c.L, p.boundary == "dirichlet" ? CASIMIR_DIRICHLET : CASIMIR_NEUMANN));
        check(casimir_set_atom(s_, x, c.Omega, p.lambda_v, p.a0_v));
        check(casimir_set_coupling(s_, p.coupling == "bare" ? CASIMIR_BARE : CASIMIR_SMEARED, p.alpha_v));
        check(casimir_set_tolerances(s_, g.rel_tol, g.abs_tol, g.max_modes));
        casimir_tail_policy tp = g.tail == "integral-bound" ? CASIMIR_TAIL_INTEGRAL_BOUND
                                 : g.tail == "averaged"     ? CASIMIR_TAIL_AVERAGED
                                                            : CASIMIR_TAIL_DEFAULT;
        check(casimir_set_tail_policy(s_, tp));
    }
    ~System() { casimir_system_destroy(s_); }
    System(const System&) = delete;
    System& operator=(const System&) = delete;
    casimir_system* get() { return s_; }

private:
    casimir_system* s_ = nullptr;
};

casimir_constraint constraint_of(const std::string& s) {
    if (s == "fixed-ratio") return CASIMIR_FIXED_RATIO;
    if (s == "fixed-position") return CASIMIR_FIXED_POSITION;
    if (s == "atom") return CASIMIR_ATOM_POSITION;
    throw UsageError("unknown constraint '" + s + "' (fixed-ratio, fixed-position, atom)");
}

// analytic and finite-difference results disagree beyond 1e-6 relative plus their error bounds
bool disagrees(const casimir_force& a, const casimir_force& b, double floor) {
    double scale = std::max(std::fabs(a.value), std::fabs(b.value));
    return std::fabs(a.value - b.value) > 1e-6 * scale + a.error_bound + b.error_bound + floor;
}

class Output {
public:
    Output(const Global& g, std::string command, json params, std::vector<std::string> argv)
        : g_(g), command_(std::move(command)), params_(std::move(params)), argv_(std::move(argv)) {}

    void comment(const std::string& line) { head_ += "# " + line + "\n"; }
    void columns(const std::vector<std::string>& cols) {
        std::string s;
        for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
        cols_ = s + "\n";
    }
    void row(const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
        body_ += s + "\n";
    }
    json& results() { return results_; }
    void warn(const std::string& w) {
        std::cerr << "warning: " << w << "\n";
        warnings_.push_back(w);
    }
    std::size_t warnings() const { return warnings_.size(); }

    void write_text(const std::string& text) {
        if (g_.out.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(g_.out, std::ios::binary);
        if (!f) throw UsageError("cannot open '" + g_.out + "' for writing");
        f << text;
        if (!f) throw NumericalError("failed writing '" + g_.out + "'");
        write_manifest();
    }

    void finish() {
        std::string params_line = "parameters: " + params_.dump();
        write_text("# casimir_cavity " + std::string(casimir_version()) + " " + command_ + "\n# " + params_line +
                   "\n" + head_ + cols_ + body_);
    }

private:
    void write_manifest() {
        json m;
        m["command"] = command_;
        m["parameters"] = params_;
        m["argv"] = argv_;
        m["outputs"] = json::array({g_.out});
        m["tool_version"] = casimir_version();
        m["timestamp"] = timestamp();
        if (!results_.is_null()) m["results"] = results_;
        if (!warnings_.empty()) m["warnings"] = warnings_;
        std::string path = g_.out + ".manifest.json";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw UsageError("cannot open '" + path + "' for writing");
        f << m.dump(2) << "\n";
    }

    const Global& g_;
    std::string command_;
    json params_;
    std::vector<std::string> argv_;
    std::string head_, cols_, body_;
    json results_;
    std::vector<std::string> warnings_;
};

json global_echo(const Global& g, int threads) {
    return {{"rel_tol", g.rel_tol}, {"abs_tol", g.abs_tol}, {"max_modes", g.max_modes},
            {"tail_policy", g.tail}, {"threads", threads}};
}

// energy

struct EnergyCmd {
    Physics phys;
    std::string x_grid = "201";
    std::string path = "series";
};

int run_energy(const EnergyCmd& c, const Global& g, const std::vector<std::string>& argv) {
    int threads = thread_count(g);
    json params = c.phys.echo();
    params["x_grid"] = c.x_grid;
    params["path"] = c.path;
    params["global"] = global_echo(g, threads);
    Output out(g, "energy", params, argv);

    Grid grid = parse_grid(c.x_grid);
    struct Task {
        Curve curve;
        double x;
    };
    std::vector<Task> tasks;
    for (const auto& cv : curves(c.phys))
        for (double x : grid_points(grid, 0, cv.L)) tasks.push_back({cv, x});

    struct Row {
        casimir_energy e{NAN, NAN, 0, 0};
        std::string error;
    };
    std::vector<Row> rows(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        try {
            System s(c.phys, g, tasks[i].curve, tasks[i].x);
            casimir_status st = c.path == "closed-form" ? casimir_energy_closed_form(s.get(), &rows[i].e)
                                                        : casimir_energy_series(s.get(), &rows[i].e);
            if (st != CASIMIR_OK) {
                rows[i].error = error_text(st);
                rows[i].e = {NAN, NAN, 0, 0};
            }
        } catch (const std::exception& e) {
            rows[i].error = e.what();
        }
    });

    out.comment("energy in units of 1/L");
    out.columns({"L", "Omega", "x_d", "energy", "error_bound", "path"});
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& r = rows[i];
        if (!r.error.empty()) out.warn("x_d=" + fmt(tasks[i].x) + ": " + r.error);
        out.row({fmt(tasks[i].curve.L), fmt(tasks[i].curve.Omega), fmt(tasks[i].x), fmt(r.e.value),
                 fmt(r.e.error_bound), r.error.empty() ? (r.e.closed_form ? "closed_form" : "series") : "failed"});
    }
    out.results() = {{"rows", tasks.size()}, {"failed_rows", out.warnings()}};
    out.finish();
    return exit_ok;
}

// force

struct ForceCmd {
    Physics phys;
    std::string constraint = "fixed-ratio";
    std::string sweep = "x";
    std::string x_grid = "201";
    std::string x;
    std::string alpha_grid = "101";
    std::string method = "analytic";
    bool no_fd_check = false;
};

int run_force(const ForceCmd& c, const Global& g, const std::vector<std::string>& argv) {
    int threads = thread_count(g);
    casimir_constraint con = constraint_of(c.constraint);
    json params = c.phys.echo();
    params["constraint"] = c.constraint;
    params["sweep"] = c.sweep;
    if (c.sweep == "x") {
        params["x_grid"] = c.x_grid;
    } else {
        params["x"] = c.x;
        params["alpha_grid"] = c.alpha_grid;
    }
    params["method"] = c.method;
    params["fd_check"] = !c.no_fd_check;
    params["global"] = global_echo(g, threads);
    Output out(g, "force", params, argv);

    bool alpha_sweep = c.sweep == "alpha";
    if (alpha_sweep && c.phys.coupling != "smeared") throw UsageError("--sweep alpha needs --coupling smeared");
    if (alpha_sweep && c.x.empty()) throw UsageError("--sweep alpha needs --x");

    struct Task {
        Curve curve;
        double x, alpha;
    };
    std::vector<Task> tasks;
    std::vector<std::pair<std::size_t, std::size_t>> spans;  // per curve
    for (const auto& cv : curves(c.phys)) {
        std::size_t first = tasks.size();
        if (alpha_sweep) {
            double x = parse_real(c.x);
            for (double a : grid_points(parse_grid(c.alpha_grid), 0, 1)) tasks.push_back({cv, x, a});
        } else {
            for (double x : grid_points(parse_grid(c.x_grid), 0, cv.L)) tasks.push_back({cv, x, c.phys.alpha_v});
        }
        spans.emplace_back(first, tasks.size());
    }

    struct Row {
        casimir_force f{NAN, NAN, 0, 0, 0};
        int suspect = -1;
        std::string error;
    };
    std::vector<Row> rows(tasks.size());
    double floor = 1e-9 * c.phys.lambda_v * c.phys.lambda_v;
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        Row& r = rows[i];
        try {
            Physics p = c.phys;
            p.alpha_v = tasks[i].alpha;
            System s(p, g, tasks[i].curve, tasks[i].x);
            casimir_status st = c.method == "fd" ? casimir_force_fd(s.get(), con, &r.f) : casimir_force_analytic(s.get(), con, &r.f);
            if (st != CASIMIR_OK) {
                r.error = error_text(st);
                r.f = {NAN, NAN, 0, 0, 0};
                return;
            }
            if (!c.no_fd_check && !r.f.finite_difference) {
                casimir_force fd{};
                casimir_status st2 = casimir_force_fd(s.get(), con, &fd);
                if (st2 == CASIMIR_OK) r.suspect = disagrees(r.f, fd, floor / (tasks[i].curve.L * tasks[i].curve.L));
            }
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });

    out.comment(std::string("force in units of 1/L^2, constraint ") + c.constraint);
    out.columns({"L", "Omega", alpha_sweep ? "alpha" : "x_d", "force", "error_bound", "method", "suspect"});
    json per_curve = json::array();
    int suspects = 0;
    for (std::size_t k = 0; k < spans.size(); ++k) {
        auto [first, last] = spans[k];
        json cr = {{"L", tasks[first].curve.L}, {"Omega", tasks[first].curve.Omega}};
        int changes = 0;
        bool has = false;
        double star = NAN;
        for (std::size_t i = first; i < last; ++i) {
            const auto& r = rows[i];
            if (!r.error.empty()) out.warn((alpha_sweep ? "alpha=" + fmt(tasks[i].alpha) : "x_d=" + fmt(tasks[i].x)) + ": " + r.error);
            if (r.suspect == 1) ++suspects;
            out.row({fmt(tasks[i].curve.L), fmt(tasks[i].curve.Omega), fmt(alpha_sweep ? tasks[i].alpha : tasks[i].x),
                     fmt(r.f.value), fmt(r.f.error_bound),
                     r.error.empty() ? (r.f.finite_difference ? "fd" : "analytic") : "failed",
                     r.suspect < 0 ? "" : std::to_string(r.suspect)});
            if (alpha_sweep && i + 1 < last) {
                double f0 = r.f.value, f1 = rows[i + 1].f.value;
                if ((f0 < 0 && f1 > 0) || (f0 > 0 && f1 < 0)) {
                    ++changes;
                    if (!has) {
                        has = true;
                        star = tasks[i].alpha + (tasks[i + 1].alpha - tasks[i].alpha) * f0 / (f0 - f1);
                    }
                }
            }
        }
        if (alpha_sweep) {
            cr["sign_changes"] = changes;
            cr["alpha_star"] = has ? json(star) : json(nullptr);
        }
        per_curve.push_back(cr);
    }
    out.results() = {{"rows", tasks.size()}, {"failed_rows", out.warnings()}, {"suspect_rows", suspects},
                     {"curves", per_curve}};
    out.finish();
    return exit_ok;
}

// medium

struct MediumCmd {
    Physics phys;
    std::string n_max = "100";
    std::string placement = "uniform";
    std::string positions;
    std::string constraint = "fixed-ratio";
    std::size_t table_points = 400;
    bool si = false;
    std::string L_meters = "1";
    bool find_critical = false;
    bool include_pairs = false;
    bool pair = false;
    std::size_t symmetric_sweep = 25;
};

std::vector<long long> n_values(long long n_max, std::size_t points) {
    std::vector<long long> v;
    if (n_max <= 0) return v;
    if (n_max <= 2000 || points == 0) {
        for (long long n = 1; n <= n_max; ++n) v.push_back(n);
        return v;
    }
    double lmax = std::log(static_cast<double>(n_max));
    for (std::size_t i = 0; i < points; ++i) {
        double t = points == 1 ? 1 : static_cast<double>(i) / static_cast<double>(points - 1);
        long long n = std::llround(std::exp(lmax * t));
        n = std::clamp<long long>(n, 1, n_max);
        if (v.empty() || n > v.back()) v.push_back(n);
    }
    if (v.back() != n_max) v.push_back(n_max);
    return v;
}

std::vector<double> placement_positions(const std::string& placement, long long n, double L) {
    std::vector<double> x;
    double lo = placement == "right-half" ? L / 2 : 0;
    double span = placement == "uniform" ? L : L / 2;
    for (long long k = 1; k <= n; ++k) x.push_back(lo + span * static_cast<double>(k) / static_cast<double>(n + 1));
    return x;
}

int run_medium(const MediumCmd& c, const Global& g, const std::vector<std::string>& argv) {
    int threads = thread_count(g);
    json params = c.phys.echo();
    params["N_max"] = c.n_max;
    params["placement"] = c.placement;
    if (!c.positions.empty()) params["positions"] = c.positions;
    params["constraint"] = c.constraint;
    params["table_points"] = c.table_points;
    params["si"] = c.si;
    if (c.si) params["L_meters"] = c.L_meters;
    params["find_critical"] = c.find_critical;
    params["include_pairs"] = c.include_pairs;
    params["pair"] = c.pair;
    if (c.pair) params["symmetric_sweep"] = c.symmetric_sweep;
    params["global"] = global_echo(g, threads);
    Output out(g, "medium", params, argv);

    double Lm = c.si ? parse_real(c.L_meters) : 1;
    if (!(Lm > 0)) throw UsageError("--L-meters must be positive");
    std::vector<std::string> constraints = split(c.constraint);
    for (const auto& s : constraints) {
        if (constraint_of(s) == CASIMIR_ATOM_POSITION) throw UsageError("medium forces act on the walls; use fixed-ratio or fixed-position");
    }
    auto force_unit = [&](double v, double L) {
        if (!c.si || std::isnan(v)) return v;
        double r = NAN;
        check(casimir_to_si(v * L * L, 1, Lm, &r));
        return r;
    };
    out.comment(c.si ? "forces in newtons, L_meters = " + fmt(Lm) : "forces in units of 1/L^2");

    if (c.pair) {
        if (c.symmetric_sweep < 1) throw UsageError("--symmetric-sweep needs at least one point");
        struct Task {
            Curve curve;
            std::string constraint;
            double d;
        };
        std::vector<Task> tasks;
        for (const auto& cv : curves(c.phys))
            for (const auto& con : constraints)
                for (std::size_t i = 0; i < c.symmetric_sweep; ++i)
                    tasks.push_back({cv, con, cv.L * static_cast<double>(i) / static_cast<double>(c.symmetric_sweep)});
        struct Row {
            casimir_energy e{NAN, NAN, 0, 0};
            casimir_force f{NAN, NAN, 0, 0, 0};
            std::string error;
        };
        std::vector<Row> rows(tasks.size());
        parallel_for(tasks.size(), threads, [&](std::size_t i) {
            Row& r = rows[i];
            try {
                const auto& t = tasks[i];
                System s(c.phys, g, t.curve, t.curve.L / 2);
                double xa = t.curve.L / 2 - t.d / 2, xb = t.curve.L / 2 + t.d / 2;
                casimir_status st = casimir_pair_energy(s.get(), xa, xb, &r.e);
                if (st == CASIMIR_OK) st = casimir_pair_force(s.get(), xa, xb, constraint_of(t.constraint), &r.f);
                if (st != CASIMIR_OK) r.error = error_text(st);
            } catch (const std::exception& e) {
                r.error = e.what();
            }
        });
        out.columns({"L", "Omega", "constraint", "separation", "x_a", "x_b", "pair_energy", "force", "error_bound",
                     "method"});
        int negative = 0;
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            const auto& t = tasks[i];
            const auto& r = rows[i];
            if (!r.error.empty()) out.warn("separation=" + fmt(t.d) + ": " + r.error);
            if (r.f.value < 0) ++negative;
            double e = r.e.value;
            if (c.si && !std::isnan(e)) check(casimir_to_si(e * t.curve.L, 0, Lm, &e));
            out.row({fmt(t.curve.L), fmt(t.curve.Omega), t.constraint, fmt(t.d), fmt(t.curve.L / 2 - t.d / 2),
                     fmt(t.curve.L / 2 + t.d / 2), fmt(e), fmt(force_unit(r.f.value, t.curve.L)),
                     fmt(force_unit(r.f.error_bound, t.curve.L)),
                     r.error.empty() ? (r.f.finite_difference ? "fd" : "analytic") : "failed"});
        }
        out.results() = {{"rows", tasks.size()}, {"failed_rows", out.warnings()}, {"negative_force_rows", negative}};
        out.finish();
        return exit_ok;
    }

    long long n_max = 0;
    {
        double v = parse_real(c.n_max);
        if (v < 0 || v != std::floor(v) || v > 9e15) throw UsageError("--N-max must be a non-negative integer");
        n_max = static_cast<long long>(v);
    }

    if (c.find_critical) {
        if (c.placement != "uniform") throw UsageError("--find-critical uses uniform placement");
        out.columns({"L", "Omega", "constraint", "N", "medium_force", "pair_force", "casimir_reference", "total_force"});
        json crit = json::array();
        bool numerical_failure = false;
        for (const auto& cv : curves(c.phys)) {
            for (const auto& con : constraints) {
                System s(c.phys, g, cv, cv.L / 2);
                casimir_scan* scan = nullptr;
                casimir_status st = casimir_critical_scan(s.get(), constraint_of(con), n_max, c.include_pairs,
                                                          c.table_points, &scan);
                json r = {{"L", cv.L}, {"Omega", cv.Omega}, {"constraint", con}};
                if (st != CASIMIR_OK && st != CASIMIR_NO_CROSSING) {
                    out.warn(con + ": " + error_text(st));
                    r["status"] = casimir_status_string(st);
                    crit.push_back(r);
                    casimir_scan_destroy(scan);
                    numerical_failure = true;
                    continue;
                }
                r["status"] = st == CASIMIR_OK ? "crossing" : "no_crossing";
                if (st == CASIMIR_OK) {
                    int64_t below = 0, above = 0;
                    casimir_scan_bracket(scan, &below, &above);
                    r["n_star"] = casimir_scan_n_star(scan);
                    r["n_below"] = below;
                    r["n_above"] = above;
                }
                r["pws_warning"] = casimir_scan_pws_warning(scan) != 0;
                double ref = 0;
                check(casimir_empty_cavity_force(cv.L, &ref));
                for (std::size_t i = 0; i < casimir_scan_rows(scan); ++i) {
                    casimir_scan_row row{};
                    check(casimir_scan_row_at(scan, i, &row));
                    out.row({fmt(cv.L), fmt(cv.Omega), con, std::to_string(row.atoms),
                             fmt(force_unit(row.medium_force, cv.L)), fmt(force_unit(row.pair_force, cv.L)),
                             fmt(force_unit(ref, cv.L)), fmt(force_unit(row.total_force, cv.L))});
                }
                casimir_scan_destroy(scan);
                crit.push_back(r);
            }
        }
        out.results() = {{"critical", crit}};
        out.finish();
        return numerical_failure ? exit_numerical : exit_ok;
    }

    std::vector<std::string> placements = split(c.placement);
    for (const auto& p : placements)
        if (p != "uniform" && p != "left-half" && p != "right-half" && p != "explicit")
            throw UsageError("unknown placement '" + p + "' (uniform, left-half, right-half, explicit)");
    std::vector<double> explicit_x;
    if (std::find(placements.begin(), placements.end(), "explicit") != placements.end()) {
        if (c.positions.empty()) throw UsageError("--placement explicit needs --positions");
        explicit_x = parse_list(c.positions);
    }

    struct Task {
        Curve curve;
        std::string constraint, placement;
        long long n;
    };
    std::vector<Task> tasks;
    for (const auto& cv : curves(c.phys))
        for (const auto& con : constraints)
            for (const auto& pl : placements) {
                if (pl == "explicit") {
                    tasks.push_back({cv, con, pl, static_cast<long long>(explicit_x.size())});
                    continue;
                }
                if (pl != "uniform" && n_max > 1000000) throw UsageError("half placements are limited to N <= 1e6");
                for (long long n : n_values(n_max, c.table_points)) tasks.push_back({cv, con, pl, n});
            }

    struct Row {
        casimir_force f{NAN, NAN, 0, 0, 0};
        int pws = 0;
        std::string error;
    };
    std::vector<Row> rows(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        Row& r = rows[i];
        try {
            const auto& t = tasks[i];
            System s(c.phys, g, t.curve, t.curve.L / 2);
            std::vector<double> x;
            if (t.placement == "explicit")
                x = explicit_x;
            else if (t.placement != "uniform")
                x = placement_positions(t.placement, t.n, t.curve.L);
            casimir_status st = casimir_medium_force(s.get(), t.n, x.empty() && t.placement == "uniform" ? nullptr : x.data(),
                                                     constraint_of(t.constraint), &r.f, &r.pws);
            if (st != CASIMIR_OK) {
                r.error = error_text(st);
                r.f = {NAN, NAN, 0, 0, 0};
            }
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    });

    out.columns({"L", "Omega", "constraint", "placement", "N", "medium_force", "error_bound", "casimir_reference",
                 "total_force", "pws_warning"});
    int pws_rows = 0;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto& t = tasks[i];
        const auto& r = rows[i];
        if (!r.error.empty()) out.warn("N=" + std::to_string(t.n) + ": " + r.error);
        pws_rows += r.pws;
        double ref = 0;
        check(casimir_empty_cavity_force(t.curve.L, &ref));
        out.row({fmt(t.curve.L), fmt(t.curve.Omega), t.constraint, t.placement, std::to_string(t.n),
                 fmt(force_unit(r.f.value, t.curve.L)), fmt(force_unit(r.f.error_bound, t.curve.L)),
                 fmt(force_unit(ref, t.curve.L)), fmt(force_unit(r.f.value + ref, t.curve.L)), std::to_string(r.pws)});
    }
    out.results() = {{"rows", tasks.size()}, {"failed_rows", out.warnings()}, {"pws_warning_rows", pws_rows},
                     {"medium_force_at_zero_atoms", n_max == 0 ? json(0.0) : json(nullptr)}};
    out.finish();
    return exit_ok;
}

// validate

struct ValidateCmd {
    unsigned long long seed = 1;
    int sets = 3;
    bool strict = false;
    bool no_pairs = false;
    bool inject = false;
};

int run_validate(const ValidateCmd& c, const Global& g, const std::vector<std::string>& argv) {
    int flags = (c.inject ? CASIMIR_VALIDATE_INJECT_SIGN_FLIP : 0) | (c.no_pairs ? CASIMIR_VALIDATE_SKIP_PAIRS : 0);
    casimir_report* rep = nullptr;
    check(casimir_validate(c.seed, c.sets, flags, &rep));
    std::string text = casimir_report_json(rep);
    int total = casimir_report_total(rep), failed = casimir_report_failed(rep), suspect = casimir_report_suspect(rep);
    casimir_report_destroy(rep);

    json params = {{"seed", c.seed}, {"sets", c.sets}, {"strict", c.strict}, {"pairs", !c.no_pairs},
                   {"inject_sign_flip", c.inject}};
    Output out(g, "validate", params, argv);
    out.results() = {{"total", total}, {"failed", failed}, {"suspect", suspect}};
    out.write_text(text + "\n");
    std::cerr << "validation: " << total << " checks, " << failed << " failed, " << suspect << " suspect\n";
    return failed > 0 && c.strict ? exit_validation : exit_ok;
}

// convert

struct ConvertCmd {
    std::string value;
    std::string unit = "force";
    std::string L_meters = "1";
};

int run_convert(const ConvertCmd& c, const Global& g, const std::vector<std::string>& argv) {
    double Lm = parse_real(c.L_meters);
    if (!(Lm > 0)) throw UsageError("--L-meters must be positive");
    json params = {{"value", c.value}, {"unit", c.unit}, {"L_meters", c.L_meters}};
    Output out(g, "convert", params, argv);
    out.comment(c.unit == "force" ? "natural units 1/L^2 to newtons" : "natural units 1/L to joules");
    out.columns({"value", "si"});
    for (double v : parse_list(c.value)) {
        double r = 0;
        check(casimir_to_si(v, c.unit == "force", Lm, &r));
        out.row({fmt(v), fmt(r)});
    }
    out.finish();
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    CLI::App app{"Casimir-Polder energies and forces for two-level atoms in a 1+1D cavity"};
    app.set_version_flag("--version", std::string(casimir_version()));
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    app.add_option("--out", g.out, "output file (CSV or JSON); a <out>.manifest.json is written next to it");
    app.add_option("--rel-tol", g.rel_tol, "relative tolerance of mode sums")->capture_default_str();
    app.add_option("--abs-tol", g.abs_tol, "absolute tolerance of mode sums (0: 1e-14 lambda^2)")->capture_default_str();
    app.add_option("--max-modes", g.max_modes, "mode cap for explicit summation")->capture_default_str();
    app.add_option("--threads", g.threads, "worker threads (CASIMIR_CAVITY_THREADS overrides)")->capture_default_str();
    app.add_option("--tail-policy", g.tail, "default, integral-bound or averaged")
        ->check(CLI::IsMember({"default", "integral-bound", "averaged"}))
        ->capture_default_str();

    EnergyCmd ec;
    auto* energy = app.add_subcommand("energy", "energy shift versus atom position");
    ec.phys.add(energy);
    energy->add_option("--x-grid", ec.x_grid, "point count over [0, L] or a list of positions")->capture_default_str();
    energy->add_option("--path", ec.path, "series or closed-form")
        ->check(CLI::IsMember({"series", "closed-form"}))
        ->capture_default_str();

    ForceCmd fc;
    auto* force = app.add_subcommand("force", "wall or atom force versus position or alpha");
    fc.phys.add(force);
    force->add_option("--constraint", fc.constraint, "fixed-ratio, fixed-position or atom")
        ->check(CLI::IsMember({"fixed-ratio", "fixed-position", "atom"}))
        ->capture_default_str();
    force->add_option("--sweep", fc.sweep, "x or alpha")->check(CLI::IsMember({"x", "alpha"}))->capture_default_str();
    force->add_option("--x-grid", fc.x_grid, "point count over [0, L] or a list of positions")->capture_default_str();
    force->add_option("--x", fc.x, "atom position for --sweep alpha");
    force->add_option("--alpha-grid", fc.alpha_grid, "point count over [0, 1] or a list")->capture_default_str();
    force->add_option("--method", fc.method, "analytic or fd")->check(CLI::IsMember({"analytic", "fd"}))->capture_default_str();
    force->add_flag("--no-fd-check", fc.no_fd_check, "skip the finite-difference cross-check behind the suspect column");

    MediumCmd mc;
    auto* medium = app.add_subcommand("medium", "forces from N atoms, critical atom number, pair terms");
    mc.phys.add(medium);
    medium->add_option("--N-max", mc.n_max, "largest atom count")->capture_default_str();
    medium->add_option("--placement", mc.placement, "uniform, left-half, right-half, explicit (comma list)")
        ->capture_default_str();
    medium->add_option("--positions", mc.positions, "atom positions for --placement explicit");
    medium->add_option("--constraint", mc.constraint, "fixed-ratio and/or fixed-position (comma list)")
        ->capture_default_str();
    medium->add_option("--table-points", mc.table_points, "rows when N-max exceeds 2000 (log spaced)")
        ->capture_default_str();
    medium->add_flag("--si", mc.si, "report forces in newtons");
    medium->add_option("--L-meters", mc.L_meters, "length unit in meters for --si")->capture_default_str();
    medium->add_flag("--find-critical", mc.find_critical, "locate the atom count where the net wall force changes sign");
    medium->add_flag("--include-pairs", mc.include_pairs, "add fourth-order pair forces to the critical scan (N <= 16)");
    medium->add_flag("--pair", mc.pair, "fourth-order pair force for two symmetric atoms");
    medium->add_option("--symmetric-sweep", mc.symmetric_sweep, "number of separations in [0, L)")->capture_default_str();

    ValidateCmd vc;
    auto* validate = app.add_subcommand("validate", "run the invariant suite and write a JSON report");
    validate->add_option("--seed", vc.seed, "seed of the random parameter sets")->capture_default_str();
    validate->add_option("--sets", vc.sets, "random parameter sets per case")->capture_default_str();
    validate->add_flag("--strict", vc.strict, "exit 1 if any check fails");
    validate->add_flag("--no-pairs", vc.no_pairs, "skip the fourth-order pair checks");
    validate->add_flag("--inject-sign-flip", vc.inject, "test fixture: corrupt the fixed-position force");

    ConvertCmd cc;
    auto* convert = app.add_subcommand("convert", "natural units to SI");
    convert->add_option("--value", cc.value, "value or comma list")->required();
    convert->add_option("--unit", cc.unit, "energy or force")->check(CLI::IsMember({"energy", "force"}))->capture_default_str();
    convert->add_option("--L-meters", cc.L_meters, "length unit in meters")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (g.threads < 1) throw UsageError("--threads must be at least 1");
        if (*energy) {
            ec.phys.resolve();
            return run_energy(ec, g, args);
        }
        if (*force) {
            fc.phys.resolve();
            return run_force(fc, g, args);
        }
        if (*medium) {
            mc.phys.resolve();
            return run_medium(mc, g, args);
        }
        if (*validate) return run_validate(vc, g, args);
        if (*convert) return run_convert(cc, g, args);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_usage;
}
