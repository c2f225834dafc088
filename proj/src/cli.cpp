#include "fv1d/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fv1d/closedform.hpp"
#include "fv1d/error.hpp"
#include "fv1d/fvcore.hpp"
#include "fv1d/io.hpp"
#include "fv1d/matchsolver.hpp"
#include "fv1d/oracle.hpp"
#include "fv1d/parallel.hpp"
#include "fv1d/potentials.hpp"
#include "fv1d/shootsolver.hpp"

namespace fv1d::cli {
namespace {

using json = nlohmann::ordered_json;

struct Options {
    std::string command;
    std::string invocation;

    std::string potential = "coulomb";
    double mass = 1.0;
    std::optional<double> alpha, beta, delta, b, q, v0, d, big_r, a;

    std::string parity = "both";
    std::string branch = "particle";
    std::optional<double> emin, emax, L;
    int grid = 4001;
    int scan_points = 0;
    double ode_tol = 1e-10;
    std::string norm = "l2";
    std::string boundary = "box";

    std::string out;
    std::string format;
    bool no_manifest = false;

    int n = 0;
    int n_max = 1;
    double tol = 1e-5;
    std::vector<double> alphas{0.1};
    std::vector<double> masses{1.0, 2.0, 5.0, 10.0};
    std::string nr_form = "general";
};

enum class Family { Matching, Shooting, Closed };

struct Context {
    Options o;
    PotentialSpec pot;
    Family family = Family::Matching;
};

struct Level {
    int n = 0;
    EigenSolution sol;
};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidParameter, what); }

// ---------------------------------------------------------------- problem setup

PotentialSpec make_potential(const Options& o) {
    struct Flag {
        const char* name;
        bool set;
    };
    const std::vector<Flag> flags{{"--alpha", o.alpha.has_value()}, {"--beta", o.beta.has_value()},
                                  {"--delta", o.delta.has_value()}, {"--b", o.b.has_value()},
                                  {"--q", o.q.has_value()},         {"--v0", o.v0.has_value()},
                                  {"--d", o.d.has_value()},         {"--big-r", o.big_r.has_value()},
                                  {"--a", o.a.has_value()}};
    auto only = [&](std::vector<std::string> allowed) {
        for (const auto& f : flags) {
            if (f.set && std::find(allowed.begin(), allowed.end(), f.name) == allowed.end()) {
                bad(std::string(f.name) + " does not apply to " + o.potential);
            }
        }
    };
    PotentialSpec pot;
    if (o.potential == "coulomb") {
        only({"--alpha", "--delta"});
        pot = CoulombCutoff{o.alpha.value_or(0.25), o.delta.value_or(0.05)};
    } else if (o.potential == "cornell") {
        only({"--alpha", "--beta", "--delta"});
        pot = Cornell{o.alpha.value_or(0.45), o.beta.value_or(0.01), o.delta.value_or(0.10)};
    } else if (o.potential == "power-exp") {
        only({"--b", "--q"});
        pot = PowerExp{o.b.value_or(1.0), o.q.value_or(1.0), 1};
    } else if (o.potential == "poschl-teller") {
        only({"--v0", "--d"});
        pot = PoschlTeller{o.v0.value_or(1.0), o.d.value_or(3.0)};
    } else if (o.potential == "woods-saxon") {
        only({"--v0", "--big-r", "--a"});
        pot = WoodsSaxon{o.v0.value_or(0.5), o.big_r.value_or(0.0), o.a.value_or(1.0)};
    } else {
        bad("unknown potential " + o.potential);
    }
    validate(pot);
    return pot;
}

Context make_context(const Options& o) {
    Context c;
    c.o = o;
    c.pot = make_potential(o);
    if (!(o.mass > 0.0) || !std::isfinite(o.mass)) {
        bad("--mass must be positive");
    }
    if (o.grid < 3) {
        bad("--grid must be >= 3");
    }
    if (o.L && !(*o.L > 0.0)) {
        bad("--L must be positive");
    }
    if (std::holds_alternative<CoulombCutoff>(c.pot) || std::holds_alternative<Cornell>(c.pot)) {
        c.family = Family::Matching;
    } else if (std::holds_alternative<PowerExp>(c.pot)) {
        c.family = Family::Closed;
    } else {
        c.family = Family::Shooting;
    }
    if (std::holds_alternative<WoodsSaxon>(c.pot) && o.parity != "both") {
        bad("woods-saxon states have no parity; use --parity both");
    }
    if (c.family == Family::Closed && o.parity != "both") {
        bad("power-exp states live on the half-line and have no parity");
    }
    return c;
}

std::vector<Parity> requested_parities(const Options& o) {
    if (o.parity == "even") {
        return {Parity::Even};
    }
    if (o.parity == "odd") {
        return {Parity::Odd};
    }
    return {Parity::Even, Parity::Odd};
}

double window_lo(const Context& c, double fallback) { return c.o.emin.value_or(fallback * c.o.mass); }
double window_hi(const Context& c) { return c.o.emax.value_or(c.o.mass * (1.0 - 1e-6)); }

match::MatchingProblem match_problem(const Context& c, Parity parity) {
    match::MatchingProblem pr;
    pr.pot = c.pot;
    pr.m = c.o.mass;
    pr.parity = parity;
    pr.e_lo = window_lo(c, 0.01);
    pr.e_hi = window_hi(c);
    if (c.o.scan_points > 0) {
        pr.scan_points = c.o.scan_points;
    }
    return pr;
}

shoot::ShootingProblem shoot_problem(const Context& c, Parity parity) {
    shoot::ShootingProblem pr;
    pr.pot = c.pot;
    pr.m = c.o.mass;
    pr.parity = std::holds_alternative<WoodsSaxon>(c.pot) ? Parity::None : parity;
    pr.e_lo = window_lo(c, 1e-4);
    pr.e_hi = window_hi(c);
    pr.L = c.o.L.value_or(0.0);
    pr.ode_tol = c.o.ode_tol;
    pr.boundary = c.o.boundary == "decay" ? BoundaryMode::Decay : BoundaryMode::Box;
    if (c.o.scan_points > 0) {
        pr.scan_points = c.o.scan_points;
    }
    return pr;
}

// ---------------------------------------------------------------- spectra

bool by_energy(const Level& x, const Level& y) { return x.sol.energy < y.sol.energy; }

/// Particle-branch levels. n counts within the parity class for the cutoff
/// potentials and in global energy order otherwise.
std::vector<Level> particle_levels(const Context& c, bool all_parities = false) {
    std::vector<Level> levels;
    switch (c.family) {
        case Family::Matching: {
            const auto parities =
                all_parities ? std::vector<Parity>{Parity::Even, Parity::Odd} : requested_parities(c.o);
            for (Parity p : parities) {
                const auto rep = match::solve(match_problem(c, p));
                for (std::size_t i = 0; i < rep.roots.size(); ++i) {
                    levels.push_back({static_cast<int>(i), rep.roots[i]});
                }
            }
            std::stable_sort(levels.begin(), levels.end(), by_energy);
            break;
        }
        case Family::Shooting: {
            const bool ws = std::holds_alternative<WoodsSaxon>(c.pot);
            const auto parities = ws ? std::vector<Parity>{Parity::None}
                                     : std::vector<Parity>{Parity::Even, Parity::Odd};
            for (Parity p : parities) {
                for (const auto& s : shoot::solve(shoot_problem(c, p)).roots) {
                    levels.push_back({0, s});
                }
            }
            std::stable_sort(levels.begin(), levels.end(), by_energy);
            for (std::size_t i = 0; i < levels.size(); ++i) {
                levels[i].n = static_cast<int>(i);
            }
            if (!all_parities && !ws && c.o.parity != "both") {
                const Parity keep = requested_parities(c.o).front();
                std::erase_if(levels, [&](const Level& l) { return l.sol.parity != keep; });
            }
            break;
        }
        case Family::Closed: {
            if (c.o.n_max < 0) {
                bad("--n-max must be >= 0");
            }
            const auto& pe = std::get<PowerExp>(c.pot);
            for (int k = 0; k <= c.o.n_max; ++k) {
                EigenSolution s;
                s.energy = closed::powerexp_energy(k, pe.q, c.o.mass);
                s.parity = Parity::None;
                s.nodes = k;
                s.solver = SolverKind::ClosedForm;
                levels.push_back({k, s});
            }
            break;
        }
    }
    return levels;
}

std::vector<Level> levels_with_branch(const Context& c) {
    std::vector<Level> particle = particle_levels(c);
    if (c.o.branch == "particle") {
        return particle;
    }
    std::vector<Level> anti = particle;
    for (auto& l : anti) {
        l.sol = conjugate_spectrum({l.sol}).front();
    }
    if (c.o.branch == "antiparticle") {
        return anti;
    }
    particle.insert(particle.end(), anti.begin(), anti.end());
    return particle;
}

const Level& select_level(const Context& c, const std::vector<Level>& levels) {
    const bool any_parity = c.o.parity == "both";
    const Parity want = any_parity ? Parity::None : requested_parities(c.o).front();
    for (const auto& l : levels) {
        if (l.n == c.o.n && (any_parity || l.sol.parity == want)) {
            return l;
        }
    }
    throw Error(ErrorCode::LevelNotFound, "no level n=" + std::to_string(c.o.n) +
                                              " with parity " + c.o.parity);
}

WaveFunction level_wavefunction(const Context& c, const Level& level) {
    WaveFunction wf;
    switch (c.family) {
        case Family::Matching:
            wf = match::build_wavefunction(match_problem(c, level.sol.parity), level.sol, c.o.grid,
                                           c.o.L);
            break;
        case Family::Shooting:
            wf = shoot::build_wavefunction(shoot_problem(c, level.sol.parity), level.sol, c.o.grid);
            break;
        case Family::Closed: {
            SolverConfig cfg;
            cfg.mass = c.o.mass;
            cfg.half_length = c.o.L;
            const Interval dom = domain(c.pot, cfg);
            const auto state = closed::powerexp_state(level.n, std::get<PowerExp>(c.pot), c.o.mass);
            wf = closed::powerexp_wavefunction(state, uniform_grid(dom.lo, dom.hi, c.o.grid));
            break;
        }
    }
    if (c.o.norm == "charge") {
        wf = normalize(wf, c.pot, NormMode::Charge);
    }
    return wf;
}

// ---------------------------------------------------------------- output

using Cell = std::variant<double, int, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_cell(const Cell& c) {
    if (const auto* v = std::get_if<double>(&c)) {
        return std::isfinite(*v) ? io::sci(*v) : std::string("nan");
    }
    if (const auto* v = std::get_if<int>(&c)) {
        return std::to_string(*v);
    }
    if (const auto* v = std::get_if<bool>(&c)) {
        return *v ? "1" : "0";
    }
    return std::get<std::string>(c);
}

json json_cell(const Cell& c) {
    return std::visit([](const auto& v) -> json { return v; }, c);
}

std::string to_csv(const Table& t) {
    io::CsvWriter w(t.columns);
    std::vector<std::string> cells;
    for (const auto& r : t.rows) {
        cells.clear();
        for (const auto& c : r) {
            cells.push_back(csv_cell(c));
        }
        w.row(cells);
    }
    return w.str();
}

json rows_json(const Table& t) {
    json arr = json::array();
    for (const auto& r : t.rows) {
        json obj = json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            obj[t.columns[i]] = json_cell(r[i]);
        }
        arr.push_back(std::move(obj));
    }
    return arr;
}

json potential_json(const PotentialSpec& pot) {
    json j;
    j["name"] = potential_name(pot);
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, CoulombCutoff>) {
                j["alpha"] = p.alpha;
                j["delta"] = p.delta;
            } else if constexpr (std::is_same_v<T, Cornell>) {
                j["alpha"] = p.alpha;
                j["beta"] = p.beta;
                j["delta"] = p.delta;
            } else if constexpr (std::is_same_v<T, PowerExp>) {
                j["b"] = p.b;
                j["q"] = p.q;
                j["p"] = p.p;
            } else if constexpr (std::is_same_v<T, PoschlTeller>) {
                j["v0"] = p.v0;
                j["d"] = p.d;
            } else {
                j["v0"] = p.v0;
                j["big_r"] = p.big_r;
                j["a"] = p.a;
            }
        },
        pot);
    return j;
}

std::string utc_timestamp() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

json manifest(const Context& c) {
    const Options& o = c.o;
    json solver;
    solver["mass"] = o.mass;
    solver["parity"] = o.parity;
    solver["branch"] = o.branch;
    solver["emin"] = o.emin ? json(*o.emin) : json(nullptr);
    solver["emax"] = o.emax ? json(*o.emax) : json(nullptr);
    solver["L"] = o.L ? json(*o.L) : json(nullptr);
    solver["grid"] = o.grid;
    solver["scan_points"] = o.scan_points;
    solver["ode_tol"] = o.ode_tol;
    solver["norm"] = o.norm;
    solver["boundary"] = o.boundary;
    json m;
    m["command"] = o.invocation;
    m["potential"] = potential_json(c.pot);
    m["solver"] = solver;
    m["version"] = kVersion;
    m["timestamp"] = utc_timestamp();
    return m;
}

void write_result(const Context& c, const Table& t, const std::string& key, json extra,
                  std::ostream& out) {
    if (c.o.format == "csv") {
        io::emit(c.o.out, to_csv(t), out);
        return;
    }
    json doc = std::move(extra);
    if (doc.is_null()) {
        doc = json::object();
    }
    doc[key] = rows_json(t);
    if (!c.o.no_manifest) {
        doc["manifest"] = manifest(c);
    }
    io::emit(c.o.out, doc.dump(2) + "\n", out);
}

// ---------------------------------------------------------------- commands

int cmd_solve(const Context& c, std::ostream& out) {
    const auto levels = levels_with_branch(c);
    Table t;
    if (c.o.format == "csv") {
        t.columns = {"n", "parity", "branch", "energy", "nodes"};
    } else {
        t.columns = {"n", "parity", "branch", "energy", "nodes", "residual"};
    }
    for (const auto& l : levels) {
        std::vector<Cell> r{l.n, to_string(l.sol.parity), to_string(l.sol.branch), l.sol.energy,
                            l.sol.nodes};
        if (c.o.format != "csv") {
            r.emplace_back(l.sol.residual);
        }
        t.rows.push_back(std::move(r));
    }
    write_result(c, t, "levels", nullptr, out);
    return Ok;
}

int cmd_wavefunction(const Context& c, std::ostream& out) {
    if (c.o.branch != "particle") {
        bad("wavefunction exports the particle branch only");
    }
    const auto levels = particle_levels(c);
    const Level& level = select_level(c, levels);
    const WaveFunction wf = level_wavefunction(c, level);
    const SpinorField s = reconstruct_spinor(wf, c.pot);
    const auto ratio = component_ratio(s);
    if (c.o.format == "csv") {
        io::emit(c.o.out, io::wavefunction_csv(wf, s, ratio), out);
        return Ok;
    }
    Table t;
    t.columns = {"x", "psi_s_re", "psi_s_im", "psi1_re", "psi1_im", "psi2_re", "psi2_im", "rho",
                 "f", "ratio"};
    for (std::size_t i = 0; i < wf.grid.size(); ++i) {
        t.rows.push_back({wf.grid[i], wf.values[i].real(), wf.values[i].imag(), s.psi1[i].real(),
                          s.psi1[i].imag(), s.psi2[i].real(), s.psi2[i].imag(), s.rho[i], s.f[i],
                          ratio[i].value_or(std::nan(""))});
    }
    json head;
    head["level"] = {{"n", level.n},
                     {"parity", to_string(level.sol.parity)},
                     {"energy", level.sol.energy},
                     {"nodes", level.sol.nodes}};
    write_result(c, t, "points", head, out);
    return Ok;
}

struct ScanRow {
    double E = 0.0;
    double residual = 0.0;
    bool pole = false;
    double u = 0.0;          // exterior U at the cutoff
    double interior = 0.0;   // cos(p delta) or sin(p delta)
};

double cutoff_of(const PotentialSpec& pot) {
    if (const auto* c = std::get_if<CoulombCutoff>(&pot)) {
        return c->delta;
    }
    return std::get<Cornell>(pot).delta;
}

int cmd_scan(const Context& c, std::ostream& out) {
    if (c.family == Family::Closed) {
        bad("scan needs a matching or shooting problem");
    }
    const int npts = c.o.scan_points > 0 ? c.o.scan_points : 401;
    const auto parities = std::holds_alternative<WoodsSaxon>(c.pot) ? std::vector<Parity>{Parity::None}
                                                                    : requested_parities(c.o);
    Table t;
    t.columns = {"E", "residual", "pole_flag", "parity"};
    for (Parity p : parities) {
        std::function<ScanRow(std::size_t)> eval;
        std::vector<double> es;
        if (c.family == Family::Matching) {
            const auto pr = match_problem(c, p);
            match::validate(pr);
            es = uniform_grid(pr.e_lo, pr.e_hi, npts);
            eval = [&, pr](std::size_t i) {
                ScanRow r{es[i], std::nan(""), false};
                try {
                    const auto im = match::interior_momentum(pr.pot, es[i], pr.m);
                    const double pd = im.value * cutoff_of(pr.pot);
                    r.interior = im.imaginary ? (p == Parity::Even ? 1.0 : std::sinh(pd))
                                              : (p == Parity::Even ? std::cos(pd) : std::sin(pd));
                    r.u = match::exterior_u(pr.pot, es[i], pr.m);
                    r.pole = std::abs(r.u) <= pr.pole_threshold;
                    r.residual = match::matching_residual(pr, es[i]);
                } catch (const Error&) {
                    r.pole = true;
                }
                return r;
            };
        } else {
            const auto pr = shoot_problem(c, p);
            shoot::validate(pr);
            es = uniform_grid(pr.e_lo, pr.e_hi, npts);
            eval = [&, pr](std::size_t i) {
                ScanRow r{es[i], std::nan(""), false};
                try {
                    r.residual = shoot::mismatch(pr, es[i]);
                } catch (const Error&) {
                    r.pole = true;
                }
                return r;
            };
        }
        auto rows = parallel_map<ScanRow>(es.size(), eval);
        // a U zero or an interior pole between two rows flips the residual through infinity
        for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
            if (rows[i].u * rows[i + 1].u < 0.0 || rows[i].interior * rows[i + 1].interior < 0.0) {
                rows[i].pole = rows[i + 1].pole = true;
            }
        }
        for (const auto& r : rows) {
            t.rows.push_back({r.E, r.residual, r.pole, to_string(p)});
        }
    }
    write_result(c, t, "rows", nullptr, out);
    return Ok;
}

int cmd_nrlimit(const Context& c, std::ostream& out) {
    if (c.o.nr_form != "general" && c.o.nr_form != "weak") {
        bad("--nr-form must be general or weak");
    }
    const auto form = c.o.nr_form == "weak" ? closed::NrForm::Weak : closed::NrForm::General;
    Table t;
    t.columns = {"alpha", "m", "E_rel", "E_nr", "gap"};
    for (double alpha : c.o.alphas) {
        for (const auto& r : closed::nr_limit_compare(c.o.n, alpha, c.o.masses, form)) {
            t.rows.push_back({r.alpha, r.m, r.E_relativistic, r.E_nonrel, r.gap});
        }
    }
    write_result(c, t, "rows", nullptr, out);
    return Ok;
}

int cmd_oracle_check(const Context& c, std::ostream& out) {
    if (c.family == Family::Closed) {
        bad("oracle-check has no discrete decay condition for power-exp");
    }
    oracle::OracleConfig oc;
    std::vector<Level> primary;
    if (c.family == Family::Matching) {
        const auto pr = match_problem(c, Parity::Even);
        oc.e_lo = pr.e_lo;
        oc.e_hi = std::min(pr.e_hi, pr.m * (1.0 - 1e-6));
        SolverConfig cfg;
        cfg.mass = c.o.mass;
        cfg.half_length = c.o.L;
        oc.domain = domain(c.pot, cfg);
        oc.boundary = BoundaryMode::Decay;
    } else {
        const auto pr = shoot_problem(c, Parity::Even);
        const double L = shoot::half_length(pr);
        oc.e_lo = pr.e_lo;
        oc.e_hi = pr.e_hi;
        oc.domain = {-L, L};
        oc.boundary = std::holds_alternative<WoodsSaxon>(c.pot) ? pr.boundary : BoundaryMode::Decay;
        if (std::holds_alternative<WoodsSaxon>(c.pot) && pr.boundary == BoundaryMode::Decay) {
            oc.e_hi = std::min(oc.e_hi, c.o.mass - std::get<WoodsSaxon>(c.pot).v0);
        }
    }
    primary = particle_levels(c, true);
    const auto reference = oracle::oracle_spectrum(c.pot, c.o.mass, oc);

    Table t;
    t.columns = {"index", "parity", "primary", "oracle", "gap"};
    bool pass = primary.size() == reference.size();
    double worst = 0.0;
    const std::size_t rows = std::max(primary.size(), reference.size());
    for (std::size_t i = 0; i < rows; ++i) {
        const double e1 = i < primary.size() ? primary[i].sol.energy : std::nan("");
        const double e2 = i < reference.size() ? reference[i] : std::nan("");
        const double gap = std::abs(e1 - e2);
        if (!(gap < c.o.tol)) {
            pass = false;
        }
        if (std::isfinite(gap)) {
            worst = std::max(worst, gap);
        }
        const std::string par = i < primary.size() ? to_string(primary[i].sol.parity) : "none";
        t.rows.push_back({static_cast<int>(i), par, e1, e2, gap});
    }
    json head;
    head["tol"] = c.o.tol;
    head["primary_count"] = primary.size();
    head["oracle_count"] = reference.size();
    head["max_gap"] = worst;
    head["pass"] = pass;
    write_result(c, t, "rows", head, out);
    return pass ? Ok : OracleGap;
}

// ---------------------------------------------------------------- parsing

void add_optional(CLI::App& app, const std::string& name, std::optional<double>& target,
                  const std::string& help) {
    app.add_option_function<double>(name, [&target](const double& v) { target = v; }, help);
}

std::string join_args(int argc, const char* const* argv) {
    std::ostringstream s;
    s << "fv1d";
    for (int i = 1; i < argc; ++i) {
        s << ' ' << argv[i];
    }
    return s.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Feshbach-Villars bound states of one-dimensional potentials", "fv1d"};
    app.set_version_flag("--version", std::string(kVersion));
    app.set_config("--config", "", "Read `key = value` lines ('#' comments); flags override");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1);

    app.add_option("--potential", o.potential, "Potential family")
        ->check(CLI::IsMember({"coulomb", "cornell", "power-exp", "poschl-teller", "woods-saxon"}));
    app.add_option("--mass", o.mass, "Particle mass m");
    add_optional(app, "--alpha", o.alpha, "Coupling alpha (coulomb, cornell)");
    add_optional(app, "--beta", o.beta, "Linear slope beta (cornell)");
    add_optional(app, "--delta", o.delta, "Cutoff radius delta (coulomb, cornell)");
    add_optional(app, "--b", o.b, "Depth b (power-exp)");
    add_optional(app, "--q", o.q, "Range q (power-exp)");
    add_optional(app, "--v0", o.v0, "Depth eV0 (poschl-teller, woods-saxon)");
    add_optional(app, "--d", o.d, "Width d (poschl-teller)");
    add_optional(app, "--big-r", o.big_r, "Centre R (woods-saxon)");
    add_optional(app, "--a", o.a, "Diffuseness a (woods-saxon)");
    app.add_option("--parity", o.parity, "Parity class")
        ->check(CLI::IsMember({"even", "odd", "both"}));
    app.add_option("--branch", o.branch, "Spectrum branch")
        ->check(CLI::IsMember({"particle", "antiparticle", "both"}));
    add_optional(app, "--emin", o.emin, "Lower end of the energy window");
    add_optional(app, "--emax", o.emax, "Upper end of the energy window");
    add_optional(app, "--L", o.L, "Domain half-length");
    app.add_option("--grid", o.grid, "Wavefunction grid points");
    app.add_option("--scan-points", o.scan_points, "Energy scan points (0: solver default)");
    app.add_option("--ode-tol", o.ode_tol, "Shooting ODE tolerance");
    app.add_option("--norm", o.norm, "Wavefunction normalisation")
        ->check(CLI::IsMember({"l2", "charge"}));
    app.add_option("--boundary", o.boundary, "Woods-Saxon boundary condition")
        ->check(CLI::IsMember({"decay", "box"}));
    app.add_option("--out", o.out, "Output path (default: stdout)");
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--no-manifest", o.no_manifest, "Omit the run manifest from JSON output");
    app.add_option("--n", o.n, "Level index (wavefunction) or nr level (nrlimit)");
    app.add_option("--n-max", o.n_max, "Highest power-exp level");
    app.add_option("--tol", o.tol, "oracle-check gap tolerance");
    app.add_option("--alphas", o.alphas, "nrlimit couplings")->delimiter(',');
    app.add_option("--masses", o.masses, "nrlimit masses")->delimiter(',');
    app.add_option("--nr-form", o.nr_form, "nrlimit binding formula")
        ->check(CLI::IsMember({"general", "weak"}));

    const std::vector<std::pair<std::string, std::string>> commands{
        {"solve", "Bound-state spectrum"},
        {"scan", "Residual or mismatch trace along E"},
        {"wavefunction", "Wavefunction, FV components, density and ratio"},
        {"nrlimit", "Compare with the non-relativistic Coulomb formula"},
        {"oracle-check", "Compare the spectrum with the node-counting oracle"}};
    for (const auto& [name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough()->callback([&o, n = name] { o.command = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : BadInput;
    }
    o.invocation = join_args(argc, argv);
    if (o.format.empty()) {
        o.format = (o.command == "solve" || o.command == "oracle-check") ? "json" : "csv";
    }

    try {
        const Context c = make_context(o);
        if (o.command == "solve") {
            return cmd_solve(c, out);
        }
        if (o.command == "wavefunction") {
            return cmd_wavefunction(c, out);
        }
        if (o.command == "scan") {
            return cmd_scan(c, out);
        }
        if (o.command == "nrlimit") {
            return cmd_nrlimit(c, out);
        }
        return cmd_oracle_check(c, out);
    } catch (const Error& e) {
        err << "fv1d: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::InvalidParameter:
            case ErrorCode::DomainError:
                return BadInput;
            case ErrorCode::LevelNotFound:
                return LevelMissing;
            default:
                return SolverFailure;
        }
    } catch (const std::exception& e) {
        err << "fv1d: " << e.what() << "\n";
        return SolverFailure;
    }
}

}  // namespace fv1d::cli
