#include "fv1d/shootsolver.hpp"

#include <algorithm>
#include <cmath>

#include "fv1d/error.hpp"
#include "fv1d/parallel.hpp"
#include "fv1d/roots.hpp"

namespace fv1d::shoot {

namespace {

Coefficient coefficient(const PotentialSpec& pot, double m, double E) {
    return [&pot, m, E](double x) { return master_coefficient(pot, E, m, x); };
}

double kappa_right(const ShootingProblem& pr, double E) {
    const double k2 = pr.m * pr.m - E * E;
    return std::sqrt(std::max(k2, 0.0));
}

double kappa_left(const ShootingProblem& pr, double E) {
    const auto& ws = std::get<WoodsSaxon>(pr.pot);
    const double w = E + ws.v0;
    return pr.m * pr.m - w * w;
}

/// Initial state at -L for the WS problem.
OdeState ws_start(const ShootingProblem& pr, double E) {
    const double L = half_length(pr);
    if (pr.boundary == BoundaryMode::Box) {
        return {-L, 0.0, 1.0, 0.0};
    }
    const double k2 = kappa_left(pr, E);
    if (!(k2 > 0.0)) {
        throw Error(ErrorCode::OutsideDecayWindow, "ws_mismatch: kappa_-^2 <= 0");
    }
    const double km = std::sqrt(k2);
    // e^{-kappa L} carried in the log scale
    return {-L, 1.0, km, -km * L};
}

}  // namespace

void validate(const ShootingProblem& pr) {
    fv1d::validate(pr.pot);
    const bool pt = std::holds_alternative<PoschlTeller>(pr.pot);
    const bool ws = std::holds_alternative<WoodsSaxon>(pr.pot);
    if (!pt && !ws) {
        throw Error(ErrorCode::InvalidParameter, "shootsolver: needs poschl-teller or woods-saxon");
    }
    if (pt && pr.parity == Parity::None) {
        throw Error(ErrorCode::InvalidParameter, "shootsolver: poschl-teller needs a parity");
    }
    if (ws && pr.parity != Parity::None) {
        throw Error(ErrorCode::InvalidParameter, "shootsolver: woods-saxon has no parity");
    }
    if (!(pr.m > 0.0) || !(pr.e_lo > 0.0 && pr.e_lo < pr.e_hi && pr.e_hi < pr.m)) {
        throw Error(ErrorCode::InvalidParameter, "shootsolver: window must satisfy 0 < lo < hi < m");
    }
    if (pr.scan_points < 3) {
        throw Error(ErrorCode::InvalidParameter, "shootsolver: scan_points must be >= 3");
    }
    if (pr.L < 0.0) {
        throw Error(ErrorCode::InvalidParameter, "shootsolver: L must be positive");
    }
}

double half_length(const ShootingProblem& pr) {
    if (pr.L > 0.0) {
        return pr.L;
    }
    SolverConfig cfg;
    cfg.mass = pr.m;
    return domain(pr.pot, cfg).hi;
}

OdeState integrate(const PotentialSpec& pot, double m, double E, const OdeState& from, double to_x,
                   double tol) {
    return fv1d::integrate(coefficient(pot, m, E), from, to_x, tol);
}

double pt_mismatch(const ShootingProblem& pr, double E) {
    const double L = half_length(pr);
    const OdeState s0 = pr.parity == Parity::Even ? OdeState{0.0, 1.0, 0.0, 0.0}
                                                  : OdeState{0.0, 0.0, 1.0, 0.0};
    const OdeState s = integrate(pr.pot, pr.m, E, s0, L, pr.ode_tol);
    const double k = kappa_right(pr, E);
    return (s.dpsi + k * s.psi) / std::hypot(s.dpsi, k * s.psi);
}

double ws_mismatch(const ShootingProblem& pr, double E) {
    const double L = half_length(pr);
    const OdeState s = integrate(pr.pot, pr.m, E, ws_start(pr, E), L, pr.ode_tol);
    if (pr.boundary == BoundaryMode::Box) {
        return s.psi / std::hypot(s.psi, s.dpsi / std::max(pr.m, 1e-300));
    }
    const double k = kappa_right(pr, E);
    return (s.dpsi + k * s.psi) / std::hypot(s.dpsi, k * s.psi);
}

double join_mismatch(const ShootingProblem& pr, double E) {
    const double L = half_length(pr);
    const bool pt = std::holds_alternative<PoschlTeller>(pr.pot);
    const Coefficient q = coefficient(pr.pot, pr.m, E);
    OdeState left;
    if (pt) {
        left = pr.parity == Parity::Even ? OdeState{0.0, 1.0, 0.0, 0.0}
                                         : OdeState{0.0, 0.0, 1.0, 0.0};
    } else {
        left = ws_start(pr, E);
    }
    const double x0 = left.x;
    double xj = 0.5 * (x0 + L);
    constexpr int samples = 2000;
    for (int i = 1; i < samples; ++i) {
        const double x = x0 + (L - x0) * i / samples;
        if (q(x) > 0.0) {
            xj = x;
        }
    }
    OdeState right{L, 1.0, -kappa_right(pr, E), 0.0};
    if (!pt && pr.boundary == BoundaryMode::Box) {
        right = {L, 0.0, -1.0, 0.0};
    }
    const OdeState a = fv1d::integrate(q, left, xj, pr.ode_tol);
    const OdeState b = fv1d::integrate(q, right, xj, pr.ode_tol);
    const double w = a.dpsi * b.psi - a.psi * b.dpsi;
    return w / (std::abs(a.dpsi * b.psi) + std::abs(a.psi * b.dpsi));
}

double mismatch(const ShootingProblem& pr, double E) {
    return std::holds_alternative<PoschlTeller>(pr.pot) ? pt_mismatch(pr, E) : ws_mismatch(pr, E);
}

ScanReport solve(const ShootingProblem& problem) {
    validate(problem);
    ShootingProblem pr = problem;
    if (std::holds_alternative<WoodsSaxon>(pr.pot) && pr.boundary == BoundaryMode::Decay) {
        // restrict to kappa_-^2 > 0, i.e. E < m - v0
        const double cap = pr.m - std::get<WoodsSaxon>(pr.pot).v0;
        pr.e_hi = std::min(pr.e_hi, cap - 1e-12 * pr.m);
        if (!(pr.e_hi > pr.e_lo)) {
            return {};
        }
    }
    const int n = pr.scan_points;
    std::vector<double> es(n);
    for (int i = 0; i < n; ++i) {
        es[i] = pr.e_lo + (pr.e_hi - pr.e_lo) * i / (n - 1);
    }
    const std::vector<double> ms =
        parallel_map<double>(n, [&](std::size_t i) { return mismatch(pr, es[i]); });

    ScanReport report;
    for (int i = 0; i + 1 < n; ++i) {
        if ((ms[i] > 0.0) != (ms[i + 1] > 0.0) || ms[i] == 0.0) {
            report.brackets.push_back({es[i], es[i + 1]});
        }
    }
    const std::vector<EigenSolution> roots = parallel_map<EigenSolution>(
        report.brackets.size(), [&](std::size_t k) {
            const auto& br = report.brackets[k];
            auto f = [&](double E) { return mismatch(pr, E); };
            const RootResult r = brent(f, br.lo, br.hi, pr.root_tol);
            EigenSolution s;
            s.energy = r.root;
            s.parity = pr.parity;
            s.solver = SolverKind::Shooting;
            s.residual = join_mismatch(pr, r.root);
            const WaveFunction wf = build_wavefunction(pr, s, 4001);
            s.nodes = count_nodes(wf);
            return s;
        });
    for (const auto& s : roots) {
        report.roots.push_back(s);
    }
    std::sort(report.roots.begin(), report.roots.end(),
              [](const EigenSolution& a, const EigenSolution& b) { return a.energy < b.energy; });
    return report;
}

WaveFunction build_wavefunction(const ShootingProblem& pr, const EigenSolution& solution,
                                int grid_size) {
    const double L = half_length(pr);
    const double E = solution.energy;
    const Coefficient q = coefficient(pr.pot, pr.m, E);
    const bool pt = std::holds_alternative<PoschlTeller>(pr.pot);
    WaveFunction wf;
    wf.energy = E;
    wf.mass = pr.m;
    wf.grid = uniform_grid(-L, L, grid_size);
    const std::size_t n = wf.grid.size();
    wf.values.assign(n, 0.0);

    // outward from the left start, inward from x = L, joined at the right turning point
    // so that neither sweep runs into its growing solution
    const std::size_t first = pt ? (n - 1) / 2 : 0;
    std::size_t join = first;
    for (std::size_t i = first; i < n; ++i) {
        if (q(wf.grid[i]) > 0.0) {
            join = i;
        }
    }
    join = std::clamp<std::size_t>(join, first + 1, n - 2);

    OdeState left0;
    if (pt) {
        left0 = solution.parity == Parity::Even ? OdeState{wf.grid[first], 1.0, 0.0, 0.0}
                                                : OdeState{wf.grid[first], 0.0, 1.0, 0.0};
    } else {
        left0 = ws_start(pr, E);
    }
    std::vector<double> xl(wf.grid.begin() + first + 1, wf.grid.begin() + join + 1);
    std::vector<OdeState> ls = integrate_through(q, left0, xl, pr.ode_tol);
    ls.insert(ls.begin(), left0);

    // the join must not sit on a node of the left sweep
    double peak = 0.0;
    for (const auto& s : ls) {
        peak = std::max(peak, std::abs(s.psi) * std::exp(s.log_scale - ls.back().log_scale));
    }
    while (join > first + 1 &&
           std::abs(ls[join - first].psi) < 1e-3 * peak) {
        --join;
    }

    OdeState right0{L, 1.0, -kappa_right(pr, E), 0.0};
    if (!pt && pr.boundary == BoundaryMode::Box) {
        right0 = {L, 0.0, -1.0, 0.0};
    }
    std::vector<double> xr;
    for (std::size_t i = n - 1; i-- > join;) {
        xr.push_back(wf.grid[i]);
    }
    std::vector<OdeState> rs = integrate_through(q, right0, xr, pr.ode_tol);
    rs.insert(rs.begin(), right0);  // rs[k] sits at grid index n-1-k

    const OdeState& lm = ls[join - first];
    const OdeState& rm = rs[n - 1 - join];
    for (std::size_t i = first; i <= join; ++i) {
        const OdeState& s = ls[i - first];
        wf.values[i] = s.psi / lm.psi * std::exp(s.log_scale - lm.log_scale);
    }
    for (std::size_t i = join + 1; i < n; ++i) {
        const OdeState& s = rs[n - 1 - i];
        wf.values[i] = s.psi / rm.psi * std::exp(s.log_scale - rm.log_scale);
    }
    if (pt) {
        const double sign = solution.parity == Parity::Odd ? -1.0 : 1.0;
        for (std::size_t i = 0; i < first; ++i) {
            wf.values[i] = sign * wf.values[n - 1 - i].real();
        }
    }
    return normalize(wf, pr.pot, NormMode::L2);
}

}  // namespace fv1d::shoot
