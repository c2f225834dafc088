#include "fv1d/matchsolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fv1d/error.hpp"
#include "fv1d/ode.hpp"
#include "fv1d/parallel.hpp"
#include "fv1d/roots.hpp"
#include "fv1d/specfun.hpp"

namespace fv1d::match {

namespace {

constexpr double kPi = std::numbers::pi;

double cutoff_delta(const PotentialSpec& pot) {
    if (const auto* c = std::get_if<CoulombCutoff>(&pot)) {
        return c->delta;
    }
    if (const auto* c = std::get_if<Cornell>(&pot)) {
        return c->delta;
    }
    throw Error(ErrorCode::InvalidParameter, "matchsolver: potential has no cutoff");
}

double mu_tilde(double alpha) {
    return 0.5 * std::sqrt(std::max(0.0, 1.0 - 4.0 * alpha * alpha));
}

/// Exterior solution data shared by the residual, the wavefunction and the node count.
struct Exterior {
    TricomiArgs at_delta;
    double lambda_w = 0.0;  // Whittaker normal form W_{lambda_w, mu_w}(z)
    double mu_w = 0.0;
    bool coulomb = true;
    double k = 0.0;               // Coulomb: z = 2 k x
    double beta = 0.0;            // Cornell: z = beta x^2
    double power = 0.0;           // Cornell prefactor x^power
};

Exterior exterior(const PotentialSpec& pot, double E, double m) {
    Exterior ex;
    if (const auto* c = std::get_if<CoulombCutoff>(&pot)) {
        const double k2 = m * m - E * E;
        if (!(k2 > 0.0)) {
            throw Error(ErrorCode::InvalidParameter, "exterior: E outside the mass gap");
        }
        ex.k = std::sqrt(k2);
        const double lambda = E * c->alpha / ex.k;
        const double mu = mu_tilde(c->alpha);
        ex.at_delta = {mu - lambda + 0.5, 1.0 + 2.0 * mu, 2.0 * ex.k * c->delta};
        ex.lambda_w = lambda;
        ex.mu_w = mu;
        ex.coulomb = true;
        return ex;
    }
    const auto& c = std::get<Cornell>(pot);
    const double mt = mu_tilde(c.alpha);
    const double a = (mt + 1.5) / 2.0 + (m * m - E * E) / (4.0 * c.beta) -
                     E * c.alpha / std::sqrt(2.0 * c.beta);
    const double b = mt + 0.5;
    ex.at_delta = {a, b, c.beta * c.delta * c.delta};
    ex.lambda_w = 0.5 * b - a;
    ex.mu_w = 0.5 * (b - 1.0);
    ex.coulomb = false;
    ex.beta = c.beta;
    ex.power = mt + 0.5;
    return ex;
}

double ex_z(const Exterior& ex, double x) {
    return ex.coulomb ? 2.0 * ex.k * x : ex.beta * x * x;
}

/// ln|psi_out(x)| and its sign.
std::pair<double, double> exterior_log(const Exterior& ex, double x) {
    const double z = ex_z(ex, x);
    const double u = specfun::tricomi_u(ex.at_delta.a, ex.at_delta.b, z);
    const double lu = std::log(std::abs(u));
    const double sign = u < 0.0 ? -1.0 : 1.0;
    if (ex.coulomb) {
        return {-0.5 * z + (ex.mu_w + 0.5) * std::log(z) + lu, sign};
    }
    return {ex.power * std::log(x) - 0.5 * z + lu, sign};
}

/// cos(p delta) (even) or sin(p delta)/(p delta) (odd), continued to p = i q.
double interior_denominator(const InteriorMomentum& im, double delta, Parity parity) {
    const double t = im.value * delta;
    if (parity == Parity::Even) {
        return im.imaginary ? std::cosh(t) : std::cos(t);
    }
    if (t < 1e-8) {
        return 1.0;
    }
    return im.imaginary ? std::sinh(t) / t : std::sin(t) / t;
}

int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

struct Sample {
    double E = 0.0;
    double R = 0.0;
    double U = 0.0;
    double D = 0.0;
    bool ok = false;
};

Sample sample(const MatchingProblem& pr, double E) {
    Sample s;
    s.E = E;
    const double delta = cutoff_delta(pr.pot);
    s.D = interior_denominator(interior_momentum(pr.pot, E, pr.m), delta, pr.parity);
    try {
        s.U = exterior_u(pr.pot, E, pr.m);
        s.R = matching_residual(pr, E);
        s.ok = std::isfinite(s.R);
    } catch (const Error&) {
        s.ok = false;
    }
    return s;
}

struct RawScan {
    std::vector<Bracket> brackets;
    std::vector<RejectedBracket> rejected;
    std::vector<std::pair<double, double>> roots;  // energy, residual
};

std::vector<double> scan_grid(const MatchingProblem& pr, int n) {
    std::vector<double> es;
    es.reserve(2 * n);
    const double lo = pr.e_lo;
    const double hi = pr.e_hi;
    for (int i = 0; i < n; ++i) {
        es.push_back(lo + (hi - lo) * i / (n - 1));
    }
    // uniform in 1/k resolves the accumulation of levels below m
    const double m = pr.m;
    const double s_lo = 1.0 / std::sqrt(m * m - lo * lo);
    const double s_hi = 1.0 / std::sqrt(m * m - hi * hi);
    for (int i = 0; i < n; ++i) {
        const double s = s_lo + (s_hi - s_lo) * i / (n - 1);
        const double e = std::sqrt(std::max(0.0, m * m - 1.0 / (s * s)));
        if (e > lo && e < hi) {
            es.push_back(e);
        }
    }
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    return es;
}

/// Interval around a zero of g inside [lo, hi] where |g| < thr.
std::pair<double, double> exclusion(const std::function<double(double)>& g, double lo, double hi,
                                    double thr, double xtol) {
    const double glo = g(lo);
    const double ghi = g(hi);
    const RootResult z = brent(g, lo, hi, glo, ghi, xtol);
    // tight pair (l, h) with sgn g(l) = sgn g(lo) and sgn g(h) = sgn g(hi)
    auto walk = [&](double from, double toward, int want) {
        double step = std::max(4.0 * std::numeric_limits<double>::epsilon() * std::abs(from), 1e-300);
        double e = from;
        const double dir = toward > from ? 1.0 : -1.0;
        while (sgn(g(e)) != want && (toward - e) * dir > 0.0) {
            e = std::clamp(e + dir * step, std::min(from, toward), std::max(from, toward));
            step *= 2.0;
        }
        return e;
    };
    double l = z.root;
    double h = z.root;
    if (sgn(g(z.root)) == sgn(glo)) {
        h = walk(z.root, hi, sgn(ghi));
    } else {
        l = walk(z.root, lo, sgn(glo));
    }
    auto edge = [&](double from, double gfrom, double inner) {
        if (std::abs(g(inner)) > thr) {
            return inner;
        }
        if (std::abs(gfrom) <= thr) {
            return from;
        }
        auto f = [&](double e) { return std::abs(g(e)) - thr; };
        double e = brent(f, from, inner, std::abs(gfrom) - thr, f(inner), xtol).root;
        // a steep g can leave the refined edge a few ulps on the wrong side
        double step = std::max(4.0 * std::numeric_limits<double>::epsilon() * std::abs(e), 1e-300);
        const double dir = from > inner ? 1.0 : -1.0;
        while (std::abs(g(e)) <= thr && (from - e) * dir > 0.0) {
            e += dir * step;
            step *= 2.0;
        }
        return (from - e) * dir > 0.0 ? e : from;
    };
    return {edge(lo, glo, l), edge(hi, ghi, h)};
}

RawScan scan(const MatchingProblem& pr, int n) {
    RawScan out;
    const std::vector<double> es = scan_grid(pr, n);
    const std::vector<Sample> samples = parallel_map<Sample>(
        es.size(), [&](std::size_t i) { return sample(pr, es[i]); });

    auto residual = [&](double E) { return matching_residual(pr, E); };
    auto g_u = [&](double E) { return exterior_u(pr.pot, E, pr.m); };
    const double delta = cutoff_delta(pr.pot);
    auto g_d = [&](double E) {
        return interior_denominator(interior_momentum(pr.pot, E, pr.m), delta, pr.parity);
    };
    const double xtol = 1e-14;

    auto test_interval = [&](const Sample& a, const Sample& b) {
        if (!a.ok || !b.ok) {
            out.rejected.push_back({a.E, b.E, "evaluation-failure"});
            return;
        }
        if (sgn(a.R) == sgn(b.R)) {
            return;
        }
        if (std::abs(a.U) <= pr.pole_threshold || std::abs(b.U) <= pr.pole_threshold) {
            out.rejected.push_back({a.E, b.E, "pole-threshold"});
            return;
        }
        if (sgn(a.D) != sgn(b.D)) {
            out.rejected.push_back({a.E, b.E, "interior-pole"});
            return;
        }
        out.brackets.push_back({a.E, b.E});
    };

    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        const Sample& a = samples[i];
        const Sample& b = samples[i + 1];
        std::vector<std::pair<double, double>> cuts;
        std::vector<std::string> reasons;
        try {
            if (sgn(a.U) * sgn(b.U) < 0) {
                // edges sit just outside the threshold so the pieces pass the endpoint test
                cuts.push_back(exclusion(g_u, a.E, b.E, 1.001 * pr.pole_threshold, xtol));
                reasons.push_back("exterior-pole");
            }
            if (sgn(a.D) * sgn(b.D) < 0) {
                cuts.push_back(exclusion(g_d, a.E, b.E, 1e-8, xtol));
                reasons.push_back("interior-pole");
            }
        } catch (const Error&) {
            out.rejected.push_back({a.E, b.E, "evaluation-failure"});
            continue;
        }
        if (cuts.empty()) {
            test_interval(a, b);
            continue;
        }
        // order the excluded zones and test the pieces between them
        std::vector<std::size_t> order(cuts.size());
        for (std::size_t k = 0; k < order.size(); ++k) {
            order[k] = k;
        }
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return cuts[x].first < cuts[y].first; });
        Sample left = a;
        for (std::size_t k : order) {
            out.rejected.push_back({cuts[k].first, cuts[k].second, reasons[k]});
            if (cuts[k].first > left.E) {
                test_interval(left, sample(pr, cuts[k].first));
            }
            if (cuts[k].second > left.E) {
                left = sample(pr, cuts[k].second);
            }
        }
        if (left.E < b.E) {
            test_interval(left, b);
        }
    }

    for (const Bracket& br : out.brackets) {
        const double fa = residual(br.lo);
        const double fb = residual(br.hi);
        const RootResult r = brent(residual, br.lo, br.hi, fa, fb, pr.root_tol);
        double res = r.value;
        try {
            res = residual(r.root);
        } catch (const Error&) {
            out.rejected.push_back({br.lo, br.hi, "evaluation-failure"});
            continue;
        }
        if (!(std::abs(res) < pr.accept_residual)) {
            out.rejected.push_back({br.lo, br.hi, "residual-check"});
            continue;
        }
        out.roots.push_back({r.root, res});
    }
    return out;
}

}  // namespace

void validate(const MatchingProblem& pr) {
    fv1d::validate(pr.pot);
    cutoff_delta(pr.pot);
    if (!(pr.m > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "matchsolver: mass must be > 0");
    }
    if (!(pr.e_lo > 0.0 && pr.e_lo < pr.e_hi && pr.e_hi < pr.m)) {
        throw Error(ErrorCode::InvalidParameter, "matchsolver: window must satisfy 0 < lo < hi < m");
    }
    if (pr.parity == Parity::None) {
        throw Error(ErrorCode::InvalidParameter, "matchsolver: parity must be even or odd");
    }
    if (pr.scan_points < 3) {
        throw Error(ErrorCode::InvalidParameter, "matchsolver: scan_points must be >= 3");
    }
}

InteriorMomentum interior_momentum(const PotentialSpec& pot, double E, double m) {
    const double delta = cutoff_delta(pot);
    const double w = E - eval(pot, 0.5 * delta);
    const double p2 = w * w - m * m;
    InteriorMomentum im;
    im.p2 = p2;
    im.imaginary = p2 < 0.0;
    im.value = std::sqrt(std::abs(p2));
    return im;
}

double interior_logderiv(const PotentialSpec& pot, double E, double m, Parity parity) {
    const double delta = cutoff_delta(pot);
    const InteriorMomentum im = interior_momentum(pot, E, m);
    const double t = im.value * delta;
    if (t < 1e-6) {
        // series through p^2 = 0, valid for either sign of p^2
        return parity == Parity::Even ? -im.p2 * delta : 1.0 / delta - im.p2 * delta / 3.0;
    }
    if (im.imaginary) {
        return parity == Parity::Even ? im.value * std::tanh(t) : im.value / std::tanh(t);
    }
    if (parity == Parity::Even) {
        if (std::abs(std::cos(t)) < 1e-10) {
            throw Error(ErrorCode::InteriorPole, "interior_logderiv: tan pole");
        }
        return -im.value * std::tan(t);
    }
    if (std::abs(std::sin(t)) < 1e-10) {
        throw Error(ErrorCode::InteriorPole, "interior_logderiv: cot pole");
    }
    return im.value / std::tan(t);
}

TricomiArgs exterior_args(const PotentialSpec& pot, double E, double m) {
    return exterior(pot, E, m).at_delta;
}

double exterior_u(const PotentialSpec& pot, double E, double m) {
    const TricomiArgs t = exterior_args(pot, E, m);
    return specfun::tricomi_u(t.a, t.b, t.z);
}

double exterior_logderiv(const PotentialSpec& pot, double E, double m) {
    const Exterior ex = exterior(pot, E, m);
    const TricomiArgs& t = ex.at_delta;
    if (ex.coulomb) {
        const double delta = std::get<CoulombCutoff>(pot).delta;
        return specfun::whittaker_w_logderiv(ex.lambda_w, ex.mu_w, ex.k, delta);
    }
    const auto& c = std::get<Cornell>(pot);
    const double ratio = specfun::tricomi_u_logderiv(t.a, t.b, t.z);  // -a U(a+1,b+1)/U
    return ex.power / c.delta - c.beta * c.delta + 2.0 * c.beta * c.delta * ratio;
}

double matching_residual(const MatchingProblem& problem, double E) {
    return exterior_logderiv(problem.pot, E, problem.m) -
           interior_logderiv(problem.pot, E, problem.m, problem.parity);
}

double psi_at(const MatchingProblem& pr, double E, double x, Piece piece) {
    const double delta = cutoff_delta(pr.pot);
    const double ax = std::abs(x);
    const bool inside = piece == Piece::Interior || (piece == Piece::Auto && ax < delta);
    const double parity_sign = (pr.parity == Parity::Odd && x < 0.0) ? -1.0 : 1.0;
    if (inside) {
        const InteriorMomentum im = interior_momentum(pr.pot, E, pr.m);
        const double p = im.value;
        double num;
        double den;
        if (pr.parity == Parity::Even) {
            num = im.imaginary ? std::cosh(p * ax) : std::cos(p * ax);
            den = im.imaginary ? std::cosh(p * delta) : std::cos(p * delta);
        } else if (p * delta < 1e-8) {
            num = ax;
            den = delta;
        } else {
            num = im.imaginary ? std::sinh(p * ax) : std::sin(p * ax);
            den = im.imaginary ? std::sinh(p * delta) : std::sin(p * delta);
        }
        if (std::abs(den) < 1e-12) {
            throw Error(ErrorCode::AnchorSingularity, "psi_at: interior anchor vanishes");
        }
        return parity_sign * num / den;
    }
    const Exterior ex = exterior(pr.pot, E, pr.m);
    const auto [l0, s0] = exterior_log(ex, delta);
    const auto [lx, sx] = exterior_log(ex, ax);
    return parity_sign * s0 * sx * std::exp(lx - l0);
}

int node_count(const MatchingProblem& pr, double E) {
    const double delta = cutoff_delta(pr.pot);
    const InteriorMomentum im = interior_momentum(pr.pot, E, pr.m);
    int inner = 0;
    if (!im.imaginary) {
        const double t = im.value * delta;
        inner = pr.parity == Parity::Even ? static_cast<int>(std::floor(t / kPi + 0.5))
                                          : static_cast<int>(std::floor(t / kPi));
    }
    const Exterior ex = exterior(pr.pot, E, pr.m);
    const double lam = ex.lambda_w;
    const double mu = ex.mu_w;
    const double disc = lam * lam + 0.25 - mu * mu;
    const double z0 = ex.at_delta.z;
    int outer = 0;
    if (disc > 0.0) {
        // zeros of W lie in the classically allowed region z < z_t
        const double zt = 2.0 * lam + 2.0 * std::sqrt(disc);
        if (zt > z0) {
            const double ld = -0.5 + (mu + 0.5) / z0 +
                              specfun::tricomi_u_logderiv(ex.at_delta.a, ex.at_delta.b, z0);
            const Coefficient q = [lam, mu](double z) {
                return -0.25 + lam / z + (0.25 - mu * mu) / (z * z);
            };
            outer = count_sign_changes(q, OdeState{z0, 1.0, ld, 0.0}, zt, 1e-10);
        }
    }
    const int half = inner + outer;
    return pr.parity == Parity::Even ? 2 * half : 1 + 2 * half;
}

double interior_amplitude_ratio(const MatchingProblem& pr, double E) {
    const double delta = cutoff_delta(pr.pot);
    const InteriorMomentum im = interior_momentum(pr.pot, E, pr.m);
    if (im.imaginary) {
        return 1.0;
    }
    const double t = im.value * delta;
    if (pr.parity == Parity::Even) {
        return 1.0 / std::max(std::abs(std::cos(t)), 1e-300);
    }
    const double peak = t >= 0.5 * kPi ? 1.0 : std::sin(t);
    return peak / std::max(std::abs(std::sin(t)), 1e-300);
}

ScanReport solve(const MatchingProblem& problem) {
    MatchingProblem pr = problem;
    pr.e_hi = std::min(pr.e_hi, pr.m * (1.0 - 1e-6));
    validate(pr);
    RawScan raw = scan(pr, pr.scan_points);
    ScanReport report;
    report.brackets = raw.brackets;
    report.rejected_poles = raw.rejected;
    if (pr.check_halving) {
        const RawScan fine = scan(pr, 2 * pr.scan_points - 1);
        bool same = fine.roots.size() == raw.roots.size();
        for (std::size_t i = 0; same && i < raw.roots.size(); ++i) {
            same = std::abs(fine.roots[i].first - raw.roots[i].first) <= 1e-8 * pr.m;
        }
        report.halving_stable = same;
    }
    for (const auto& [E, res] : raw.roots) {
        if (!(E > 0.0 && E < pr.m)) {
            continue;
        }
        EigenSolution s;
        s.energy = E;
        s.parity = pr.parity;
        s.solver = SolverKind::Matching;
        s.residual = res;
        s.nodes = node_count(pr, E);
        if (pr.parity == Parity::Even && s.nodes == 0) {
            report.rejected_poles.push_back({E, E, "core-state"});
            continue;
        }
        if (interior_amplitude_ratio(pr, E) > pr.max_amplitude_ratio) {
            report.rejected_poles.push_back({E, E, "core-state"});
            continue;
        }
        report.roots.push_back(s);
    }
    std::sort(report.roots.begin(), report.roots.end(),
              [](const EigenSolution& a, const EigenSolution& b) { return a.energy < b.energy; });
    return report;
}

WaveFunction build_wavefunction(const MatchingProblem& problem, const EigenSolution& solution,
                                int grid_size, std::optional<double> half_length) {
    SolverConfig cfg;
    cfg.mass = problem.m;
    cfg.half_length = half_length;
    const Interval dom = domain(problem.pot, cfg, solution.energy);
    MatchingProblem pr = problem;
    pr.parity = solution.parity;
    WaveFunction wf;
    wf.grid = uniform_grid(dom.lo, dom.hi, grid_size);
    wf.energy = solution.energy;
    wf.mass = problem.m;
    wf.values.resize(wf.grid.size());
    // evaluate on |x| once and mirror so that parity holds exactly
    for (std::size_t i = 0; i < wf.grid.size(); ++i) {
        const double x = wf.grid[i];
        if (x < 0.0) {
            continue;
        }
        wf.values[i] = psi_at(pr, solution.energy, x);
    }
    const std::size_t n = wf.grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (wf.grid[i] < 0.0) {
            const std::size_t j = n - 1 - i;
            const double sign = pr.parity == Parity::Odd ? -1.0 : 1.0;
            wf.values[i] = wf.grid[j] == -wf.grid[i] ? sign * wf.values[j].real()
                                                     : psi_at(pr, solution.energy, wf.grid[i]);
        }
    }
    return normalize(wf, problem.pot, NormMode::L2);
}

}  // namespace fv1d::match
