#include "fv1d/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "fv1d/error.hpp"

namespace fv1d::oracle {

namespace {

struct Sweep {
    double psi = 0.0;
    double dpsi = 0.0;
    int nodes = 0;
};

double coefficient(const PotentialSpec& pot, double m, double E, double x) {
    const double w = E - eval(pot, x);
    return w * w - m * m;
}

Sweep sweep(const PotentialSpec& pot, double m, double E, const OracleConfig& cfg) {
    const double lo = cfg.domain.lo;
    const double hi = cfg.domain.hi;
    const int n = cfg.grid_points;
    const double h = (hi - lo) / n;
    double y = 0.0;
    double z = 1.0;
    if (cfg.boundary == BoundaryMode::Decay) {
        const double q0 = coefficient(pot, m, E, lo);
        // decaying data when the left edge is classically forbidden, else a hard wall
        if (q0 < 0.0) {
            y = 1.0;
            z = std::sqrt(-q0);
        }
    }
    Sweep s;
    int last = y > 0.0 ? 1 : 0;
    for (int i = 0; i < n; ++i) {
        const double x = lo + i * h;
        const double qa = coefficient(pot, m, E, x);
        const double qm = coefficient(pot, m, E, x + 0.5 * h);
        const double qb = coefficient(pot, m, E, x + h);
        const double k1y = z, k1z = -qa * y;
        const double k2y = z + 0.5 * h * k1z, k2z = -qm * (y + 0.5 * h * k1y);
        const double k3y = z + 0.5 * h * k2z, k3z = -qm * (y + 0.5 * h * k2y);
        const double k4y = z + h * k3z, k4z = -qb * (y + h * k3y);
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        const double mag = std::max(std::abs(y), std::abs(z));
        if (mag > 1e150) {
            y /= mag;
            z /= mag;
        }
        if (i + 1 < n) {
            const int sg = y > 0.0 ? 1 : (y < 0.0 ? -1 : 0);
            if (sg != 0) {
                if (last != 0 && sg != last) {
                    ++s.nodes;
                }
                last = sg;
            }
        }
    }
    s.psi = y;
    s.dpsi = z;
    return s;
}

}  // namespace

int node_count_at(const PotentialSpec& pot, double m, double E, const OracleConfig& config) {
    return sweep(pot, m, E, config).nodes;
}

double terminal_mismatch(const PotentialSpec& pot, double m, double E, const OracleConfig& config) {
    const Sweep s = sweep(pot, m, E, config);
    if (config.boundary == BoundaryMode::Box) {
        return s.psi;
    }
    const double qe = coefficient(pot, m, E, config.domain.hi);
    const double k = std::sqrt(std::max(-qe, 0.0));
    return s.dpsi + k * s.psi;
}

std::vector<double> oracle_spectrum(const PotentialSpec& pot, double m, const OracleConfig& cfg) {
    if (cfg.grid_points < 1000) {
        throw Error(ErrorCode::InvalidParameter, "oracle: grid_points must be >= 1000");
    }
    if (!(cfg.e_lo < cfg.e_hi)) {
        throw Error(ErrorCode::InvalidParameter, "oracle: empty window");
    }
    auto count = [&](double E) { return node_count_at(pot, m, E, cfg); };
    auto tm = [&](double E) { return terminal_mismatch(pot, m, E, cfg); };

    // transition points of the node count
    struct Cell {
        double lo, hi;
        int nlo, nhi;
    };
    std::vector<Cell> todo{{cfg.e_lo, cfg.e_hi, count(cfg.e_lo), count(cfg.e_hi)}};
    std::vector<Cell> transitions;
    const double coarse = 1e-4 * (cfg.e_hi - cfg.e_lo);
    while (!todo.empty()) {
        Cell c = todo.back();
        todo.pop_back();
        if (c.nhi == c.nlo) {
            continue;
        }
        if (c.nhi - c.nlo == 1 && c.hi - c.lo < coarse) {
            transitions.push_back(c);
            continue;
        }
        if (c.hi - c.lo < cfg.bisection_tol) {
            throw Error(ErrorCode::GridTooCoarse, "oracle: levels not separated");
        }
        const double mid = 0.5 * (c.lo + c.hi);
        const int nm = count(mid);
        todo.push_back({mid, c.hi, nm, c.nhi});
        todo.push_back({c.lo, mid, c.nlo, nm});
    }

    std::vector<double> levels;
    for (Cell c : transitions) {
        // refine the transition by the count itself
        while (c.hi - c.lo > cfg.bisection_tol) {
            const double mid = 0.5 * (c.lo + c.hi);
            const int nm = count(mid);
            if (nm == c.nlo) {
                c.lo = mid;
            } else {
                c.hi = mid;
            }
        }
        double E = 0.5 * (c.lo + c.hi);
        if (cfg.boundary == BoundaryMode::Decay) {
            // the count flips where psi(right edge) = 0; the decay condition sits nearby
            double w = 1e-6 * (cfg.e_hi - cfg.e_lo);
            double a = E - w;
            double b = E + w;
            double fa = tm(a);
            double fb = tm(b);
            for (int k = 0; k < 40 && (fa > 0.0) == (fb > 0.0); ++k) {
                w *= 2.0;
                a = std::max(cfg.e_lo, E - w);
                b = std::min(cfg.e_hi, E + w);
                fa = tm(a);
                fb = tm(b);
            }
            if ((fa > 0.0) != (fb > 0.0)) {
                while (b - a > cfg.bisection_tol) {
                    const double mid = 0.5 * (a + b);
                    const double fm = tm(mid);
                    if ((fm > 0.0) == (fa > 0.0)) {
                        a = mid;
                        fa = fm;
                    } else {
                        b = mid;
                    }
                }
                E = 0.5 * (a + b);
            }
        }
        levels.push_back(E);
    }
    std::sort(levels.begin(), levels.end());
    return levels;
}

}  // namespace fv1d::oracle
