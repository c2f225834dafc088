#include "fv1d/closedform.hpp"

#include <algorithm>
#include <cmath>

#include "fv1d/error.hpp"
#include "fv1d/matchsolver.hpp"
#include "fv1d/specfun.hpp"

namespace fv1d::closed {

double powerexp_energy(int n, double q, double m, Branch branch) {
    if (!(q > 0.0) || !(m > 0.0) || n < 0) {
        throw Error(ErrorCode::InvalidParameter, "powerexp_energy: need q > 0, m > 0, n >= 0");
    }
    const double h = n + 0.5;
    const double e = (m * m * q * q + h * h) / (2.0 * q * h);
    return branch == Branch::Particle ? e : -e;
}

PowerExpState powerexp_state(int n, const PowerExp& pot, double m) {
    if (pot.p != 1) {
        throw Error(ErrorCode::InvalidParameter, "power-exp: closed form exists for p = 1 only");
    }
    PowerExpState s;
    s.n = n;
    s.b = pot.b;
    s.q = pot.q;
    s.m = m;
    s.E = powerexp_energy(n, pot.q, m);
    s.kappa = std::sqrt(std::max(0.0, s.E * s.E - m * m));
    return s;
}

Complex powerexp_psi_raw(const PowerExpState& s, double x) {
    if (x < 0.0) {
        throw Error(ErrorCode::DomainError, "powerexp: x must be >= 0");
    }
    using specfun::Complex;
    const Complex I(0.0, 1.0);
    const double q = s.q;
    const double r = 2.0 * s.b * q * std::exp(-x / q);  // |z|
    const Complex z = I * r;
    const Complex a = 0.5 + I * (s.E * q + q * s.kappa);
    const Complex bp = 1.0 + 2.0 * I * (q * s.kappa);
    // z^{1/2 + i q kappa} on the principal branch, arg z = pi/2
    const Complex logz(std::log(r), 0.5 * std::acos(-1.0));
    const Complex power = std::exp((0.5 + I * (q * s.kappa)) * logz);
    const Complex m1 = specfun::kummer_m(a, bp, z);
    return std::exp(x / (2.0 * q)) * power * std::exp(-0.5 * z) * m1;
}

WaveFunction powerexp_wavefunction(const PowerExpState& s, const std::vector<double>& grid) {
    WaveFunction wf;
    wf.grid = grid;
    wf.energy = s.E;
    wf.mass = s.m;
    wf.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        wf.values[i] = powerexp_psi_raw(s, grid[i]);
    }
    if (!wf.values.empty() && std::abs(wf.values.front()) > 0.0) {
        const Complex phase = std::conj(wf.values.front()) / std::abs(wf.values.front());
        for (auto& v : wf.values) {
            v *= phase;
        }
        wf.values.front() = std::abs(wf.values.front());
    }
    return normalize(wf, PowerExp{s.b, s.q, 1}, NormMode::L2);
}

double nr_coulomb_binding(int n, double alpha, double m, NrForm form) {
    if (std::abs(alpha) > 0.5 || n < 0 || !(m > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "nr_coulomb_binding: need |alpha| <= 1/2, n >= 0");
    }
    const double N = form == NrForm::General
                         ? n + 0.5 + 0.5 * std::sqrt(1.0 - 4.0 * alpha * alpha)
                         : n + 1.0;
    return -alpha * alpha * m / (2.0 * N * N);
}

double nr_coulomb_energy(int n, double alpha, double m, NrForm form) {
    return m + nr_coulomb_binding(n, alpha, m, form) / m;
}

std::vector<NrLimitComparison> nr_limit_compare(int n, double alpha,
                                                const std::vector<double>& masses, NrForm form) {
    std::vector<NrLimitComparison> out;
    for (double m : masses) {
        if (!(m > 0.0)) {
            throw Error(ErrorCode::InvalidParameter, "nr_limit_compare: masses must be > 0");
        }
        std::vector<double> levels;
        for (Parity par : {Parity::Odd, Parity::Even}) {
            match::MatchingProblem pr;
            pr.pot = CoulombCutoff{alpha, 0.05 / m};
            pr.m = m;
            pr.parity = par;
            pr.e_lo = 0.01 * m;
            // the n lowest levels sit well below the accumulation point
            pr.e_hi = m * (1.0 - 1e-4 * alpha * alpha / ((n + 1.0) * (n + 1.0)));
            pr.check_halving = false;
            for (const auto& s : match::solve(pr).roots) {
                levels.push_back(s.energy);
            }
        }
        std::sort(levels.begin(), levels.end());
        if (static_cast<int>(levels.size()) <= n) {
            throw Error(ErrorCode::LevelNotFound, "nr_limit_compare: level n not found");
        }
        NrLimitComparison c;
        c.n = n;
        c.alpha = alpha;
        c.m = m;
        c.E_relativistic = levels[n];
        c.E_nonrel = nr_coulomb_energy(n, alpha, m, form);
        c.gap = std::abs(c.E_relativistic - c.E_nonrel);
        out.push_back(c);
    }
    return out;
}

}  // namespace fv1d::closed
