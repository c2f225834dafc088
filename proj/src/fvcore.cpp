#include "fv1d/fvcore.hpp"

#include <algorithm>
#include <cmath>

#include "fv1d/error.hpp"

namespace fv1d {

std::string to_string(Parity p) {
    switch (p) {
        case Parity::Even: return "even";
        case Parity::Odd: return "odd";
        case Parity::None: return "none";
    }
    return "none";
}

std::string to_string(Branch b) {
    return b == Branch::Particle ? "particle" : "antiparticle";
}

std::string to_string(SolverKind s) {
    switch (s) {
        case SolverKind::Matching: return "matching";
        case SolverKind::Shooting: return "shooting";
        case SolverKind::ClosedForm: return "closedform";
        case SolverKind::Oracle: return "oracle";
    }
    return "matching";
}

double master_coefficient(const PotentialSpec& pot, double E, double m, double x) {
    const double w = E - eval(pot, x);
    return w * w - m * m;
}

double mixing_factor(const PotentialSpec& pot, double E, double m, double x) {
    return (E - eval(pot, x)) / m;
}

SpinorField reconstruct_spinor(const WaveFunction& wf, const PotentialSpec& pot) {
    const std::size_t n = wf.grid.size();
    SpinorField s;
    s.grid = wf.grid;
    s.psi1.resize(n);
    s.psi2.resize(n);
    s.rho.resize(n);
    s.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = mixing_factor(pot, wf.energy, wf.mass, wf.grid[i]);
        const Complex psi = wf.values[i];
        s.f[i] = f;
        s.psi1[i] = 0.5 * (1.0 + f) * psi;
        s.psi2[i] = psi - s.psi1[i];
        s.rho[i] = std::norm(s.psi1[i]) - std::norm(s.psi2[i]);
    }
    return s;
}

std::vector<std::optional<double>> component_ratio(const SpinorField& spinor) {
    double peak = 0.0;
    for (const auto& v : spinor.psi1) {
        peak = std::max(peak, std::abs(v));
    }
    std::vector<std::optional<double>> out(spinor.psi1.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (std::abs(spinor.psi1[i]) < 1e-14 * peak || peak == 0.0) {
            continue;
        }
        const double f = spinor.f[i];
        out[i] = std::abs((1.0 - f) / (1.0 + f));
    }
    return out;
}

double simpson(const std::vector<double>& grid, const std::vector<double>& y) {
    const std::size_t n = grid.size();
    if (n < 3 || y.size() != n) {
        throw Error(ErrorCode::InvalidParameter, "simpson: need >= 3 matching samples");
    }
    const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
    std::size_t intervals = n - 1;
    double tail = 0.0;
    if (intervals % 2 == 1) {
        if (n == 4) {
            return 3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]);
        }
        const std::size_t k = n - 4;
        tail = 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
        intervals -= 3;
    }
    double sum = y[0] + y[intervals];
    for (std::size_t i = 1; i < intervals; ++i) {
        sum += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
    }
    return h / 3.0 * sum + tail;
}

WaveFunction normalize(const WaveFunction& wf, const PotentialSpec& pot, NormMode mode) {
    std::vector<double> dens(wf.values.size());
    if (mode == NormMode::L2) {
        for (std::size_t i = 0; i < dens.size(); ++i) {
            dens[i] = std::norm(wf.values[i]);
        }
    } else {
        const SpinorField s = reconstruct_spinor(wf, pot);
        dens = s.rho;
    }
    const double total = simpson(wf.grid, dens);
    if (mode == NormMode::Charge && total <= 0.0) {
        throw Error(ErrorCode::NegativeCharge, "normalize: integrated charge is not positive");
    }
    if (!(std::abs(total) >= 1e-300)) {
        throw Error(ErrorCode::ZeroNorm, "normalize: vanishing norm");
    }
    WaveFunction out = wf;
    const double scale = 1.0 / std::sqrt(total);
    for (auto& v : out.values) {
        v *= scale;
    }
    return out;
}

int count_nodes(const WaveFunction& wf) {
    double peak = 0.0;
    for (const auto& v : wf.values) {
        peak = std::max(peak, std::abs(v.real()));
    }
    const double band = 1e-9 * peak;
    int nodes = 0;
    int last = 0;
    for (const auto& v : wf.values) {
        const double r = v.real();
        if (std::abs(r) < band) {
            continue;
        }
        const int s = r > 0.0 ? 1 : -1;
        if (last != 0 && s != last) {
            ++nodes;
        }
        last = s;
    }
    return nodes;
}

std::vector<EigenSolution> conjugate_spectrum(const std::vector<EigenSolution>& solutions) {
    std::vector<EigenSolution> out = solutions;
    for (auto& s : out) {
        s.energy = -s.energy;
        s.branch = s.branch == Branch::Particle ? Branch::Antiparticle : Branch::Particle;
    }
    return out;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
    if (n < 2) {
        throw Error(ErrorCode::InvalidParameter, "uniform_grid: need >= 2 points");
    }
    std::vector<double> x(n);
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double span = n - 1;
    for (int i = 0; i < n; ++i) {
        // integer numerator keeps symmetric grids exactly antisymmetric about mid
        x[i] = mid + half * (2.0 * i - span) / span;
    }
    x.front() = lo;
    x.back() = hi;
    return x;
}

}  // namespace fv1d
