#pragma once

#include <vector>

#include "fv1d/fvcore.hpp"
#include "fv1d/potentials.hpp"

namespace fv1d::closed {

struct PowerExpState {
    int n = 0;
    double E = 0.0;
    double kappa = 0.0;
    double b = 1.0;
    double q = 1.0;
    double m = 1.0;
};

enum class NrForm { General, Weak };

struct NrLimitComparison {
    int n = 0;
    double alpha = 0.0;
    double m = 1.0;
    double E_relativistic = 0.0;
    double E_nonrel = 0.0;
    double gap = 0.0;
};

/// +-(m^2 q^2 + (n+1/2)^2) / (2 q (n+1/2))
double powerexp_energy(int n, double q, double m, Branch branch = Branch::Particle);

PowerExpState powerexp_state(int n, const PowerExp& pot, double m);

/// Closed-form psi_s on `grid` (x >= 0), left edge real positive, L2-normalised on the grid.
WaveFunction powerexp_wavefunction(const PowerExpState& state, const std::vector<double>& grid);

/// Unnormalised closed form at one point, before the phase convention is applied.
Complex powerexp_psi_raw(const PowerExpState& state, double x);

/// Binding energy; general: -alpha^2 m / (2 (n + 1/2 + sqrt(1-4alpha^2)/2)^2), weak: n+1 in the denominator.
double nr_coulomb_binding(int n, double alpha, double m, NrForm form = NrForm::General);

/// m + eps/m
double nr_coulomb_energy(int n, double alpha, double m, NrForm form = NrForm::General);

/// Lowest-n Coulomb eigenvalue of either parity at delta = 0.05/m versus the Bohr formula.
std::vector<NrLimitComparison> nr_limit_compare(int n, double alpha, const std::vector<double>& masses,
                                                NrForm form = NrForm::General);

}  // namespace fv1d::closed
