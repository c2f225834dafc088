#pragma once

#include "fv1d/config.hpp"
#include "fv1d/fvcore.hpp"
#include "fv1d/matchsolver.hpp"
#include "fv1d/ode.hpp"
#include "fv1d/potentials.hpp"

namespace fv1d::shoot {

using match::ScanReport;

struct ShootingProblem {
    PotentialSpec pot = PoschlTeller{};
    double m = 1.0;
    Parity parity = Parity::Even;
    double e_lo = 1e-4;
    double e_hi = 1.0 - 1e-6;
    double L = 0.0;  // 0 selects the potential's default half-length
    double ode_tol = 1e-10;
    int scan_points = 1500;
    BoundaryMode boundary = BoundaryMode::Box;
    double root_tol = 1e-12;
};

/// Throws InvalidParameter when the potential/parity pairing is not supported.
void validate(const ShootingProblem& problem);

/// Domain half-length actually used (L, or 8d for PT and 30 for WS).
double half_length(const ShootingProblem& problem);

/// psi'' = -[(E - eV)^2 - m^2] psi from `from` to `to_x`.
OdeState integrate(const PotentialSpec& pot, double m, double E, const OdeState& from, double to_x,
                   double tol);

/// (psi' + kappa psi)/sqrt(psi'^2 + kappa^2 psi^2) at x = L, shooting from 0.
double pt_mismatch(const ShootingProblem& problem, double E);

/// Decay: normalised psi' + kappa_+ psi at L. Box: normalised psi(L).
double ws_mismatch(const ShootingProblem& problem, double E);

double mismatch(const ShootingProblem& problem, double E);

/// Normalised Wronskian of the outward and inward sweeps at the right turning point.
/// Smooth in E and zero at eigenvalues, reported as the solution residual.
double join_mismatch(const ShootingProblem& problem, double E);

ScanReport solve(const ShootingProblem& problem);

WaveFunction build_wavefunction(const ShootingProblem& problem, const EigenSolution& solution,
                                int grid_size);

}  // namespace fv1d::shoot
