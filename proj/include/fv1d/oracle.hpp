#pragma once

#include <vector>

#include "fv1d/config.hpp"
#include "fv1d/potentials.hpp"

namespace fv1d::oracle {

struct OracleConfig {
    int grid_points = 40000;
    Interval domain{-30.0, 30.0};
    double e_lo = 1e-4;
    double e_hi = 1.0 - 1e-6;
    double bisection_tol = 1e-8;
    BoundaryMode boundary = BoundaryMode::Decay;
};

/// Sign changes of psi over the open domain, fixed-step RK4 from the left edge.
int node_count_at(const PotentialSpec& pot, double m, double E, const OracleConfig& config);

/// Terminal mismatch at the right edge: psi' + kappa psi (decay) or psi (box), sign only matters.
double terminal_mismatch(const PotentialSpec& pot, double m, double E, const OracleConfig& config);

/// Eigenvalues in the window, increasing. Throws GridTooCoarse when two levels fall
/// inside one bisection cell.
std::vector<double> oracle_spectrum(const PotentialSpec& pot, double m, const OracleConfig& config);

}  // namespace fv1d::oracle
