#pragma once

#include <optional>

namespace fv1d {

enum class NormMode { L2, Charge };
enum class BoundaryMode { Decay, Box };

struct SolverConfig {
    double mass = 1.0;
    std::optional<double> e_lo;     // solver default window when unset
    std::optional<double> e_hi;
    int scan_points = 0;            // 0 selects the solver default
    double ode_tol = 1e-10;
    double root_tol = 1e-12;
    NormMode norm = NormMode::L2;
    BoundaryMode boundary = BoundaryMode::Box;
    std::optional<double> half_length;  // overrides the default domain extent
    int grid_size = 4001;
};

}  // namespace fv1d
