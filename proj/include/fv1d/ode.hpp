#pragma once

#include <functional>
#include <vector>

namespace fv1d {

/// psi and dpsi are stored divided by exp(log_scale).
struct OdeState {
    double x = 0.0;
    double psi = 0.0;
    double dpsi = 0.0;
    double log_scale = 0.0;
};

/// Coefficient Q(x) of psi'' = -Q(x) psi.
using Coefficient = std::function<double(double)>;

struct OdeStats {
    int accepted = 0;
    int rejected = 0;
};

/// Dormand-Prince 5(4) with PI step control from `from` to `to_x`.
/// Rescales whenever |psi| exceeds 1e100. Throws StepUnderflow.
OdeState integrate(const Coefficient& q, OdeState from, double to_x, double tol,
                   OdeStats* stats = nullptr);

/// Integrates through the points of `xs` (monotone, starting at from.x) and
/// records the state at each of them.
std::vector<OdeState> integrate_through(const Coefficient& q, OdeState from,
                                        const std::vector<double>& xs, double tol);

/// Counts strict sign changes of psi along the adaptive trajectory from `from` to `to_x`.
int count_sign_changes(const Coefficient& q, OdeState from, double to_x, double tol);

}  // namespace fv1d
