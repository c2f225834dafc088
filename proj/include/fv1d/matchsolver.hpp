#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fv1d/fvcore.hpp"
#include "fv1d/potentials.hpp"

namespace fv1d::match {

struct MatchingProblem {
    PotentialSpec pot = CoulombCutoff{};
    double m = 1.0;
    Parity parity = Parity::Even;
    double e_lo = 0.01;
    double e_hi = 1.0 - 1e-6;
    int scan_points = 2000;
    double root_tol = 1e-12;
    double pole_threshold = 1e-3;   // |U| at bracket endpoints
    double accept_residual = 0.1;   // |L_out - L_in| at a refined root
    double max_amplitude_ratio = 1e6;
    bool check_halving = true;
};

struct InteriorMomentum {
    double value = 0.0;      // p, or q when imaginary
    bool imaginary = false;  // p^2 < 0, p = i q
    double p2 = 0.0;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;
};

struct RejectedBracket {
    double lo = 0.0;
    double hi = 0.0;
    std::string reason;
};

struct ScanReport {
    std::vector<Bracket> brackets;
    std::vector<RejectedBracket> rejected_poles;
    std::vector<EigenSolution> roots;
    bool halving_stable = true;
};

/// Arguments (a, b, z) of the exterior Tricomi function at |x| = delta.
struct TricomiArgs {
    double a = 0.0;
    double b = 0.0;
    double z = 0.0;
};

/// Throws InvalidParameter unless pot is CoulombCutoff or Cornell, the window
/// lies inside (0, m) and the parity is even or odd.
void validate(const MatchingProblem& problem);

InteriorMomentum interior_momentum(const PotentialSpec& pot, double E, double m);

/// even: -p tan(p delta), odd: p cot(p delta); hyperbolic q tanh / q coth when p^2 < 0.
double interior_logderiv(const PotentialSpec& pot, double E, double m, Parity parity);

double exterior_logderiv(const PotentialSpec& pot, double E, double m);

TricomiArgs exterior_args(const PotentialSpec& pot, double E, double m);

/// U(a, b, z) at the cutoff, the quantity screened by the pole test.
double exterior_u(const PotentialSpec& pot, double E, double m);

double matching_residual(const MatchingProblem& problem, double E);

ScanReport solve(const MatchingProblem& problem);

enum class Piece { Auto, Interior, Exterior };

/// Unnormalised psi_s at x, scaled so that |psi_s(delta)| = 1.
double psi_at(const MatchingProblem& problem, double E, double x, Piece piece = Piece::Auto);

/// Node count from the interior closed form and the exterior zeros up to the turning point.
int node_count(const MatchingProblem& problem, double E);

/// max |psi_in| over [0, delta] relative to |psi(delta)|.
double interior_amplitude_ratio(const MatchingProblem& problem, double E);

WaveFunction build_wavefunction(const MatchingProblem& problem, const EigenSolution& solution,
                                int grid_size, std::optional<double> half_length = std::nullopt);

}  // namespace fv1d::match
