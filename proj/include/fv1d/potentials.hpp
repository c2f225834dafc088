#pragma once

#include <optional>
#include <string>
#include <variant>

#include "fv1d/config.hpp"

namespace fv1d {

/// eV = alpha/delta inside |x| < delta, alpha/|x| outside.
struct CoulombCutoff {
    double alpha = 0.0;
    double delta = 0.05;
};

/// eV = alpha/delta + beta*delta inside |x| < delta, alpha/|x| + beta|x| outside.
struct Cornell {
    double alpha = 0.0;
    double beta = 0.01;
    double delta = 0.1;
};

/// eV = -b exp(-x/q) on the half-line x >= 0. Only p = 1 has a solver.
struct PowerExp {
    double b = 1.0;
    double q = 1.0;
    int p = 1;
};

/// eV = -v0 / cosh^2(x/d)
struct PoschlTeller {
    double v0 = 1.0;
    double d = 3.0;
};

/// eV = -v0 / (1 + exp((x - R)/a))
struct WoodsSaxon {
    double v0 = 0.5;
    double big_r = 0.0;
    double a = 1.0;
};

using PotentialSpec = std::variant<CoulombCutoff, Cornell, PowerExp, PoschlTeller, WoodsSaxon>;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
};

/// Throws InvalidParameter on out-of-range parameters.
void validate(const PotentialSpec& pot);

double eval(const PotentialSpec& pot, double x);

bool is_even(const PotentialSpec& pot);

/// Computational interval. The Coulomb extent depends on the decay rate
/// k = sqrt(m^2 - E^2); without an energy the cap of 200 is used.
Interval domain(const PotentialSpec& pot, const SolverConfig& config,
                std::optional<double> energy = std::nullopt);

/// CLI name: coulomb, cornell, power-exp, poschl-teller, woods-saxon.
std::string potential_name(const PotentialSpec& pot);

}  // namespace fv1d
