#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fv1d/config.hpp"
#include "fv1d/potentials.hpp"

namespace fv1d {

using Complex = std::complex<double>;

enum class Parity { Even, Odd, None };
enum class Branch { Particle, Antiparticle };
enum class SolverKind { Matching, Shooting, ClosedForm, Oracle };

std::string to_string(Parity p);
std::string to_string(Branch b);
std::string to_string(SolverKind s);

struct EigenSolution {
    double energy = 0.0;
    Branch branch = Branch::Particle;
    Parity parity = Parity::None;
    int nodes = 0;
    SolverKind solver = SolverKind::Matching;
    double residual = 0.0;
};

struct WaveFunction {
    std::vector<double> grid;
    std::vector<Complex> values;
    double energy = 0.0;
    double mass = 1.0;
};

struct SpinorField {
    std::vector<double> grid;
    std::vector<Complex> psi1;
    std::vector<Complex> psi2;
    std::vector<double> rho;
    std::vector<double> f;
};

/// (E - eV(x))^2 - m^2
double master_coefficient(const PotentialSpec& pot, double E, double m, double x);

/// f(x) = (E - eV(x)) / m
double mixing_factor(const PotentialSpec& pot, double E, double m, double x);

/// psi1 = (1+f) psi/2, psi2 = (1-f) psi/2, rho = |psi1|^2 - |psi2|^2.
SpinorField reconstruct_spinor(const WaveFunction& wf, const PotentialSpec& pot);

/// |psi2/psi1| per point; nullopt where |psi1| < 1e-14 max|psi1|.
std::vector<std::optional<double>> component_ratio(const SpinorField& spinor);

/// Composite Simpson on a uniform grid (3/8 rule closes an odd interval count).
double simpson(const std::vector<double>& grid, const std::vector<double>& y);

/// Rescale so that int |psi|^2 = 1 (L2) or int rho = 1 (Charge).
WaveFunction normalize(const WaveFunction& wf, const PotentialSpec& pot, NormMode mode);

/// Strict sign changes of Re psi, ignoring |psi| < 1e-9 max|psi|.
int count_nodes(const WaveFunction& wf);

std::vector<EigenSolution> conjugate_spectrum(const std::vector<EigenSolution>& solutions);

/// Antisymmetric uniform grid on [lo, hi] with n points.
std::vector<double> uniform_grid(double lo, double hi, int n);

}  // namespace fv1d
