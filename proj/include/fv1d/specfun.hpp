#pragma once

#include <complex>

namespace fv1d::specfun {

using Complex = std::complex<double>;

struct SeriesOptions {
    double tol = 1e-14;
    int max_terms = 10000;
    double max_abs_z = 50.0;
};

/// Kummer M(a,b,z) = sum (a)_n z^n / ((b)_n n!) by direct Taylor summation.
/// Throws InvalidParameter for b a non-positive integer or |z| beyond the
/// series bound, NonConvergence when max_terms are exhausted.
Complex kummer_m(Complex a, Complex b, Complex z, const SeriesOptions& opts = {});
double kummer_m(double a, double b, double z, const SeriesOptions& opts = {});

/// dM/dz = (a/b) M(a+1, b+1, z)
double kummer_m_dz(double a, double b, double z, const SeriesOptions& opts = {});

enum class TricomiBranch { Polynomial, Connection, Integral, Asymptotic };

struct TricomiOptions {
    double switchover = 30.0;       // connection formula below, asymptotic series above
    double near_integer_b = 1e-6;   // limit-regularise b within this distance of an integer
    double max_rel_loss = 1e-8;     // PrecisionLoss flag threshold
    double fallback_rel_loss = 1e-13;  // switch to the integral branch above this estimate
    double poly_tol = 1e-12;        // a treated as the integer -n within this distance
};

struct TricomiValue {
    double value = 0.0;
    TricomiBranch branch = TricomiBranch::Connection;
    bool precision_loss = false;    // estimated relative error above max_rel_loss
    double rel_error_estimate = 0.0;
};

/// Tricomi U(a,b,z) for real parameters and z > 0, with branch diagnostics.
TricomiValue tricomi_u_eval(double a, double b, double z, const TricomiOptions& opts = {});

double tricomi_u(double a, double b, double z, const TricomiOptions& opts = {});

/// dU/dz = -a U(a+1, b+1, z)
double tricomi_u_dz(double a, double b, double z, const TricomiOptions& opts = {});

/// (dU/dz)/U. Throws PoleAtZero when |U| <= pole_threshold.
double tricomi_u_logderiv(double a, double b, double z, double pole_threshold = 0.0,
                          const TricomiOptions& opts = {});

/// W_{lambda,mu}(z) = e^{-z/2} z^{mu+1/2} U(mu - lambda + 1/2, 1 + 2 mu, z).
double whittaker_w(double lambda, double mu, double z, const TricomiOptions& opts = {});

/// d/dx ln W_{lambda,mu}(2 k x).
double whittaker_w_logderiv(double lambda, double mu, double k, double x,
                            double pole_threshold = 0.0, const TricomiOptions& opts = {});

/// Gamma(x)/Gamma(y) with 1/Gamma(y) = 0 at the poles of Gamma(y).
double gamma_ratio(double x, double y);

/// 1/Gamma(x), zero at the non-positive integers.
double rgamma(double x);

}  // namespace fv1d::specfun
