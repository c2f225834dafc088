#include "fv1d/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "fv1d/error.hpp"

namespace fv1d::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool is_nonpositive_integer(double x, double tol = 1e-14) {
    const double r = std::round(x);
    return r <= 0.0 && std::abs(x - r) <= tol;
}

struct RealSeries {
    double value;
    double abs_sum;  // sum of |terms|, measures cancellation inside the series
};

RealSeries kummer_series(double a, double b, double z, const SeriesOptions& opts) {
    if (is_nonpositive_integer(b)) {
        throw Error(ErrorCode::InvalidParameter, "kummer_m: b is a non-positive integer");
    }
    if (std::abs(z) > opts.max_abs_z) {
        throw Error(ErrorCode::InvalidParameter, "kummer_m: |z| beyond series bound");
    }
    double term = 1.0;
    double sum = 1.0;
    double abs_sum = 1.0;
    for (int n = 0; n < opts.max_terms; ++n) {
        term *= (a + n) / (b + n) * z / (n + 1);
        sum += term;
        abs_sum += std::abs(term);
        if (term == 0.0) {
            return {sum, abs_sum};
        }
        const double ratio = std::abs((a + n + 1) * z / ((b + n + 1) * (n + 2)));
        if (ratio < 0.5) {
            const double tail = std::abs(term) * ratio / (1.0 - ratio);
            if (tail <= opts.tol * std::max(1.0, std::abs(sum))) {
                return {sum, abs_sum};
            }
        }
    }
    throw Error(ErrorCode::NonConvergence, "kummer_m: series did not converge");
}

double laguerre_poly_u(int n, double b, double z) {
    // U(-n, b, z) = (-1)^n n! L_n^{(b-1)}(z), from U(0) = 1 and U(-1) = z - b by
    // U(a-1) = (2a - b + z) U(a) - a (a - b + 1) U(a+1)
    double up = 1.0;  // U(a+1)
    if (n == 0) {
        return up;
    }
    double cur = z - b;  // U(-1, b, z) = z - b
    for (int k = 1; k < n; ++k) {
        const double a = -k;
        const double next = (2.0 * a - b + z) * cur - a * (a - b + 1.0) * up;
        up = cur;
        cur = next;
    }
    return cur;
}

/// int_0^inf e^{-z t} t^{a-1} (1+t)^{b-a-1} dt by exp-sinh quadrature, a >= 1.
double tricomi_integral(double a, double b, double z) {
    constexpr double half_pi = 0.5 * std::numbers::pi;
    auto integrand = [&](double s) {
        const double t_log = half_pi * std::sinh(s);
        if (t_log > 700.0) {
            return 0.0;
        }
        const double t = std::exp(t_log);
        const double log_f = -z * t + (a - 1.0) * t_log + (b - a - 1.0) * std::log1p(t);
        if (log_f < -745.0) {
            return 0.0;
        }
        return std::exp(log_f + t_log) * half_pi * std::cosh(s);
    };

    double h = 0.5;
    double sum = integrand(0.0);
    for (int sign : {-1, 1}) {
        for (int k = 1; k < 400; ++k) {
            const double v = integrand(sign * k * h);
            sum += v;
            if (k > 4 && std::abs(v) < 1e-18 * std::abs(sum)) {
                break;
            }
        }
    }
    double estimate = sum * h;
    for (int level = 0; level < 10; ++level) {
        h *= 0.5;
        double added = 0.0;
        for (int sign : {-1, 1}) {
            for (int k = 1; k < 20000; k += 2) {
                const double v = integrand(sign * k * h);
                added += v;
                if (k > 8 && std::abs(v) < 1e-18 * std::abs(sum)) {
                    break;
                }
            }
        }
        sum += added;
        const double next = sum * h;
        if (std::abs(next - estimate) <= 1e-15 * std::abs(next)) {
            return next;
        }
        estimate = next;
    }
    return estimate;
}

TricomiValue tricomi_by_integral(double a, double b, double z) {
    // start in [1, 2) and recur downwards in a; U is minimal as a -> +inf so
    // decreasing-a recurrence is the stable direction
    int steps = 0;
    double a0 = a;
    if (a < 1.0) {
        steps = static_cast<int>(std::ceil(1.0 - a));
        a0 = a + steps;
        if (a0 >= 2.0) {
            a0 -= 1.0;
            --steps;
        }
    }
    double u_hi = tricomi_integral(a0 + 1.0, b, z) * rgamma(a0 + 1.0);
    double u_cur = tricomi_integral(a0, b, z) * rgamma(a0);
    double ac = a0;
    for (int s = 0; s < steps; ++s) {
        const double u_lo = (2.0 * ac - b + z) * u_cur - ac * (ac - b + 1.0) * u_hi;
        u_hi = u_cur;
        u_cur = u_lo;
        ac -= 1.0;
    }
    TricomiValue out;
    out.value = u_cur;
    out.branch = TricomiBranch::Integral;
    out.rel_error_estimate = 1e-13 * (1 + steps);
    return out;
}

TricomiValue tricomi_asymptotic(double a, double b, double z) {
    double term = 1.0;
    double sum = 1.0;
    double smallest = 1.0;
    for (int n = 0; n < 10000; ++n) {
        const double next = term * (a + n) * (a - b + 1.0 + n) / ((n + 1) * (-z));
        if (std::abs(next) >= std::abs(term) && n > 0) {
            break;
        }
        term = next;
        sum += term;
        smallest = std::abs(term);
        if (term == 0.0 || smallest < kEps * std::abs(sum) * 1e-2) {
            break;
        }
    }
    TricomiValue out;
    out.value = std::pow(z, -a) * sum;
    out.branch = TricomiBranch::Asymptotic;
    out.rel_error_estimate = smallest / std::max(std::abs(sum), 1e-300);
    return out;
}

TricomiValue tricomi_connection(double a, double b, double z, const SeriesOptions& so) {
    // U = G(1-b)/G(a-b+1) M(a,b,z) + G(b-1)/G(a) z^{1-b} M(a-b+1, 2-b, z)
    const RealSeries m1 = kummer_series(a, b, z, so);
    const RealSeries m2 = kummer_series(a - b + 1.0, 2.0 - b, z, so);
    const double c1 = gamma_ratio(1.0 - b, a - b + 1.0);
    const double c2 = gamma_ratio(b - 1.0, a) * std::pow(z, 1.0 - b);
    const double t1 = c1 * m1.value;
    const double t2 = c2 * m2.value;
    TricomiValue out;
    out.value = t1 + t2;
    out.branch = TricomiBranch::Connection;
    const double magnitude = std::abs(c1) * m1.abs_sum + std::abs(c2) * m2.abs_sum;
    out.rel_error_estimate = 8.0 * kEps * magnitude / std::max(std::abs(out.value), 1e-300);
    return out;
}

TricomiValue tricomi_connection_regularised(double a, double b, double z,
                                            const TricomiOptions& opts) {
    const double bn = std::round(b);
    if (std::abs(b - bn) >= opts.near_integer_b) {
        return tricomi_connection(a, b, z, SeriesOptions{});
    }
    // limit-regularised: linear interpolation between bn - h and bn + h
    const double h = opts.near_integer_b;
    TricomiValue lo = tricomi_connection(a, bn - h, z, SeriesOptions{});
    TricomiValue hi = tricomi_connection(a, bn + h, z, SeriesOptions{});
    const double w = (b - (bn - h)) / (2.0 * h);
    TricomiValue out;
    out.value = (1.0 - w) * lo.value + w * hi.value;
    out.branch = TricomiBranch::Connection;
    out.rel_error_estimate = std::max(lo.rel_error_estimate, hi.rel_error_estimate);
    return out;
}

}  // namespace

double rgamma(double x) {
    if (is_nonpositive_integer(x, 0.0)) {
        return 0.0;
    }
    if (std::abs(x) < 170.0) {
        return 1.0 / std::tgamma(x);
    }
    int sign = 1;
    const double lg = lgamma_r(x, &sign);
    return sign * std::exp(-lg);
}

double gamma_ratio(double x, double y) {
    if (is_nonpositive_integer(y, 0.0)) {
        return 0.0;
    }
    if (is_nonpositive_integer(x, 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "gamma_ratio: numerator at a pole");
    }
    if (std::abs(x) < 170.0 && std::abs(y) < 170.0) {
        return std::tgamma(x) / std::tgamma(y);
    }
    int sx = 1;
    int sy = 1;
    const double lx = lgamma_r(x, &sx);
    const double ly = lgamma_r(y, &sy);
    return sx * sy * std::exp(lx - ly);
}

Complex kummer_m(Complex a, Complex b, Complex z, const SeriesOptions& opts) {
    if (b.imag() == 0.0 && is_nonpositive_integer(b.real())) {
        throw Error(ErrorCode::InvalidParameter, "kummer_m: b is a non-positive integer");
    }
    if (std::abs(z) > opts.max_abs_z) {
        throw Error(ErrorCode::InvalidParameter, "kummer_m: |z| beyond series bound");
    }
    Complex term = 1.0;
    Complex sum = 1.0;
    for (int n = 0; n < opts.max_terms; ++n) {
        const double dn = n;
        term *= (a + dn) / (b + dn) * z / (dn + 1.0);
        sum += term;
        if (term == Complex(0.0)) {
            return sum;
        }
        const double ratio = std::abs((a + dn + 1.0) * z / ((b + dn + 1.0) * (dn + 2.0)));
        if (ratio < 0.5) {
            const double tail = std::abs(term) * ratio / (1.0 - ratio);
            if (tail <= opts.tol * std::max(1.0, std::abs(sum.real())) &&
                tail <= opts.tol * std::max(1.0, std::abs(sum.imag()))) {
                return sum;
            }
        }
    }
    throw Error(ErrorCode::NonConvergence, "kummer_m: series did not converge");
}

double kummer_m(double a, double b, double z, const SeriesOptions& opts) {
    return kummer_series(a, b, z, opts).value;
}

double kummer_m_dz(double a, double b, double z, const SeriesOptions& opts) {
    return a / b * kummer_m(a + 1.0, b + 1.0, z, opts);
}

TricomiValue tricomi_u_eval(double a, double b, double z, const TricomiOptions& opts) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw Error(ErrorCode::InvalidParameter, "tricomi_u: requires z > 0");
    }
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw Error(ErrorCode::InvalidParameter, "tricomi_u: non-finite parameter");
    }
    const double an = std::round(a);
    if (an <= 0.0 && std::abs(a - an) < opts.poly_tol) {
        return {laguerre_poly_u(static_cast<int>(-an), b, z), TricomiBranch::Polynomial, false,
                kEps};
    }
    // Kummer transformation U(a,b,z) = z^{1-b} U(a-b+1, 2-b, z)
    const double a2 = a - b + 1.0;
    const double a2n = std::round(a2);
    if (a2n <= 0.0 && std::abs(a2 - a2n) < opts.poly_tol) {
        const double v = std::pow(z, 1.0 - b) * laguerre_poly_u(static_cast<int>(-a2n), 2.0 - b, z);
        return {v, TricomiBranch::Polynomial, false, kEps};
    }

    TricomiValue out;
    if (z >= opts.switchover) {
        out = tricomi_asymptotic(a, b, z);
    } else {
        try {
            out = tricomi_connection_regularised(a, b, z, opts);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NonConvergence && e.code() != ErrorCode::InvalidParameter) {
                throw;
            }
            out.rel_error_estimate = 1.0;
        }
    }
    if (!(out.rel_error_estimate <= opts.fallback_rel_loss) || !std::isfinite(out.value)) {
        TricomiValue alt = tricomi_by_integral(a, b, z);
        if (std::isfinite(alt.value)) {
            out = alt;
        }
    }
    out.precision_loss = !(out.rel_error_estimate <= opts.max_rel_loss);
    return out;
}

double tricomi_u(double a, double b, double z, const TricomiOptions& opts) {
    return tricomi_u_eval(a, b, z, opts).value;
}

double tricomi_u_dz(double a, double b, double z, const TricomiOptions& opts) {
    if (a == 0.0) {
        return 0.0;
    }
    return -a * tricomi_u(a + 1.0, b + 1.0, z, opts);
}

double tricomi_u_logderiv(double a, double b, double z, double pole_threshold,
                          const TricomiOptions& opts) {
    if (!(z > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "tricomi_u_logderiv: requires z > 0");
    }
    const double u = tricomi_u(a, b, z, opts);
    if (std::abs(u) <= pole_threshold || u == 0.0) {
        throw Error(ErrorCode::PoleAtZero, "tricomi_u_logderiv: U vanishes");
    }
    if (a == 0.0) {
        return 0.0;
    }
    return -a * tricomi_u(a + 1.0, b + 1.0, z, opts) / u;
}

double whittaker_w(double lambda, double mu, double z, const TricomiOptions& opts) {
    if (!(z > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "whittaker_w: requires z > 0");
    }
    if (is_nonpositive_integer(1.0 + 2.0 * mu)) {
        throw Error(ErrorCode::InvalidParameter, "whittaker_w: 1 + 2 mu is a non-positive integer");
    }
    const double u = tricomi_u(mu - lambda + 0.5, 1.0 + 2.0 * mu, z, opts);
    return std::exp(-0.5 * z + (mu + 0.5) * std::log(z)) * u;
}

double whittaker_w_logderiv(double lambda, double mu, double k, double x, double pole_threshold,
                            const TricomiOptions& opts) {
    if (!(k > 0.0) || !(x > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "whittaker_w_logderiv: requires k, x > 0");
    }
    const double z = 2.0 * k * x;
    const double a = mu - lambda + 0.5;
    const double b = 1.0 + 2.0 * mu;
    return 2.0 * k * (-0.5 + (mu + 0.5) / z + tricomi_u_logderiv(a, b, z, pole_threshold, opts));
}

}  // namespace fv1d::specfun
