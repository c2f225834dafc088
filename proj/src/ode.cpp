#include "fv1d/ode.hpp"

#include <algorithm>
#include <cmath>

#include "fv1d/error.hpp"

namespace fv1d {

namespace {

// Dormand-Prince tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kRescale = 1e100;

struct Stepper {
    const Coefficient& q;
    double tol;
    OdeStats* stats;
    double h = 0.0;  // signed step carried between calls
    double err_prev = 1e-4;

    void rescale(OdeState& s) const {
        const double mag = std::max(std::abs(s.psi), std::abs(s.dpsi));
        if (mag > kRescale) {
            s.psi /= mag;
            s.dpsi /= mag;
            s.log_scale += std::log(mag);
        }
    }

    OdeState advance(OdeState s, double to_x) {
        const double span = to_x - s.x;
        if (span == 0.0) {
            return s;
        }
        const double dir = span > 0.0 ? 1.0 : -1.0;
        const double min_step = 1e-14 * std::abs(span);
        if (h == 0.0 || (h > 0.0) != (dir > 0.0)) {
            const double qa = std::abs(q(s.x));
            h = dir * std::min(std::abs(span), 0.1 / std::sqrt(std::max(qa, 1e-4)));
        }
        while ((to_x - s.x) * dir > 0.0) {
            double hs = h;
            bool last = false;
            if ((s.x + hs - to_x) * dir >= 0.0) {
                hs = to_x - s.x;
                last = true;
            }
            const double x = s.x;
            const double y0 = s.psi;
            const double z0 = s.dpsi;
            // y' = z, z' = -q y
            const double k1y = z0, k1z = -q(x) * y0;
            double yy = y0 + hs * a21 * k1y, zz = z0 + hs * a21 * k1z;
            const double k2y = zz, k2z = -q(x + c2 * hs) * yy;
            yy = y0 + hs * (a31 * k1y + a32 * k2y);
            zz = z0 + hs * (a31 * k1z + a32 * k2z);
            const double k3y = zz, k3z = -q(x + c3 * hs) * yy;
            yy = y0 + hs * (a41 * k1y + a42 * k2y + a43 * k3y);
            zz = z0 + hs * (a41 * k1z + a42 * k2z + a43 * k3z);
            const double k4y = zz, k4z = -q(x + c4 * hs) * yy;
            yy = y0 + hs * (a51 * k1y + a52 * k2y + a53 * k3y + a54 * k4y);
            zz = z0 + hs * (a51 * k1z + a52 * k2z + a53 * k3z + a54 * k4z);
            const double k5y = zz, k5z = -q(x + c5 * hs) * yy;
            yy = y0 + hs * (a61 * k1y + a62 * k2y + a63 * k3y + a64 * k4y + a65 * k5y);
            zz = z0 + hs * (a61 * k1z + a62 * k2z + a63 * k3z + a64 * k4z + a65 * k5z);
            const double k6y = zz, k6z = -q(x + hs) * yy;
            const double y1 = y0 + hs * (b1 * k1y + b3 * k3y + b4 * k4y + b5 * k5y + b6 * k6y);
            const double z1 = z0 + hs * (b1 * k1z + b3 * k3z + b4 * k4z + b5 * k5z + b6 * k6z);
            const double k7y = z1, k7z = -q(x + hs) * y1;
            const double ey =
                hs * (e1 * k1y + e3 * k3y + e4 * k4y + e5 * k5y + e6 * k6y + e7 * k7y);
            const double ez =
                hs * (e1 * k1z + e3 * k3z + e4 * k4z + e5 * k5z + e6 * k6z + e7 * k7z);

            // error relative to the local amplitude of each component
            const double amp_y = std::max({std::abs(y0), std::abs(y1), 1e-300});
            const double amp_z = std::max({std::abs(z0), std::abs(z1), 1e-300});
            const double ref = std::hypot(y0, z0);
            const double sy = tol * std::max(amp_y, 1e-8 * ref);
            const double sz = tol * std::max(amp_z, 1e-8 * ref);
            const double err = std::max(std::abs(ey) / sy, std::abs(ez) / sz);

            if (err <= 1.0) {
                s.x = last ? to_x : x + hs;
                s.psi = y1;
                s.dpsi = z1;
                rescale(s);
                if (stats) {
                    ++stats->accepted;
                }
                // PI controller
                double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5.0) *
                             std::pow(err_prev, 0.4 / 5.0);
                fac = std::clamp(fac, 0.2, 5.0);
                err_prev = std::max(err, 1e-4);
                if (!last) {
                    h = hs * fac;
                }
                continue;
            }
            if (stats) {
                ++stats->rejected;
            }
            const double fac = std::isfinite(err)
                                   ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9)
                                   : 0.1;
            h = hs * fac;
            if (std::abs(h) < min_step) {
                throw Error(ErrorCode::StepUnderflow, "integrate: step size underflow");
            }
        }
        return s;
    }
};

void check_tol(double tol) {
    if (!(tol >= 1e-13 && tol <= 1e-6)) {
        throw Error(ErrorCode::InvalidParameter, "integrate: tol must lie in [1e-13, 1e-6]");
    }
}

}  // namespace

OdeState integrate(const Coefficient& q, OdeState from, double to_x, double tol, OdeStats* stats) {
    check_tol(tol);
    Stepper st{q, tol, stats};
    return st.advance(from, to_x);
}

std::vector<OdeState> integrate_through(const Coefficient& q, OdeState from,
                                        const std::vector<double>& xs, double tol) {
    check_tol(tol);
    Stepper st{q, tol, nullptr};
    std::vector<OdeState> out;
    out.reserve(xs.size());
    OdeState s = from;
    for (double x : xs) {
        s = st.advance(s, x);
        out.push_back(s);
    }
    return out;
}

int count_sign_changes(const Coefficient& q, OdeState from, double to_x, double tol) {
    check_tol(tol);
    Stepper st{q, tol, nullptr};
    // march in pieces no longer than a tenth of the local wavelength
    OdeState s = from;
    int changes = 0;
    int last = s.psi > 0.0 ? 1 : (s.psi < 0.0 ? -1 : 0);
    const double dir = to_x > s.x ? 1.0 : -1.0;
    while ((to_x - s.x) * dir > 0.0) {
        const double qa = std::abs(q(s.x));
        double piece = 0.5 / std::sqrt(std::max(qa, 1e-6));
        piece = std::min(piece, std::abs(to_x - s.x));
        s = st.advance(s, s.x + dir * piece);
        const int sg = s.psi > 0.0 ? 1 : (s.psi < 0.0 ? -1 : 0);
        if (sg != 0) {
            if (last != 0 && sg != last) {
                ++changes;
            }
            last = sg;
        }
    }
    return changes;
}

}  // namespace fv1d
