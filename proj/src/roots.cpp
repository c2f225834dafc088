#include "fv1d/roots.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "fv1d/error.hpp"

namespace fv1d {

RootResult brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                 double xtol, int max_iter) {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    RootResult r;
    if (fa == 0.0) {
        return {a, 0.0, 0, true};
    }
    if (fb == 0.0) {
        return {b, 0.0, 0, true};
    }
    if ((fa > 0.0) == (fb > 0.0)) {
        throw Error(ErrorCode::InvalidParameter, "brent: endpoints do not bracket a root");
    }
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int it = 1; it <= max_iter; ++it) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * eps * std::abs(b) + 0.5 * xtol;
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol || fb == 0.0) {
            return {b, fb, it, true};
        }
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double rb = fb / fc;
                p = s * (2.0 * m * qa * (qa - rb) - (b - a) * (rb - 1.0));
                q = (qa - 1.0) * (rb - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol ? d : (m > 0.0 ? tol : -tol);
        fb = f(b);
        r = {b, fb, it, false};
    }
    return r;
}

RootResult brent(const std::function<double(double)>& f, double a, double b, double xtol,
                 int max_iter) {
    return brent(f, a, b, f(a), f(b), xtol, max_iter);
}

}  // namespace fv1d
