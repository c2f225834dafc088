#pragma once

#include <functional>

namespace fv1d {

struct RootResult {
    double root = 0.0;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Brent's method on [a, b]; fa and fb must differ in sign.
/// Terminates when the bracket is narrower than 2*(eps|x| + xtol/2).
RootResult brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                 double xtol, int max_iter = 200);

RootResult brent(const std::function<double(double)>& f, double a, double b, double xtol,
                 int max_iter = 200);

}  // namespace fv1d
