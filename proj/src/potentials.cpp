#include "fv1d/potentials.hpp"

#include <cmath>

#include "fv1d/error.hpp"

namespace fv1d {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what) {
    if (!ok) {
        throw Error(ErrorCode::InvalidParameter, what);
    }
}

}  // namespace

void validate(const PotentialSpec& pot) {
    std::visit(overloaded{
                   [](const CoulombCutoff& p) {
                       require(std::isfinite(p.alpha) && std::abs(p.alpha) <= 0.5,
                               "coulomb: |alpha| must not exceed 1/2");
                       require(p.delta > 0.0 && std::isfinite(p.delta), "coulomb: delta must be > 0");
                   },
                   [](const Cornell& p) {
                       require(std::isfinite(p.alpha) && std::abs(p.alpha) <= 0.5,
                               "cornell: |alpha| must not exceed 1/2");
                       require(p.beta > 0.0 && std::isfinite(p.beta), "cornell: beta must be > 0");
                       require(p.delta > 0.0 && std::isfinite(p.delta), "cornell: delta must be > 0");
                   },
                   [](const PowerExp& p) {
                       require(p.b > 0.0 && std::isfinite(p.b), "power-exp: b must be > 0");
                       require(p.q > 0.0 && std::isfinite(p.q), "power-exp: q must be > 0");
                       require(p.p >= 1, "power-exp: p must be >= 1");
                   },
                   [](const PoschlTeller& p) {
                       require(p.v0 >= 0.0 && std::isfinite(p.v0), "poschl-teller: v0 must be >= 0");
                       require(p.d > 0.0 && std::isfinite(p.d), "poschl-teller: d must be > 0");
                   },
                   [](const WoodsSaxon& p) {
                       require(p.v0 >= 0.0 && std::isfinite(p.v0), "woods-saxon: v0 must be >= 0");
                       require(std::isfinite(p.big_r), "woods-saxon: R must be finite");
                       require(p.a > 0.0 && std::isfinite(p.a), "woods-saxon: a must be > 0");
                   },
               },
               pot);
}

double eval(const PotentialSpec& pot, double x) {
    return std::visit(
        overloaded{
            [x](const CoulombCutoff& p) {
                const double ax = std::abs(x);
                return ax < p.delta ? p.alpha / p.delta : p.alpha / ax;
            },
            [x](const Cornell& p) {
                const double ax = std::abs(x);
                return ax < p.delta ? p.alpha / p.delta + p.beta * p.delta
                                    : p.alpha / ax + p.beta * ax;
            },
            [x](const PowerExp& p) {
                if (x < 0.0) {
                    throw Error(ErrorCode::DomainError, "power-exp: defined on x >= 0 only");
                }
                return -p.b * std::exp(-std::pow(x / p.q, p.p));
            },
            [x](const PoschlTeller& p) {
                const double c = std::cosh(x / p.d);
                return -p.v0 / (c * c);
            },
            [x](const WoodsSaxon& p) {
                const double t = (x - p.big_r) / p.a;
                // written so that neither branch overflows
                if (t > 0.0) {
                    const double e = std::exp(-t);
                    return -p.v0 * e / (1.0 + e);
                }
                return -p.v0 / (1.0 + std::exp(t));
            },
        },
        pot);
}

bool is_even(const PotentialSpec& pot) {
    return std::holds_alternative<CoulombCutoff>(pot) || std::holds_alternative<Cornell>(pot) ||
           std::holds_alternative<PoschlTeller>(pot);
}

Interval domain(const PotentialSpec& pot, const SolverConfig& config, std::optional<double> energy) {
    const auto& L = config.half_length;
    return std::visit(
        overloaded{
            [&](const CoulombCutoff&) {
                double half = 200.0;
                if (L) {
                    half = *L;
                } else if (energy) {
                    const double m = config.mass;
                    const double k2 = m * m - (*energy) * (*energy);
                    if (k2 > 0.0) {
                        half = std::min(40.0 / std::sqrt(k2), 200.0);
                    }
                }
                return Interval{-half, half};
            },
            [&](const Cornell&) {
                const double half = L ? *L : 60.0;
                return Interval{-half, half};
            },
            [&](const PowerExp& p) { return Interval{0.0, L ? *L : 20.0 * p.q}; },
            [&](const PoschlTeller& p) {
                const double half = L ? *L : 8.0 * p.d;
                return Interval{-half, half};
            },
            [&](const WoodsSaxon&) {
                const double half = L ? *L : 30.0;
                return Interval{-half, half};
            },
        },
        pot);
}

std::string potential_name(const PotentialSpec& pot) {
    static const char* names[] = {"coulomb", "cornell", "power-exp", "poschl-teller", "woods-saxon"};
    return names[pot.index()];
}

}  // namespace fv1d
