// special.cpp: Lanczos gamma function

#include "tisbm/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "tisbm/errors.hpp"

namespace tisbm {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeff = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos series for Gamma(z + 1), z >= -0.5.
double lanczos_series(double z) {
    double sum = kLanczosCoeff[0];
    for (std::size_t i = 1; i < kLanczosCoeff.size(); ++i) {
        sum += kLanczosCoeff[i] / (z + static_cast<double>(i));
    }
    return sum;
}

}  // namespace

double log_gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("gamma_fn: argument must be a finite positive real");
    }
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x)
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma_fn(1.0 - x);
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(lanczos_series(z));
}

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("gamma_fn: argument must be a finite positive real");
    }
    if (x < 0.5) {
        return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_series(z);
}

}  // namespace tisbm
