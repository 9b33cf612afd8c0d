// dynamics.cpp: closed-form Ohmic magnetization dynamics

#include "tisbm/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "tisbm/errors.hpp"
#include "tisbm/model.hpp"
#include "tisbm/special.hpp"

namespace tisbm {

namespace {

constexpr double kPi = std::numbers::pi;

void check_times(std::span<const double> times) {
    for (double t : times) {
        if (!(t >= 0.0) || !std::isfinite(t)) {
            throw DomainError("time samples must be finite and >= 0");
        }
    }
}

void check_cutoff(double omega_c) {
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) {
        throw DomainError("omega_c must be finite and > 0");
    }
}

// sigma1z = sigma2z = net/2
MagnetizationTrace symmetric_trace(std::span<const double> times, DynamicalRegime regime,
                                   std::string formula_id, auto&& net_of_t) {
    MagnetizationTrace tr;
    tr.regime = regime;
    tr.formula_id = std::move(formula_id);
    tr.times.assign(times.begin(), times.end());
    tr.sigma1z.reserve(times.size());
    tr.sigma2z.reserve(times.size());
    tr.sigma_total.reserve(times.size());
    for (double t : times) {
        const double half = 0.5 * net_of_t(t);
        tr.sigma1z.push_back(half);
        tr.sigma2z.push_back(half);
        tr.sigma_total.push_back(half + half);
    }
    return tr;
}

}  // namespace

const char* to_string(DynamicalRegime r) {
    switch (r) {
        case DynamicalRegime::ExactDecayAlphaHalf: return "exact_decay_alpha_half";
        case DynamicalRegime::ThermalExponentialRelaxation: return "thermal_exponential_relaxation";
        case DynamicalRegime::IncoherentRelaxation: return "incoherent_relaxation";
        case DynamicalRegime::DampedOscillations: return "damped_oscillations";
        case DynamicalRegime::LocalizedT0: return "localized_t0";
        case DynamicalRegime::BiasSuppressedRelaxation: return "bias_suppressed_relaxation";
        case DynamicalRegime::DecoherenceFree: return "decoherence_free";
    }
    return "unknown";
}

bool is_label_only(DynamicalRegime r) {
    return r == DynamicalRegime::IncoherentRelaxation || r == DynamicalRegime::DampedOscillations ||
           r == DynamicalRegime::BiasSuppressedRelaxation;
}

double net_magnetization_alpha_half(double gamma_a, double omega_c, double t) {
    check_cutoff(omega_c);
    if (!(t >= 0.0)) {
        throw DomainError("net_magnetization_alpha_half: t must be >= 0");
    }
    return 2.0 * std::exp(-0.5 * kPi * gamma_a * gamma_a / omega_c * t);
}

double relaxation_rate(double alpha, double gamma_a, double omega_c, double temperature) {
    check_cutoff(omega_c);
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw DomainError("relaxation_rate: alpha must be > 0");
    }
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw DomainError("relaxation_rate: temperature must be > 0");
    }
    // Gamma(alpha)/Gamma(alpha+1/2) through log-gamma to stay finite for large alpha.
    const double gamma_ratio = std::exp(log_gamma_fn(alpha) - log_gamma_fn(alpha + 0.5));
    return 0.5 * std::sqrt(kPi) * gamma_ratio * (gamma_a * gamma_a / omega_c) *
           std::pow(kPi * temperature / omega_c, 2.0 * alpha - 1.0);
}

MagnetizationTrace alpha_half_trace(double gamma_a, double omega_c, std::span<const double> times) {
    check_times(times);
    return symmetric_trace(times, DynamicalRegime::ExactDecayAlphaHalf, "alpha_half_decay",
                           [&](double t) { return net_magnetization_alpha_half(gamma_a, omega_c, t); });
}

MagnetizationTrace relaxation_trace(double alpha, double gamma_a, double omega_c, double temperature,
                                    std::span<const double> times) {
    check_times(times);
    const double rate = relaxation_rate(alpha, gamma_a, omega_c, temperature);
    const auto regime = std::abs(alpha - 0.5) < 1e-12 ? DynamicalRegime::ExactDecayAlphaHalf
                                                      : DynamicalRegime::ThermalExponentialRelaxation;
    return symmetric_trace(times, regime, "thermal_relaxation",
                           [&](double t) { return 2.0 * std::exp(-rate * t); });
}

MagnetizationTrace mixed_subspace_trace(double gamma_a, double gamma_b, double omega_c,
                                        std::span<const double> times) {
    check_cutoff(omega_c);
    check_times(times);
    MagnetizationTrace tr;
    tr.regime = DynamicalRegime::ExactDecayAlphaHalf;
    tr.formula_id = "mixed_subspace";
    tr.times.assign(times.begin(), times.end());
    const double rate = 0.5 * kPi * gamma_a * gamma_a / omega_c;
    for (double t : times) {
        const double sa = std::exp(-rate * t);
        const double sb = std::cos(gamma_b * t);
        const double s1 = 0.5 * (sa + sb);
        const double s2 = 0.5 * (sa - sb);
        tr.sigma1z.push_back(s1);
        tr.sigma2z.push_back(s2);
        tr.sigma_total.push_back(s1 + s2);
    }
    return tr;
}

MagnetizationTrace coherent_sector_trace(double omega_a, double gamma_a, std::span<const double> times) {
    check_times(times);
    const double chi2 = omega_a * omega_a + gamma_a * gamma_a;
    const double chi = std::sqrt(chi2);
    return symmetric_trace(times, DynamicalRegime::DecoherenceFree, "coherent_sector", [&](double t) {
        if (chi2 == 0.0) return 2.0;
        return 2.0 * (omega_a * omega_a + gamma_a * gamma_a * std::cos(chi * t)) / chi2;
    });
}

MagnetizationTrace frozen_trace(std::span<const double> times) {
    check_times(times);
    return symmetric_trace(times, DynamicalRegime::LocalizedT0, "localized", [](double) { return 2.0; });
}

double critical_temperature(double gamma_a, double alpha, double omega_c) {
    if (!(gamma_a > 0.0)) {
        throw DomainError("critical_temperature: gamma_a must be > 0");
    }
    return renormalized_tunneling(gamma_a, alpha, omega_c);
}

DynamicalRegime classify_regime(double alpha, double temperature, double gamma_a, double omega_c,
                                double bias, bool decoherence_free) {
    if (decoherence_free) {
        return DynamicalRegime::DecoherenceFree;
    }
    if (std::abs(alpha - 0.5) < 1e-12) {
        return DynamicalRegime::ExactDecayAlphaHalf;
    }
    if (alpha >= 1.0) {
        return temperature > 0.0 ? DynamicalRegime::ThermalExponentialRelaxation : DynamicalRegime::LocalizedT0;
    }
    const double g = std::abs(gamma_a);
    const double t_c = renormalized_tunneling(g, alpha, omega_c);
    if (temperature >= t_c) {
        return DynamicalRegime::ThermalExponentialRelaxation;
    }
    const double b = std::abs(bias);
    if (b > kBiasDominanceFactor * t_c && b < kSmallScaleFraction * omega_c) {
        return DynamicalRegime::BiasSuppressedRelaxation;
    }
    return alpha > 0.5 ? DynamicalRegime::IncoherentRelaxation : DynamicalRegime::DampedOscillations;
}

std::vector<double> time_grid(double t0, double t1, std::size_t n) {
    if (n == 0) {
        throw DomainError("time grid needs at least one sample");
    }
    if (!(t0 >= 0.0) || !(t1 >= t0) || !std::isfinite(t1)) {
        throw DomainError("time grid requires 0 <= t0 <= t1");
    }
    std::vector<double> ts(n);
    for (std::size_t i = 0; i < n; ++i) {
        ts[i] = n == 1 ? t0 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return ts;
}

}  // namespace tisbm
