// dynamics.hpp: closed-form Ohmic magnetization dynamics and regime labels
//
// Initial state for the single-sector formulas is |++> with the bath in a
// thermal state; the sector a pseudo-spin then starts in |+>_a and
// <sigma1z> = <sigma2z> = <Sigma^z>/2 for all times.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tisbm {

enum class DynamicalRegime {
    ExactDecayAlphaHalf,
    ThermalExponentialRelaxation,
    IncoherentRelaxation,
    DampedOscillations,
    LocalizedT0,
    BiasSuppressedRelaxation,
    DecoherenceFree,
};

const char* to_string(DynamicalRegime r);

/// True for regimes that only have a qualitative description (no waveform).
bool is_label_only(DynamicalRegime r);

struct MagnetizationTrace {
    std::vector<double> times;
    std::vector<double> sigma1z;
    std::vector<double> sigma2z;
    std::vector<double> sigma_total;
    std::optional<DynamicalRegime> regime;  // unset for oracle traces
    std::string formula_id;

    std::size_t size() const { return times.size(); }
};

/// Bias must exceed this multiple of the renormalized tunneling to suppress oscillations.
inline constexpr double kBiasDominanceFactor = 10.0;

/// 2 exp(-(pi/2)(gamma_a^2/omega_c) t); alpha = 1/2, any temperature.
double net_magnetization_alpha_half(double gamma_a, double omega_c, double t);

/// Inverse relaxation time of the thermally activated branch.
double relaxation_rate(double alpha, double gamma_a, double omega_c, double temperature);

MagnetizationTrace alpha_half_trace(double gamma_a, double omega_c, std::span<const double> times);

/// 2 exp(-t/tau) with tau from relaxation_rate.
MagnetizationTrace relaxation_trace(double alpha, double gamma_a, double omega_c, double temperature,
                                    std::span<const double> times);

/// Initial state (|++> + |+->)/sqrt(2), alpha_a = 1/2 and a decoherence-free sector b.
MagnetizationTrace mixed_subspace_trace(double gamma_a, double gamma_b, double omega_c,
                                        std::span<const double> times);

/// Decoherence-free sector a from |++>: exact two-level precession of
/// (omega_a/2) sz - (gamma_a/2) sx.
MagnetizationTrace coherent_sector_trace(double omega_a, double gamma_a, std::span<const double> times);

/// Localized phase at T = 0: the pair stays frozen in |++>.
MagnetizationTrace frozen_trace(std::span<const double> times);

/// T_c = renormalized tunneling / k_B.
double critical_temperature(double gamma_a, double alpha, double omega_c);

DynamicalRegime classify_regime(double alpha, double temperature, double gamma_a, double omega_c,
                                double bias, bool decoherence_free);

/// Uniform grid [t0, t1] with n samples (n == 1 gives {t0}).
std::vector<double> time_grid(double t0, double t1, std::size_t n);

}  // namespace tisbm
