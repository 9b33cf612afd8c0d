// model.hpp: two-impurity spin-boson parameters and their exact split into
// two single-impurity sectors.
//
// Units: every frequency and energy is measured in the same unit as the bath
// cutoff (natural choice omega_c = 1), with hbar = k_B = 1.

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tisbm {

/// One harmonic bath mode and its coupling to each spin's sigma^z.
struct BathMode {
    double omega{1.0};
    double c1{0.0};
    double c2{0.0};
};

struct DiscreteBath {
    std::vector<BathMode> modes;
};

/// J(w) = 2 pi alpha omega_c^(1-s) w^s on 0 < w <= omega_c.
struct SpectralDensity {
    double alpha{0.0};
    double s{1.0};
    double omega_c{1.0};
};

/// Continuum bath. Each sector carries its own dissipation strength.
struct ContinuumBath {
    double alpha_a{0.0};
    double alpha_b{0.0};
    double s{1.0};
    double omega_c{1.0};

    SpectralDensity sector_a() const { return {alpha_a, s, omega_c}; }
    SpectralDensity sector_b() const { return {alpha_b, s, omega_c}; }
};

using Bath = std::variant<DiscreteBath, ContinuumBath>;

struct TisbmParams {
    double omega1{0.0};
    double omega2{0.0};
    double gamma_x{0.0};
    double gamma_y{0.0};
    double gamma_z{0.0};
    Bath bath{DiscreteBath{}};

    bool has_discrete_bath() const { return std::holds_alternative<DiscreteBath>(bath); }
    bool has_continuum_bath() const { return std::holds_alternative<ContinuumBath>(bath); }

    /// Cutoff frequency; 1 for a discrete bath.
    double omega_c() const;
};

/// Throws DomainError if a field is non-finite, a mode frequency is not
/// positive, or the continuum parametrization is invalid.
void validate(const TisbmParams& p);

enum class Sector { A, B };

const char* to_string(Sector s);

/// Effective single-impurity model of one parity sector:
///   H = (omega_eff/2) sz - (gamma_eff/2) sx + gamma_z_shift
///       + sum_j w_j a_j^+ a_j + sum_j (c_j/2)(a_j^+ + a_j) sz
struct SectorParams {
    Sector label{Sector::A};
    double omega_eff{0.0};
    double gamma_eff{0.0};
    double gamma_z_shift{0.0};
    std::vector<double> mode_omegas;     // discrete bath only
    std::vector<double> couplings_eff;   // discrete bath only
    std::optional<double> alpha_eff;     // continuum bath only
    double omega_c{1.0};
};

struct SectorPair {
    SectorParams a;
    SectorParams b;

    const SectorParams& operator[](Sector s) const { return s == Sector::A ? a : b; }
};

/// Sector a: {|++>, |-->}; sector b: {|+->, |-+>}.
SectorPair map_to_sectors(const TisbmParams& p);

/// True iff all effective couplings of the sector vanish (|c| <= 1e-14).
/// Throws UnsupportedQuery for a continuum bath; use is_decoherence_free_continuum.
bool is_decoherence_free(const TisbmParams& p, Sector sector);

/// Continuum branch: the sector is decoherence free iff its alpha is zero.
bool is_decoherence_free_continuum(const ContinuumBath& bath, Sector sector);

double spectral_density_at(const SpectralDensity& j, double omega);

/// gamma (gamma/omega_c)^(alpha/(1-alpha)), 0 <= alpha < 1.
double renormalized_tunneling(double gamma, double alpha, double omega_c);

/// gamma (gamma/D)^(alpha/(1-alpha)); coincides with renormalized_tunneling at D = omega_c.
double kondo_energy(double gamma, double alpha, double cutoff);

/// "Small compared to omega_c" threshold used by validity_check.
inline constexpr double kSmallScaleFraction = 0.1;

/// Warnings for each violated closed-form applicability condition.
std::vector<std::string> validity_check(const SectorParams& sector, double temperature);

}  // namespace tisbm
