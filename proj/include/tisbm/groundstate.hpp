// groundstate.hpp: variational polaron ground state per sector, the sector
// gap and the transitions it signals.
//
// Each sector ground state is A |+>|0^+> + B |->|0^->, with displaced bath
// vacua |0^+->. The tunneling is renormalized self-consistently:
//
//   gamma' = gamma (chi/(chi+wc))^alpha exp(alpha wc/(chi+wc)),
//   chi    = sqrt(gamma'^2 + Omega^2).

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tisbm/model.hpp"

namespace tisbm {

struct SolverConfig {
    double tol{1e-12};
    int max_iter{10000};
    double damping{0.5};
    std::optional<double> kondo_cutoff;  // D; defaults to the sector's omega_c
    bool include_gamma_z_shift{false};

    void validate() const;
    double cutoff_for(const SectorParams& s) const { return kondo_cutoff.value_or(s.omega_c); }
};

struct GammaPrimeResult {
    double gamma_prime{0.0};
    int iterations{0};
    double residual{0.0};
};

struct GroundStateSolution {
    Sector sector{Sector::A};
    double gamma_prime{0.0};
    double chi{0.0};
    double r{0.0};
    double eta{0.0};
    double amp_a{0.0};
    double amp_b{1.0};
    double energy{0.0};
    int iterations{0};
    double residual{0.0};
};

/// Self-consistent gamma' for |gamma_eff| at dissipation strength alpha.
/// Damped fixed-point iteration from gamma' = |gamma|, bisection fallback.
GammaPrimeResult solve_gamma_prime(const SectorParams& sector, double alpha, const SolverConfig& cfg = {});

enum class BiasBranch { SmallBias, LargeBias };

/// Scaling-limit closed forms of gamma'. The branch is chosen by the caller.
double scaling_limit_gamma_prime(const SectorParams& sector, double alpha, BiasBranch branch);

/// Full variational solution (gamma', chi, R, eta, amplitudes, lambda_0).
GroundStateSolution solve_ground_state(const SectorParams& sector, double alpha, const SolverConfig& cfg = {});

double ground_energy(const SectorParams& sector, double alpha, const SolverConfig& cfg = {});

/// Normalized (A, B); the sign of gamma_eff is carried by B.
std::pair<double, double> gs_amplitudes(const SectorParams& sector, double alpha, const SolverConfig& cfg = {});

/// "Omega << T_K" means Omega below this fraction of T_K.
inline constexpr double kSmallBiasFraction = 0.1;

/// C_z(alpha) prefactor of the ground-state magnetization.
double magnetization_prefactor(double alpha);

/// <Sigma^z> = -C_z(alpha) Omega_a / T_K^a, valid for |Omega_a| < 0.1 T_K^a.
double gs_magnetization(double omega_a, double kondo_a, double alpha);

struct PhasePoint {
    double alpha_a{0.0};
    double alpha_b{0.0};
    double k{0.0};
    double lambda_gap{0.0};
    Sector gs_sector{Sector::B};
    double order_parameter{0.0};
    int iter_a{0};
    int iter_b{0};
};

/// Lambda = lambda_0^a - lambda_0^b for explicit per-sector strengths.
/// Solver failures are rethrown as ConvergenceError naming the sector.
PhasePoint gap_lambda(const TisbmParams& params, double alpha_a, double alpha_b, const SolverConfig& cfg = {});

struct AlphaRange {
    double lo{0.0};
    double hi{0.5};
    int points{200};
};

struct CriticalPoint {
    double alpha_c{0.0};
    double bracket_lo{0.0};
    double bracket_hi{0.0};
    double lambda_lo{0.0};
    double lambda_hi{0.0};
    int roots_found{0};
};

struct CriticalSearch {
    std::optional<CriticalPoint> root;
    bool degenerate{false};  // Lambda vanishes on the whole grid
};

/// Scans Lambda(alpha) with alpha_a = alpha, alpha_b = k alpha and refines the
/// smallest sign change by bisection to |d alpha| <= 1e-10.
CriticalSearch find_critical_alpha(const TisbmParams& params, double k, const AlphaRange& range,
                                   const SolverConfig& cfg = {});

enum class TransitionKind { None, FirstOrder, KosterlitzThouless, Degenerate };

const char* to_string(TransitionKind k);

struct TransitionReport {
    TransitionKind kind{TransitionKind::None};
    std::optional<double> alpha_c;
    double bracket_lo{0.0};
    double bracket_hi{0.0};
    double order_parameter_below{0.0};
    double order_parameter_above{0.0};
    std::vector<std::string> localization_states;
};

/// Classifies the transition met along alpha_a = alpha, alpha_b = k alpha for
/// alpha up to alpha_max. A level crossing below alpha_max is first order;
/// otherwise, with vanishing fields and alpha_max >= 1, the sector-a
/// localization point alpha = 1 is reported as Kosterlitz-Thouless.
TransitionReport classify_transition(const TisbmParams& params, double k, double alpha_max,
                                     const SolverConfig& cfg = {}, int scan_points = 200);

}  // namespace tisbm
