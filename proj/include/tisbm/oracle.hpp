// oracle.hpp: exact diagonalization of the two-spin + truncated bath
// Hamiltonian, used to verify the sector decomposition.
//
// Basis ordering: spin pair index {++, +-, -+, --} is the slowest index,
// followed by one Fock index per mode (mode 0 most significant, last mode
// fastest). sigma^z |+> = +|+>.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tisbm/dynamics.hpp"
#include "tisbm/model.hpp"

namespace tisbm::oracle {

inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Dimension cap from TISBM_DIM_CAP, falling back to kDefaultDimensionCap.
std::size_t dimension_cap_from_env();

struct TruncationSpec {
    int n_max{4};
    int modes{0};
    std::size_t cap{kDefaultDimensionCap};

    /// (n_max+1)^modes, or throws DimensionError if it exceeds cap.
    std::size_t fock_dimension() const;
    std::size_t full_dimension() const;    // 4 * fock
    std::size_t sector_dimension() const;  // 2 * fock
};

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

Matrix build_full(const TisbmParams& p, const TruncationSpec& trunc);

/// Effective sector Hamiltonian including its identity shift.
Matrix build_sector(const SectorParams& s, const TruncationSpec& trunc);

/// sigma1z sigma2z (x) 1_bath.
Matrix parity_operator(const TruncationSpec& trunc);

/// Ascending eigenvalues of a real symmetric matrix.
Vector eigenvalues(const Matrix& h);

struct DecompositionReport {
    std::size_t dimension{0};
    double max_eigenvalue_deviation{0.0};
    std::size_t worst_index{0};
    double hermiticity_error{0.0};
    double parity_commutator{0.0};
    bool parity_conserved{false};
    bool match{false};
};

DecompositionReport verify_decomposition(const TisbmParams& p, const TruncationSpec& trunc, double tol = 1e-10);

enum class ParityBlock { Aligned, Anti, Degenerate };  // {|++>,|-->}, {|+->,|-+>}

const char* to_string(ParityBlock b);

struct GroundReport {
    double energy{0.0};
    ParityBlock block{ParityBlock::Aligned};
    double weight_aligned{0.0};
    double gap{0.0};
    std::vector<ParityBlock> labels;  // both labels when degenerate
};

GroundReport oracle_ground(const TisbmParams& p, const TruncationSpec& trunc);

using SpinState = std::array<std::complex<double>, 4>;

enum class BathState { Vacuum, Thermal };

struct EvolveOptions {
    BathState bath{BathState::Vacuum};
    double temperature{0.0};  // used for BathState::Thermal
};

struct OracleTrace {
    MagnetizationTrace trace;
    std::vector<double> parity;  // <sigma1z sigma2z>
    std::vector<double> purity;  // Tr rho_spin^2
    std::vector<double> norm;    // trace of the full density matrix
    double truncation_weight_loss{0.0};
};

/// Exact unitary evolution from spin state (x) bath state, by spectral decomposition.
OracleTrace oracle_evolve(const TisbmParams& p, const TruncationSpec& trunc, const SpinState& initial,
                          const EvolveOptions& opts, std::span<const double> times);

}  // namespace tisbm::oracle
