// oracle.cpp: dense exact diagonalization reference

#include "tisbm/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "tisbm/errors.hpp"

namespace tisbm::oracle {

namespace {

using Complex = std::complex<double>;

struct SpinSigns {
    double z1;
    double z2;
};

// {++, +-, -+, --}
constexpr std::array<SpinSigns, 4> kPairSigns = {{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};

// Mixed-radix digits of a Fock index, mode 0 most significant.
class FockLayout {
public:
    FockLayout(int n_max, int modes) : base_(static_cast<std::size_t>(n_max) + 1), strides_(modes) {
        std::size_t s = 1;
        for (int j = modes - 1; j >= 0; --j) {
            strides_[j] = s;
            s *= base_;
        }
        size_ = s;
    }

    std::size_t size() const { return size_; }
    std::size_t stride(int j) const { return strides_[j]; }
    int occupation(std::size_t f, int j) const { return static_cast<int>((f / strides_[j]) % base_); }
    int n_max() const { return static_cast<int>(base_) - 1; }
    int modes() const { return static_cast<int>(strides_.size()); }

private:
    std::size_t base_;
    std::vector<std::size_t> strides_;
    std::size_t size_{1};
};

std::vector<double> discrete_mode_omegas(const DiscreteBath& bath) {
    std::vector<double> w;
    for (const auto& m : bath.modes) w.push_back(m.omega);
    return w;
}

const DiscreteBath& require_discrete(const TisbmParams& p) {
    const auto* d = std::get_if<DiscreteBath>(&p.bath);
    if (d == nullptr) {
        throw UnsupportedQuery("oracle: continuum bath cannot be diagonalized; supply discrete modes");
    }
    return *d;
}

void check_modes(const TruncationSpec& trunc, std::size_t modes) {
    if (static_cast<std::size_t>(trunc.modes) != modes) {
        std::ostringstream os;
        os << "oracle: truncation declares " << trunc.modes << " modes but the bath has " << modes;
        throw DomainError(os.str());
    }
}

// Adds bath energies and the linear couplings sum_j (c_j/2)(a_j + a_j^+) * zsign.
void add_bath_terms(Matrix& h, std::size_t block_offset, const FockLayout& layout,
                    std::span<const double> omegas, std::span<const double> couplings) {
    for (std::size_t f = 0; f < layout.size(); ++f) {
        const std::size_t row = block_offset + f;
        for (int j = 0; j < layout.modes(); ++j) {
            const int n = layout.occupation(f, j);
            h(row, row) += omegas[j] * n;
            if (n < layout.n_max()) {
                const double amp = 0.5 * couplings[j] * std::sqrt(static_cast<double>(n + 1));
                const std::size_t col = row + layout.stride(j);
                h(row, col) += amp;
                h(col, row) += amp;
            }
        }
    }
}

}  // namespace

std::size_t dimension_cap_from_env() {
    if (const char* env = std::getenv("TISBM_DIM_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<std::size_t>(v);
        }
    }
    return kDefaultDimensionCap;
}

std::size_t TruncationSpec::fock_dimension() const {
    if (n_max < 0 || modes < 0) {
        throw DomainError("truncation: n_max and modes must be >= 0");
    }
    std::size_t d = 1;
    for (int j = 0; j < modes; ++j) {
        d *= static_cast<std::size_t>(n_max) + 1;
        if (d > cap) {
            throw DimensionError("truncation: bath Fock space exceeds the dimension cap");
        }
    }
    return d;
}

std::size_t TruncationSpec::full_dimension() const {
    const std::size_t d = 4 * fock_dimension();
    if (d > cap) {
        std::ostringstream os;
        os << "truncation: full dimension " << d << " exceeds cap " << cap;
        throw DimensionError(os.str());
    }
    return d;
}

std::size_t TruncationSpec::sector_dimension() const {
    const std::size_t d = 2 * fock_dimension();
    if (d > cap) {
        std::ostringstream os;
        os << "truncation: sector dimension " << d << " exceeds cap " << cap;
        throw DimensionError(os.str());
    }
    return d;
}

Matrix build_full(const TisbmParams& p, const TruncationSpec& trunc) {
    const auto& bath = require_discrete(p);
    check_modes(trunc, bath.modes.size());
    const std::size_t dim = trunc.full_dimension();
    const FockLayout layout(trunc.n_max, trunc.modes);
    const std::size_t nf = layout.size();
    const auto omegas = discrete_mode_omegas(bath);

    Matrix h = Matrix::Zero(dim, dim);
    std::vector<double> couplings(bath.modes.size());
    for (std::size_t s = 0; s < 4; ++s) {
        const auto [z1, z2] = kPairSigns[s];
        const double spin_diag = 0.5 * p.omega1 * z1 + 0.5 * p.omega2 * z2 - p.gamma_z * z1 * z2;
        for (std::size_t f = 0; f < nf; ++f) {
            h(s * nf + f, s * nf + f) += spin_diag;
        }
        for (std::size_t j = 0; j < bath.modes.size(); ++j) {
            couplings[j] = bath.modes[j].c1 * z1 + bath.modes[j].c2 * z2;
        }
        add_bath_terms(h, s * nf, layout, omegas, couplings);
    }
    // -(gx/2) s1x s2x - (gy/2) s1y s2y: <--|.|++> = -(gx-gy)/2, <-+|.|+-> = -(gx+gy)/2
    const double flip_aligned = -0.5 * (p.gamma_x - p.gamma_y);
    const double flip_anti = -0.5 * (p.gamma_x + p.gamma_y);
    for (std::size_t f = 0; f < nf; ++f) {
        h(0 * nf + f, 3 * nf + f) = h(3 * nf + f, 0 * nf + f) = flip_aligned;
        h(1 * nf + f, 2 * nf + f) = h(2 * nf + f, 1 * nf + f) = flip_anti;
    }
    return h;
}

Matrix build_sector(const SectorParams& s, const TruncationSpec& trunc) {
    if (s.alpha_eff && s.couplings_eff.empty() && trunc.modes > 0) {
        throw UnsupportedQuery("oracle: continuum sector cannot be diagonalized");
    }
    check_modes(trunc, s.couplings_eff.size());
    const std::size_t dim = trunc.sector_dimension();
    const FockLayout layout(trunc.n_max, trunc.modes);
    const std::size_t nf = layout.size();

    Matrix h = Matrix::Zero(dim, dim);
    std::vector<double> couplings(s.couplings_eff.size());
    for (std::size_t spin = 0; spin < 2; ++spin) {
        const double z = spin == 0 ? 1.0 : -1.0;
        for (std::size_t f = 0; f < nf; ++f) {
            h(spin * nf + f, spin * nf + f) += 0.5 * s.omega_eff * z + s.gamma_z_shift;
        }
        for (std::size_t j = 0; j < couplings.size(); ++j) couplings[j] = s.couplings_eff[j] * z;
        add_bath_terms(h, spin * nf, layout, s.mode_omegas, couplings);
    }
    for (std::size_t f = 0; f < nf; ++f) {
        h(f, nf + f) = h(nf + f, f) = -0.5 * s.gamma_eff;
    }
    return h;
}

Matrix parity_operator(const TruncationSpec& trunc) {
    const std::size_t nf = trunc.fock_dimension();
    Vector diag(4 * nf);
    for (std::size_t s = 0; s < 4; ++s) {
        diag.segment(s * nf, nf).setConstant(kPairSigns[s].z1 * kPairSigns[s].z2);
    }
    return diag.asDiagonal();
}

Vector eigenvalues(const Matrix& h) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("oracle: eigensolver failed");
    }
    return es.eigenvalues();
}

DecompositionReport verify_decomposition(const TisbmParams& p, const TruncationSpec& trunc, double tol) {
    const Matrix full = build_full(p, trunc);
    const auto sectors = map_to_sectors(p);
    const Vector ea = eigenvalues(build_sector(sectors.a, trunc));
    const Vector eb = eigenvalues(build_sector(sectors.b, trunc));

    std::vector<double> merged(ea.data(), ea.data() + ea.size());
    merged.insert(merged.end(), eb.data(), eb.data() + eb.size());
    std::sort(merged.begin(), merged.end());
    const Vector ef = eigenvalues(full);

    DecompositionReport rep;
    rep.dimension = static_cast<std::size_t>(full.rows());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        const double dev = std::abs(ef[static_cast<Eigen::Index>(i)] - merged[i]);
        if (dev > rep.max_eigenvalue_deviation) {
            rep.max_eigenvalue_deviation = dev;
            rep.worst_index = i;
        }
    }
    rep.hermiticity_error = (full - full.transpose()).cwiseAbs().maxCoeff();
    const Matrix parity = parity_operator(trunc);
    rep.parity_commutator = (full * parity - parity * full).cwiseAbs().maxCoeff();
    rep.parity_conserved = rep.parity_commutator <= 1e-14;
    rep.match = rep.max_eigenvalue_deviation <= tol;
    return rep;
}

const char* to_string(ParityBlock b) {
    switch (b) {
        case ParityBlock::Aligned: return "aligned";
        case ParityBlock::Anti: return "anti";
        case ParityBlock::Degenerate: return "degenerate";
    }
    return "degenerate";
}

GroundReport oracle_ground(const TisbmParams& p, const TruncationSpec& trunc) {
    const Matrix h = build_full(p, trunc);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("oracle: eigensolver failed");
    }
    const std::size_t nf = trunc.fock_dimension();
    auto aligned_weight = [&](Eigen::Index col) {
        const auto v = es.eigenvectors().col(col);
        return v.segment(0, nf).squaredNorm() + v.segment(3 * nf, nf).squaredNorm();
    };
    auto block_of = [&](Eigen::Index col) {
        const double w = aligned_weight(col);
        if (w >= 1.0 - 1e-10) return ParityBlock::Aligned;
        if (w <= 1e-10) return ParityBlock::Anti;
        return ParityBlock::Degenerate;
    };

    GroundReport rep;
    rep.energy = es.eigenvalues()[0];
    rep.weight_aligned = aligned_weight(0);
    rep.gap = h.rows() > 1 ? es.eigenvalues()[1] - es.eigenvalues()[0] : 0.0;
    if (h.rows() > 1 && rep.gap < 1e-12) {
        rep.block = ParityBlock::Degenerate;
        rep.labels = {ParityBlock::Aligned, ParityBlock::Anti};
    } else {
        rep.block = block_of(0);
        rep.labels = {rep.block};
    }
    return rep;
}

OracleTrace oracle_evolve(const TisbmParams& p, const TruncationSpec& trunc, const SpinState& initial,
                          const EvolveOptions& opts, std::span<const double> times) {
    for (double t : times) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("oracle_evolve: times must be >= 0");
    }
    const auto& bath = require_discrete(p);
    const Matrix h = build_full(p, trunc);
    const FockLayout layout(trunc.n_max, trunc.modes);
    const std::size_t nf = layout.size();
    const Eigen::Index dim = h.rows();

    // Bath weights: vacuum, or a product Gibbs distribution truncated at n_max.
    std::vector<double> weights(nf, 0.0);
    double kept = 1.0;
    if (opts.bath == BathState::Vacuum || nf == 1) {
        weights[0] = 1.0;
    } else {
        if (!(opts.temperature > 0.0)) throw DomainError("oracle_evolve: thermal bath needs temperature > 0");
        std::vector<std::vector<double>> per_mode(bath.modes.size());
        for (std::size_t j = 0; j < bath.modes.size(); ++j) {
            const double x = std::exp(-bath.modes[j].omega / opts.temperature);
            double z = 0.0;
            for (int n = 0; n <= trunc.n_max; ++n) {
                per_mode[j].push_back((1.0 - x) * std::pow(x, n));
                z += per_mode[j].back();
            }
            kept *= z;
            for (double& w : per_mode[j]) w /= z;
        }
        for (std::size_t f = 0; f < nf; ++f) {
            double w = 1.0;
            for (int j = 0; j < layout.modes(); ++j) w *= per_mode[j][layout.occupation(f, j)];
            weights[f] = w;
        }
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("oracle: eigensolver failed");
    }
    const Eigen::MatrixXcd vecs = es.eigenvectors().cast<Complex>();
    const Vector& evals = es.eigenvalues();

    // Initial states in the eigenbasis, one per bath component.
    std::vector<std::pair<double, Eigen::VectorXcd>> components;
    for (std::size_t f = 0; f < nf; ++f) {
        if (weights[f] == 0.0) continue;
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
        for (std::size_t s = 0; s < 4; ++s) psi[s * nf + f] = initial[s];
        components.emplace_back(weights[f], vecs.adjoint() * psi);
    }

    OracleTrace out;
    out.truncation_weight_loss = 1.0 - kept;
    auto& tr = out.trace;
    tr.formula_id = "oracle_exact";
    tr.times.assign(times.begin(), times.end());
    for (double t : times) {
        Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
        double norm = 0.0;
        for (const auto& [w, coeff] : components) {
            Eigen::VectorXcd phased(dim);
            for (Eigen::Index i = 0; i < dim; ++i) phased[i] = coeff[i] * std::polar(1.0, -evals[i] * t);
            const Eigen::VectorXcd psi = vecs * phased;
            norm += w * psi.squaredNorm();
            for (std::size_t s = 0; s < 4; ++s) {
                for (std::size_t r = 0; r < 4; ++r) {
                    rho(s, r) += w * psi.segment(s * nf, nf).dot(psi.segment(r * nf, nf));
                }
            }
        }
        // dot() conjugates its first argument: rho(s,r) = sum conj(psi_s) psi_r; take the transpose.
        rho.transposeInPlace();
        const double p0 = rho(0, 0).real(), p1 = rho(1, 1).real(), p2 = rho(2, 2).real(), p3 = rho(3, 3).real();
        const double s1 = p0 + p1 - p2 - p3;
        const double s2 = p0 - p1 + p2 - p3;
        tr.sigma1z.push_back(s1);
        tr.sigma2z.push_back(s2);
        tr.sigma_total.push_back(s1 + s2);
        out.parity.push_back(p0 - p1 - p2 + p3);
        out.purity.push_back((rho * rho).trace().real());
        out.norm.push_back(norm);
    }
    return out;
}

}  // namespace tisbm::oracle
