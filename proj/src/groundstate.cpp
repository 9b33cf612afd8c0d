// groundstate.cpp: variational ground state, sector gap, critical points

#include "tisbm/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tisbm/errors.hpp"
#include "tisbm/special.hpp"

namespace tisbm {

namespace {

constexpr double kBisectionWidth = 1e-10;
constexpr double kDegenerateGap = 1e-14;
// Scans never reach alpha = 1; gamma' underflows long before.
constexpr double kMaxScanAlpha = 0.95;

void check_alpha(double alpha, const char* who) {
    if (!(alpha >= 0.0) || alpha >= 1.0) {
        std::ostringstream os;
        os << who << ": requires 0 <= alpha < 1 (got " << alpha << ")";
        throw DomainError(os.str());
    }
}

// Right-hand side of the self-consistency equation.
double update_map(double x, double gamma, double omega, double alpha, double omega_c) {
    const double chi = std::hypot(x, omega);
    const double u = chi / (chi + omega_c);
    if (u == 0.0) {
        return 0.0;
    }
    return gamma * std::pow(u, alpha) * std::exp(alpha * (1.0 - u));
}

double relative_residual(double x, double fx) {
    const double diff = std::abs(x - fx);
    return x > 0.0 ? diff / x : diff;
}

// Omega^2 / chi with the chi -> 0 limit (|Omega| <= chi) taken as zero.
double omega_sq_over_chi(double omega, double chi) { return chi > 0.0 ? omega * omega / chi : 0.0; }

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

void SolverConfig::validate() const {
    if (!(tol > 0.0)) throw DomainError("solver tol must be > 0");
    if (max_iter < 1) throw DomainError("solver max_iter must be >= 1");
    if (!(damping > 0.0) || damping > 1.0) throw DomainError("solver damping must lie in (0, 1]");
    if (kondo_cutoff && !(*kondo_cutoff > 0.0)) throw DomainError("Kondo cutoff must be > 0");
}

GammaPrimeResult solve_gamma_prime(const SectorParams& sector, double alpha, const SolverConfig& cfg) {
    check_alpha(alpha, "solve_gamma_prime");
    cfg.validate();
    const double gamma = std::abs(sector.gamma_eff);
    const double omega = sector.omega_eff;
    const double wc = sector.omega_c;
    if (!(wc > 0.0)) throw DomainError("solve_gamma_prime: omega_c must be > 0");
    if (alpha == 0.0 || gamma == 0.0) {
        return {gamma, 0, 0.0};
    }

    auto f = [&](double x) { return update_map(x, gamma, omega, alpha, wc); };

    // f is increasing and f(gamma) < gamma, so iterates from gamma decrease
    // monotonically to the largest fixed point.
    double x = gamma;
    for (int it = 1; it <= cfg.max_iter; ++it) {
        const double fx = f(x);
        if (relative_residual(x, fx) <= cfg.tol) {
            return {x, it, relative_residual(x, fx)};
        }
        x = (1.0 - cfg.damping) * x + cfg.damping * fx;
    }

    // Fallback: bisection on h(x) = x - f(x), h(hi) > 0, with its own max_iter budget.
    double hi = x;
    double lo = hi;
    while (lo > std::numeric_limits<double>::min() && lo - f(lo) >= 0.0) {
        lo *= 0.5;
    }
    if (lo - f(lo) >= 0.0) {
        // No sign change above the smallest normal double: the fixed point has underflowed.
        return {0.0, cfg.max_iter, 0.0};
    }
    int it = cfg.max_iter;
    for (int k = 0; k < cfg.max_iter; ++k, ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid - f(mid) >= 0.0) hi = mid; else lo = mid;
        if (relative_residual(hi, f(hi)) <= cfg.tol) {
            return {hi, it, relative_residual(hi, f(hi))};
        }
        if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
    }
    const double res = relative_residual(hi, f(hi));
    if (res <= cfg.tol) {
        return {hi, it, res};
    }
    std::ostringstream os;
    os << "solve_gamma_prime: no convergence for sector " << to_string(sector.label) << " at alpha = " << alpha
       << " (residual " << res << ")";
    throw ConvergenceError(os.str(), hi, res);
}

double scaling_limit_gamma_prime(const SectorParams& sector, double alpha, BiasBranch branch) {
    check_alpha(alpha, "scaling_limit_gamma_prime");
    const double gamma = std::abs(sector.gamma_eff);
    const double wc = sector.omega_c;
    if (branch == BiasBranch::SmallBias) {
        return std::pow(gamma * std::exp(alpha) / std::pow(wc, alpha), 1.0 / (1.0 - alpha));
    }
    return gamma * std::pow(std::abs(sector.omega_eff) / wc, alpha);
}

GroundStateSolution solve_ground_state(const SectorParams& sector, double alpha, const SolverConfig& cfg) {
    const auto gp = solve_gamma_prime(sector, alpha, cfg);
    const double omega = sector.omega_eff;
    const double wc = sector.omega_c;

    GroundStateSolution sol;
    sol.sector = sector.label;
    sol.gamma_prime = gp.gamma_prime;
    sol.iterations = gp.iterations;
    sol.residual = gp.residual;
    sol.chi = std::hypot(gp.gamma_prime, omega);
    sol.r = 2.0 * alpha * wc / (sol.chi + wc);
    sol.eta = std::hypot(gp.gamma_prime, omega * (1.0 + sol.r));

    sol.energy = 0.5 * (alpha * wc * (omega_sq_over_chi(omega, sol.chi) - wc) / (sol.chi + wc) - sol.eta);
    if (cfg.include_gamma_z_shift) {
        sol.energy += sector.gamma_z_shift;
    }

    // A ~ eta - (1+R) Omega, B ~ gamma'. For Omega > 0 the difference cancels;
    // use eta - (1+R)Omega = gamma'^2 / ((1+R)Omega + eta) and divide through by gamma'.
    const double bias = (1.0 + sol.r) * omega;
    double a_num = 0.0;
    double b_num = 0.0;
    if (omega > 0.0) {
        a_num = gp.gamma_prime / (bias + sol.eta);
        b_num = 1.0;
    } else if (gp.gamma_prime == 0.0 && omega == 0.0) {
        a_num = b_num = 1.0;
    } else {
        a_num = sol.eta - bias;
        b_num = gp.gamma_prime;
    }
    const double norm = std::hypot(a_num, b_num);
    sol.amp_a = a_num / norm;
    sol.amp_b = sign_of(sector.gamma_eff) * b_num / norm;
    return sol;
}

double ground_energy(const SectorParams& sector, double alpha, const SolverConfig& cfg) {
    return solve_ground_state(sector, alpha, cfg).energy;
}

std::pair<double, double> gs_amplitudes(const SectorParams& sector, double alpha, const SolverConfig& cfg) {
    const auto sol = solve_ground_state(sector, alpha, cfg);
    return {sol.amp_a, sol.amp_b};
}

double magnetization_prefactor(double alpha) {
    check_alpha(alpha, "magnetization_prefactor");
    auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
    const double beta = xlogx(alpha) + xlogx(1.0 - alpha);
    const double q = 2.0 - 2.0 * alpha;
    return 4.0 * std::exp(beta / (2.0 * (1.0 - alpha))) / std::sqrt(std::numbers::pi) *
           std::exp(log_gamma_fn(1.0 + 1.0 / q) - log_gamma_fn(1.0 + alpha / q));
}

double gs_magnetization(double omega_a, double kondo_a, double alpha) {
    check_alpha(alpha, "gs_magnetization");
    if (omega_a == 0.0) {
        return 0.0;
    }
    if (!(kondo_a > 0.0) || std::abs(omega_a) >= kSmallBiasFraction * kondo_a) {
        std::ostringstream os;
        os << "gs_magnetization: requires |Omega_a| < " << kSmallBiasFraction
           << " T_K (measured |Omega_a|/T_K = " << std::abs(omega_a) / kondo_a << ")";
        throw DomainError(os.str());
    }
    return -magnetization_prefactor(alpha) * omega_a / kondo_a;
}

namespace {

GroundStateSolution solve_attributed(const SectorParams& s, double alpha, const SolverConfig& cfg) {
    try {
        return solve_ground_state(s, alpha, cfg);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(std::string("sector ") + to_string(s.label) + ": " + e.what(), e.last_iterate(),
                               e.residual());
    } catch (const DomainError& e) {
        throw DomainError(std::string("sector ") + to_string(s.label) + ": " + e.what());
    }
}

// Net magnetization of the sector-a ground state.
double sector_a_magnetization(const SectorParams& a, const GroundStateSolution& sol, double alpha,
                              const SolverConfig& cfg) {
    const double gamma = std::abs(a.gamma_eff);
    const double tk = gamma > 0.0 ? kondo_energy(gamma, alpha, cfg.cutoff_for(a)) : 0.0;
    if (a.omega_eff == 0.0) {
        return 0.0;
    }
    if (tk > 0.0 && std::abs(a.omega_eff) < kSmallBiasFraction * tk) {
        return gs_magnetization(a.omega_eff, tk, alpha);
    }
    // Outside the small-bias window: <Sigma^z> = 2 <sigma_a^z> = 2(A^2 - B^2).
    return 2.0 * (sol.amp_a * sol.amp_a - sol.amp_b * sol.amp_b);
}

}  // namespace

PhasePoint gap_lambda(const TisbmParams& params, double alpha_a, double alpha_b, const SolverConfig& cfg) {
    auto sectors = map_to_sectors(params);
    const double wc = params.omega_c();
    sectors.a.omega_c = sectors.b.omega_c = wc;

    const auto sa = solve_attributed(sectors.a, alpha_a, cfg);
    const auto sb = solve_attributed(sectors.b, alpha_b, cfg);

    PhasePoint pt;
    pt.alpha_a = alpha_a;
    pt.alpha_b = alpha_b;
    pt.k = alpha_a > 0.0 ? alpha_b / alpha_a : std::numeric_limits<double>::quiet_NaN();
    pt.lambda_gap = sa.energy - sb.energy;
    pt.gs_sector = pt.lambda_gap < 0.0 ? Sector::A : Sector::B;
    pt.order_parameter =
        pt.gs_sector == Sector::A ? sector_a_magnetization(sectors.a, sa, alpha_a, cfg) : 0.0;
    pt.iter_a = sa.iterations;
    pt.iter_b = sb.iterations;
    return pt;
}

CriticalSearch find_critical_alpha(const TisbmParams& params, double k, const AlphaRange& range,
                                   const SolverConfig& cfg) {
    if (!(k > 0.0)) throw DomainError("find_critical_alpha: k must be > 0");
    if (!(range.lo >= 0.0) || !(range.hi > range.lo) || range.hi >= 1.0 || k * range.hi >= 1.0) {
        throw DomainError("find_critical_alpha: alpha range must satisfy 0 <= lo < hi and k*hi < 1");
    }
    if (range.points < 2) throw DomainError("find_critical_alpha: need at least two grid points");

    auto lambda_at = [&](double alpha) {
        try {
            return gap_lambda(params, alpha, k * alpha, cfg).lambda_gap;
        } catch (const ConvergenceError& e) {
            std::ostringstream os;
            os << "at alpha = " << alpha << ": " << e.what();
            throw ConvergenceError(os.str(), e.last_iterate(), e.residual());
        }
    };
    auto negative = [](double v) { return v < 0.0; };

    const int n = range.points;
    std::vector<double> alphas(n);
    std::vector<double> lambdas(n);
    for (int i = 0; i < n; ++i) {
        alphas[i] = range.lo + (range.hi - range.lo) * i / (n - 1);
        lambdas[i] = lambda_at(alphas[i]);
    }

    CriticalSearch out;
    out.degenerate =
        std::all_of(lambdas.begin(), lambdas.end(), [](double v) { return std::abs(v) <= kDegenerateGap; });
    if (out.degenerate) {
        return out;
    }

    int roots = 0;
    int first = -1;
    for (int i = 0; i + 1 < n; ++i) {
        if (negative(lambdas[i]) != negative(lambdas[i + 1])) {
            if (first < 0) first = i;
            ++roots;
        }
    }
    if (first < 0) {
        return out;
    }

    double lo = alphas[first];
    double hi = alphas[first + 1];
    double f_lo = lambdas[first];
    double f_hi = lambdas[first + 1];
    while (hi - lo > kBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = lambda_at(mid);
        if (negative(f_mid) == negative(f_lo)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    out.root = CriticalPoint{0.5 * (lo + hi), lo, hi, f_lo, f_hi, roots};
    return out;
}

const char* to_string(TransitionKind k) {
    switch (k) {
        case TransitionKind::None: return "none";
        case TransitionKind::FirstOrder: return "first-order";
        case TransitionKind::KosterlitzThouless: return "kosterlitz-thouless";
        case TransitionKind::Degenerate: return "degenerate";
    }
    return "none";
}

TransitionReport classify_transition(const TisbmParams& params, double k, double alpha_max,
                                     const SolverConfig& cfg, int scan_points) {
    TransitionReport rep;
    if (!(alpha_max > 0.0)) {
        return rep;
    }
    const double scan_hi = std::min({alpha_max, kMaxScanAlpha, kMaxScanAlpha / k});
    const auto search = find_critical_alpha(params, k, {0.0, scan_hi, scan_points}, cfg);

    if (search.root) {
        const auto& r = *search.root;
        rep.kind = TransitionKind::FirstOrder;
        rep.alpha_c = r.alpha_c;
        rep.bracket_lo = r.bracket_lo;
        rep.bracket_hi = r.bracket_hi;
        const double eps = 1e-6;
        const double below = std::max(0.0, r.alpha_c - eps);
        const double above = r.alpha_c + eps;
        rep.order_parameter_below = gap_lambda(params, below, k * below, cfg).order_parameter;
        rep.order_parameter_above = gap_lambda(params, above, k * above, cfg).order_parameter;
        return rep;
    }

    const bool zero_fields = std::abs(params.omega1) <= 1e-12 && std::abs(params.omega2) <= 1e-12;
    const bool tunneling_a = std::abs(params.gamma_x - params.gamma_y) > 0.0;
    if (alpha_max >= 1.0 && zero_fields && tunneling_a) {
        rep.kind = TransitionKind::KosterlitzThouless;
        rep.alpha_c = 1.0;
        rep.bracket_lo = rep.bracket_hi = 1.0;
        rep.localization_states = {"|++>", "|-->"};
        return rep;
    }
    if (search.degenerate) {
        rep.kind = TransitionKind::Degenerate;
    }
    return rep;
}

}  // namespace tisbm
