// model.cpp: sector mapping and derived scales

#include "tisbm/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tisbm/errors.hpp"

namespace tisbm {

namespace {

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) {
        throw DomainError(std::string("parameter '") + name + "' must be finite");
    }
}

void check_tunneling_domain(double gamma, double alpha, double cutoff, const char* who) {
    if (!std::isfinite(gamma) || gamma < 0.0) {
        throw DomainError(std::string(who) + ": gamma must be finite and >= 0");
    }
    if (!(alpha >= 0.0) || alpha >= 1.0) {
        throw DomainError(std::string(who) + ": requires 0 <= alpha < 1 (localized phase for alpha >= 1)");
    }
    if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
        throw DomainError(std::string(who) + ": cutoff must be > 0");
    }
}

}  // namespace

double TisbmParams::omega_c() const {
    if (const auto* c = std::get_if<ContinuumBath>(&bath)) {
        return c->omega_c;
    }
    return 1.0;
}

void validate(const TisbmParams& p) {
    require_finite(p.omega1, "omega1");
    require_finite(p.omega2, "omega2");
    require_finite(p.gamma_x, "gamma_x");
    require_finite(p.gamma_y, "gamma_y");
    require_finite(p.gamma_z, "gamma_z");
    if (const auto* d = std::get_if<DiscreteBath>(&p.bath)) {
        for (const auto& m : d->modes) {
            require_finite(m.c1, "c1");
            require_finite(m.c2, "c2");
            if (!(m.omega > 0.0) || !std::isfinite(m.omega)) {
                throw DomainError("bath mode frequency must be finite and > 0");
            }
        }
    } else {
        const auto& c = std::get<ContinuumBath>(p.bath);
        if (!(c.omega_c > 0.0) || !std::isfinite(c.omega_c)) {
            throw DomainError("omega_c must be finite and > 0");
        }
        if (!(c.alpha_a >= 0.0) || !(c.alpha_b >= 0.0) || !std::isfinite(c.alpha_a) ||
            !std::isfinite(c.alpha_b)) {
            throw DomainError("alpha_a and alpha_b must be finite and >= 0");
        }
        if (!(c.s > -1.0) || !std::isfinite(c.s)) {
            throw DomainError("spectral exponent s must be > -1");
        }
    }
}

const char* to_string(Sector s) { return s == Sector::A ? "A" : "B"; }

SectorPair map_to_sectors(const TisbmParams& p) {
    SectorPair out;
    out.a.label = Sector::A;
    out.b.label = Sector::B;
    out.a.omega_eff = p.omega1 + p.omega2;
    out.b.omega_eff = p.omega1 - p.omega2;
    out.a.gamma_eff = p.gamma_x - p.gamma_y;
    out.b.gamma_eff = p.gamma_x + p.gamma_y;
    out.a.gamma_z_shift = -p.gamma_z;
    out.b.gamma_z_shift = p.gamma_z;

    if (const auto* d = std::get_if<DiscreteBath>(&p.bath)) {
        for (const auto& m : d->modes) {
            out.a.mode_omegas.push_back(m.omega);
            out.b.mode_omegas.push_back(m.omega);
            out.a.couplings_eff.push_back(m.c1 + m.c2);
            out.b.couplings_eff.push_back(m.c1 - m.c2);
        }
        out.a.omega_c = out.b.omega_c = 1.0;
    } else {
        const auto& c = std::get<ContinuumBath>(p.bath);
        out.a.alpha_eff = c.alpha_a;
        out.b.alpha_eff = c.alpha_b;
        out.a.omega_c = out.b.omega_c = c.omega_c;
    }
    return out;
}

bool is_decoherence_free(const TisbmParams& p, Sector sector) {
    if (!p.has_discrete_bath()) {
        throw UnsupportedQuery(
            "is_decoherence_free: continuum bath carries one alpha per sector; "
            "use is_decoherence_free_continuum");
    }
    const auto sectors = map_to_sectors(p);
    for (double c : sectors[sector].couplings_eff) {
        if (std::abs(c) > 1e-14) {
            return false;
        }
    }
    return true;
}

bool is_decoherence_free_continuum(const ContinuumBath& bath, Sector sector) {
    return (sector == Sector::A ? bath.alpha_a : bath.alpha_b) == 0.0;
}

double spectral_density_at(const SpectralDensity& j, double omega) {
    if (!(j.omega_c > 0.0)) {
        throw DomainError("spectral_density_at: omega_c must be > 0");
    }
    if (!(omega > 0.0) || omega > j.omega_c) {
        throw DomainError("spectral_density_at: omega outside (0, omega_c]");
    }
    return 2.0 * std::numbers::pi * j.alpha * std::pow(j.omega_c, 1.0 - j.s) * std::pow(omega, j.s);
}

double renormalized_tunneling(double gamma, double alpha, double omega_c) {
    check_tunneling_domain(gamma, alpha, omega_c, "renormalized_tunneling");
    if (gamma == 0.0) {
        return 0.0;
    }
    return gamma * std::pow(gamma / omega_c, alpha / (1.0 - alpha));
}

double kondo_energy(double gamma, double alpha, double cutoff) {
    check_tunneling_domain(gamma, alpha, cutoff, "kondo_energy");
    if (gamma == 0.0) {
        return 0.0;
    }
    return gamma * std::pow(gamma / cutoff, alpha / (1.0 - alpha));
}

std::vector<std::string> validity_check(const SectorParams& sector, double temperature) {
    std::vector<std::string> warnings;
    const double limit = kSmallScaleFraction * sector.omega_c;
    auto warn = [&](const char* what, double value) {
        std::ostringstream os;
        os << "sector " << to_string(sector.label) << ": " << what << " = " << value
           << " is not small compared to omega_c (limit " << limit << ")";
        warnings.push_back(os.str());
    };
    if (std::abs(sector.omega_eff) >= limit) warn("|omega_eff|", std::abs(sector.omega_eff));
    if (std::abs(sector.gamma_eff) >= limit) warn("|gamma_eff|", std::abs(sector.gamma_eff));
    if (temperature >= limit) warn("k_B T", temperature);
    return warnings;
}

}  // namespace tisbm
