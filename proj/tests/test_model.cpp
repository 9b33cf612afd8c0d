#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "tisbm/errors.hpp"
#include "tisbm/model.hpp"

using namespace tisbm;

namespace {

TisbmParams discrete(double o1, double o2, double gx, double gy, double gz, std::vector<BathMode> modes) {
    TisbmParams p{o1, o2, gx, gy, gz, DiscreteBath{std::move(modes)}};
    return p;
}

}  // namespace

TEST_CASE("map_to_sectors combines fields and couplings") {
    const auto p = discrete(1.0, 0.5, 0.3, 0.1, 0.2, {{1.0, 0.3, 0.1}, {2.0, -0.2, 0.4}});
    const auto s = map_to_sectors(p);
    CHECK(s.a.omega_eff == doctest::Approx(1.5));
    CHECK(s.b.omega_eff == doctest::Approx(0.5));
    CHECK(s.a.gamma_eff == doctest::Approx(0.2));
    CHECK(s.b.gamma_eff == doctest::Approx(0.4));
    CHECK(s.a.gamma_z_shift == -0.2);
    CHECK(s.b.gamma_z_shift == 0.2);
    REQUIRE(s.a.couplings_eff.size() == 2);
    CHECK(s.a.couplings_eff[0] == doctest::Approx(0.4));
    CHECK(s.b.couplings_eff[0] == doctest::Approx(0.2));
    CHECK(s.a.couplings_eff[1] == doctest::Approx(0.2));
    CHECK(s.b.couplings_eff[1] == doctest::Approx(-0.6));
    CHECK(s.a.mode_omegas == std::vector<double>{1.0, 2.0});
    CHECK_FALSE(s.a.alpha_eff.has_value());
}

TEST_CASE("isotropic coupling leaves sector a without tunneling") {
    const auto s = map_to_sectors(discrete(0, 0, 0.25, 0.25, 0, {}));
    CHECK(s.a.gamma_eff == 0.0);
    CHECK(s.b.gamma_eff == 0.5);
}

TEST_CASE("continuum bath carries per-sector alpha") {
    TisbmParams p{0.1, 0.0, 0.01, 0.0, 0.0, ContinuumBath{0.5, 0.0, 1.0, 2.0}};
    const auto s = map_to_sectors(p);
    CHECK(*s.a.alpha_eff == 0.5);
    CHECK(*s.b.alpha_eff == 0.0);
    CHECK(s.a.omega_c == 2.0);
    CHECK(s.a.couplings_eff.empty());
}

TEST_CASE("map_to_sectors is linear and invertible") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p1 = discrete(u(rng), u(rng), u(rng), u(rng), u(rng), {{1.0, u(rng), u(rng)}});
        const auto p2 = discrete(u(rng), u(rng), u(rng), u(rng), u(rng), {{1.0, u(rng), u(rng)}});
        const auto& m1 = std::get<DiscreteBath>(p1.bath).modes[0];
        const auto& m2 = std::get<DiscreteBath>(p2.bath).modes[0];
        const auto sum = discrete(p1.omega1 + p2.omega1, p1.omega2 + p2.omega2, p1.gamma_x + p2.gamma_x,
                                  p1.gamma_y + p2.gamma_y, p1.gamma_z + p2.gamma_z,
                                  {{1.0, m1.c1 + m2.c1, m1.c2 + m2.c2}});
        const auto s1 = map_to_sectors(p1), s2 = map_to_sectors(p2), ss = map_to_sectors(sum);
        for (auto sec : {Sector::A, Sector::B}) {
            CHECK(ss[sec].omega_eff == doctest::Approx(s1[sec].omega_eff + s2[sec].omega_eff));
            CHECK(ss[sec].gamma_eff == doctest::Approx(s1[sec].gamma_eff + s2[sec].gamma_eff));
            CHECK(ss[sec].gamma_z_shift == doctest::Approx(s1[sec].gamma_z_shift + s2[sec].gamma_z_shift));
            CHECK(ss[sec].couplings_eff[0] ==
                  doctest::Approx(s1[sec].couplings_eff[0] + s2[sec].couplings_eff[0]));
        }
        CHECK((s1.a.omega_eff + s1.b.omega_eff) / 2 == doctest::Approx(p1.omega1));
        CHECK((s1.a.omega_eff - s1.b.omega_eff) / 2 == doctest::Approx(p1.omega2));
        CHECK((s1.b.gamma_eff + s1.a.gamma_eff) / 2 == doctest::Approx(p1.gamma_x));
        CHECK((s1.b.gamma_eff - s1.a.gamma_eff) / 2 == doctest::Approx(p1.gamma_y));
    }
}

TEST_CASE("is_decoherence_free") {
    const auto equal = discrete(0, 0, 0.1, 0.0, 0, {{1.0, 0.3, 0.3}, {0.5, -0.1, -0.1}});
    CHECK(is_decoherence_free(equal, Sector::B));
    CHECK_FALSE(is_decoherence_free(equal, Sector::A));

    const auto opposite = discrete(0, 0, 0.1, 0.0, 0, {{1.0, 0.3, -0.3}});
    CHECK(is_decoherence_free(opposite, Sector::A));
    CHECK_FALSE(is_decoherence_free(opposite, Sector::B));

    const auto single = discrete(0, 0, 0.1, 0.0, 0, {{1.0, 1.0, 0.0}});
    CHECK_FALSE(is_decoherence_free(single, Sector::A));
    CHECK_FALSE(is_decoherence_free(single, Sector::B));

    CHECK(is_decoherence_free(discrete(0, 0, 0, 0, 0, {}), Sector::A));

    TisbmParams cont{0, 0, 0.1, 0, 0, ContinuumBath{0.5, 0.0, 1.0, 1.0}};
    CHECK_THROWS_AS(is_decoherence_free(cont, Sector::B), UnsupportedQuery);
    CHECK(is_decoherence_free_continuum(std::get<ContinuumBath>(cont.bath), Sector::B));
    CHECK_FALSE(is_decoherence_free_continuum(std::get<ContinuumBath>(cont.bath), Sector::A));
}

TEST_CASE("spectral_density_at") {
    const double pi = std::numbers::pi;
    CHECK(spectral_density_at({0.3, 1.0, 2.0}, 2.0) == doctest::Approx(2 * pi * 0.3 * 2.0));
    CHECK(spectral_density_at({0.0, 1.0, 1.0}, 0.4) == 0.0);
    CHECK(spectral_density_at({0.5, 1.0, 1.0}, 0.5) == doctest::Approx(0.5 * pi));
    CHECK(spectral_density_at({0.2, 0.5, 4.0}, 1.0) == doctest::Approx(2 * pi * 0.2 * 2.0));
    CHECK_THROWS_AS(spectral_density_at({0.5, 1.0, 1.0}, 0.0), DomainError);
    CHECK_THROWS_AS(spectral_density_at({0.5, 1.0, 1.0}, -0.1), DomainError);
    CHECK_THROWS_AS(spectral_density_at({0.5, 1.0, 1.0}, 1.0001), DomainError);

    // linear in alpha
    const double base = spectral_density_at({0.1, 1.3, 1.0}, 0.7);
    CHECK(spectral_density_at({0.3, 1.3, 1.0}, 0.7) == doctest::Approx(3 * base));
}

TEST_CASE("renormalized_tunneling and kondo_energy") {
    CHECK(renormalized_tunneling(0.05, 0.0, 1.0) == 0.05);
    CHECK(renormalized_tunneling(0.1, 0.5, 1.0) == doctest::Approx(0.01).epsilon(1e-14));
    CHECK(renormalized_tunneling(0.0, 0.3, 1.0) == 0.0);
    CHECK_THROWS_AS(renormalized_tunneling(0.1, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(renormalized_tunneling(0.1, -0.1, 1.0), DomainError);
    CHECK_THROWS_AS(renormalized_tunneling(-0.1, 0.3, 1.0), DomainError);

    CHECK(kondo_energy(0.2, 0.0, 5.0) == 0.2);
    CHECK(kondo_energy(0.01, 0.5, 1.0) == doctest::Approx(1e-4).epsilon(1e-14));
    CHECK(kondo_energy(0.01 * 3.0, 0.5, 3.0) == doctest::Approx(1e-4 * 3.0).epsilon(1e-14));
    for (double g : {1e-4, 0.01, 0.3}) {
        for (double a : {0.0, 0.2, 0.7}) {
            CHECK(kondo_energy(g, a, 1.0) == renormalized_tunneling(g, a, 1.0));
        }
    }
    CHECK_THROWS_AS(kondo_energy(0.1, 1.2, 1.0), DomainError);
}

TEST_CASE("renormalized tunneling decreases with alpha below the cutoff") {
    for (double g : {1e-3, 0.05, 0.5}) {
        double prev = renormalized_tunneling(g, 0.0, 1.0);
        CHECK(prev == g);
        for (int i = 1; i < 100; ++i) {
            const double a = 0.0099 * i;
            const double cur = renormalized_tunneling(g, a, 1.0);
            CHECK(cur > 0.0);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("validity_check thresholds") {
    SectorParams s;
    s.omega_eff = 0.01;
    s.gamma_eff = 0.01;
    CHECK(validity_check(s, 0.0).empty());
    s.gamma_eff = 0.5;
    CHECK(validity_check(s, 0.0).size() == 1);
    s.gamma_eff = -0.01;
    CHECK(validity_check(s, 1.0).size() == 1);
    s.omega_eff = -0.2;
    s.gamma_eff = 0.2;
    CHECK(validity_check(s, 0.5).size() == 3);
}

TEST_CASE("validate rejects bad parameters") {
    CHECK_NOTHROW(validate(discrete(0, 0, 0, 0, 0, {})));
    CHECK_THROWS_AS(validate(discrete(0, 0, 0, 0, 0, {{0.0, 1.0, 1.0}})), DomainError);
    CHECK_THROWS_AS(validate(discrete(std::nan(""), 0, 0, 0, 0, {})), DomainError);
    TisbmParams c{0, 0, 0, 0, 0, ContinuumBath{0.1, 0.1, 1.0, 0.0}};
    CHECK_THROWS_AS(validate(c), DomainError);
    c.bath = ContinuumBath{0.1, 0.1, -1.0, 1.0};
    CHECK_THROWS_AS(validate(c), DomainError);
}
