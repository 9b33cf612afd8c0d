#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "tisbm/errors.hpp"
#include "tisbm/groundstate.hpp"
#include "tisbm/oracle.hpp"

using namespace tisbm;
using namespace tisbm::oracle;

namespace {

TisbmParams discrete(double o1, double o2, double gx, double gy, double gz, std::vector<BathMode> modes = {}) {
    return TisbmParams{o1, o2, gx, gy, gz, DiscreteBath{std::move(modes)}};
}

TisbmParams random_params(std::mt19937_64& rng, int modes) {
    std::uniform_real_distribution<double> u(-0.5, 0.5), uw(0.3, 1.5);
    std::vector<BathMode> ms;
    for (int j = 0; j < modes; ++j) ms.push_back({uw(rng), u(rng), u(rng)});
    return discrete(u(rng), u(rng), u(rng), u(rng), u(rng), ms);
}

// Second eigensolver pass: general real solver, real parts sorted.
std::vector<double> general_eigenvalues(const Matrix& h) {
    Eigen::EigenSolver<Matrix> es(h, false);
    std::vector<double> ev;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()[i].real());
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

TEST_CASE("build_full without modes") {
    const auto h = build_full(discrete(0, 0, 0, 0, 0.3), {4, 0});
    REQUIRE(h.rows() == 4);
    Matrix expected = Vector{{-0.3, 0.3, 0.3, -0.3}}.asDiagonal();
    CHECK((h - expected).cwiseAbs().maxCoeff() == 0.0);

    const auto hz = build_full(discrete(0.4, 0.1, 0, 0, 0), {4, 0});
    Matrix ez = Vector{{0.25, 0.15, -0.15, -0.25}}.asDiagonal();
    CHECK((hz - ez).cwiseAbs().maxCoeff() <= 1e-16);
}

TEST_CASE("build_full is symmetric and commutes with the parity") {
    std::mt19937_64 rng(21);
    for (int modes : {0, 1, 2}) {
        for (int n_max : {0, 2, 5}) {
            const auto p = random_params(rng, modes);
            const TruncationSpec trunc{n_max, modes};
            const auto h = build_full(p, trunc);
            CHECK(static_cast<std::size_t>(h.rows()) == trunc.full_dimension());
            CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
            const auto par = parity_operator(trunc);
            CHECK((h * par - par * h).cwiseAbs().maxCoeff() <= 1e-14);
        }
    }
}

TEST_CASE("build_sector without modes") {
    SectorParams s;
    s.omega_eff = 0.6;
    s.gamma_eff = 0.2;
    s.gamma_z_shift = -0.1;
    const auto h = build_sector(s, {3, 0});
    Eigen::Matrix2d expected;
    expected << 0.3 - 0.1, -0.1, -0.1, -0.3 - 0.1;
    CHECK((h - expected).cwiseAbs().maxCoeff() <= 1e-16);

    s.gamma_eff = 0.0;
    const auto d = build_sector(s, {3, 0});
    CHECK(d(0, 1) == 0.0);
}

TEST_CASE("sector eigenvalues agree between two eigensolvers") {
    std::mt19937_64 rng(4);
    const auto p = random_params(rng, 1);
    const auto sectors = map_to_sectors(p);
    for (Sector s : {Sector::A, Sector::B}) {
        const auto h = build_sector(sectors[s], {4, 1});
        const auto sym = eigenvalues(h);
        const auto gen = general_eigenvalues(h);
        for (std::size_t i = 0; i < gen.size(); ++i) CHECK(std::abs(sym[i] - gen[i]) <= 1e-12);
    }
}

TEST_CASE("verify_decomposition") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 5; ++i) {
        const auto rep = verify_decomposition(random_params(rng, 1), {6, 1});
        CHECK(rep.dimension == 28);
        CHECK(rep.match);
        CHECK(rep.max_eigenvalue_deviation < 1e-10);
        CHECK(rep.parity_conserved);
        CHECK(rep.hermiticity_error <= 1e-14);
    }
    for (int i = 0; i < 3; ++i) {
        const auto rep = verify_decomposition(random_params(rng, 2), {4, 2});
        CHECK(rep.match);
    }
    const auto none = verify_decomposition(random_params(rng, 0), {6, 0}, 1e-13);
    CHECK(none.dimension == 4);
    CHECK(none.max_eigenvalue_deviation < 1e-13);
}

TEST_CASE("decoherence-free sector b has a free-boson ladder spectrum") {
    const auto p = discrete(0.3, 0.1, 0.2, 0.05, 0.07, {{0.8, 0.25, 0.25}});
    const auto s = map_to_sectors(p);
    const TruncationSpec trunc{5, 1};
    const auto ev = eigenvalues(build_sector(s.b, trunc));
    Eigen::Matrix2d spin;
    spin << 0.5 * s.b.omega_eff, -0.5 * s.b.gamma_eff, -0.5 * s.b.gamma_eff, -0.5 * s.b.omega_eff;
    const Eigen::Vector2d se = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(spin).eigenvalues();
    std::vector<double> ladder;
    for (int n = 0; n <= 5; ++n) {
        for (int k = 0; k < 2; ++k) ladder.push_back(se[k] + s.b.gamma_z_shift + 0.8 * n);
    }
    std::sort(ladder.begin(), ladder.end());
    for (std::size_t i = 0; i < ladder.size(); ++i) CHECK(std::abs(ev[i] - ladder[i]) <= 1e-12);
}

TEST_CASE("oracle_ground") {
    const auto g = oracle_ground(discrete(0, 0, 0.3, 0.1, 0), {2, 0});
    CHECK(g.energy == doctest::Approx(-0.2).epsilon(1e-14));  // -gamma_b/2
    CHECK(g.block == ParityBlock::Anti);

    const auto aligned = oracle_ground(discrete(0, 0, 0.3, -0.1, 0), {2, 0});
    CHECK(aligned.block == ParityBlock::Aligned);

    // degenerate doublet: gamma_x = gamma_y = 0, no fields
    const auto deg = oracle_ground(discrete(0, 0, 0, 0, 0), {0, 0});
    CHECK(deg.block == ParityBlock::Degenerate);
    CHECK(deg.labels.size() == 2);
}

TEST_CASE("oracle_ground weak coupling and truncation convergence") {
    const double c = 0.02, w = 1.0;
    const auto p = discrete(0.1, 0.05, 0.2, 0.05, 0, {{w, c, 0.5 * c}});
    const auto coupled = oracle_ground(p, {8, 1});
    const auto free = oracle_ground(discrete(0.1, 0.05, 0.2, 0.05, 0, {{w, 0, 0}}), {8, 1});
    CHECK(std::abs(coupled.energy - free.energy) <= 4 * c * c / w);
    CHECK(coupled.energy <= free.energy + 1e-15);

    const auto p2 = discrete(0.1, 0.05, 0.2, 0.05, 0, {{w, 0.2, 0.1}});
    const double e6 = oracle_ground(p2, {6, 1}).energy;
    const double e8 = oracle_ground(p2, {8, 1}).energy;
    CHECK(std::abs(e6 - e8) < 1e-8);
}

TEST_CASE("variational energy matches exact diagonalization at weak coupling") {
    // Sector a, one weakly coupled mode: exact energy within c^2/omega of the alpha = 0 ansatz.
    const double c = 0.01;
    const auto p = discrete(0.03, 0.01, 0.05, 0.01, 0.0, {{1.0, c, c}});
    const auto s = map_to_sectors(p);
    const double exact = eigenvalues(build_sector(s.a, {8, 1}))[0];
    const double variational = ground_energy(s.a, 0.0);
    const double ca = s.a.couplings_eff[0];
    CHECK(std::abs(exact - variational) <= ca * ca);
}

TEST_CASE("dimension cap and bath type") {
    CHECK_THROWS_AS(build_full(discrete(0, 0, 0, 0, 0, {{1, 0, 0}, {1, 0, 0}}), {40, 2, 4096}), DimensionError);
    CHECK_THROWS_AS((TruncationSpec{63, 2, 4096}.full_dimension()), DimensionError);
    CHECK((TruncationSpec{31, 2, 4096}.full_dimension()) == 4096);
    TisbmParams cont{0, 0, 0.1, 0, 0, ContinuumBath{0.1, 0.1, 1.0, 1.0}};
    CHECK_THROWS_AS(build_full(cont, {2, 0}), UnsupportedQuery);
    CHECK_THROWS_AS(build_full(discrete(0, 0, 0, 0, 0, {{1, 0, 0}}), {2, 2}), DomainError);
}

TEST_CASE("oracle_evolve from |++> stays in sector a") {
    std::mt19937_64 rng(8);
    const auto p = random_params(rng, 1);
    const auto times = tisbm::time_grid(0.0, 30.0, 61);
    const auto ev = oracle_evolve(p, {6, 1}, {1.0, 0.0, 0.0, 0.0}, {}, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(std::abs(ev.trace.sigma1z[i] - ev.trace.sigma2z[i]) <= 1e-12);
        CHECK(std::abs(ev.parity[i] - 1.0) <= 1e-12);
        CHECK(std::abs(ev.norm[i] - 1.0) <= 1e-12);
    }
}

TEST_CASE("oracle_evolve decoherence-free sector keeps the spin state pure") {
    const auto p = discrete(0.2, 0.1, 0.3, 0.2, 0.05, {{0.7, 0.4, 0.4}});
    const auto times = tisbm::time_grid(0.0, 50.0, 100);
    const auto ev = oracle_evolve(p, {6, 1}, {0.0, 1.0, 0.0, 0.0}, {}, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(ev.purity[i] >= 1.0 - 1e-10);
        CHECK(std::abs(ev.parity[i] + 1.0) <= 1e-12);
    }
    // control: the same state with unequal couplings decoheres
    const auto q = discrete(0.2, 0.1, 0.3, 0.2, 0.05, {{0.7, 0.4, -0.4}});
    const auto noisy = oracle_evolve(q, {6, 1}, {0.0, 1.0, 0.0, 0.0}, {}, times);
    CHECK(*std::min_element(noisy.purity.begin(), noisy.purity.end()) < 0.99);
}

TEST_CASE("oracle_evolve isotropic coupling freezes the net magnetization") {
    const double h = 1.0 / std::sqrt(2.0);
    const auto p = discrete(0.0, 0.0, 0.15, 0.15, 0.0, {{0.9, 0.3, 0.3}});
    const auto times = tisbm::time_grid(0.0, 40.0, 81);
    const auto ev = oracle_evolve(p, {6, 1}, {h, h, 0.0, 0.0}, {}, times);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(std::abs(ev.trace.sigma_total[i] - 1.0) <= 1e-10);
    }
    // sigma1z oscillates with frequency gamma_b = 0.3 from the decoherence-free sector
    const double t = times[20];
    CHECK(ev.trace.sigma1z[20] == doctest::Approx(0.5 * (1.0 + std::cos(0.3 * t))).epsilon(1e-8));
}

TEST_CASE("oracle_evolve thermal bath") {
    const auto p = discrete(0.1, 0.0, 0.2, 0.1, 0.0, {{0.5, 0.2, 0.1}});
    EvolveOptions opts{BathState::Thermal, 0.4};
    const auto times = tisbm::time_grid(0.0, 20.0, 21);
    const auto ev = oracle_evolve(p, {5, 1}, {1.0, 0.0, 0.0, 0.0}, opts, times);
    CHECK(ev.truncation_weight_loss > 0.0);
    CHECK(ev.truncation_weight_loss < 1e-3);
    for (std::size_t i = 0; i < times.size(); ++i) {
        CHECK(std::abs(ev.norm[i] - 1.0) <= 1e-12);
        CHECK(std::abs(ev.parity[i] - 1.0) <= 1e-12);
    }
    CHECK_THROWS_AS(oracle_evolve(p, {5, 1}, {1.0, 0.0, 0.0, 0.0}, {BathState::Thermal, 0.0}, times), DomainError);
}
