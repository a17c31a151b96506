#include <doctest.h>

#include <cmath>
#include <random>

#include "thermwit/numerics.hpp"
#include "thermwit/systems.hpp"
#include "thermwit/thermal.hpp"

using namespace thermwit;
using thermal::ThermalPoint;

TEST_SUITE("thermal") {
    TEST_CASE("partition function equals the direct Boltzmann sum") {
        for (double kt : {0.05, 0.3, 1.0, 4.0, 100.0}) {
            for (double B : {0.0, 0.5, 2.0, 5.0}) {
                const double J = 1.0;
                const double direct = std::exp(-(J + B) / kt) + std::exp(-J / kt) + std::exp(-(J - B) / kt) +
                                      std::exp(3.0 * J / kt);
                const auto z = thermal::partition_function(systems::dimer_spectrum({B, J}), ThermalPoint(kt));
                CHECK(z.value() == doctest::Approx(direct).epsilon(1e-12));
            }
        }
    }

    TEST_CASE("log-domain partition function survives extreme temperatures") {
        const auto s = systems::dimer_spectrum({0.0, 1.0});
        const auto cold = thermal::partition_function(s, ThermalPoint(1e-4));
        CHECK(std::isfinite(cold.log()));
        CHECK(cold.log() == doctest::Approx(3.0e4).epsilon(1e-12));
        CHECK(thermal::population(s, ThermalPoint(1e-4), 0) == doctest::Approx(1.0));
        CHECK_THROWS_AS(ThermalPoint(0.0), Error);
        CHECK_THROWS_AS(ThermalPoint(-1.0), Error);
    }

    TEST_CASE("infinite temperature gives the maximally mixed populations") {
        const auto s = systems::stabilizer_spectrum(4, 1.0);
        const auto pops = thermal::level_populations(s, ThermalPoint::infinite());
        for (std::size_t i = 0; i < s.size(); ++i) CHECK(pops[i] == doctest::Approx(s[i].degeneracy / 16.0));
    }

    TEST_CASE("populations sum to one and p0 is non-increasing in T") {
        std::mt19937_64 rng(9);
        std::uniform_real_distribution<double> u(-3.0, 3.0);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> ev(8);
            for (auto& e : ev) e = u(rng);
            const auto s = systems::Spectrum::from_eigenvalues(ev);
            double prev = 2.0;
            for (double kt = 0.01; kt < 100.0; kt *= 1.2) {
                const auto pops = thermal::level_populations(s, ThermalPoint(kt));
                double sum = 0.0;
                for (double p : pops) sum += p;
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
                const double p0 = thermal::population(s, ThermalPoint(kt), 0);
                CHECK(p0 <= prev + 1e-15);
                prev = p0;
            }
        }
    }

    TEST_CASE("thermal density matrix of a diagonal Hamiltonian") {
        const auto h = numerics::ComplexMatrix::diagonal({-1.0, 0.0, 2.0});
        const auto rho = thermal::thermal_density_matrix(h, ThermalPoint(0.8));
        const double w[] = {std::exp(1.0 / 0.8), 1.0, std::exp(-2.0 / 0.8)};
        const double z = w[0] + w[1] + w[2];
        for (int i = 0; i < 3; ++i) CHECK(rho.matrix()(i, i).real() == doctest::Approx(w[i] / z).epsilon(1e-12));
        CHECK(std::abs(rho.matrix()(0, 1)) < 1e-14);
    }

    TEST_CASE("relative entropy of the ground state to the thermal state is -log2 p0") {
        const auto s = systems::toy_spectrum({0.0, 1.0, 1.0, 50});
        for (double kt : {0.1, 1.0, 10.0}) {
            const ThermalPoint t(kt);
            CHECK(thermal::relative_entropy_ground_to_thermal(s, t) ==
                  doctest::Approx(-std::log2(thermal::population(s, t, 0))).epsilon(1e-12));
        }
        try {
            thermal::relative_entropy_ground_to_thermal(systems::dimer_spectrum({4.0, 1.0}), ThermalPoint(1.0));
            FAIL("expected DegenerateGround");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::DegenerateGround);
        }
    }

    TEST_CASE("closed alpha-spectrum partition function") {
        for (double alpha : {0.0, 0.3, 0.5, 1.0}) {
            for (double kt : {0.2, 1.0, 7.0}) {
                const std::uint64_t D = 40;
                double direct = 0.0;
                for (std::uint64_t m = 0; m < D; ++m) {
                    const double e = 1.5 + (m == 0 ? 0.0 : std::pow(static_cast<double>(m), alpha)) * 0.5;
                    direct += std::exp(-e / kt);
                }
                const auto z = thermal::partition_function_alpha_closed({1.5, 0.5, alpha, D}, ThermalPoint(kt));
                CHECK(z.value() == doctest::Approx(direct).epsilon(1e-12));
            }
        }
        // Geometric series for alpha = 1.
        const double kt = 3.0;
        const double q = std::exp(-1.0 / kt);
        const double geom = (1.0 - std::pow(q, 1000.0)) / (1.0 - q);
        CHECK(thermal::partition_function_alpha_closed({0.0, 1.0, 1.0, 1000}, ThermalPoint(kt)).value() ==
              doctest::Approx(geom).epsilon(1e-12));
    }

    TEST_CASE("Gamma-function form of Z_alpha") {
        CHECK(thermal::partition_function_alpha_gamma({0.0, 1.0, 1.0, 100}, ThermalPoint(7.0)).value() ==
              doctest::Approx(7.0).epsilon(1e-13));
        // alpha = 1/2: Gamma(2)/(1/2) * (kT)^2 = 2 (kT)^2.
        CHECK(thermal::partition_function_alpha_gamma({0.0, 1.0, 0.5, 100}, ThermalPoint(3.0)).value() ==
              doctest::Approx(18.0).epsilon(1e-13));
        try {
            thermal::partition_function_alpha_gamma({0.0, 1.0, 0.0, 100}, ThermalPoint(3.0));
            FAIL("expected AlphaZero");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::AlphaZero);
        }
    }

    TEST_CASE("stabilizer partition function") {
        for (std::uint64_t n : {1u, 3u, 8u}) {
            for (double kt : {0.3, 1.0, 5.0}) {
                double direct = 0.0;
                double binom = 1.0;
                for (std::uint64_t i = 0; i <= n; ++i) {
                    direct += binom * std::exp(-(-static_cast<double>(n) + 2.0 * i) / kt);
                    binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
                }
                const auto z = thermal::stabilizer_partition_function(n, 1.0, ThermalPoint(kt));
                CHECK(z.value() == doctest::Approx(direct).epsilon(1e-12));
                CHECK(thermal::partition_function(systems::stabilizer_spectrum(n, 1.0), ThermalPoint(kt)).value() ==
                      doctest::Approx(direct).epsilon(1e-12));
            }
        }
        const auto big = thermal::stabilizer_partition_function(1000000, 1.0, ThermalPoint(0.5));
        CHECK(std::isfinite(big.log()));
        CHECK(big.log() == doctest::Approx(1e6 * (2.0 + std::log1p(std::exp(-4.0)))).epsilon(1e-12));
    }
}
