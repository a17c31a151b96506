#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thermwit/entanglement.hpp"
#include "thermwit/numerics.hpp"
#include "thermwit/systems.hpp"
#include "thermwit/thermal.hpp"

using namespace thermwit;
using entanglement::BoundKind;
using entanglement::Partition;
using numerics::Complex;

namespace {

double binomial(std::uint64_t n, std::uint64_t k) {
    double b = 1.0;
    for (std::uint64_t i = 0; i < k; ++i) b = b * static_cast<double>(n - i) / static_cast<double>(i + 1);
    return b;
}

// 1 + R(|S(n,k)>) written out from its product form.
double dicke_oracle(std::uint64_t n, std::uint64_t k) {
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    return std::pow(nd / kd, kd) * std::pow(nd / (nd - kd), nd - kd) / binomial(n, k);
}

numerics::DensityMatrix werner(double p) {
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<Complex> singlet = {0.0, s, -s, 0.0};
    auto m = numerics::DensityMatrix::from_pure(singlet).matrix() * Complex(p);
    m += numerics::ComplexMatrix::identity(4) * Complex((1.0 - p) / 4.0);
    return numerics::DensityMatrix::from_matrix(m);
}

}  // namespace

TEST_SUITE("entanglement") {
    TEST_CASE("Schmidt coefficients of simple states") {
        const auto sc = entanglement::schmidt_coefficients(systems::singlet(), Partition::half_cut(2));
        REQUIRE(sc.size() == 2);
        CHECK(sc[0] == doctest::Approx(0.5));
        CHECK(sc[1] == doctest::Approx(0.5));
        CHECK(entanglement::bipartite_pure_robustness(systems::singlet(), Partition::half_cut(2)).one_plus_r() ==
              doctest::Approx(2.0));
        CHECK(entanglement::bipartite_pure_robustness(systems::PureState::basis(3, 5), Partition::half_cut(3))
                  .robustness() == doctest::Approx(0.0).epsilon(1e-15));
    }

    TEST_CASE("partitions are validated") {
        CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), Error);
        CHECK_THROWS_AS(Partition(3, {{0}, {1}}), Error);
        CHECK_THROWS_AS(Partition(3, {{0, 1, 2}, {}}), Error);
        CHECK_THROWS_AS(Partition::bipartition(2, {5}), Error);
        const auto p = Partition::bipartition(4, {0, 2});
        CHECK(p.blocks()[1] == std::vector<std::size_t>{1, 3});
    }

    TEST_CASE("Dicke robustness closed form") {
        for (std::uint64_t n = 2; n <= 40; ++n) {
            for (std::uint64_t k = 1; k < n; ++k) {
                const auto b = entanglement::dicke_robustness(n, k);
                CHECK(b.one_plus_r() == doctest::Approx(dicke_oracle(n, k)).epsilon(1e-12));
                CHECK(b.kind() == BoundKind::Exact);
            }
        }
        // W state: E_R = log2(9/4).
        CHECK(entanglement::dicke_robustness(3, 1).one_plus_r() == doctest::Approx(2.25));
        CHECK(entanglement::dicke_robustness(2, 1).one_plus_r() == doctest::Approx(2.0));
        try {
            entanglement::dicke_robustness(5, 0);
            FAIL("expected SeparableCase");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::SeparableCase);
        }
    }

    TEST_CASE("(1+R)/sqrt(n) decreases toward sqrt(pi/2) for the balanced Dicke state") {
        double prev = 1e9;
        for (std::uint64_t n = 2; n <= 20000; n *= 2) {
            const double ratio = entanglement::dicke_robustness(n, n / 2).one_plus_r() /
                                 entanglement::dicke_half_asymptotic(n);
            CHECK(ratio < prev);
            CHECK(ratio > std::sqrt(std::numbers::pi / 2.0));
            prev = ratio;
        }
        CHECK(prev == doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-3));
        CHECK_THROWS_AS(entanglement::dicke_half_asymptotic(7), Error);
    }

    TEST_CASE("half-cut bipartite robustness of balanced Dicke states matches the full value") {
        for (std::uint64_t n = 2; n <= 12; n += 2) {
            const auto bi =
                entanglement::bipartite_pure_robustness(systems::dicke_state(n, n / 2), Partition::half_cut(n));
            const double full = entanglement::dicke_robustness(n, n / 2).one_plus_r();
            CHECK(bi.one_plus_r() == doctest::Approx(full).epsilon(1e-12));
            CHECK(full >= bi.one_plus_r() * (1.0 - 1e-12));
        }
        // Unbalanced cut is strictly weaker.
        const auto w =
            entanglement::bipartite_pure_robustness(systems::dicke_state(3, 1), Partition::bipartition(3, {0}));
        CHECK(w.one_plus_r() < entanglement::dicke_robustness(3, 1).one_plus_r());
    }

    TEST_CASE("entropic inputs give lower bounds") {
        const auto r = entanglement::bound_from_relative_entropy(2.0);
        CHECK(r.one_plus_r() == doctest::Approx(4.0));
        CHECK(r.kind() == BoundKind::LowerBound);
        CHECK(entanglement::bound_from_geometric_measure(1.0).kind() == BoundKind::LowerBound);
        CHECK_THROWS_AS(entanglement::bound_from_relative_entropy(-0.1), Error);
        CHECK_THROWS_AS(entanglement::RobustnessBound::exact(2.0, entanglement::BoundSource::RelativeEntropyInput),
                        Error);
        CHECK(entanglement::singlet_robustness().threshold() == doctest::Approx(0.5));
    }

    TEST_CASE("concurrence of Werner states") {
        for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
            const auto rho = werner(p);
            CHECK(entanglement::concurrence_two_qubit(rho) ==
                  doctest::Approx(std::max(0.0, (3.0 * p - 1.0) / 2.0)).epsilon(1e-10));
        }
        const auto prod = numerics::DensityMatrix::from_pure(systems::PureState::basis(2, 1).amplitudes());
        CHECK(entanglement::concurrence_two_qubit(prod) == doctest::Approx(0.0).epsilon(1e-12));
    }

    TEST_CASE("concurrence and the PPT test agree for two qubits") {
        std::mt19937_64 rng(21);
        const std::size_t dims[] = {2, 2};
        const std::size_t sub[] = {1};
        int checked = 0;
        for (int i = 0; i < 500; ++i) {
            const auto rho = numerics::random_density_matrix(4, rng);
            const double c = entanglement::concurrence_signed(rho);
            const double m = entanglement::ppt_min_eigenvalue(rho, dims, sub);
            if (std::abs(c) < 1e-9 || std::abs(m) < 1e-9) continue;
            CHECK((c > 0.0) == (m < 0.0));
            ++checked;
        }
        CHECK(checked > 400);
    }

    TEST_CASE("ALS geometric measure") {
        const auto prod = entanglement::geometric_measure_als(systems::PureState::basis(4, 9));
        CHECK(prod.overlap == doctest::Approx(1.0).epsilon(1e-10));

        const double s = 1.0 / std::sqrt(2.0);
        std::vector<Complex> ghz(8);
        ghz[0] = s;
        ghz[7] = s;
        const auto g = entanglement::geometric_measure_als(systems::PureState(3, ghz));
        CHECK(g.overlap * g.overlap == doctest::Approx(0.5).epsilon(1e-8));
        CHECK(g.eg_upper == doctest::Approx(1.0).epsilon(1e-8));

        for (std::uint64_t n : {3u, 4u, 6u}) {
            const auto est = entanglement::geometric_measure_als(systems::dicke_state(n, n / 2), {.seed = 99});
            const double exact = entanglement::dicke_max_product_overlap_sq(n, n / 2);
            CHECK(est.overlap * est.overlap <= exact * (1.0 + 1e-9));
            CHECK(est.overlap * est.overlap == doctest::Approx(exact).epsilon(1e-6));
            // 1 + R = 2^{E_R} >= 2^{E_G}.
            CHECK(entanglement::dicke_robustness(n, n / 2).one_plus_r() >= std::exp2(est.eg_upper) * (1.0 - 1e-9));
            for (const auto& run : est.sweep_overlaps) {
                for (std::size_t i = 1; i < run.size(); ++i) CHECK(run[i] >= run[i - 1] - 1e-12);
            }
        }
        const double nd = 4.0;
        CHECK(entanglement::dicke_max_product_overlap_sq(4, 2) ==
              doctest::Approx(binomial(4, 2) * std::pow(2.0 / nd, 2) * std::pow(2.0 / nd, 2)));
    }

    TEST_CASE("thermal dimer concurrence vanishes at 4J/ln3 for B = 0") {
        const auto h = systems::build_dimer_hamiltonian({0.0, 1.0});
        const double t0 = 4.0 / std::log(3.0);
        const auto below = thermal::thermal_density_matrix(h, thermal::ThermalPoint(t0 * 0.999));
        const auto above = thermal::thermal_density_matrix(h, thermal::ThermalPoint(t0 * 1.001));
        CHECK(entanglement::concurrence_signed(below) > 0.0);
        CHECK(entanglement::concurrence_signed(above) < 0.0);
    }
}
