#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "thermwit/entanglement.hpp"
#include "thermwit/systems.hpp"
#include "thermwit/thermal.hpp"
#include "thermwit/witness.hpp"

using namespace thermwit;
using thermal::ThermalPoint;

namespace {

// Scan-and-refine root of a decreasing-through-zero function on a log grid.
template <class F>
double scan_root(F f, double lo, double hi) {
    double prev = lo;
    for (double x = lo * 1.001; x <= hi; x *= 1.001) {
        if ((f(prev) > 0.0) != (f(x) > 0.0)) {
            double a = prev;
            double b = x;
            for (int i = 0; i < 200; ++i) {
                const double m = 0.5 * (a + b);
                ((f(m) > 0.0) == (f(a) > 0.0) ? a : b) = m;
            }
            return 0.5 * (a + b);
        }
        prev = x;
    }
    return std::nan("");
}

}  // namespace

TEST_SUITE("witness") {
    TEST_CASE("dimer at B = 0 crosses at 4J/ln3") {
        for (double J : {0.5, 1.0, 3.0}) {
            const auto tr =
                witness::transition_temperature(systems::dimer_spectrum({0.0, J}), entanglement::singlet_robustness());
            REQUIRE(tr.detected);
            CHECK(tr.t_trans == doctest::Approx(4.0 * J / std::log(3.0)).epsilon(1e-9));
            CHECK(tr.bracket_lo <= tr.t_trans);
            CHECK(tr.bracket_hi >= tr.t_trans);
        }
    }

    TEST_CASE("dimer in a field matches the scalar condition") {
        auto f = [](double kt) {
            return 1.0 - std::exp(-4.0 / kt) * (std::exp(1.0 / kt) + std::exp(-1.0 / kt) + 1.0);
        };
        const double oracle = scan_root(f, 0.1, 20.0);
        const auto tr =
            witness::transition_temperature(systems::dimer_spectrum({1.0, 1.0}), entanglement::singlet_robustness());
        CHECK(tr.t_trans == doctest::Approx(oracle).epsilon(1e-9));
        CHECK(tr.t_trans < 4.0 / std::log(3.0));

        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> u(0.0, 3.9);
        for (int i = 0; i < 300; ++i) {
            const double B = u(rng);
            const double kt = std::exp(u(rng) - 2.0);
            const auto v = witness::evaluate_condition(systems::dimer_spectrum({B, 1.0}), ThermalPoint(kt),
                                                       entanglement::singlet_robustness());
            CHECK(v.satisfied == witness::dimer_condition(B, 1.0, ThermalPoint(kt)));
        }
    }

    TEST_CASE("satisfied verdicts on the dimer are entangled") {
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        int satisfied = 0;
        for (int i = 0; i < 600; ++i) {
            const double J = 0.2 + 2.0 * u(rng);
            const double B = 3.9 * J * u(rng);
            const double kt = 0.05 + 5.0 * J * u(rng);
            const auto v = witness::evaluate_condition(systems::dimer_spectrum({B, J}), ThermalPoint(kt),
                                                       entanglement::singlet_robustness());
            if (!v.satisfied) continue;
            ++satisfied;
            const auto rho = thermal::thermal_density_matrix(systems::build_dimer_hamiltonian({B, J}), ThermalPoint(kt));
            CHECK(entanglement::concurrence_two_qubit(rho) > 0.0);
        }
        CHECK(satisfied >= 200);
    }

    TEST_CASE("ground state with zero robustness is never detected") {
        const auto tr = witness::transition_temperature(systems::dimer_spectrum({5.0, 1.0}),
                                                        entanglement::bipartite_pure_robustness(
                                                            systems::PureState::basis(2, 0),
                                                            entanglement::Partition::half_cut(2)));
        CHECK_FALSE(tr.detected);
    }

    TEST_CASE("threshold below the maximally mixed weight is satisfied everywhere") {
        // 1+R = 8 on a 4-level spectrum: p0 >= 1/4 > 1/8 at every temperature.
        const auto tr = witness::transition_temperature(systems::toy_spectrum({0.0, 1.0, 1.0, 4}),
                                                        entanglement::bound_from_relative_entropy(3.0));
        CHECK(tr.detected);
        CHECK(std::isinf(tr.t_trans));
    }

    TEST_CASE("satisfying intervals for ground and excited contributors") {
        const auto s = systems::dimer_spectrum({0.0, 1.0});
        const auto grid = witness::default_grid(s);
        CHECK(grid.size() == 512);
        const auto iv = witness::satisfying_intervals(s, entanglement::singlet_robustness(), {0}, grid);
        REQUIRE(iv.size() == 1);
        CHECK(iv[0].open_low);
        CHECK(iv[0].hi == doctest::Approx(4.0 / std::log(3.0)).epsilon(1e-9));

        // B > 4J: the singlet is an excited level whose weight peaks at intermediate T.
        const auto s5 = systems::dimer_spectrum({5.0, 1.0});
        const auto singlet = s5.level_index(-3.0);
        const auto iv5 = witness::satisfying_intervals(s5, entanglement::singlet_robustness(), {singlet},
                                                       witness::default_grid(s5));
        for (const auto& i : iv5) CHECK(i.lo < i.hi);

        const std::vector<double> empty;
        try {
            witness::satisfying_intervals(s, entanglement::singlet_robustness(), {0}, empty);
            FAIL("expected EmptyGrid");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::EmptyGrid);
        }
    }

    TEST_CASE("toy-model closed forms") {
        // Two-level spectrum: bisection versus the closed form.
        for (double D : {4.0, 16.0, 1024.0}) {
            const auto tr = witness::transition_temperature(
                systems::toy_spectrum({0.0, 1.0, 0.0, static_cast<std::uint64_t>(D)}),
                entanglement::bound_from_relative_entropy(1.0));
            CHECK(tr.t_trans == doctest::Approx(witness::toy_T0(D, 1.0, 1.0)).epsilon(1e-9));
            CHECK(witness::toy_T0(D, 1.0, 1.0) == doctest::Approx(1.0 / std::log(D - 1.0)));
        }
        try {
            witness::toy_T0(4.0, 2.0, 1.0);
            FAIL("expected ThresholdUnreachable");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ThresholdUnreachable);
        }

        const auto t1 = witness::toy_T1(2.0, 1.0);
        CHECK(t1.exact == doctest::Approx(1.0 / std::log(4.0 / 3.0)));
        CHECK(t1.low_t == doctest::Approx(4.0));
        const auto tr1 = witness::transition_temperature(systems::toy_spectrum({0.0, 1.0, 1.0, 1000000}),
                                                         entanglement::bound_from_relative_entropy(2.0));
        CHECK(tr1.t_trans == doctest::Approx(t1.exact).epsilon(1e-8));

        CHECK(witness::toy_Talpha(0.5, 16, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(witness::toy_Talpha(1.0, 16, 2.0) == doctest::Approx(8.0).epsilon(1e-12));
        CHECK(witness::gapping_rule_min_gap(3.0) == doctest::Approx(0.125));
    }

    TEST_CASE("stabilizer transition temperature and noise threshold") {
        const double t = witness::stabilizer_T_trans(8, 1.0, 4.0);
        CHECK(t == doctest::Approx(2.26918531).epsilon(1e-7));
        CHECK(t == doctest::Approx(-2.0 / std::log(std::numbers::sqrt2 - 1.0)).epsilon(1e-12));
        const auto tr = witness::transition_temperature(systems::stabilizer_spectrum(8, 1.0),
                                                        entanglement::bound_from_relative_entropy(4.0));
        CHECK(tr.t_trans == doctest::Approx(t).epsilon(1e-9));

        const double p = witness::noise_threshold(4.0, 8);
        CHECK(p == doctest::Approx(1.0 - 1.0 / std::numbers::sqrt2).epsilon(1e-12));
        CHECK(witness::flip_probability_from_temperature(1.0, ThermalPoint(t)) == doctest::Approx(p).epsilon(1e-10));
        try {
            witness::stabilizer_T_trans(8, 1.0, 9.0);
            FAIL("expected RatioOutOfRange");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::RatioOutOfRange);
        }
    }

    TEST_CASE("weaker lower bounds never add satisfied verdicts") {
        const auto s = systems::stabilizer_spectrum(10, 1.0);
        for (double kt = 0.1; kt < 20.0; kt *= 1.3) {
            const auto strong = witness::evaluate_condition(s, ThermalPoint(kt), entanglement::bound_from_relative_entropy(5.0));
            const auto weak = witness::evaluate_condition(s, ThermalPoint(kt), entanglement::bound_from_relative_entropy(3.0));
            if (weak.satisfied) CHECK(strong.satisfied);
        }
    }

    TEST_CASE("concurrence zero crossing") {
        const auto h = systems::build_dimer_hamiltonian({1.0, 1.0});
        CHECK(witness::concurrence_vanishing_temperature(h, 1.0, 10.0) ==
              doctest::Approx(4.0 / std::log(3.0)).epsilon(1e-8));
    }
}
