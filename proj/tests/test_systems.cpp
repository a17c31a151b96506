#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "thermwit/numerics.hpp"
#include "thermwit/systems.hpp"

using namespace thermwit;
using numerics::Complex;
using systems::Graph;

TEST_SUITE("systems") {
    TEST_CASE("Zeeman-only dimer is diagonal") {
        const auto h = systems::build_dimer_hamiltonian({1.0, 0.0});
        CHECK(h(0, 0).real() == doctest::Approx(-1.0));
        CHECK(h(1, 1).real() == doctest::Approx(0.0));
        CHECK(h(2, 2).real() == doctest::Approx(0.0));
        CHECK(h(3, 3).real() == doctest::Approx(1.0));
        CHECK(h.max_abs_entry() == doctest::Approx(1.0));
    }

    TEST_CASE("dimer matrix eigenvalues equal J+B, J, J-B, -3J") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 3.0);
        for (int i = 0; i < 200; ++i) {
            const double B = u(rng);
            const double J = u(rng);
            const auto ev = numerics::hermitian_eigenvalues(systems::build_dimer_hamiltonian({B, J}));
            std::vector<double> expect = {J + B, J, J - B, -3.0 * J};
            std::sort(expect.begin(), expect.end());
            for (int k = 0; k < 4; ++k) CHECK(ev[k] == doctest::Approx(expect[k]).epsilon(1e-12));
        }
        const auto s = systems::dimer_spectrum({0.0, 1.0});
        REQUIRE(s.size() == 2);
        CHECK(s[0].energy == doctest::Approx(-3.0));
        CHECK(s[1].degeneracy == 3.0);
        CHECK_THROWS_AS(systems::dimer_spectrum({-1.0, 1.0}), Error);
    }

    TEST_CASE("toy spectrum levels") {
        const auto flat = systems::toy_spectrum({0.5, 2.0, 0.0, 10});
        REQUIRE(flat.size() == 2);
        CHECK(flat[0].energy == 0.5);
        CHECK(flat[1].energy == doctest::Approx(2.5));
        CHECK(flat[1].degeneracy == 9.0);

        const auto lin = systems::toy_spectrum({0.0, 1.0, 1.0, 6});
        REQUIRE(lin.size() == 6);
        for (std::size_t m = 0; m < 6; ++m) CHECK(lin[m].energy == doctest::Approx(static_cast<double>(m)));

        const auto sq = systems::toy_spectrum({0.0, 1.0, 0.5, 5});
        CHECK(sq[4].energy == doctest::Approx(2.0));
        CHECK(sq.total_dimension() == 5.0);

        CHECK_THROWS_AS(systems::toy_spectrum({0.0, 0.0, 1.0, 4}), Error);
        CHECK_THROWS_AS(systems::toy_spectrum({0.0, 1.0, 1.5, 4}), Error);
        CHECK_THROWS_AS(systems::toy_spectrum({0.0, 1.0, 1.0, 1}), Error);
    }

    TEST_CASE("spectrum merges near-equal eigenvalues") {
        const double ev[] = {-1.0, 0.0, 1e-14, 2.0, 2.0 + 1e-12};
        const auto s = systems::Spectrum::from_eigenvalues(ev);
        REQUIRE(s.size() == 3);
        CHECK(s[1].degeneracy == 2.0);
        CHECK(s[2].degeneracy == 2.0);
        CHECK(s.gap() == doctest::Approx(1.0));
        CHECK(s.spread() == doctest::Approx(3.0));
        CHECK(s.level_index(2.0) == 2);
    }

    TEST_CASE("graph builders and parsing") {
        CHECK(Graph::path(5).edges().size() == 4);
        CHECK(Graph::ring(5).edges().size() == 5);
        CHECK(Graph::star(5).edges().size() == 4);
        CHECK(Graph::complete(5).edges().size() == 10);

        std::istringstream in("# comment\n3\n0 1  # trailing\n\n2 1\n1 0\n");
        const auto g = Graph::parse(in);
        CHECK(g.size() == 3);
        CHECK(g.edges().size() == 2);
        CHECK(g.neighbors(1) == std::vector<std::size_t>{0, 2});

        for (const char* bad : {"", "x\n", "3\n0\n", "3\n0 3\n", "3\n1 1\n", "3\n0 1 2\n"}) {
            std::istringstream b(bad);
            try {
                Graph::parse(b);
                FAIL("expected ParseError for '" << bad << "'");
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::ParseError);
            }
        }
        try {
            Graph::load("/nonexistent/thermwit.edges");
            FAIL("expected FileNotFound");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::FileNotFound);
        }
    }

    TEST_CASE("pure states are normalized") {
        CHECK_THROWS_AS(systems::PureState(1, {1.0, 1.0}), Error);
        CHECK_THROWS_AS(systems::PureState(2, {1.0, 0.0}), Error);
        const auto s = systems::singlet();
        CHECK(s.norm() == doctest::Approx(1.0));
        CHECK(std::abs(s.amplitude(1) + s.amplitude(2)) < 1e-15);
    }

    TEST_CASE("Dicke states have the right support and weights") {
        for (std::size_t n = 2; n <= 12; ++n) {
            for (std::size_t k = 0; k <= n; ++k) {
                const auto d = systems::dicke_state(n, k);
                CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-12));
                double count = 0;
                for (std::uint64_t x = 0; x < d.dim(); ++x) {
                    const bool in = static_cast<std::size_t>(std::popcount(x)) == k;
                    if (in) ++count;
                    if (!in) CHECK(d.amplitude(x) == Complex(0.0));
                }
                CHECK(d.amplitude((std::uint64_t{1} << k) - 1).real() ==
                      doctest::Approx(1.0 / std::sqrt(count)).epsilon(1e-12));
            }
        }
        CHECK_THROWS_AS(systems::dicke_state(3, 4), Error);
    }

    TEST_CASE("stabilizer spectrum is binomial for every graph") {
        const auto s = systems::stabilizer_spectrum(6, 0.5);
        REQUIRE(s.size() == 7);
        double total = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(s[i].energy == doctest::Approx(0.5 * (-6.0 + 2.0 * i)));
            total += s[i].degeneracy;
        }
        CHECK(total == 64.0);
        CHECK(s[3].degeneracy == 20.0);

        for (const auto& g : {Graph::ring(5), Graph::star(6), Graph::complete(4), Graph(3)}) {
            const auto h = systems::build_stabilizer_hamiltonian(g, 1.0);
            CHECK(h.is_hermitian());
            const auto numeric = systems::Spectrum::from_eigenvalues(numerics::hermitian_eigenvalues(h));
            const auto analytic = systems::stabilizer_spectrum(g.size(), 1.0);
            REQUIRE(numeric.size() == analytic.size());
            for (std::size_t i = 0; i < analytic.size(); ++i) {
                CHECK(numeric[i].energy == doctest::Approx(analytic[i].energy).epsilon(1e-10));
                CHECK(numeric[i].degeneracy == analytic[i].degeneracy);
            }
        }
        CHECK_THROWS_AS(systems::build_stabilizer_hamiltonian(Graph::path(13), 1.0), Error);
    }

    TEST_CASE("graph state is the unique ground state with energy -nB") {
        for (const auto& g : {Graph::path(4), Graph::ring(6), Graph::star(5)}) {
            const double B = 0.7;
            const auto h = systems::build_stabilizer_hamiltonian(g, B);
            const auto psi = systems::graph_state(g);
            const auto hpsi = numerics::apply(h, psi.amplitudes());
            for (std::size_t x = 0; x < hpsi.size(); ++x) {
                CHECK(std::abs(hpsi[x] + static_cast<double>(g.size()) * B * psi.amplitudes()[x]) < 1e-12);
            }
        }
    }
}
