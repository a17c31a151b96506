#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thermwit/numerics.hpp"

namespace thermwit::systems {

using numerics::Complex;
using numerics::ComplexMatrix;

/// Heisenberg dimer in a uniform field. Both parameters are non-negative.
struct DimerParams {
    double B = 0.0;
    double J = 1.0;
    void validate() const;
};

/// Ground level E0 plus D-1 excited levels E0 + m^alpha * delta.
struct ToySpectrumParams {
    double E0 = 0.0;
    double delta = 1.0;
    double alpha = 0.0;
    std::uint64_t D = 2;
    void validate() const;
};

/// Simple undirected graph on vertices 0..n-1.
class Graph {
  public:
    explicit Graph(std::size_t n = 0) : n_(n) {}
    Graph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges);

    static Graph path(std::size_t n);
    static Graph ring(std::size_t n);
    static Graph star(std::size_t n);
    static Graph complete(std::size_t n);

    /// Edge-list text: first line `n`, then `u v` per line; `#` starts a comment.
    static Graph parse(std::istream& in);
    static Graph load(const std::string& path);

    void add_edge(std::size_t u, std::size_t v);

    std::size_t size() const noexcept { return n_; }
    const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
    std::vector<std::size_t> neighbors(std::size_t v) const;

  private:
    std::size_t n_;
    std::vector<std::pair<std::size_t, std::size_t>> edges_;  // u < v, sorted, unique
};

/// Qubit register state; site 0 is the most significant bit of the basis label.
class PureState {
  public:
    PureState(std::size_t sites, std::vector<Complex> amplitudes);

    static PureState basis(std::size_t sites, std::uint64_t label);

    std::size_t sites() const noexcept { return sites_; }
    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    Complex amplitude(std::uint64_t label) const { return amplitudes_.at(label); }

    double norm() const;

  private:
    std::size_t sites_;
    std::vector<Complex> amplitudes_;
};

/// Singlet (|01> - |10>)/sqrt(2).
PureState singlet();

struct Level {
    double energy;
    double degeneracy;      // exact integer when below 2^53
    double log_degeneracy;  // always finite
};

/// Energy levels, strictly ascending, with degeneracies.
class Spectrum {
  public:
    Spectrum() = default;
    explicit Spectrum(std::vector<Level> levels);

    static Spectrum from_degeneracies(std::span<const std::pair<double, double>> energy_degeneracy);
    /// Groups eigenvalues whose spacing is below 1e-9 * max(|E|, 1).
    static Spectrum from_eigenvalues(std::span<const double> eigenvalues, double rel_tol = 1e-9);

    const std::vector<Level>& levels() const noexcept { return levels_; }
    std::size_t size() const noexcept { return levels_.size(); }
    const Level& operator[](std::size_t i) const { return levels_.at(i); }

    double ground_energy() const { return levels_.front().energy; }
    /// E1 - E0, or 0 for a single level.
    double gap() const;
    /// E_max - E0.
    double spread() const;
    double total_dimension() const;
    /// Index of the level whose energy is within tolerance of `energy`.
    std::size_t level_index(double energy, double rel_tol = 1e-9) const;

  private:
    std::vector<Level> levels_;
};

inline constexpr std::size_t kMaxExplicitSites = 12;

ComplexMatrix build_dimer_hamiltonian(const DimerParams& p);
Spectrum dimer_spectrum(const DimerParams& p);

Spectrum toy_spectrum(const ToySpectrumParams& p);

PureState dicke_state(std::size_t n, std::size_t k);

ComplexMatrix build_stabilizer_hamiltonian(const Graph& g, double B);
Spectrum stabilizer_spectrum(std::uint64_t n, double B);
PureState graph_state(const Graph& g);

}  // namespace thermwit::systems
