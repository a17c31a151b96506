#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "thermwit/numerics.hpp"
#include "thermwit/systems.hpp"

namespace thermwit::entanglement {

enum class BoundKind { Exact, LowerBound };

enum class BoundSource {
    ClosedFormDicke,
    SingletKnown,
    BipartitePureSchmidt,
    RelativeEntropyInput,
    GeometricInput,
};

std::string_view to_string(BoundKind kind);
std::string_view to_string(BoundSource source);

/// A value for 1 + R (global robustness), either exact or a lower bound.
/// Exact is only available for sources with exact provenance.
class RobustnessBound {
  public:
    static RobustnessBound exact(double one_plus_r, BoundSource source);
    static RobustnessBound lower_bound(double one_plus_r, BoundSource source);

    double one_plus_r() const noexcept { return one_plus_r_; }
    double robustness() const noexcept { return one_plus_r_ - 1.0; }
    /// 1 / (1 + R): the population a contributor must exceed.
    double threshold() const noexcept { return 1.0 / one_plus_r_; }
    BoundKind kind() const noexcept { return kind_; }
    BoundSource source() const noexcept { return source_; }

  private:
    RobustnessBound(double v, BoundKind k, BoundSource s) : one_plus_r_(v), kind_(k), source_(s) {}
    double one_plus_r_;
    BoundKind kind_;
    BoundSource source_;
};

/// Disjoint site blocks covering 0..sites-1, at least two of them.
class Partition {
  public:
    Partition(std::size_t sites, std::vector<std::vector<std::size_t>> blocks);
    static Partition bipartition(std::size_t sites, std::vector<std::size_t> first_block);
    /// Sites [0, sites/2) against the rest.
    static Partition half_cut(std::size_t sites);

    std::size_t sites() const noexcept { return sites_; }
    const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }

  private:
    std::size_t sites_;
    std::vector<std::vector<std::size_t>> blocks_;
};

/// Squared Schmidt coefficients in descending order (length = dimension of
/// the smaller block).
std::vector<double> schmidt_coefficients(const systems::PureState& psi, const Partition& cut);

RobustnessBound bipartite_pure_robustness(const systems::PureState& psi, const Partition& cut);

/// 1 + R(|S(n,k)>) = C(n,k)^{-1} (n/k)^k (n/(n-k))^{n-k}.
RobustnessBound dicke_robustness(std::uint64_t n, std::uint64_t k);

/// ln of the value above; usable for any n.
double log_dicke_one_plus_r(std::uint64_t n, std::uint64_t k);

/// Large-n form sqrt(n) of 1 + R(|S(n, n/2)>).
double dicke_half_asymptotic(std::uint64_t n);

RobustnessBound singlet_robustness();

/// 1 + R >= 2^{E_R}.
RobustnessBound bound_from_relative_entropy(double e_r);
/// 1 + R >= 2^{E_R} >= 2^{E_G}.
RobustnessBound bound_from_geometric_measure(double e_g);

/// Wootters concurrence; the signed variant returns mu1 - mu2 - mu3 - mu4
/// before clamping at zero.
double concurrence_two_qubit(const numerics::DensityMatrix& rho);
double concurrence_signed(const numerics::DensityMatrix& rho);

double ppt_min_eigenvalue(const numerics::DensityMatrix& rho, std::span<const std::size_t> local_dims,
                          std::span<const std::size_t> subset);

struct AlsOptions {
    int restarts = 32;
    double tol = 1e-12;
    int max_sweeps = 500;
    std::uint64_t seed = 12345;
};

/// Result of the alternating product-state search. The overlap found is a
/// lower estimate of the true maximum, so eg_upper >= E_G. This is not a
/// RobustnessBound and cannot be used as a witness input.
struct GeometricEstimate {
    double overlap;   // best |<phi|psi>| over restarts
    double eg_upper;  // -log2 overlap^2
    std::vector<std::vector<double>> sweep_overlaps;  // per restart, after each sweep
};

GeometricEstimate geometric_measure_als(const systems::PureState& psi, const AlsOptions& opts = {});

/// Closed-form maximal product overlap squared for |S(n,k)>.
double dicke_max_product_overlap_sq(std::uint64_t n, std::uint64_t k);

}  // namespace thermwit::entanglement
