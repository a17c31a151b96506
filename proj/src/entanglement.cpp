#include "thermwit/entanglement.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numeric>

#include <Eigen/SVD>
#include <random>

namespace thermwit::entanglement {

using numerics::Complex;
using numerics::ComplexMatrix;
using numerics::DensityMatrix;

std::string_view to_string(BoundKind kind) {
    return kind == BoundKind::Exact ? "Exact" : "LowerBound";
}

std::string_view to_string(BoundSource source) {
    switch (source) {
        case BoundSource::ClosedFormDicke: return "ClosedFormDicke";
        case BoundSource::SingletKnown: return "SingletKnown";
        case BoundSource::BipartitePureSchmidt: return "BipartitePureSchmidt";
        case BoundSource::RelativeEntropyInput: return "RelativeEntropyInput";
        case BoundSource::GeometricInput: return "GeometricInput";
    }
    return "Unknown";
}

RobustnessBound RobustnessBound::exact(double one_plus_r, BoundSource source) {
    if (!(one_plus_r >= 1.0)) throw Error(ErrorCode::DomainError, "1 + R must be >= 1");
    if (source == BoundSource::RelativeEntropyInput || source == BoundSource::GeometricInput) {
        throw Error(ErrorCode::InvalidArgument, "entropic inputs only give lower bounds on 1 + R");
    }
    return RobustnessBound(one_plus_r, BoundKind::Exact, source);
}

RobustnessBound RobustnessBound::lower_bound(double one_plus_r, BoundSource source) {
    if (!(one_plus_r >= 1.0)) throw Error(ErrorCode::DomainError, "1 + R must be >= 1");
    return RobustnessBound(one_plus_r, BoundKind::LowerBound, source);
}

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(std::size_t sites, std::vector<std::vector<std::size_t>> blocks)
    : sites_(sites), blocks_(std::move(blocks)) {
    if (blocks_.size() < 2) throw Error(ErrorCode::BadPartition, "partition needs at least two blocks");
    std::vector<int> seen(sites, 0);
    for (auto& b : blocks_) {
        if (b.empty()) throw Error(ErrorCode::BadPartition, "blocks must be nonempty");
        std::sort(b.begin(), b.end());
        for (auto s : b) {
            if (s >= sites) throw Error(ErrorCode::BadPartition, "site out of range");
            if (seen[s]++) throw Error(ErrorCode::BadPartition, "blocks overlap");
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw Error(ErrorCode::BadPartition, "blocks do not cover every site");
    }
}

Partition Partition::bipartition(std::size_t sites, std::vector<std::size_t> first_block) {
    std::vector<std::size_t> rest;
    for (std::size_t s = 0; s < sites; ++s) {
        if (std::find(first_block.begin(), first_block.end(), s) == first_block.end()) rest.push_back(s);
    }
    return Partition(sites, {std::move(first_block), std::move(rest)});
}

Partition Partition::half_cut(std::size_t sites) {
    std::vector<std::size_t> first(sites / 2);
    std::iota(first.begin(), first.end(), 0);
    return bipartition(sites, std::move(first));
}

// ---------------------------------------------------------------------------
// Pure-state bipartite quantities

std::vector<double> schmidt_coefficients(const systems::PureState& psi, const Partition& cut) {
    if (cut.blocks().size() != 2 || cut.sites() != psi.sites()) {
        throw Error(ErrorCode::BadPartition, "Schmidt decomposition needs a two-block cut of the state's sites");
    }
    const auto& b0 = cut.blocks()[0];
    const auto& b1 = cut.blocks()[1];
    const auto& small = b0.size() <= b1.size() ? b0 : b1;
    const auto& large = b0.size() <= b1.size() ? b1 : b0;
    const std::size_t n = psi.sites();
    const std::size_t da = std::size_t{1} << small.size();
    const std::size_t db = std::size_t{1} << large.size();

    auto gather = [n](std::uint64_t x, const std::vector<std::size_t>& block) {
        std::uint64_t out = 0;
        for (auto s : block) out = (out << 1) | ((x >> (n - 1 - s)) & 1u);
        return out;
    };

    // Singular values of the amplitude matrix avoid the square-root blowup of
    // near-zero eigenvalues of the reduced state.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
    const auto amps = psi.amplitudes();
    for (std::uint64_t x = 0; x < amps.size(); ++x) {
        m(static_cast<Eigen::Index>(gather(x, small)), static_cast<Eigen::Index>(gather(x, large))) = amps[x];
    }
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        const double sv = svd.singularValues()(i);
        out.push_back(sv * sv);
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

RobustnessBound bipartite_pure_robustness(const systems::PureState& psi, const Partition& cut) {
    const auto lambda = schmidt_coefficients(psi, cut);
    double s = 0.0;
    for (double l : lambda) s += std::sqrt(l);
    // Rounding can push a product state a hair below 1.
    return RobustnessBound::exact(std::max(1.0, s * s), BoundSource::BipartitePureSchmidt);
}

double log_dicke_one_plus_r(std::uint64_t n, std::uint64_t k) {
    if (k == 0 || k >= n) throw Error(ErrorCode::SeparableCase, "|S(n,k)> is a product state for k in {0, n}");
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    return -numerics::log_binomial(nd, kd) + kd * std::log(nd / kd) + (nd - kd) * std::log(nd / (nd - kd));
}

RobustnessBound dicke_robustness(std::uint64_t n, std::uint64_t k) {
    return RobustnessBound::exact(std::exp(log_dicke_one_plus_r(n, k)), BoundSource::ClosedFormDicke);
}

double dicke_half_asymptotic(std::uint64_t n) {
    if (n < 2 || n % 2 != 0) throw Error(ErrorCode::OddN, "n must be even and >= 2");
    return std::sqrt(static_cast<double>(n));
}

RobustnessBound singlet_robustness() { return RobustnessBound::exact(2.0, BoundSource::SingletKnown); }

RobustnessBound bound_from_relative_entropy(double e_r) {
    if (!(e_r >= 0.0)) throw Error(ErrorCode::NegativeEntanglement, "E_R must be >= 0");
    return RobustnessBound::lower_bound(std::exp2(e_r), BoundSource::RelativeEntropyInput);
}

RobustnessBound bound_from_geometric_measure(double e_g) {
    if (!(e_g >= 0.0)) throw Error(ErrorCode::NegativeEntanglement, "E_G must be >= 0");
    return RobustnessBound::lower_bound(std::exp2(e_g), BoundSource::GeometricInput);
}

// ---------------------------------------------------------------------------
// Mixed-state oracles

namespace {

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    const auto eig = numerics::hermitian_eigendecompose(m);
    const std::size_t n = m.dim();
    ComplexMatrix out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double r = std::sqrt(std::max(0.0, eig.eigenvalues[j]));
        if (r == 0.0) continue;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                out(a, b) += r * eig.eigenvectors(a, j) * std::conj(eig.eigenvectors(b, j));
    }
    return out;
}

ComplexMatrix hermitize(const ComplexMatrix& m) {
    ComplexMatrix h = m + m.adjoint();
    h *= 0.5;
    return h;
}

}  // namespace

double concurrence_signed(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw Error(ErrorCode::BadDimension, "concurrence needs a two-qubit (4x4) state");
    const ComplexMatrix& r = rho.matrix();
    const ComplexMatrix yy = numerics::kron(numerics::pauli_y(), numerics::pauli_y());
    ComplexMatrix conj_r(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) conj_r(i, j) = std::conj(r(i, j));
    const ComplexMatrix tilde = yy * conj_r * yy;
    const ComplexMatrix sq = psd_sqrt(r);
    // Eigenvalues of sqrt(rho) tilde sqrt(rho) are the squared mu_i.
    auto ev = numerics::hermitian_eigenvalues(hermitize(sq * tilde * sq));
    std::vector<double> mu(4);
    std::transform(ev.begin(), ev.end(), mu.begin(), [](double e) { return std::sqrt(std::max(0.0, e)); });
    std::sort(mu.begin(), mu.end(), std::greater<>());
    return mu[0] - mu[1] - mu[2] - mu[3];
}

double concurrence_two_qubit(const DensityMatrix& rho) { return std::max(0.0, concurrence_signed(rho)); }

double ppt_min_eigenvalue(const DensityMatrix& rho, std::span<const std::size_t> local_dims,
                          std::span<const std::size_t> subset) {
    const auto pt = numerics::partial_transpose(rho, local_dims, subset);
    return numerics::hermitian_eigenvalues(hermitize(pt)).front();
}

// ---------------------------------------------------------------------------
// Geometric measure by alternating single-site maximization

GeometricEstimate geometric_measure_als(const systems::PureState& psi, const AlsOptions& opts) {
    const std::size_t n = psi.sites();
    if (n > systems::kMaxExplicitSites) throw Error(ErrorCode::DimensionTooLarge, "ALS supports n <= 12");
    if (opts.restarts < 1) throw Error(ErrorCode::InvalidArgument, "need at least one restart");
    const auto amps = psi.amplitudes();
    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    GeometricEstimate best{0.0, 0.0, {}};
    using Site = std::array<Complex, 2>;
    std::vector<Site> phi(n);

    for (int run = 0; run < opts.restarts; ++run) {
        for (auto& site : phi) {
            site = {Complex(normal(rng), normal(rng)), Complex(normal(rng), normal(rng))};
            const double nrm = std::sqrt(std::norm(site[0]) + std::norm(site[1]));
            site[0] /= nrm;
            site[1] /= nrm;
        }
        std::vector<double> history;
        double overlap = 0.0;
        for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
            for (std::size_t s = 0; s < n; ++s) {
                Site v{0.0, 0.0};
                for (std::uint64_t x = 0; x < amps.size(); ++x) {
                    if (amps[x] == Complex{}) continue;
                    Complex w = amps[x];
                    for (std::size_t j = 0; j < n; ++j) {
                        if (j == s) continue;
                        w *= std::conj(phi[j][(x >> (n - 1 - j)) & 1u]);
                    }
                    v[(x >> (n - 1 - s)) & 1u] += w;
                }
                const double nrm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
                if (nrm == 0.0) continue;
                phi[s] = {v[0] / nrm, v[1] / nrm};
                overlap = nrm;
            }
            const double prev = history.empty() ? 0.0 : history.back();
            history.push_back(overlap);
            if (history.size() > 1 && overlap - prev < opts.tol) break;
        }
        if (overlap > best.overlap) best.overlap = overlap;
        best.sweep_overlaps.push_back(std::move(history));
    }
    best.overlap = std::min(best.overlap, 1.0);
    best.eg_upper = best.overlap > 0.0 ? std::max(0.0, -std::log2(best.overlap * best.overlap))
                                       : std::numeric_limits<double>::infinity();
    return best;
}

double dicke_max_product_overlap_sq(std::uint64_t n, std::uint64_t k) {
    if (k > n) throw Error(ErrorCode::BadExcitationCount, "need 0 <= k <= n");
    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    double log_v = numerics::log_binomial(nd, kd);
    if (k > 0) log_v += kd * std::log(kd / nd);
    if (k < n) log_v += (nd - kd) * std::log((nd - kd) / nd);
    return std::exp(log_v);
}

}  // namespace thermwit::entanglement
