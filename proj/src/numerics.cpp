#include "thermwit/numerics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <numbers>
#include <numeric>

namespace thermwit {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
        case ErrorCode::BadDimensionFactorization: return "BadDimensionFactorization";
        case ErrorCode::DomainError: return "DomainError";
        case ErrorCode::NoSignChange: return "NoSignChange";
        case ErrorCode::BadExcitationCount: return "BadExcitationCount";
        case ErrorCode::GraphTooLarge: return "GraphTooLarge";
        case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorCode::DegenerateGround: return "DegenerateGround";
        case ErrorCode::AlphaZero: return "AlphaZero";
        case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
        case ErrorCode::BadPartition: return "BadPartition";
        case ErrorCode::SeparableCase: return "SeparableCase";
        case ErrorCode::OddN: return "OddN";
        case ErrorCode::NegativeEntanglement: return "NegativeEntanglement";
        case ErrorCode::NonpositiveEntanglement: return "NonpositiveEntanglement";
        case ErrorCode::BadDimension: return "BadDimension";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::ThresholdUnreachable: return "ThresholdUnreachable";
        case ErrorCode::RatioOutOfRange: return "RatioOutOfRange";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::FileNotFound: return "FileNotFound";
    }
    return "Unknown";
}

}  // namespace thermwit

namespace thermwit::numerics {

namespace {

void check_dim(std::size_t dim) {
    if (dim > kMaxDim) {
        throw Error(ErrorCode::DimensionTooLarge, "dimension " + std::to_string(dim) + " exceeds 4096");
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
    check_dim(dim);
    if (data_.size() != dim * dim) {
        throw Error(ErrorCode::BadDimension, "entry count does not match dim*dim");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs_entry() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::is_hermitian(double rel_tol) const {
    const double tol = rel_tol * max_abs_entry();
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i; j < dim_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw Error(ErrorCode::BadDimension, "matrix sizes differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw Error(ErrorCode::BadDimension, "matrix sizes differ");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::BadDimension, "matrix sizes differ");
    const std::size_t n = a.dim();
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> v) {
    if (v.size() != m.dim()) throw Error(ErrorCode::BadDimension, "vector length does not match matrix");
    std::vector<Complex> out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < m.dim(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, double tol) {
    if (!m.is_hermitian(tol)) throw Error(ErrorCode::NotHermitian, "density matrix must be Hermitian");
    if (std::abs(m.trace() - 1.0) > tol) throw Error(ErrorCode::DomainError, "density matrix must have unit trace");
    if (hermitian_eigenvalues(m).front() < -tol) {
        throw Error(ErrorCode::DomainError, "density matrix must be positive semidefinite");
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::from_pure(std::span<const Complex> amplitudes) {
    const std::size_t n = amplitudes.size();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = amplitudes[i] * std::conj(amplitudes[j]);
    return from_matrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

namespace {

// Cyclic Jacobi with complex rotations. Each (p, q) step first rephases
// column/row q so that a_pq is real, then applies a real Givens rotation.
EigenDecomposition jacobi(const ComplexMatrix& m, const Tolerances& tol) {
    const std::size_t n = m.dim();
    ComplexMatrix a = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double norm = m.frobenius_norm();
    const double target = tol.jacobi_offdiag * norm;

    auto offdiag = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < tol.jacobi_max_sweeps && norm > 0.0; ++sweep) {
        if (offdiag() < target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0 || mag < 1e-300) continue;
                const Complex phase = std::conj(a(p, q)) / mag;
                if (phase != Complex(1.0)) {
                    for (std::size_t k = 0; k < n; ++k) {
                        a(k, q) *= phase;
                        v(k, q) *= phase;
                    }
                    for (std::size_t k = 0; k < n; ++k) a(q, k) *= std::conj(phase);
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });
    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
    }
    return out;
}

EigenDecomposition eigen_backend(const ComplexMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXcd em(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) em(i, j) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::DomainError, "eigensolver did not converge");
    EigenDecomposition out{std::vector<double>(m.dim()), ComplexMatrix(m.dim())};
    for (Eigen::Index c = 0; c < n; ++c) {
        out.eigenvalues[c] = solver.eigenvalues()(c);
        for (Eigen::Index r = 0; r < n; ++r) out.eigenvectors(r, c) = solver.eigenvectors()(r, c);
    }
    return out;
}

}  // namespace

EigenDecomposition hermitian_eigendecompose(const ComplexMatrix& m, const Tolerances& tol) {
    check_dim(m.dim());
    if (!m.is_hermitian(tol.hermitian)) throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian");
    if (m.dim() > tol.jacobi_max_dim) return eigen_backend(m);
    return jacobi(m, tol);
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, const Tolerances& tol) {
    return hermitian_eigendecompose(m, tol).eigenvalues;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    if (na * nb > kMaxDim) throw Error(ErrorCode::DimensionTooLarge, "Kronecker product exceeds dim 4096");
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::span<const std::size_t> local_dims,
                                std::span<const std::size_t> subset) {
    const std::size_t sites = local_dims.size();
    std::size_t total = 1;
    for (auto d : local_dims) {
        if (d == 0) throw Error(ErrorCode::BadDimensionFactorization, "local dimension must be positive");
        total *= d;
    }
    if (total != rho.dim()) {
        throw Error(ErrorCode::BadDimensionFactorization, "product of local dimensions does not equal dim");
    }
    std::vector<bool> flip(sites, false);
    for (auto s : subset) {
        if (s >= sites) throw Error(ErrorCode::BadDimensionFactorization, "subset site out of range");
        flip[s] = true;
    }
    const auto flipped = static_cast<std::size_t>(std::count(flip.begin(), flip.end(), true));
    if (flipped == 0 || flipped == sites) {
        throw Error(ErrorCode::BadDimensionFactorization, "subset must be a nonempty proper subset of sites");
    }

    // stride[s] is the weight of site s in the row-major basis label.
    std::vector<std::size_t> stride(sites, 1);
    for (std::size_t s = sites; s-- > 1;) stride[s - 1] = stride[s] * local_dims[s];

    const std::size_t n = rho.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t ii = i;
            std::size_t jj = j;
            for (std::size_t s = 0; s < sites; ++s) {
                if (!flip[s]) continue;
                const std::size_t di = (i / stride[s]) % local_dims[s];
                const std::size_t dj = (j / stride[s]) % local_dims[s];
                ii = ii - di * stride[s] + dj * stride[s];
                jj = jj - dj * stride[s] + di * stride[s];
            }
            out(ii, jj) = rho(i, j);
        }
    }
    return out;
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "log_gamma requires x > 0");
    return std::lgamma(x);
}

double log_binomial(double n, double k) {
    if (k < 0.0 || k > n) throw Error(ErrorCode::DomainError, "binomial needs 0 <= k <= n");
    if (k == 0.0 || k == n) return 0.0;
    return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix h = g + g.adjoint();
    h *= 0.5;
    return h;
}

DensityMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    // Symmetrize away rounding so the Hermitian check is exact.
    ComplexMatrix herm = rho + rho.adjoint();
    herm *= 0.5;
    return DensityMatrix::from_matrix(std::move(herm));
}

}  // namespace thermwit::numerics
