#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include "thermwit/error.hpp"

namespace thermwit::numerics {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDim = 4096;

/// Tolerances shared by the dense routines. Defaults are the documented
/// contract; callers may tighten or loosen them per call.
struct Tolerances {
    double hermitian = 1e-12;        // relative to max |entry|
    double jacobi_offdiag = 1e-12;   // relative to ||H||_F
    int jacobi_max_sweeps = 100;
    std::size_t jacobi_max_dim = 128;  // above this the LAPACK-style backend is used
};

/// Dense square complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    std::span<const Complex> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    double max_abs_entry() const;
    bool is_hermitian(double rel_tol = 1e-12) const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

std::vector<Complex> apply(const ComplexMatrix& m, std::span<const Complex> v);

// Pauli matrices and 2x2 identity.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
  public:
    /// Validates Hermiticity and unit trace (within `tol`).
    static DensityMatrix from_matrix(ComplexMatrix m, double tol = 1e-9);
    static DensityMatrix from_pure(std::span<const Complex> amplitudes);
    static DensityMatrix maximally_mixed(std::size_t dim);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }

  private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns
};

EigenDecomposition hermitian_eigendecompose(const ComplexMatrix& m, const Tolerances& tol = {});
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, const Tolerances& tol = {});

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Transposes the tensor indices of the sites in `subset`. Site 0 is the
/// most significant digit of the basis label.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, std::span<const std::size_t> local_dims,
                                std::span<const std::size_t> subset);
inline ComplexMatrix partial_transpose(const DensityMatrix& rho, std::span<const std::size_t> local_dims,
                                       std::span<const std::size_t> subset) {
    return partial_transpose(rho.matrix(), local_dims, subset);
}

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// ln C(n, k) via log_gamma.
double log_binomial(double n, double k);

/// Bisection for a sign change of a monotone `f` on [lo, hi]. Stops once the
/// bracket is narrower than tol * max(1, |x|).
template <std::invocable<double> F>
double bisect(F&& f, double lo, double hi, double tol = 1e-12) {
    if (!(lo < hi)) throw Error(ErrorCode::InvalidArgument, "bisect needs lo < hi");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (std::signbit(flo) == std::signbit(fhi)) {
        throw Error(ErrorCode::NoSignChange, "f has the same sign at both ends of the bracket");
    }
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= tol * std::max(1.0, std::abs(mid)) || mid == lo || mid == hi) return mid;
        const double fmid = f(mid);
        if (fmid == 0.0) return mid;
        if (std::signbit(fmid) == std::signbit(flo)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Random test matrices (Gaussian / Hilbert-Schmidt ensembles).
ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng);
DensityMatrix random_density_matrix(std::size_t dim, std::mt19937_64& rng);

}  // namespace thermwit::numerics
