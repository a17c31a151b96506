#include "thermwit/thermal.hpp"

#include <algorithm>
#include <vector>

namespace thermwit::thermal {

using systems::Spectrum;

ThermalPoint::ThermalPoint(double t, double k) : temperature(t), kB(k) {
    if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "temperature must be > 0");
    if (!(k > 0.0) || !std::isfinite(k)) throw Error(ErrorCode::InvalidArgument, "kB must be finite and > 0");
}

namespace {

// Exponents ln g_j - (E_j - E0)/kT for every level.
std::vector<double> shifted_exponents(const Spectrum& s, double kT) {
    const double e0 = s.ground_energy();
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& lv : s.levels()) out.push_back(lv.log_degeneracy - (lv.energy - e0) / kT);
    return out;
}

double log_sum_exp(const std::vector<double>& x) {
    const double m = *std::max_element(x.begin(), x.end());
    double acc = 0.0;
    for (double v : x) acc += std::exp(v - m);
    return m + std::log(acc);
}

}  // namespace

LogPartition partition_function(const Spectrum& s, const ThermalPoint& t) {
    const double kT = t.kT();
    return LogPartition{-s.ground_energy() / kT, log_sum_exp(shifted_exponents(s, kT))};
}

double population(const Spectrum& s, const ThermalPoint& t, std::size_t level) {
    if (level >= s.size()) throw Error(ErrorCode::IndexOutOfRange, "level index " + std::to_string(level));
    const double kT = t.kT();
    const double log_sum = log_sum_exp(shifted_exponents(s, kT));
    return std::exp(-(s[level].energy - s.ground_energy()) / kT - log_sum);
}

std::vector<double> level_populations(const Spectrum& s, const ThermalPoint& t) {
    const auto x = shifted_exponents(s, t.kT());
    const double log_sum = log_sum_exp(x);
    std::vector<double> out;
    out.reserve(x.size());
    for (double v : x) out.push_back(std::exp(v - log_sum));
    return out;
}

numerics::DensityMatrix thermal_density_matrix(const numerics::ComplexMatrix& h, const ThermalPoint& t) {
    const auto eig = numerics::hermitian_eigendecompose(h);
    const double kT = t.kT();
    const double e0 = eig.eigenvalues.front();
    std::vector<double> w(eig.eigenvalues.size());
    double sum = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j) {
        w[j] = std::exp(-(eig.eigenvalues[j] - e0) / kT);
        sum += w[j];
    }
    const std::size_t n = h.dim();
    numerics::ComplexMatrix rho(n);
    const auto& v = eig.eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        const double pj = w[j] / sum;
        if (pj == 0.0) continue;
        for (std::size_t r = 0; r < n; ++r) {
            const numerics::Complex vr = v(r, j) * pj;
            for (std::size_t c = 0; c < n; ++c) rho(r, c) += vr * std::conj(v(c, j));
        }
    }
    for (std::size_t r = 0; r < n; ++r) {
        rho(r, r) = rho(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) rho(c, r) = std::conj(rho(r, c));
    }
    return numerics::DensityMatrix::from_matrix(std::move(rho));
}

double relative_entropy_ground_to_thermal(const Spectrum& s, const ThermalPoint& t) {
    if (s[0].degeneracy != 1.0) throw Error(ErrorCode::DegenerateGround, "ground level is degenerate");
    const double kT = t.kT();
    // -log2 p0 = log_sum / ln 2 without forming p0.
    return log_sum_exp(shifted_exponents(s, kT)) / std::log(2.0);
}

LogPartition partition_function_alpha_closed(const systems::ToySpectrumParams& p, const ThermalPoint& t) {
    p.validate();
    const double kT = t.kT();
    const double ground = -p.E0 / kT;
    if (p.alpha == 0.0) {
        const double excited = std::log(static_cast<double>(p.D - 1)) - p.delta / kT;
        const double m = std::max(0.0, excited);
        return {ground, m + std::log(std::exp(-m) + std::exp(excited - m))};
    }
    // Terms decrease in m, so the ground term (1) is the largest: no shift needed.
    double acc = 1.0;
    for (std::uint64_t m = 1; m < p.D; ++m) {
        const double term = std::exp(-std::pow(static_cast<double>(m), p.alpha) * p.delta / kT);
        if (term == 0.0) break;
        acc += term;
    }
    return {ground, std::log(acc)};
}

LogPartition partition_function_alpha_gamma(const systems::ToySpectrumParams& p, const ThermalPoint& t) {
    if (p.alpha == 0.0) throw Error(ErrorCode::AlphaZero, "Gamma approximation is undefined at alpha = 0");
    p.validate();
    const double kT = t.kT();
    const double inv = 1.0 / p.alpha;
    const double log_sum = numerics::log_gamma(inv) - std::log(p.alpha) + inv * std::log(kT / p.delta);
    return {-p.E0 / kT, log_sum};
}

LogPartition stabilizer_partition_function(std::uint64_t n, double B, const ThermalPoint& t) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    if (!(B > 0.0)) throw Error(ErrorCode::InvalidArgument, "B must be > 0");
    const double b = B / t.kT();
    const double nd = static_cast<double>(n);
    // Z = e^{nb} (1 + e^{-2b})^n
    return {nd * b, nd * std::log1p(std::exp(-2.0 * b))};
}

}  // namespace thermwit::thermal
