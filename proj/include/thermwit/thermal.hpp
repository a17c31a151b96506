#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

#include "thermwit/numerics.hpp"
#include "thermwit/systems.hpp"

namespace thermwit::thermal {

/// Temperature with its Boltzmann constant. All formulas use kT = kB * T;
/// the default kB = 1 means temperatures are quoted in energy units.
/// An infinite temperature is accepted and gives the T -> infinity limit.
struct ThermalPoint {
    double temperature;
    double kB = 1.0;

    ThermalPoint(double t, double k = 1.0);
    double kT() const noexcept { return kB * temperature; }
    static ThermalPoint infinite() { return ThermalPoint(std::numeric_limits<double>::infinity()); }
};

/// Z stored in log form: ln Z = ground_exponent + log_sum, where
/// ground_exponent = -E0/kT and log_sum = ln sum_j g_j exp(-(E_j - E0)/kT).
struct LogPartition {
    double ground_exponent = 0.0;
    double log_sum = 0.0;

    double log() const noexcept { return ground_exponent + log_sum; }
    /// exp(ln Z); may overflow to inf when Z is not representable.
    double value() const noexcept { return std::exp(log()); }
};

LogPartition partition_function(const systems::Spectrum& s, const ThermalPoint& t);

/// Per-state population exp(-E_j/kT)/Z of a single state in level j.
double population(const systems::Spectrum& s, const ThermalPoint& t, std::size_t level);

/// Degeneracy-weighted level populations; they sum to 1.
std::vector<double> level_populations(const systems::Spectrum& s, const ThermalPoint& t);

numerics::DensityMatrix thermal_density_matrix(const numerics::ComplexMatrix& h, const ThermalPoint& t);

/// -log2 p0, the relative-entropy distance from the ground state to rho_T.
double relative_entropy_ground_to_thermal(const systems::Spectrum& s, const ThermalPoint& t);

/// Exact finite sum for the E0 + m^alpha * delta spectrum.
LogPartition partition_function_alpha_closed(const systems::ToySpectrumParams& p, const ThermalPoint& t);

/// Integral (Gamma-function) approximation of the same sum, alpha > 0.
LogPartition partition_function_alpha_gamma(const systems::ToySpectrumParams& p, const ThermalPoint& t);

LogPartition stabilizer_partition_function(std::uint64_t n, double B, const ThermalPoint& t);

}  // namespace thermwit::thermal
