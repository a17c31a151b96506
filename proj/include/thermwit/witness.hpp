#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "thermwit/entanglement.hpp"
#include "thermwit/systems.hpp"
#include "thermwit/thermal.hpp"

namespace thermwit::witness {

using entanglement::BoundKind;
using entanglement::RobustnessBound;
using systems::Spectrum;
using thermal::ThermalPoint;

/// Which level's eigenstate supplies the entanglement (0 = ground).
struct ContributorSpec {
    std::size_t level = 0;
};

struct WitnessVerdict {
    double temperature;  // kT
    double population;   // total weight of the contributor level
    double threshold;    // 1 / (1 + R)
    bool satisfied;      // population > threshold
    BoundKind bound_kind;
};

struct TransitionResult {
    bool detected = false;
    double t_trans = 0.0;  // kT; +inf when satisfied over the whole bracket
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    BoundKind bound_kind = BoundKind::Exact;
};

struct Interval {
    double lo;
    double hi;
    bool open_low = false;   // already satisfied at the first grid point
    bool open_high = false;  // still satisfied at the last grid point
};

/// Population of the contributor level against 1/(1+R). For a degenerate
/// level the population is the weight of the maximally mixed state on it, so
/// `r` must then be the robustness of that mixed state.
WitnessVerdict evaluate_condition(const Spectrum& s, const ThermalPoint& t, const RobustnessBound& r,
                                  ContributorSpec c = {});

/// Solves p0(T) = 1/(1+R) for a unique ground state. Returned temperatures are kT.
TransitionResult transition_temperature(const Spectrum& s, const RobustnessBound& r);

/// 512 log-spaced kT values over [1e-6, 1e4] times the spectral spread.
std::vector<double> default_grid(const Spectrum& s, std::size_t points = 512);

/// kT intervals on which the contributor satisfies the condition, with each
/// crossing refined by bisection inside its grid cell.
std::vector<Interval> satisfying_intervals(const Spectrum& s, const RobustnessBound& r, ContributorSpec c,
                                           std::span<const double> grid);

/// e^{-4J/kT}(e^{B/kT} + e^{-B/kT} + 1) < 1 for the dimer.
bool dimer_condition(double B, double J, const ThermalPoint& t);

/// Delta / ln((D-1)/(2^{E_R}-1)).
double toy_T0(double D, double e_r, double delta);

struct ToyT1 {
    double exact;  // Delta / ln(2^{E_R}/(2^{E_R}-1))
    double low_t;  // Delta * 2^{E_R}
};
ToyT1 toy_T1(double e_r, double delta);

/// Delta * [alpha sqrt(n) / Gamma(1/alpha)]^alpha.
double toy_Talpha(double alpha, std::uint64_t n, double delta);

/// Delta_min = 2^{-E_R}.
double gapping_rule_min_gap(double e_r);

/// -2B / ln(2^{E_R/n} - 1).
double stabilizer_T_trans(std::uint64_t n, double B, double e_r);

/// P = 1 / (1 + e^{2B/kT}).
double flip_probability_from_temperature(double B, const ThermalPoint& t);

/// P_trans = 1 - 2^{-E_R/n}.
double noise_threshold(double e_r, std::uint64_t n);

/// Temperature (kT) at which the Wootters concurrence of the two-qubit
/// thermal state of `h` reaches zero, searched on [lo, hi].
double concurrence_vanishing_temperature(const numerics::ComplexMatrix& h, double lo, double hi);

}  // namespace thermwit::witness
