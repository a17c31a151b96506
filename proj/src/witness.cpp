#include "thermwit/witness.hpp"

#include <cmath>
#include <limits>

namespace thermwit::witness {

namespace {

constexpr double kRelTol = 1e-10;

double level_weight(const Spectrum& s, const ThermalPoint& t, std::size_t level) {
    return s[level].degeneracy * thermal::population(s, t, level);
}

}  // namespace

WitnessVerdict evaluate_condition(const Spectrum& s, const ThermalPoint& t, const RobustnessBound& r,
                                  ContributorSpec c) {
    if (c.level >= s.size()) throw Error(ErrorCode::IndexOutOfRange, "contributor level does not exist");
    const double p = level_weight(s, t, c.level);
    const double thr = r.threshold();
    return WitnessVerdict{t.kT(), p, thr, p > thr, r.kind()};
}

TransitionResult transition_temperature(const Spectrum& s, const RobustnessBound& r) {
    if (s[0].degeneracy != 1.0) {
        throw Error(ErrorCode::DegenerateGround, "transition temperature needs a unique ground state");
    }
    TransitionResult out;
    out.bound_kind = r.kind();
    const double thr = r.threshold();
    if (s.size() == 1) {
        // p0 = 1 at every temperature.
        out.detected = thr < 1.0;
        out.t_trans = out.detected ? std::numeric_limits<double>::infinity() : 0.0;
        return out;
    }
    out.bracket_lo = 1e-6 * s.gap();
    out.bracket_hi = 1e4 * s.spread();
    auto excess = [&](double log_kt) { return thermal::population(s, ThermalPoint(std::exp(log_kt)), 0) - thr; };
    const double u_lo = std::log(out.bracket_lo);
    const double u_hi = std::log(out.bracket_hi);
    if (!(excess(u_lo) > 0.0)) return out;  // NotDetected
    out.detected = true;
    if (excess(u_hi) > 0.0) {
        out.t_trans = std::numeric_limits<double>::infinity();
        return out;
    }
    // Width in ln kT maps to a relative width in kT.
    out.t_trans = std::exp(numerics::bisect(excess, u_lo, u_hi, kRelTol * 0.1));
    return out;
}

std::vector<double> default_grid(const Spectrum& s, std::size_t points) {
    if (points < 2) throw Error(ErrorCode::EmptyGrid, "grid needs at least two points");
    const double scale = s.spread() > 0.0 ? s.spread() : 1.0;
    const double a = std::log(1e-6 * scale);
    const double b = std::log(1e4 * scale);
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    return grid;
}

std::vector<Interval> satisfying_intervals(const Spectrum& s, const RobustnessBound& r, ContributorSpec c,
                                           std::span<const double> grid) {
    if (grid.size() < 2) throw Error(ErrorCode::EmptyGrid, "grid needs at least two points");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw Error(ErrorCode::InvalidArgument, "grid must be positive and strictly ascending");
        }
    }
    if (c.level >= s.size()) throw Error(ErrorCode::IndexOutOfRange, "contributor level does not exist");
    const double thr = r.threshold();
    auto excess = [&](double kt) { return level_weight(s, ThermalPoint(kt), c.level) - thr; };

    std::vector<Interval> out;
    bool inside = excess(grid[0]) > 0.0;
    Interval current{grid[0], grid[0], inside, false};
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = excess(grid[i]);
        const bool now = cur > 0.0;
        if (now != inside) {
            const double crossing = numerics::bisect(excess, grid[i - 1], grid[i], kRelTol);
            if (now) {
                current = Interval{crossing, crossing, false, false};
            } else {
                current.hi = crossing;
                out.push_back(current);
            }
            inside = now;
        }
    }
    if (inside) {
        current.hi = grid.back();
        current.open_high = true;
        out.push_back(current);
    }
    return out;
}

bool dimer_condition(double B, double J, const ThermalPoint& t) {
    const double kT = t.kT();
    // Distributed form of e^{-4J/kT}(e^{B/kT} + e^{-B/kT} + 1) so kT -> 0 stays finite.
    const double lhs = std::exp((B - 4.0 * J) / kT) + std::exp((-B - 4.0 * J) / kT) + std::exp(-4.0 * J / kT);
    return lhs < 1.0;
}

double toy_T0(double D, double e_r, double delta) {
    if (!(D >= 2.0)) throw Error(ErrorCode::InvalidArgument, "toy_T0 needs D >= 2");
    if (!(e_r > 0.0)) throw Error(ErrorCode::NonpositiveEntanglement, "toy_T0 needs 2^{E_R} > 1");
    if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "toy_T0 needs delta > 0");
    const double excess = std::expm1(e_r * std::log(2.0));  // 2^{E_R} - 1
    if (!(D - 1.0 > excess)) {
        throw Error(ErrorCode::ThresholdUnreachable, "(D-1) <= 2^{E_R}-1: the threshold is met at every temperature");
    }
    return delta / std::log((D - 1.0) / excess);
}

ToyT1 toy_T1(double e_r, double delta) {
    if (!(e_r > 0.0)) throw Error(ErrorCode::NonpositiveEntanglement, "toy_T1 needs E_R > 0");
    if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "toy_T1 needs delta > 0");
    // ln(2^E/(2^E - 1)) = -ln(1 - 2^{-E})
    const double denom = -std::log1p(-std::exp2(-e_r));
    return ToyT1{delta / denom, delta * std::exp2(e_r)};
}

double toy_Talpha(double alpha, std::uint64_t n, double delta) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::AlphaOutOfRange, "toy_Talpha needs 0 < alpha <= 1");
    if (n < 2 || n % 2 != 0) throw Error(ErrorCode::OddN, "toy_Talpha needs even n >= 2");
    if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "toy_Talpha needs delta > 0");
    const double log_inner =
        std::log(alpha) + 0.5 * std::log(static_cast<double>(n)) - numerics::log_gamma(1.0 / alpha);
    return delta * std::exp(alpha * log_inner);
}

double gapping_rule_min_gap(double e_r) {
    if (!(e_r >= 0.0)) throw Error(ErrorCode::NegativeEntanglement, "E_R must be >= 0");
    return std::exp2(-e_r);
}

double stabilizer_T_trans(std::uint64_t n, double B, double e_r) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    if (!(B > 0.0)) throw Error(ErrorCode::InvalidArgument, "B must be > 0");
    const double ratio = e_r / static_cast<double>(n);
    if (!(ratio > 0.0 && ratio < 1.0)) throw Error(ErrorCode::RatioOutOfRange, "need 0 < E_R/n < 1");
    return -2.0 * B / std::log(std::expm1(ratio * std::log(2.0)));
}

double flip_probability_from_temperature(double B, const ThermalPoint& t) {
    if (!(B > 0.0)) throw Error(ErrorCode::InvalidArgument, "B must be > 0");
    return 1.0 / (1.0 + std::exp(2.0 * B / t.kT()));
}

double noise_threshold(double e_r, std::uint64_t n) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    const double ratio = e_r / static_cast<double>(n);
    if (!(ratio > 0.0 && ratio <= 1.0)) throw Error(ErrorCode::RatioOutOfRange, "need 0 < E_R/n <= 1");
    return -std::expm1(-ratio * std::log(2.0));
}

double concurrence_vanishing_temperature(const numerics::ComplexMatrix& h, double lo, double hi) {
    auto signed_c = [&](double kt) {
        return entanglement::concurrence_signed(thermal::thermal_density_matrix(h, ThermalPoint(kt)));
    };
    return numerics::bisect(signed_c, lo, hi, kRelTol);
}

}  // namespace thermwit::witness
