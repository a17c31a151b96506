#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "thermwit/checks.hpp"
#include "thermwit/cli.hpp"
#include "thermwit/entanglement.hpp"
#include "thermwit/systems.hpp"
#include "thermwit/thermal.hpp"
#include "thermwit/witness.hpp"

namespace thermwit::cli {

using entanglement::RobustnessBound;
using systems::Spectrum;
using thermal::ThermalPoint;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string format_from_log(double ln_value) {
    if (std::abs(ln_value) < 700.0) return format_number(std::exp(ln_value));
    const double log10v = ln_value / std::log(10.0);
    auto exponent = static_cast<long long>(std::floor(log10v));
    double mantissa = std::pow(10.0, log10v - static_cast<double>(exponent));
    if (mantissa >= 10.0) {
        mantissa /= 10.0;
        ++exponent;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12ge%+lld", mantissa, exponent);
    return buf;
}

namespace {

constexpr const char* kCsvVersion = "# thermwit-csv v1";

/// Collects rows and the `##` summary block, then writes both in order.
class Report {
  public:
    Report(SystemKind system, std::vector<std::string> extra_columns) {
        body_ << kCsvVersion << '\n';
        body_ << "# system = " << to_string(system) << '\n';
        body_ << "T,Z,p,threshold,satisfied,bound_kind";
        for (const auto& c : extra_columns) body_ << ',' << c;
        body_ << '\n';
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) body_ << (i ? "," : "") << cells[i];
        body_ << '\n';
    }

    void summary(const std::string& key, const std::string& value) { summary_ << "## " << key << " = " << value << '\n'; }
    void summary(const std::string& key, double value) { summary(key, format_number(value)); }

    void write(std::ostream& out) const { out << body_.str() << summary_.str(); }

  private:
    std::ostringstream body_;
    std::ostringstream summary_;
};

std::vector<double> grid_for(const RunConfig& cfg, double gap) {
    if (cfg.grid) return cfg.grid->points();
    const double scale = gap > 0.0 ? gap : 1.0;
    return GridSpec{1e-3 * scale, 1e3 * scale, 256, Spacing::Log}.points();
}

std::string verdict_cells(const witness::WitnessVerdict& v) { return v.satisfied ? "1" : "0"; }

std::string describe_transition(const witness::TransitionResult& tr, double kB) {
    if (!tr.detected) return "NotDetected";
    return format_number(tr.t_trans / kB);
}

std::string describe_intervals(const std::vector<witness::Interval>& iv, double kB) {
    if (iv.empty()) return "none";
    std::string s;
    for (const auto& i : iv) {
        if (!s.empty()) s += ' ';
        s += "[" + format_number(i.lo / kB) + (i.open_low ? "(grid start)" : "") + "," + format_number(i.hi / kB) +
             (i.open_high ? "(grid end)" : "") + "]";
    }
    return s;
}

void witness_rows(Report& rep, const Spectrum& s, const RobustnessBound& bound, const std::vector<double>& grid,
                  double kB, const std::function<std::vector<std::string>(double)>& extra) {
    for (double kt : grid) {
        const ThermalPoint t(kt);
        const auto v = witness::evaluate_condition(s, t, bound);
        std::vector<std::string> cells = {format_number(kt / kB),
                                          format_from_log(thermal::partition_function(s, t).log()),
                                          format_number(v.population),
                                          format_number(v.threshold),
                                          verdict_cells(v),
                                          std::string(entanglement::to_string(v.bound_kind))};
        if (extra) {
            for (auto& c : extra(kt)) cells.push_back(std::move(c));
        }
        rep.row(cells);
    }
}

void bound_summary(Report& rep, const RobustnessBound& b) {
    rep.summary("one_plus_r", b.one_plus_r());
    rep.summary("bound_kind", std::string(entanglement::to_string(b.kind())));
    rep.summary("bound_source", std::string(entanglement::to_string(b.source())));
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_dimer(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    const systems::DimerParams p{cfg.B, cfg.J};
    const auto s = systems::dimer_spectrum(p);
    const auto h = systems::build_dimer_hamiltonian(p);
    const auto grid = grid_for(cfg, s.gap());

    std::string ground;
    std::optional<RobustnessBound> bound;
    if (s[0].degeneracy > 1.0) {
        ground = "degenerate";
        // R >= 0 is the only bound available for the degenerate manifold.
        bound = RobustnessBound::lower_bound(1.0, entanglement::BoundSource::BipartitePureSchmidt);
    } else if (p.B < 4.0 * p.J) {
        ground = "singlet";
        bound = entanglement::singlet_robustness();
    } else {
        const auto eig = numerics::hermitian_eigendecompose(h);
        std::vector<numerics::Complex> g(4);
        for (std::size_t i = 0; i < 4; ++i) g[i] = eig.eigenvectors(i, 0);
        ground = std::norm(g[0]) > 1.0 - 1e-9 ? "|00>" : "product";
        bound = entanglement::bipartite_pure_robustness(systems::PureState(2, g), entanglement::Partition::half_cut(2));
    }

    std::vector<std::string> extra_cols;
    if (cfg.oracles) extra_cols = {"concurrence", "min_pt_eig"};
    Report rep(SystemKind::Dimer, extra_cols);

    std::vector<double> signed_conc;
    auto oracle_cells = [&](double kt) -> std::vector<std::string> {
        const auto rho = thermal::thermal_density_matrix(h, ThermalPoint(kt));
        const std::size_t dims[] = {2, 2};
        const std::size_t sub[] = {1};
        const double sc = entanglement::concurrence_signed(rho);
        signed_conc.push_back(sc);
        return {format_number(std::max(0.0, sc)), format_number(entanglement::ppt_min_eigenvalue(rho, dims, sub))};
    };
    witness_rows(rep, s, *bound, grid, cfg.kB, cfg.oracles ? std::function(oracle_cells) : nullptr);

    rep.summary("B", p.B);
    rep.summary("J", p.J);
    rep.summary("ground", ground);
    bound_summary(rep, *bound);
    if (ground == "degenerate") {
        rep.summary("t_trans", "DegenerateGround");
    } else {
        const auto tr = witness::transition_temperature(s, *bound);
        rep.summary("t_trans", describe_transition(tr, cfg.kB));
        if (tr.detected && p.J > 0.0) rep.summary("t_trans_closed_form_B0", 4.0 * p.J / std::log(3.0) / cfg.kB);
    }
    if (p.B >= 4.0 * p.J && p.J > 0.0) {
        const auto level = s.level_index(-3.0 * p.J);
        const auto iv = witness::satisfying_intervals(s, entanglement::singlet_robustness(), {level}, grid);
        rep.summary("singlet_contributor_intervals", describe_intervals(iv, cfg.kB));
    }
    if (cfg.oracles) {
        double best = 0.0;
        for (double c : signed_conc) best = std::max(best, c);
        rep.summary("concurrence_max_on_grid", best);
        rep.summary("entangled_on_grid", best > 0.0 ? "true" : "false");
        // Highest-temperature sign change of the concurrence on the grid.
        std::string vanish = "none";
        for (std::size_t i = grid.size() - 1; i > 0; --i) {
            if (signed_conc[i - 1] > 0.0 && signed_conc[i] <= 0.0) {
                vanish = format_number(witness::concurrence_vanishing_temperature(h, grid[i - 1], grid[i]) / cfg.kB);
                break;
            }
        }
        rep.summary("concurrence_vanishing_T", vanish);
    }
    rep.write(out);
    return kOk;
}

namespace {

struct ToySetup {
    systems::ToySpectrumParams params;
    RobustnessBound bound;
    double e_r;
};

ToySetup toy_setup(const RunConfig& cfg) {
    systems::ToySpectrumParams p{cfg.E0, cfg.delta, cfg.alpha, cfg.D};
    if (cfg.dicke_n) {
        const auto n = *cfg.dicke_n;
        const auto b = entanglement::dicke_robustness(n, cfg.dicke_k.value_or(n / 2));
        return {p, b, std::log2(b.one_plus_r())};
    }
    return {p, entanglement::bound_from_relative_entropy(*cfg.e_r), *cfg.e_r};
}

void toy_body(const RunConfig& cfg, const ToySetup& setup, const Spectrum& s, Report& rep) {
    const auto& p = setup.params;
    const auto grid = grid_for(cfg, p.delta);
    for (double kt : grid) {
        const ThermalPoint t(kt);
        const auto z = thermal::partition_function_alpha_closed(p, t);
        const double p0 = std::exp(-z.log_sum);
        const double thr = setup.bound.threshold();
        std::vector<std::string> cells = {format_number(kt / cfg.kB), format_from_log(z.log()), format_number(p0),
                                          format_number(thr), p0 > thr ? "1" : "0",
                                          std::string(entanglement::to_string(setup.bound.kind()))};
        if (p.alpha > 0.0) {
            const auto zg = thermal::partition_function_alpha_gamma(p, t);
            cells.push_back(format_from_log(zg.log()));
            cells.push_back(format_number(std::abs(std::expm1(zg.log_sum - z.log_sum))));
        }
        rep.row(cells);
    }

    rep.summary("E0", p.E0);
    rep.summary("delta", p.delta);
    rep.summary("alpha", p.alpha);
    rep.summary("D", static_cast<double>(p.D));
    rep.summary("e_r", setup.e_r);
    bound_summary(rep, setup.bound);
    rep.summary("t_trans", describe_transition(witness::transition_temperature(s, setup.bound), cfg.kB));
    if (setup.e_r > 0.0) {
        try {
            rep.summary("t0", witness::toy_T0(static_cast<double>(p.D), setup.e_r, p.delta) / cfg.kB);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ThresholdUnreachable) throw;
            rep.summary("t0", "ThresholdUnreachable");
        }
        const auto t1 = witness::toy_T1(setup.e_r, p.delta);
        rep.summary("t1_exact", t1.exact / cfg.kB);
        rep.summary("t1_lowT", t1.low_t / cfg.kB);
    }
    if (p.alpha > 0.0 && cfg.dicke_n && *cfg.dicke_n % 2 == 0) {
        rep.summary("t_alpha", witness::toy_Talpha(p.alpha, *cfg.dicke_n, p.delta) / cfg.kB);
    }
    rep.summary("gap_min", witness::gapping_rule_min_gap(setup.e_r));
}

std::vector<std::string> toy_columns(const RunConfig& cfg) {
    if (cfg.alpha > 0.0) return {"z_gamma", "gamma_rel_err"};
    return {};
}

}  // namespace

int cmd_toy(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    const auto setup = toy_setup(cfg);
    const auto s = systems::toy_spectrum(setup.params);
    Report rep(SystemKind::Toy, toy_columns(cfg));
    toy_body(cfg, setup, s, rep);
    rep.write(out);
    return kOk;
}

int cmd_dicke(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
    const auto setup = toy_setup(cfg);
    const auto s = systems::toy_spectrum(setup.params);
    Report rep(SystemKind::Dicke, toy_columns(cfg));
    toy_body(cfg, setup, s, rep);

    const auto n = *cfg.dicke_n;
    const auto k = cfg.dicke_k.value_or(n / 2);
    rep.summary("n", static_cast<double>(n));
    rep.summary("k", static_cast<double>(k));
    if (n % 2 == 0 && k == n / 2) rep.summary("one_plus_r_asymptotic", entanglement::dicke_half_asymptotic(n));
    if (n <= 16) {
        const auto psi = systems::dicke_state(n, k);
        const auto bi = entanglement::bipartite_pure_robustness(psi, entanglement::Partition::half_cut(n));
        rep.summary("one_plus_r_bipartite", bi.one_plus_r());
        rep.summary("t_trans_bipartite", describe_transition(witness::transition_temperature(s, bi), cfg.kB));
        if (n <= 10) {
            const auto est = entanglement::geometric_measure_als(psi, {.seed = cfg.seed});
            rep.summary("als_overlap_sq", est.overlap * est.overlap);
            rep.summary("als_eg_upper_diagnostic", est.eg_upper);
        }
    }
    rep.write(out);
    return kOk;
}

int cmd_graph(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto g = systems::Graph::load(cfg.edges);
    const std::uint64_t n = g.size();
    if (n == 0) throw ConfigError("graph has no vertices");
    const double B = cfg.graph_B;
    const auto s = systems::stabilizer_spectrum(n, B);
    const double nd = static_cast<double>(n);

    std::optional<RobustnessBound> bound;
    double e_r = 0.0;
    if (cfg.e_r_per_site || cfg.e_r) {
        e_r = cfg.e_r_per_site ? *cfg.e_r_per_site * nd : *cfg.e_r;
        bound = entanglement::bound_from_relative_entropy(e_r);
    } else if (n <= systems::kMaxExplicitSites) {
        bound = entanglement::bipartite_pure_robustness(systems::graph_state(g), entanglement::Partition::half_cut(n));
        e_r = std::log2(bound->one_plus_r());
    } else {
        throw ConfigError("graphs with n > 12 need --eR or --eR-per-site");
    }

    std::string matrix_status = "skipped";
    if (cfg.matrix_check) {
        if (n > systems::kMaxExplicitSites) throw ConfigError("--matrix-check needs n <= 12");
        const auto h = systems::build_stabilizer_hamiltonian(g, B);
        const auto numeric = Spectrum::from_eigenvalues(numerics::hermitian_eigenvalues(h));
        bool ok = numeric.size() == s.size();
        for (std::size_t i = 0; ok && i < s.size(); ++i) {
            ok = std::abs(numeric[i].energy - s[i].energy) <= 1e-9 * std::max(1.0, std::abs(s[i].energy)) &&
                 numeric[i].degeneracy == s[i].degeneracy;
        }
        const auto psi = systems::graph_state(g);
        const auto hpsi = numerics::apply(h, psi.amplitudes());
        double res = 0.0;
        for (std::size_t x = 0; x < hpsi.size(); ++x) res += std::norm(hpsi[x] + nd * B * psi.amplitudes()[x]);
        ok = ok && std::sqrt(res) <= 1e-9;
        if (!ok) {
            err << "error: analytic stabilizer spectrum does not match explicit diagonalization\n";
            return kCrossCheckMismatch;
        }
        matrix_status = "pass";
    }

    Report rep(SystemKind::Graph, {"flip_prob"});
    const auto grid = grid_for(cfg, 2.0 * B);
    for (double kt : grid) {
        const ThermalPoint t(kt);
        const auto z = thermal::stabilizer_partition_function(n, B, t);
        const double p0 = std::exp(-z.log_sum);
        const double thr = bound->threshold();
        rep.row({format_number(kt / cfg.kB), format_from_log(z.log()), format_number(p0), format_number(thr),
                 p0 > thr ? "1" : "0", std::string(entanglement::to_string(bound->kind())),
                 format_number(witness::flip_probability_from_temperature(B, t))});
    }

    rep.summary("n", nd);
    rep.summary("edges", static_cast<double>(g.edges().size()));
    rep.summary("B", B);
    rep.summary("e_r", e_r);
    rep.summary("e_r_per_site", e_r / nd);
    bound_summary(rep, *bound);
    const double ratio = e_r / nd;
    if (ratio > 0.0 && ratio < 1.0) {
        rep.summary("t_trans", witness::stabilizer_T_trans(n, B, e_r) / cfg.kB);
    } else if (ratio >= 1.0) {
        rep.summary("t_trans", "inf");
    } else {
        rep.summary("t_trans", "NotDetected");
    }
    rep.summary("t_trans_bisection", describe_transition(witness::transition_temperature(s, *bound), cfg.kB));
    if (ratio > 0.0 && ratio <= 1.0) {
        rep.summary("p_trans", witness::noise_threshold(e_r, n));
    } else {
        rep.summary("p_trans", "NotDetected");
    }
    rep.summary("matrix_check", matrix_status);
    rep.write(out);
    return kOk;
}

int cmd_verify(std::uint64_t seed, std::ostream& out, std::ostream& /*err*/) {
    checks::VerifyOptions opts;
    opts.seed = seed;
    auto results = checks::run_acceptance(opts);
    for (auto& r : checks::run_properties(opts)) results.push_back(std::move(r));
    return checks::print_report(out, results) ? kOk : kVerifyFailed;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
        std::ofstream file;
        std::ostream* dest = &out;
        if (!cfg.out.empty()) {
            file.open(cfg.out);
            if (!file) throw ConfigError("cannot write '" + cfg.out + "'");
            dest = &file;
        }
        switch (cfg.system) {
            case SystemKind::Dimer: return cmd_dimer(cfg, *dest, err);
            case SystemKind::Toy: return cmd_toy(cfg, *dest, err);
            case SystemKind::Dicke: return cmd_dicke(cfg, *dest, err);
            case SystemKind::Graph: return cmd_graph(cfg, *dest, err);
        }
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
            case ErrorCode::ParseError:
            case ErrorCode::FileNotFound:
            case ErrorCode::InvalidArgument:
            case ErrorCode::AlphaOutOfRange:
                return kConfigError;
            default:
                return kNumericError;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kNumericError;
    }
}

}  // namespace thermwit::cli
