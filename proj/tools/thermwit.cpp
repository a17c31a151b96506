#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thermwit/cli.hpp"

namespace tc = thermwit::cli;

namespace {

struct Flags {
    std::string config;
    std::optional<double> B, J, E0, delta, alpha, e_r, e_r_per_site, kB;
    std::optional<std::uint64_t> D, n, k, seed;
    std::optional<std::string> grid, edges, out;
    bool oracles = false;
    bool matrix_check = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "INI-style run configuration; flags override it");
    sub->add_option("--grid", f.grid, "Temperature grid lo:hi:count:log|lin (kT units)");
    sub->add_option("--out", f.out, "Write CSV here instead of stdout");
    sub->add_option("--seed", f.seed, "RNG seed");
    sub->add_option("--kB", f.kB, "Boltzmann constant used to report T = kT/kB");
}

void add_toy(CLI::App* sub, Flags& f) {
    sub->add_option("--E0", f.E0, "Ground energy");
    sub->add_option("--delta", f.delta, "Gap scale");
    sub->add_option("--alpha", f.alpha, "Excitation exponent in [0, 1]");
    sub->add_option("--D", f.D, "Hilbert space dimension");
    sub->add_option("--n", f.n, "Dicke qubit count; sets the bound to that of S(n,k)");
    sub->add_option("--k", f.k, "Dicke excitation count (default n/2)");
}

tc::RunConfig build(tc::SystemKind kind, const Flags& f) {
    tc::RunConfig cfg;
    if (!f.config.empty()) cfg = tc::RunConfig::load(f.config);
    cfg.system = kind;
    if (f.grid) cfg.grid = tc::GridSpec::parse(*f.grid);
    if (f.out) cfg.out = *f.out;
    if (f.seed) cfg.seed = *f.seed;
    if (f.kB) cfg.kB = *f.kB;
    if (kind == tc::SystemKind::Graph) {
        if (f.B) cfg.graph_B = *f.B;
    } else if (f.B) {
        cfg.B = *f.B;
    }
    if (f.J) cfg.J = *f.J;
    if (f.E0) cfg.E0 = *f.E0;
    if (f.delta) cfg.delta = *f.delta;
    if (f.alpha) cfg.alpha = *f.alpha;
    if (f.D) cfg.D = *f.D;
    if (f.n) cfg.dicke_n = *f.n;
    if (f.k) cfg.dicke_k = *f.k;
    if (f.e_r) cfg.e_r = *f.e_r;
    if (f.e_r_per_site) cfg.e_r_per_site = *f.e_r_per_site;
    if (f.edges) cfg.edges = *f.edges;
    if (f.oracles) cfg.oracles = true;
    if (f.matrix_check) cfg.matrix_check = true;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermal entanglement witness: transition temperatures from ground-state populations"};
    app.require_subcommand(1);
    Flags f;

    auto* dimer = app.add_subcommand("dimer", "Heisenberg dimer in a field");
    add_common(dimer, f);
    dimer->add_option("--B", f.B, "Field strength");
    dimer->add_option("--J", f.J, "Exchange coupling");
    dimer->add_flag("--oracles", f.oracles, "Add concurrence and partial-transpose columns");

    auto* toy = app.add_subcommand("toy", "Toy spectrum E0 + m^alpha delta");
    add_common(toy, f);
    add_toy(toy, f);
    toy->add_option("--eR", f.e_r, "Relative entropy of entanglement of the ground state (bits)");

    auto* dicke = app.add_subcommand("dicke", "Dicke ground state on the toy spectrum");
    add_common(dicke, f);
    add_toy(dicke, f);

    auto* graph = app.add_subcommand("graph", "Stabilizer Hamiltonian of a graph state");
    add_common(graph, f);
    graph->add_option("--edges", f.edges, "Edge list file: n on the first line, then 'u v' per line");
    graph->add_option("--B", f.B, "Stabilizer coupling");
    graph->add_option("--eR", f.e_r, "Total relative entropy of entanglement (bits)");
    graph->add_option("--eR-per-site", f.e_r_per_site, "Relative entropy per qubit (bits)");
    graph->add_flag("--matrix-check", f.matrix_check, "Diagonalize H explicitly and compare (n <= 12)");

    std::uint64_t verify_seed = 20071001;
    auto* verify = app.add_subcommand("verify", "Run the built-in acceptance and property checks");
    verify->add_option("--seed", verify_seed, "RNG seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? tc::kOk : tc::kConfigError;
    }

    if (verify->parsed()) return tc::cmd_verify(verify_seed, std::cout, std::cerr);

    tc::SystemKind kind = tc::SystemKind::Dimer;
    if (toy->parsed()) kind = tc::SystemKind::Toy;
    if (dicke->parsed()) kind = tc::SystemKind::Dicke;
    if (graph->parsed()) kind = tc::SystemKind::Graph;

    tc::RunConfig cfg;
    try {
        cfg = build(kind, f);
    } catch (const thermwit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return tc::kConfigError;
    }
    return tc::run(cfg, std::cout, std::cerr);
}
