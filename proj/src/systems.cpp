#include "thermwit/systems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

namespace thermwit::systems {

namespace {

constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53

Level make_level(double energy, double log_deg) {
    double deg = std::exp(log_deg);
    if (deg < kExactIntegerLimit) deg = std::round(deg);
    return Level{energy, deg, log_deg};
}

std::uint64_t site_bit(std::size_t sites, std::size_t site) { return std::uint64_t{1} << (sites - 1 - site); }

// Merges adjacent levels (sorted input) whose energies agree to tolerance.
std::vector<Level> merge_levels(std::vector<Level> levels, double rel_tol) {
    std::sort(levels.begin(), levels.end(), [](const Level& a, const Level& b) { return a.energy < b.energy; });
    std::vector<Level> merged;
    for (const auto& lv : levels) {
        if (!merged.empty()) {
            auto& last = merged.back();
            if (std::abs(lv.energy - last.energy) <= rel_tol * std::max(std::abs(last.energy), 1.0)) {
                const double hi = std::max(last.log_degeneracy, lv.log_degeneracy);
                const double lo = std::min(last.log_degeneracy, lv.log_degeneracy);
                last = make_level(last.energy, hi + std::log1p(std::exp(lo - hi)));
                continue;
            }
        }
        merged.push_back(lv);
    }
    return merged;
}

}  // namespace

void DimerParams::validate() const {
    if (!(B >= 0.0) || !(J >= 0.0)) throw Error(ErrorCode::InvalidArgument, "dimer needs B >= 0 and J >= 0");
}

void ToySpectrumParams::validate() const {
    if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "toy spectrum needs delta > 0");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in [0, 1]");
    if (D < 2) throw Error(ErrorCode::InvalidArgument, "toy spectrum needs D >= 2");
    if (!std::isfinite(E0)) throw Error(ErrorCode::InvalidArgument, "E0 must be finite");
}

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(std::size_t n, std::span<const std::pair<std::size_t, std::size_t>> edges) : n_(n) {
    for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(std::size_t u, std::size_t v) {
    if (u >= n_ || v >= n_) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    if (u == v) throw Error(ErrorCode::InvalidArgument, "self-loops are not allowed");
    std::pair<std::size_t, std::size_t> e{std::min(u, v), std::max(u, v)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) edges_.insert(it, e);
}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (const auto& [a, b] : edges_) {
        if (a == v) out.push_back(b);
        if (b == v) out.push_back(a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Graph Graph::path(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph Graph::ring(std::size_t n) {
    Graph g = path(n);
    if (n > 2) g.add_edge(n - 1, 0);
    return g;
}

Graph Graph::star(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 1; i < n; ++i) g.add_edge(0, i);
    return g;
}

Graph Graph::complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

Graph Graph::parse(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_n = false;
    Graph g;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string first;
        if (!(fields >> first)) continue;
        auto fail = [&](const std::string& why) {
            throw Error(ErrorCode::ParseError, "edge list line " + std::to_string(line_no) + ": " + why);
        };
        auto to_index = [&](const std::string& tok) -> std::size_t {
            std::size_t pos = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(tok, &pos);
            } catch (const std::exception&) {
                fail("expected a non-negative integer, got '" + tok + "'");
            }
            if (pos != tok.size() || tok.front() == '-') fail("expected a non-negative integer, got '" + tok + "'");
            return static_cast<std::size_t>(v);
        };
        if (!have_n) {
            g = Graph(to_index(first));
            have_n = true;
            std::string extra;
            if (fields >> extra) fail("first line must hold only the vertex count");
            continue;
        }
        std::string second, extra;
        if (!(fields >> second)) fail("expected 'u v'");
        if (fields >> extra) fail("trailing tokens after 'u v'");
        const auto u = to_index(first);
        const auto v = to_index(second);
        try {
            g.add_edge(u, v);
        } catch (const Error& e) {
            fail(e.what());
        }
    }
    if (!have_n) throw Error(ErrorCode::ParseError, "edge list is empty");
    return g;
}

Graph Graph::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::FileNotFound, "cannot open edge list '" + path + "'");
    return parse(in);
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(std::size_t sites, std::vector<Complex> amplitudes)
    : sites_(sites), amplitudes_(std::move(amplitudes)) {
    if (sites >= 64 || amplitudes_.size() != (std::size_t{1} << sites)) {
        throw Error(ErrorCode::BadDimension, "amplitude count must be 2^sites");
    }
    if (std::abs(norm() - 1.0) > 1e-10) throw Error(ErrorCode::DomainError, "state is not normalized");
}

PureState PureState::basis(std::size_t sites, std::uint64_t label) {
    std::vector<Complex> amps(std::size_t{1} << sites);
    amps.at(label) = 1.0;
    return PureState(sites, std::move(amps));
}

double PureState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
}

PureState singlet() {
    const double r = 1.0 / std::sqrt(2.0);
    return PureState(2, {0.0, r, -r, 0.0});
}

// ---------------------------------------------------------------------------
// Spectrum

Spectrum::Spectrum(std::vector<Level> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw Error(ErrorCode::InvalidArgument, "spectrum needs at least one level");
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!std::isfinite(levels_[i].energy)) throw Error(ErrorCode::InvalidArgument, "energies must be finite");
        if (!(levels_[i].log_degeneracy >= 0.0)) throw Error(ErrorCode::InvalidArgument, "degeneracy must be >= 1");
        if (i > 0 && !(levels_[i].energy > levels_[i - 1].energy)) {
            throw Error(ErrorCode::InvalidArgument, "energies must be strictly ascending");
        }
    }
}

Spectrum Spectrum::from_degeneracies(std::span<const std::pair<double, double>> energy_degeneracy) {
    std::vector<Level> levels;
    levels.reserve(energy_degeneracy.size());
    for (const auto& [e, d] : energy_degeneracy) {
        if (!(d >= 1.0)) throw Error(ErrorCode::InvalidArgument, "degeneracy must be >= 1");
        levels.push_back(make_level(e, std::log(d)));
    }
    return Spectrum(merge_levels(std::move(levels), 1e-9));
}

Spectrum Spectrum::from_eigenvalues(std::span<const double> eigenvalues, double rel_tol) {
    std::vector<Level> levels;
    levels.reserve(eigenvalues.size());
    for (double e : eigenvalues) levels.push_back(Level{e, 1.0, 0.0});
    return Spectrum(merge_levels(std::move(levels), rel_tol));
}

double Spectrum::gap() const { return levels_.size() > 1 ? levels_[1].energy - levels_[0].energy : 0.0; }

double Spectrum::spread() const { return levels_.back().energy - levels_.front().energy; }

double Spectrum::total_dimension() const {
    double s = 0.0;
    for (const auto& lv : levels_) s += lv.degeneracy;
    return s;
}

std::size_t Spectrum::level_index(double energy, double rel_tol) const {
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (std::abs(levels_[i].energy - energy) <= rel_tol * std::max(std::abs(energy), 1.0)) return i;
    }
    throw Error(ErrorCode::IndexOutOfRange, "no level at energy " + std::to_string(energy));
}

// ---------------------------------------------------------------------------
// Builders

ComplexMatrix build_dimer_hamiltonian(const DimerParams& p) {
    using numerics::kron;
    p.validate();
    const auto id = ComplexMatrix::identity(2);
    const auto x = numerics::pauli_x();
    const auto y = numerics::pauli_y();
    const auto z = numerics::pauli_z();
    // Zeeman term normalized so that |00> sits at J - B and |11> at J + B.
    ComplexMatrix h = (kron(z, id) + kron(id, z)) * Complex(-0.5 * p.B);
    h += (kron(x, x) + kron(y, y) + kron(z, z)) * Complex(p.J);
    return h;
}

Spectrum dimer_spectrum(const DimerParams& p) {
    p.validate();
    const double e[] = {-3.0 * p.J, p.J - p.B, p.J, p.J + p.B};
    return Spectrum::from_eigenvalues(e);
}

Spectrum toy_spectrum(const ToySpectrumParams& p) {
    p.validate();
    if (p.alpha == 0.0) {
        const std::pair<double, double> lv[] = {{p.E0, 1.0}, {p.E0 + p.delta, static_cast<double>(p.D - 1)}};
        return Spectrum::from_degeneracies(lv);
    }
    std::vector<Level> levels;
    levels.reserve(p.D);
    levels.push_back(Level{p.E0, 1.0, 0.0});
    for (std::uint64_t m = 1; m < p.D; ++m) {
        levels.push_back(Level{p.E0 + std::pow(static_cast<double>(m), p.alpha) * p.delta, 1.0, 0.0});
    }
    return Spectrum(merge_levels(std::move(levels), 1e-9));
}

PureState dicke_state(std::size_t n, std::size_t k) {
    if (n > 20) throw Error(ErrorCode::BadExcitationCount, "dicke_state supports n <= 20");
    if (k > n) throw Error(ErrorCode::BadExcitationCount, "need 0 <= k <= n");
    const double amp = std::exp(-0.5 * numerics::log_binomial(static_cast<double>(n), static_cast<double>(k)));
    std::vector<Complex> amps(std::size_t{1} << n);
    for (std::uint64_t x = 0; x < amps.size(); ++x) {
        if (static_cast<std::size_t>(std::popcount(x)) == k) amps[x] = amp;
    }
    return PureState(n, std::move(amps));
}

ComplexMatrix build_stabilizer_hamiltonian(const Graph& g, double B) {
    const std::size_t n = g.size();
    if (n > kMaxExplicitSites) throw Error(ErrorCode::GraphTooLarge, "explicit stabilizer Hamiltonian needs n <= 12");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "graph has no vertices");
    if (!(B > 0.0)) throw Error(ErrorCode::InvalidArgument, "stabilizer Hamiltonian needs B > 0");
    const std::uint64_t dim = std::uint64_t{1} << n;
    ComplexMatrix h(dim);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t zmask = 0;
        for (auto j : g.neighbors(i)) zmask |= site_bit(n, j);
        const std::uint64_t xflip = site_bit(n, i);
        // K_i |x> = (-1)^{popcount(x & zmask)} |x ^ xflip>
        for (std::uint64_t x = 0; x < dim; ++x) {
            const double sign = (std::popcount(x & zmask) % 2 == 0) ? 1.0 : -1.0;
            h(x ^ xflip, x) += -B * sign;
        }
    }
    return h;
}

Spectrum stabilizer_spectrum(std::uint64_t n, double B) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "stabilizer spectrum needs n >= 1");
    if (!(B > 0.0)) throw Error(ErrorCode::InvalidArgument, "stabilizer spectrum needs B > 0");
    std::vector<Level> levels;
    levels.reserve(n + 1);
    const double nd = static_cast<double>(n);
    for (std::uint64_t i = 0; i <= n; ++i) {
        const double id = static_cast<double>(i);
        levels.push_back(make_level(B * (-nd + 2.0 * id), numerics::log_binomial(nd, id)));
    }
    return Spectrum(std::move(levels));
}

PureState graph_state(const Graph& g) {
    const std::size_t n = g.size();
    if (n > kMaxExplicitSites) throw Error(ErrorCode::GraphTooLarge, "graph_state needs n <= 12");
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "graph has no vertices");
    const std::uint64_t dim = std::uint64_t{1} << n;
    const double amp = std::pow(2.0, -0.5 * static_cast<double>(n));
    std::vector<Complex> amps(dim);
    for (std::uint64_t x = 0; x < dim; ++x) {
        int parity = 0;
        for (const auto& [u, v] : g.edges()) {
            if ((x & site_bit(n, u)) && (x & site_bit(n, v))) parity ^= 1;
        }
        amps[x] = parity ? -amp : amp;
    }
    return PureState(n, std::move(amps));
}

}  // namespace thermwit::systems
