#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "thermwit/cli.hpp"

namespace thermwit::cli {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError("'" + key + "' expects a finite number, got '" + v + "'");
    }
    return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("'" + key + "' expects a non-negative integer, got '" + v + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("'" + key + "' expects true/false, got '" + v + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// GridSpec

GridSpec GridSpec::parse(std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(trim(cur));
    if (parts.size() != 4) throw ConfigError("grid must look like lo:hi:count:log|lin, got '" + std::string(text) + "'");
    GridSpec g;
    g.lo = to_double("grid lo", parts[0]);
    g.hi = to_double("grid hi", parts[1]);
    g.count = static_cast<std::size_t>(to_uint("grid count", parts[2]));
    if (parts[3] == "log") {
        g.spacing = Spacing::Log;
    } else if (parts[3] == "lin") {
        g.spacing = Spacing::Linear;
    } else {
        throw ConfigError("grid spacing must be 'log' or 'lin', got '" + parts[3] + "'");
    }
    g.validate();
    return g;
}

std::string GridSpec::to_string() const {
    return exact(lo) + ":" + exact(hi) + ":" + std::to_string(count) + ":" + (spacing == Spacing::Log ? "log" : "lin");
}

void GridSpec::validate() const {
    if (!(lo > 0.0)) throw ConfigError("grid lo must be > 0");
    if (!(lo < hi)) throw ConfigError("grid needs lo < hi");
    if (count < 2) throw ConfigError("grid needs count >= 2");
}

std::vector<double> GridSpec::points() const {
    validate();
    std::vector<double> pts(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(count - 1);
        pts[i] = spacing == Spacing::Log ? std::exp(std::log(lo) + f * (std::log(hi) - std::log(lo))) : lo + f * (hi - lo);
    }
    pts.back() = hi;
    return pts;
}

// ---------------------------------------------------------------------------
// RunConfig

std::string_view to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::Dimer: return "dimer";
        case SystemKind::Toy: return "toy";
        case SystemKind::Dicke: return "dicke";
        case SystemKind::Graph: return "graph";
    }
    return "dimer";
}

SystemKind parse_system(std::string_view text) {
    if (text == "dimer") return SystemKind::Dimer;
    if (text == "toy") return SystemKind::Toy;
    if (text == "dicke") return SystemKind::Dicke;
    if (text == "graph") return SystemKind::Graph;
    throw ConfigError("unknown system '" + std::string(text) + "'");
}

void RunConfig::merge(std::istream& in) {
    std::string line;
    std::string section = "run";
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
            section = trim(std::string_view(t).substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string val = trim(std::string_view(t).substr(eq + 1));
        const std::string where = section + "." + key;

        if (section == "run") {
            if (key == "system") system = parse_system(val);
            else if (key == "grid") grid = GridSpec::parse(val);
            else if (key == "out") out = val;
            else if (key == "seed") seed = to_uint(where, val);
            else if (key == "kB") kB = to_double(where, val);
            else throw ConfigError("unknown key '" + where + "'");
        } else if (section == "dimer") {
            if (key == "B") B = to_double(where, val);
            else if (key == "J") J = to_double(where, val);
            else if (key == "oracles") oracles = to_bool(where, val);
            else throw ConfigError("unknown key '" + where + "'");
        } else if (section == "toy") {
            if (key == "E0") E0 = to_double(where, val);
            else if (key == "delta") delta = to_double(where, val);
            else if (key == "alpha") alpha = to_double(where, val);
            else if (key == "D") D = to_uint(where, val);
            else if (key == "eR") e_r = to_double(where, val);
            else throw ConfigError("unknown key '" + where + "'");
        } else if (section == "dicke") {
            if (key == "n") dicke_n = to_uint(where, val);
            else if (key == "k") dicke_k = to_uint(where, val);
            else throw ConfigError("unknown key '" + where + "'");
        } else if (section == "graph") {
            if (key == "edges") edges = val;
            else if (key == "B") graph_B = to_double(where, val);
            else if (key == "eR_per_site") e_r_per_site = to_double(where, val);
            else if (key == "matrix_check") matrix_check = to_bool(where, val);
            else throw ConfigError("unknown key '" + where + "'");
        } else {
            throw ConfigError("unknown section '" + section + "'");
        }
    }
}

RunConfig RunConfig::parse(std::istream& in) {
    RunConfig cfg;
    cfg.merge(in);
    return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    return parse(in);
}

std::string RunConfig::serialize() const {
    std::ostringstream s;
    s << "[run]\n";
    s << "system = " << to_string(system) << "\n";
    if (grid) s << "grid = " << grid->to_string() << "\n";
    if (!out.empty()) s << "out = " << out << "\n";
    s << "seed = " << seed << "\n";
    s << "kB = " << exact(kB) << "\n";
    s << "\n[dimer]\n";
    s << "B = " << exact(B) << "\n";
    s << "J = " << exact(J) << "\n";
    s << "oracles = " << (oracles ? "true" : "false") << "\n";
    s << "\n[toy]\n";
    s << "E0 = " << exact(E0) << "\n";
    s << "delta = " << exact(delta) << "\n";
    s << "alpha = " << exact(alpha) << "\n";
    s << "D = " << D << "\n";
    if (e_r) s << "eR = " << exact(*e_r) << "\n";
    s << "\n[dicke]\n";
    if (dicke_n) s << "n = " << *dicke_n << "\n";
    if (dicke_k) s << "k = " << *dicke_k << "\n";
    s << "\n[graph]\n";
    if (!edges.empty()) s << "edges = " << edges << "\n";
    s << "B = " << exact(graph_B) << "\n";
    if (e_r_per_site) s << "eR_per_site = " << exact(*e_r_per_site) << "\n";
    s << "matrix_check = " << (matrix_check ? "true" : "false") << "\n";
    return s.str();
}

void RunConfig::validate() const {
    if (grid) grid->validate();
    if (!(kB > 0.0)) throw ConfigError("kB must be > 0");
    switch (system) {
        case SystemKind::Dimer:
            if (!(B >= 0.0) || !(J >= 0.0)) throw ConfigError("dimer needs B >= 0 and J >= 0");
            break;
        case SystemKind::Toy:
        case SystemKind::Dicke:
            if (!(delta > 0.0)) throw ConfigError("toy spectrum needs delta > 0");
            if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
            if (D < 2) throw ConfigError("toy spectrum needs D >= 2");
            if (D > 10000000) throw ConfigError("toy spectrum supports D <= 10^7");
            if (e_r && !(*e_r >= 0.0)) throw ConfigError("eR must be >= 0");
            if (system == SystemKind::Dicke && !dicke_n) throw ConfigError("dicke needs --n");
            if (system == SystemKind::Toy && !e_r && !dicke_n) throw ConfigError("toy needs --eR or --n");
            if (dicke_n) {
                const auto n = *dicke_n;
                const auto k = dicke_k.value_or(n / 2);
                if (n < 2 || k < 1 || k >= n) throw ConfigError("Dicke state needs n >= 2 and 1 <= k <= n-1");
            }
            break;
        case SystemKind::Graph:
            if (edges.empty()) throw ConfigError("graph needs --edges PATH");
            if (!(graph_B > 0.0)) throw ConfigError("graph needs B > 0");
            if (e_r_per_site && !(*e_r_per_site > 0.0 && *e_r_per_site <= 1.0)) {
                throw ConfigError("eR per site must lie in (0, 1]");
            }
            break;
    }
}

}  // namespace thermwit::cli
