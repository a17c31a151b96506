#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thermwit/error.hpp"

namespace thermwit::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kVerifyFailed = 1,
    kConfigError = 2,
    kNumericError = 3,
    kCrossCheckMismatch = 4,
};

enum class Spacing { Linear, Log };

/// `lo:hi:count:log|lin`, temperatures in kT units.
struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
    Spacing spacing = Spacing::Log;

    static GridSpec parse(std::string_view text);
    std::string to_string() const;
    std::vector<double> points() const;
    void validate() const;
};

enum class SystemKind { Dimer, Toy, Dicke, Graph };

std::string_view to_string(SystemKind kind);
SystemKind parse_system(std::string_view text);

/// Everything a run needs. Parsed from `[section] key = value` text and
/// overridden by command-line flags.
struct RunConfig {
    SystemKind system = SystemKind::Dimer;

    // [dimer]
    double B = 0.0;
    double J = 1.0;
    bool oracles = false;

    // [toy] / [dicke]
    double E0 = 0.0;
    double delta = 1.0;
    double alpha = 0.0;
    std::uint64_t D = 4;
    std::optional<double> e_r;
    std::optional<std::uint64_t> dicke_n;
    std::optional<std::uint64_t> dicke_k;

    // [graph]
    std::string edges;
    double graph_B = 1.0;
    std::optional<double> e_r_per_site;
    bool matrix_check = false;

    // [run]
    std::optional<GridSpec> grid;
    std::string out;
    std::uint64_t seed = 20071001;
    double kB = 1.0;

    /// Merges `[section] key = value` text into *this.
    void merge(std::istream& in);
    static RunConfig parse(std::istream& in);
    static RunConfig load(const std::string& path);
    std::string serialize() const;
    void validate() const;
};

/// Raised for invalid user input; maps to exit code 2.
class ConfigError : public Error {
  public:
    explicit ConfigError(const std::string& what) : Error(ErrorCode::ParseError, what) {}
};

int cmd_dimer(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_toy(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_dicke(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_graph(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(std::uint64_t seed, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.system, writing CSV to cfg.out (or `out` when empty)
/// and mapping exceptions to exit codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Number formatting used in every CSV cell: %.12g, or a decimal
/// mantissa/exponent rebuilt from the logarithm when the value overflows.
std::string format_number(double v);
std::string format_from_log(double ln_value);

}  // namespace thermwit::cli
