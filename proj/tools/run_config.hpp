#pragma once

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twave::cli {

enum class Subcommand { Solve, Converge, DumpCoeffs, Verify };
enum class OutputFormat { Csv, Json };
enum class CoeffKind { Tempered, Riesz, Grunwald };

/// Everything a run depends on. Defaults reproduce the manufactured
/// experiment: domain (0, 1), T = 1/2, lambda = 0.1.
struct RunConfig {
    Subcommand subcommand = Subcommand::Solve;
    double alpha = 1.5;
    double gamma = 2.0;
    double lambda = 0.1;
    std::size_t m = 20;
    std::size_t n = 10;
    double t_final = 0.5;
    std::pair<double, double> domain{0.0, 1.0};
    std::string problem = "manufactured";
    std::vector<std::size_t> resolutions{20, 40, 80, 160};
    std::uint64_t seed = 1;
    bool compensated = false;

    // dump-coeffs
    CoeffKind kind = CoeffKind::Tempered;
    std::optional<double> beta; ///< defaults to gamma - 1
    std::optional<double> tau;  ///< defaults to t_final / n
    std::size_t count = 16;

    OutputFormat format = OutputFormat::Csv;
    std::string output; ///< base path; empty writes to stdout
};

/// Bad flag value; the message names the flag. Maps to exit status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws UsageError naming the first invalid flag.
void validate(const RunConfig& config);

[[nodiscard]] nlohmann::json params_to_json(const RunConfig& config);
/// Accepts either a bare params object or a full run record with a "params" field.
[[nodiscard]] RunConfig config_from_json(const nlohmann::json& j);

[[nodiscard]] std::string to_string(Subcommand s);

/// Runs `config`. CSV/JSON go to files under config.output or to `out`;
/// human-readable progress goes to `log`. Returns the process exit status
/// (0 success, 1 runtime failure, 2 usage error).
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& log);

/// Parses argv and dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log);

} // namespace twave::cli
