#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgmldp/lattice_sim.hpp"
#include "cgmldp/lyapunov.hpp"
#include "cgmldp/param_law.hpp"
#include "cgmldp/shape.hpp"

namespace cgmldp::cli {

/// Law specification as used in config files and inline on the command line:
/// {"type":"delta","x":0.5}, {"type":"discrete","atoms":[[1.0,0.5],[2.0,0.5]]},
/// {"type":"uniform","lo":0.5,"hi":1.5}, {"type":"poly","lo":1.0,"hi":2.0,"k":3}.
ParameterLaw parse_law(const nlohmann::json& spec, const std::string& field);
ParameterLaw parse_law_text(const std::string& text, const std::string& field);

/// "0.1,0.2,0.3" or "lo:hi:count" (inclusive linspace).
std::vector<double> parse_grid_text(const std::string& text, const std::string& field);

enum class KindChoice { Quenched, Annealed, Both };

struct RunConfig {
    std::optional<ParameterLaw> alpha;
    std::optional<ParameterLaw> beta;
    std::vector<Direction> directions;
    std::vector<double> lambda_grid;
    std::vector<double> r_grid;
    std::vector<double> eps_grid;
    std::vector<double> t_grid;
    std::vector<std::pair<double, double>> intervals;
    std::optional<double> z;
    std::optional<double> r;
    double x = 0.0, y = 0.0;  // tasep direction parameters
    double time = 0.0;        // tasep positions snapshot time
    int n = 100;
    int reps = 100;
    std::uint64_t seed = 1;
    SampleMode mode = SampleMode::Quenched;
    KindChoice kind = KindChoice::Both;
    std::string estimator = "shape";  // simulate: shape | lyapunov | tail | left-tail
    bool positions = false;           // tasep: emit simulated positions instead of rates
    int level_set_samples = 0;
    std::string output = "-";
    std::string format = "csv";

    static RunConfig from_json(const nlohmann::json& doc);
    void require_laws() const;
};

/// Executes one subcommand against a ready config, writing the artifact to
/// `out`. Throws ConfigError / DomainError / InternalConsistencyError.
void run_command(const std::string& command, const RunConfig& config, std::ostream& out);

/// Full CLI entry point: parses argv, loads --config, applies overrides,
/// dispatches, and maps errors to exit codes 1/2/3.
int run_cli(int argc, const char* const* argv);

const std::vector<std::string>& command_names();

}  // namespace cgmldp::cli
