#pragma once

#include <iosfwd>
#include <string>

#include "zetadist/config.hpp"
#include "zetadist/euler_product.hpp"

namespace zetadist {

inline constexpr int kFormatVersion = 1;

/// Validates the fields a command reads; DomainError names the violated
/// precondition. Commands: primes, constants, moments, dist, series.
void validate_config(const RunConfig& config, const std::string& command);

/// "# format_version=1", "# command=<name>", then "# config.<key>=<value>" lines.
void write_output_header(std::ostream& out, const std::string& command, const RunConfig& config);

/// Grid from T, count and either offset or (random_offset) the seed.
GridSpec config_grid(const RunConfig& config);

// Each command validates, writes its header and table, and throws on error.
void cmd_primes(const RunConfig& config, std::ostream& out);
void cmd_constants(const RunConfig& config, std::ostream& out);
void cmd_moments(const RunConfig& config, std::ostream& out, unsigned threads);
/// Tail comparison to `out`, Laplace identity residuals to `laplace_out`.
void cmd_dist(const RunConfig& config, std::ostream& out, std::ostream& laplace_out, unsigned threads);
void cmd_series(const RunConfig& config, std::ostream& out);

struct CommandOptions {
    std::string out_path;  // overrides config.output_path; "-" or empty: stdout
    unsigned threads = 1;
};

/// Runs a command with file handling. Returns 0 on success, 2 on a domain
/// or configuration error, 3 on numeric or resource failure; messages go
/// to `err`.
int run_command(const std::string& command, RunConfig config, const CommandOptions& options, std::ostream& err);

}  // namespace zetadist
