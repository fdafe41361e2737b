#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zetadist {

/// Flat key=value run configuration. Unknown or repeated keys are errors.
struct RunConfig {
    double sigma = 0.75;
    double T = 1e5;
    std::int64_t count = 100'000;
    double y = 10;  // "inf" selects the full zeta function where allowed
    std::vector<double> k_list{0, 1, 2, 4};
    std::vector<double> tau_grid;
    int N = 2;
    std::uint64_t seed = 0;
    bool random_offset = false;  // draw the grid offset from seed
    double offset = 0;           // used when random_offset is false
    std::vector<double> x_grid{1e3, 1e4, 1e5};
    double tol = 1e-11;           // C_n tolerance relative to cn_scale
    double factor_tol = 1e-15;    // local factor truncation
    std::string output_path;      // empty: standard output
    std::string samples_path;     // optional dump of the sampled log-moduli

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// DomainError naming the key for malformed lines, unknown or repeated keys
/// and unparsable values. Blank lines and lines starting with '#' are skipped.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

/// One "key=value" line per field, reals with 17 significant digits, so
/// that parse_config(write_config(c)) == c.
void write_config(std::ostream& out, const RunConfig& config, const std::string& prefix = "");

}  // namespace zetadist
