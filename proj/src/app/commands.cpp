#include "zetadist/commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>

#include "zetadist/asymptotic_series.hpp"
#include "zetadist/distribution.hpp"
#include "zetadist/error.hpp"
#include "zetadist/format.hpp"
#include "zetadist/moments.hpp"
#include "zetadist/primes.hpp"

namespace zetadist {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

void check_sigma(const RunConfig& c) { require(c.sigma > 0.5 && c.sigma < 1.0, "sigma must lie in (1/2, 1)"); }

void check_grid(const RunConfig& c) {
    require(c.T >= 3 && std::isfinite(c.T), "T must be finite and >= 3");
    require(c.count >= 2, "count must be >= 2");
    require(c.random_offset || (c.offset >= 0 && c.offset < 1), "offset must lie in [0, 1)");
}

}  // namespace

void validate_config(const RunConfig& c, const std::string& command) {
    check_sigma(c);
    if (command == "primes") {
        for (double x : c.x_grid) require(x >= 2 && x <= kMaxSieveLimit, "x_grid entries must lie in [2, 1e9]");
    } else if (command == "constants") {
        require(c.N >= 0 && c.N <= kMaxCnIndex, "N must lie in [0, 8] for constants");
        require(c.tol > 0, "tol must be positive");
    } else if (command == "moments") {
        check_grid(c);
        require(std::isfinite(c.y) && c.y >= 0 && c.y <= kMaxSieveLimit, "y must be finite and lie in [0, 1e9] for moments");
        for (double k : c.k_list) require(k >= 0 && std::isfinite(k), "k_list entries must be finite and >= 0");
        require(c.N >= 0 && c.N <= kMaxCnIndex, "N must lie in [0, 8] for moments");
        require(c.tol > 0 && c.factor_tol > 0, "tol and factor_tol must be positive");
    } else if (command == "dist") {
        check_grid(c);
        require(c.y >= 0 && (std::isinf(c.y) || c.y <= kMaxSieveLimit), "y must lie in [0, 1e9] or be inf");
        require(!std::isinf(c.y) || 2 * c.T <= kZetaMaxAbsT, "y=inf needs 2T <= 1e6");
        for (double k : c.k_list) require(k > 0 && std::isfinite(k), "k_list entries must be positive for dist");
        for (double tau : c.tau_grid) require(std::isfinite(tau), "tau_grid entries must be finite");
        require(c.N >= 0 && c.N <= kMaxSeriesOrder, "N must lie in [0, 4] for dist");
        require(c.tol > 0, "tol must be positive");
    } else if (command == "series") {
        require(c.N >= 0 && c.N <= kMaxSeriesOrder, "N must lie in [0, 4] for series");
        require(c.tol > 0, "tol must be positive");
    } else {
        throw DomainError("unknown command '" + command + "'");
    }
}

void write_output_header(std::ostream& out, const std::string& command, const RunConfig& config) {
    out << "# format_version=" << kFormatVersion << '\n' << "# command=" << command << '\n';
    write_config(out, config, "# config.");
}

GridSpec config_grid(const RunConfig& c) {
    if (c.random_offset) return GridSpec::randomized(c.T, c.count, c.seed);
    return GridSpec{c.T, c.count, c.offset, c.seed};
}

void cmd_primes(const RunConfig& config, std::ostream& out) {
    validate_config(config, "primes");
    double top = 2;
    for (double x : config.x_grid) top = std::max(top, x);
    const PrimeTable table = sieve_primes(static_cast<std::uint64_t>(top));
    write_output_header(out, "primes", config);
    out << "x\tsum\tmain_term\tgap\n";
    for (double x : config.x_grid) {
        const PrimeSum s = prime_sum_sigma(table, x, config.sigma);
        out << fmt17(x) << '\t' << fmt17(s.sum) << '\t' << fmt17(s.main_term) << '\t' << fmt17(s.sum - s.main_term) << '\n';
    }
}

void cmd_constants(const RunConfig& config, std::ostream& out) {
    validate_config(config, "constants");
    const ConstantsTable table = build_constants_table(config.sigma, config.N, config.tol);
    write_output_header(out, "constants", config);
    write_constants(out, table);
}

void cmd_moments(const RunConfig& config, std::ostream& out, unsigned threads) {
    validate_config(config, "moments");
    const PrimeTable table = sieve_primes(static_cast<std::uint64_t>(std::max(2.0, config.y)));
    const auto samples = sample_log_moduli(config.sigma, config.y, config_grid(config), table, threads);
    if (!config.samples_path.empty()) {
        std::ofstream s(config.samples_path, std::ios::binary);
        write_samples(s, samples);
    }
    const ConstantsTable constants = build_constants_table(config.sigma, config.N, config.tol);

    write_output_header(out, "moments", config);
    out << "method\tsigma\tk\ty\tT\tvalue_log\tvalue\tresolution\trange_ok\n";
    auto row = [&](MomentMethod method, double k, std::optional<double> value_log, const std::string& resolution) {
        out << to_string(method) << '\t' << fmt17(config.sigma) << '\t' << fmt17(k) << '\t' << fmt17(config.y) << '\t'
            << fmt17(config.T) << '\t' << (value_log ? fmt17(*value_log) : "undefined") << '\t'
            << (value_log ? fmt17(std::exp(*value_log)) : "undefined") << '\t' << resolution << '\t'
            << (moment_range_ok(config.sigma, k, config.y, config.T) ? "true" : "false") << '\n';
    };
    for (double k : config.k_list) {
        const auto emp = empirical_moment(samples, k);
        row(MomentMethod::empirical, k, emp.value_log, "count=" + std::to_string(emp.resolution.grid_count));
        const auto diag = friable_diagonal_sum(config.sigma, config.y, k, table, config.factor_tol, threads);
        row(MomentMethod::diagonal, k, diag.value_log, "rel_tol=" + fmt17(config.factor_tol));
        std::optional<double> asym;
        if (k >= 3) asym = moment_asymptotic(config.sigma, k, config.y, config.N, constants).value_log;
        row(MomentMethod::asymptotic, k, asym, "N=" + std::to_string(config.N));
    }
}

void cmd_dist(const RunConfig& config, std::ostream& out, std::ostream& laplace_out, unsigned threads) {
    validate_config(config, "dist");
    const double sieve_to = std::isinf(config.y) ? 2.0 : std::max(2.0, config.y);
    const PrimeTable table = sieve_primes(static_cast<std::uint64_t>(sieve_to));
    const auto samples = sample_log_moduli(config.sigma, config.y, config_grid(config), table, threads);
    if (!config.samples_path.empty()) {
        std::ofstream s(config.samples_path, std::ios::binary);
        write_samples(s, samples);
    }
    const EmpiricalDistribution dist(samples);
    const ConstantsTable constants = build_constants_table(config.sigma, config.N + 1, config.tol);
    const auto frak_a = frak_a_polynomials(config.sigma, constants, config.N);

    write_output_header(out, "dist", config);
    write_tail_comparison(out, tail_comparison_report(dist, config.sigma, frak_a, config.tau_grid, config.N));

    write_output_header(laplace_out, "dist.laplace", config);
    laplace_out << "k\tlaplace_log_moment\tempirical_log_moment\trel_residual\n";
    for (double k : config.k_list) {
        const double from_tail = laplace_log_moment_from_tail(dist, k);
        const double direct = empirical_moment(samples, k).value_log;
        laplace_out << fmt17(k) << '\t' << fmt17(from_tail) << '\t' << fmt17(direct) << '\t'
                    << fmt17(std::fabs(std::expm1(from_tail - direct))) << '\n';
    }
}

void cmd_series(const RunConfig& config, std::ostream& out) {
    validate_config(config, "series");
    const ConstantsTable constants = build_constants_table(config.sigma, config.N + 1, config.tol);
    const auto a = an_sequence(constants, config.N + 1);
    const auto b = bn_expansion(config.sigma, a, config.N);
    const auto frak_a = frak_a_polynomials(config.sigma, constants, config.N);

    write_output_header(out, "series", config);
    out << "# series=a\n";
    std::vector<CoeffPolynomial> a_polys;
    for (double v : a) a_polys.push_back(CoeffPolynomial::constant(v));
    write_polynomials(out, a_polys);
    out << "# series=b\n";
    write_polynomials(out, b.terms());
    out << "# series=frak_a\n";
    write_polynomials(out, frak_a);
}

int run_command(const std::string& command, RunConfig config, const CommandOptions& options, std::ostream& err) {
    try {
        if (!options.out_path.empty()) config.output_path = options.out_path == "-" ? "" : options.out_path;
        const std::string path = config.output_path;
        std::ofstream file;
        if (!path.empty()) {
            file.open(path, std::ios::binary);
            if (!file) throw ResourceError("cannot open output file " + path);
        }
        std::ostream& out = path.empty() ? std::cout : file;
        const unsigned threads = std::max(1u, options.threads);
        if (command == "primes") {
            cmd_primes(config, out);
        } else if (command == "constants") {
            cmd_constants(config, out);
        } else if (command == "moments") {
            cmd_moments(config, out, threads);
        } else if (command == "dist") {
            if (path.empty()) {
                cmd_dist(config, out, out, threads);
            } else {
                std::ofstream laplace(path + ".laplace.tsv", std::ios::binary);
                if (!laplace) throw ResourceError("cannot open output file " + path + ".laplace.tsv");
                cmd_dist(config, out, laplace, threads);
            }
        } else if (command == "series") {
            cmd_series(config, out);
        } else {
            throw DomainError("unknown command '" + command + "'");
        }
        out.flush();
        if (!out) throw ResourceError("write to output failed");
        return 0;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace zetadist
