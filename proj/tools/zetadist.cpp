// Command-line front end: one subcommand per experiment plus `verify`.

#include <CLI11.hpp>

#include <iostream>

#include "zetadist/acceptance.hpp"
#include "zetadist/commands.hpp"
#include "zetadist/config.hpp"
#include "zetadist/error.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Value distribution of short Euler products: moments, tails and their asymptotic expansions"};
    app.require_subcommand(1);

    std::string config_path, out_path;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::vector<int> only;
    int tamper = 0;

    const char* names[] = {"primes", "constants", "moments", "dist", "series"};
    const char* help[] = {"prime sums sum_{p<=x} p^-sigma against their main term",
                          "the constants C_n for n <= N",
                          "empirical, diagonal and asymptotic moments for each k in k_list",
                          "tail distribution against its prediction, plus Laplace identity residuals",
                          "a_n, b_n and frak_a_n coefficient polynomials"};
    for (int i = 0; i < 5; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], help[i]);
        sub->add_option("--config", config_path, "key=value config file")->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "output path ('-' for stdout)");
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "seed for the grid offset (overrides the config)")
            ->each([&](const std::string&) { seed_given = true; });
    }
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance suite; exit code is the number of failures");
    verify->add_option("--threads", threads, "worker threads (default: all cores)");
    verify->add_option("--only", only, "criterion numbers to run")->check(CLI::Range(1, zetadist::kCriterionCount));
    verify->add_option("--tamper", tamper, "perturb one criterion's reference constant")
        ->check(CLI::Range(1, zetadist::kCriterionCount));
    bool verify_threads_given = false;
    verify->get_option("--threads")->each([&](const std::string&) { verify_threads_given = true; });

    CLI11_PARSE(app, argc, argv);

    if (verify->parsed()) {
        zetadist::AcceptanceOptions options;
        options.threads = verify_threads_given ? threads : 0;
        options.only = only;
        options.tamper = tamper;
        const auto results = zetadist::run_acceptance(options, std::cout);
        int failures = 0;
        for (const auto& r : results) failures += !r.pass;
        std::cout << results.size() - failures << "/" << results.size() << " criteria passed\n";
        return failures;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    zetadist::RunConfig config;
    try {
        if (!config_path.empty()) config = zetadist::load_config(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    if (seed_given) config.seed = seed;
    return zetadist::run_command(command, config, {out_path, threads}, std::cerr);
}
