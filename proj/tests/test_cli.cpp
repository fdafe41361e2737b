#include "doctest_main.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "zetadist/asymptotic_series.hpp"
#include "zetadist/commands.hpp"
#include "zetadist/config.hpp"
#include "zetadist/error.hpp"
#include "zetadist/format.hpp"
#include "zetadist/moments.hpp"
#include "zetadist/primes.hpp"

using namespace zetadist;

namespace {

using Table = std::vector<std::vector<std::string>>;

// Rows of the tab-separated body (header row first), comment lines dropped.
Table body(const std::string& text) {
    Table rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream row(line);
        std::string cell;
        while (std::getline(row, cell, '\t')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

RunConfig small_config() {
    RunConfig c;
    c.sigma = 0.75;
    c.T = 1e3;
    c.count = 2000;
    c.y = 10;
    c.k_list = {0, 2, 4};
    c.tau_grid = {-1, 0, 0.5, 1, 1.5, 2, 3};
    c.N = 1;
    return c;
}

}  // namespace

TEST_CASE("config parsing") {
    const auto c = parse_config_text(
        "# a comment\n\nsigma = 0.6\nT=1e4\ncount=500\ny=inf\nk_list=1, 2.5,4\ntau_grid=\nN=3\nseed=18446744073709551615\n"
        "random_offset=true\n");
    CHECK(c.sigma == 0.6);
    CHECK(c.T == 1e4);
    CHECK(c.count == 500);
    CHECK(std::isinf(c.y));
    CHECK(c.k_list == std::vector<double>{1, 2.5, 4});
    CHECK(c.tau_grid.empty());
    CHECK(c.N == 3);
    CHECK(c.seed == 18446744073709551615ull);
    CHECK(c.random_offset);

    CHECK_THROWS_AS(parse_config_text("sigma=0.7\nsgima=0.7\n"), DomainError);
    CHECK_THROWS_AS(parse_config_text("sigma=0.7\nsigma=0.8\n"), DomainError);
    CHECK_THROWS_AS(parse_config_text("sigma\n"), DomainError);
    CHECK_THROWS_AS(parse_config_text("count=1.5\n"), DomainError);
    CHECK_THROWS_AS(parse_config_text("seed=-3\n"), DomainError);
    CHECK_THROWS_AS(parse_config_text("k_list=1,,2\n"), DomainError);
    try {
        parse_config_text("T=abc\n");
        FAIL("expected an error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("'T'") != std::string::npos);
    }
}

TEST_CASE("config round trip") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        RunConfig c;
        c.sigma = 0.5 + 0.5 * u(rng);
        c.T = 1e3 * (1 + u(rng));
        c.count = static_cast<std::int64_t>(rng() % 100000);
        c.y = trial % 7 == 0 ? kFullZeta : 1e4 * u(rng);
        c.k_list.assign(rng() % 4, 0.0);
        for (double& k : c.k_list) k = 10 * u(rng);
        c.tau_grid.assign(rng() % 3, 0.0);
        for (double& t : c.tau_grid) t = -1 + 5 * u(rng);
        c.N = static_cast<int>(rng() % 9);
        c.seed = rng();
        c.random_offset = trial % 2;
        c.offset = u(rng);
        c.tol = 1e-12 * (1 + u(rng));
        c.output_path = "out_" + std::to_string(trial) + ".tsv";
        std::ostringstream out;
        write_config(out, c);
        CHECK(parse_config_text(out.str()) == c);
    }
}

TEST_CASE("primes command") {
    RunConfig c = small_config();
    std::ostringstream out;
    cmd_primes(c, out);
    const auto rows = body(out.str());
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"x", "sum", "main_term", "gap"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = parse_double(rows[i][0]);
        double direct = 0;
        for (std::uint64_t n = 2; n <= x; ++n)
            if (is_prime(n)) direct += std::pow(static_cast<double>(n), -0.75);
        CHECK(parse_double(rows[i][1]) == doctest::Approx(direct).epsilon(1e-13));
        const double main = std::pow(x, 0.25) / (0.25 * std::log(x));
        CHECK(parse_double(rows[i][2]) == doctest::Approx(main).epsilon(1e-15));
    }
    CHECK(out.str().rfind("# format_version=1\n# command=primes\n# config.sigma=0.75\n", 0) == 0);
    CHECK(out.str().find('\r') == std::string::npos);

    c.x_grid.clear();
    std::ostringstream empty;
    cmd_primes(c, empty);
    CHECK(body(empty.str()).size() == 1);

    c.sigma = 1.2;
    std::ostringstream err;
    CHECK(run_command("primes", c, {"-", 1}, err) == 2);
    CHECK(err.str().find("sigma must lie in (1/2, 1)") != std::string::npos);
}

TEST_CASE("constants command") {
    RunConfig c = small_config();
    c.N = 3;
    std::ostringstream a, b;
    cmd_constants(c, a);
    cmd_constants(c, b);
    CHECK(a.str() == b.str());
    const auto rows = body(a.str());
    REQUIRE(rows.size() == 5);
    c.tol /= 2;
    std::ostringstream halved;
    cmd_constants(c, halved);
    CHECK(std::fabs(parse_double(body(halved.str())[1][1]) - parse_double(rows[1][1])) <= 1e-8);
    c.N = 9;
    CHECK_THROWS_AS(cmd_constants(c, a), DomainError);
}

TEST_CASE("moments command") {
    RunConfig c = small_config();
    c.T = 1e4;
    c.count = 10'000;
    std::ostringstream out;
    cmd_moments(c, out, 2);
    const auto rows = body(out.str());
    REQUIRE(rows.size() == 1 + 3 * 3);
    CHECK(rows[0] == std::vector<std::string>{"method", "sigma", "k", "y", "T", "value_log", "value", "resolution", "range_ok"});
    CHECK(rows[1][0] == "empirical");
    CHECK(rows[1][6] == "1");
    CHECK(rows[3][0] == "asymptotic");
    CHECK(rows[3][5] == "undefined");
    CHECK(rows[5][0] == "diagonal");
    CHECK(parse_double(rows[5][6]) == doctest::Approx(2.223806).epsilon(1e-6));
    CHECK(parse_double(rows[4][6]) == doctest::Approx(2.223806).epsilon(0.02));
    CHECK(rows[9][0] == "asymptotic");
    CHECK(rows[9][7] == "N=1");
    CHECK(rows[9][8] == "false");  // 4 * 10^{1/4} > log(10^4) / 32

    std::ostringstream single;
    cmd_moments(c, single, 1);
    CHECK(single.str() == out.str());

    c.k_list = {-1};
    CHECK_THROWS_AS(cmd_moments(c, out, 1), DomainError);
}

TEST_CASE("dist command") {
    RunConfig c = small_config();
    c.k_list = {0.5, 1, 2, 5};
    std::ostringstream out, laplace;
    cmd_dist(c, out, laplace, 1);
    const auto rows = body(out.str());
    REQUIRE(rows.size() == 1 + c.tau_grid.size());
    CHECK(rows[0] == std::vector<std::string>{"tau", "phi_emp", "neglog_phi_emp", "neglog_phi_pred", "ratio"});
    double previous = 1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double phi = parse_double(rows[i][1]);
        CHECK(phi <= previous);
        previous = phi;
    }
    CHECK(rows.back()[2] == "below resolution");

    const auto lap = body(laplace.str());
    REQUIRE(lap.size() == 1 + c.k_list.size());
    for (std::size_t i = 1; i < lap.size(); ++i) CHECK(parse_double(lap[i][3]) <= 1e-12);
    CHECK(laplace.str().find("# command=dist.laplace\n") != std::string::npos);
}

TEST_CASE("dist command details") {
    RunConfig c = small_config();
    c.k_list = {0, 2};
    std::ostringstream out, laplace;
    CHECK_THROWS_AS(cmd_dist(c, out, laplace, 1), DomainError);

    c.k_list = {1, 3};
    c.tau_grid.clear();
    c.random_offset = true;
    c.seed = 99;
    std::ostringstream a, la, b, lb;
    cmd_dist(c, a, la, 1);
    cmd_dist(c, b, lb, 3);
    CHECK(body(a.str()).size() == 1);
    CHECK(a.str() == b.str());
    CHECK(la.str() == lb.str());

    c.y = kFullZeta;
    c.T = 100;
    c.count = 50;
    std::ostringstream full, lfull;
    cmd_dist(c, full, lfull, 1);
    CHECK(full.str().find("# config.y=inf\n") != std::string::npos);
}

TEST_CASE("series command") {
    RunConfig c = small_config();
    c.N = 2;
    std::ostringstream out;
    cmd_series(c, out);
    const std::string s = out.str();
    const auto frak = s.find("# series=frak_a\n");
    REQUIRE(frak != std::string::npos);
    REQUIRE(s.find("# series=a\n") != std::string::npos);
    REQUIRE(s.find("# series=b\n0: 3\n") != std::string::npos);
    std::istringstream in(s.substr(frak));
    const auto polys = read_polynomials(in);
    REQUIRE(polys.size() == 3);
    const double c0 = constant_cn(0.75, 0, 1e-11).c_n;
    CHECK(polys[0].coeff(0) == doctest::Approx(frak_a0_closed_form(0.75, c0)).epsilon(1e-8));
    c.N = 5;
    CHECK_THROWS_AS(cmd_series(c, out), DomainError);
}

TEST_CASE("run_command error handling") {
    std::ostringstream err;
    CHECK(run_command("bogus", small_config(), {"-", 1}, err) == 2);
    CHECK(run_command("primes", small_config(), {"/nonexistent/dir/out.tsv", 1}, err) == 3);
}
