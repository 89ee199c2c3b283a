#include <doctest.h>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdfmr/scenario.hpp"
#include "cdfmr/sweep.hpp"

using namespace cdfmr;

namespace {

std::vector<std::string> split_lines(const std::string& s)
{
    std::vector<std::string> lines;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line))
        lines.push_back(line);
    return lines;
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ','))
        fields.push_back(f);
    // trailing empty field
    if (!line.empty() && line.back() == ',')
        fields.push_back("");
    return fields;
}

} // namespace

TEST_CASE("scenario parsing")
{
    const std::string text =
        "# benchmark topology\n"
        "clusters = 3,2\n"
        "budget_model = unbalanced\n"
        "delta = 4\n"
        "rate_threshold = 0.3\n"
        "modulation = BPSK\n"
        "gamma_d_sweep_db = 0,30,2\n"
        "samples = 1000\n"
        "seed = 9\n"
        "outputs = outage,ser\n";
    const Scenario s = parse_scenario(text);
    CHECK(s.clusters == std::vector<int>{3, 2});
    CHECK(s.budget_model == BudgetModel::unbalanced);
    CHECK(s.delta == 4.0);
    CHECK(s.samples == 1000);
    CHECK(s.seed == 9);
    CHECK(s.outputs == std::set<Metric>{Metric::outage, Metric::ser});
    CHECK(s.gamma_d_sweep_db.grid().size() == 16);
}

TEST_CASE("scenario parse errors")
{
    CHECK_THROWS_WITH_AS(parse_scenario("clusters = \n"),
                         doctest::Contains("empty value"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(parse_scenario("clusters = 2\nclustrs = 2\n"),
                         doctest::Contains("unknown key"), std::invalid_argument);
    {
        // duplicate key error carries both line numbers
        try {
            parse_scenario("clusters = 2\nseed = 1\nclusters = 3\n");
            FAIL("expected duplicate-key error");
        } catch (const std::invalid_argument& e) {
            const std::string msg = e.what();
            CHECK(msg.find("line 3") != std::string::npos);
            CHECK(msg.find("line 1") != std::string::npos);
            CHECK(msg.find("clusters") != std::string::npos);
        }
    }
    CHECK_THROWS_AS(parse_scenario("seed = 1\n"), std::invalid_argument); // no clusters
    CHECK_THROWS_WITH_AS(parse_scenario("clusters = 2\nbudget_model = explicit\n"),
                         doctest::Contains("explicit_gammas_db"), std::invalid_argument);
    CHECK_THROWS_AS(
        parse_scenario("clusters = 2\nexplicit_gammas_db = 10,5\n"),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario("clusters = 2\ngamma_d_sweep_db = 0,30\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario("clusters = 2\ngamma_d_sweep_db = 30,0,2\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario("clusters = 2\nmodulation = MQAM 1\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_scenario("clusters = 2.5\n"), std::invalid_argument);
}

TEST_CASE("scenario round-trips through serialization")
{
    Scenario s;
    s.clusters = {3, 2, 2};
    s.budget_model = BudgetModel::explicit_gammas;
    s.explicit_gammas_db = std::vector<double>{20.0, 15.5, 12.0, 9.25};
    s.delta = 3.5;
    s.gamma_d_sweep_db = {0.0, 10.0, 2.5};
    s.rate_threshold = 0.45;
    s.modulation_name = "MQAM";
    s.modulation_order = 16;
    s.mu_sweep = SweepRange{0.5, 8.0, 0.5};
    s.samples = 12345;
    s.seed = 77;
    s.outputs = {Metric::capacity, Metric::snr_gain};
    CHECK(parse_scenario(serialize_scenario(s)) == s);

    Scenario defaults;
    defaults.clusters = {2, 1};
    CHECK(parse_scenario(serialize_scenario(defaults)) == defaults);
}

TEST_CASE("explicit budget scales with gamma_d")
{
    Scenario s;
    s.clusters = {1};
    s.budget_model = BudgetModel::explicit_gammas;
    s.explicit_gammas_db = std::vector<double>{10.0, 10.0};
    const LinkBudget b = s.budget_at(2.0);
    CHECK(b.hop_avg_snr()[0] == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(b.hop_avg_snr()[1] == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(b.direct_avg_snr() == 2.0);
}

TEST_CASE("sweep CSV schema")
{
    Scenario s;
    s.clusters = {2, 1};
    s.gamma_d_sweep_db = {0.0, 4.0, 2.0};
    s.samples = 2000;
    s.seed = 1;
    const auto lines = split_lines(run_sweep(s, SweepMode::both));
    REQUIRE(lines.size() == 1 + 3 * 4);
    CHECK(lines[0] == "gamma_d_db,metric,analytic,asymptotic,mc_mean,mc_stderr");

    // fixed metric order within each grid point, ascending gamma_d
    const std::vector<std::string> order{"outage", "capacity", "ser", "snr_gain"};
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split_fields(lines[i]);
        REQUIRE(f.size() == 6);
        CHECK(f[1] == order[(i - 1) % 4]);
        // capacity and snr_gain carry no asymptotic form
        if (f[1] == "capacity" || f[1] == "snr_gain")
            CHECK(f[3].empty());
        else
            CHECK(!f[3].empty());
        CHECK(!f[4].empty());
    }

    // analytic-only mode leaves the MC columns empty
    for (std::size_t i = 1; i < 5; ++i) {
        const auto f = split_fields(split_lines(run_sweep(s, SweepMode::analytic_only))[i]);
        REQUIRE(f.size() == 6);
        CHECK(!f[2].empty());
        CHECK(f[4].empty());
        CHECK(f[5].empty());
    }

    // simulation-only mode leaves the analytic columns empty
    for (std::size_t i = 1; i < 5; ++i) {
        const auto f =
            split_fields(split_lines(run_sweep(s, SweepMode::simulation_only))[i]);
        REQUIRE(f.size() == 6);
        CHECK(f[2].empty());
        CHECK(f[3].empty());
        CHECK(!f[4].empty());
    }
}

TEST_CASE("sweep output deterministic across workers")
{
    Scenario s;
    s.clusters = {2, 1};
    s.gamma_d_sweep_db = {0.0, 6.0, 3.0};
    s.samples = 20000;
    s.seed = 42;
    CHECK(run_sweep(s, SweepMode::both, 1) == run_sweep(s, SweepMode::both, 4));
}

TEST_CASE("reproduce figure file sets")
{
    const auto files = reproduce_figure("outage", 2000, 1);
    REQUIRE(files.size() == 7); // six topologies + summary
    CHECK(files[0].filename == "outage_2-1.csv");
    CHECK(files.back().filename == "outage_summary.csv");
    CHECK(split_lines(files[0].content)[0] ==
          "gamma_d_db,metric,analytic,asymptotic,mc_mean,mc_stderr");
    CHECK(split_lines(files.back().content)[0] == "check,pass");

    const auto gain = reproduce_figure("snr_gain", 1000, 1);
    REQUIRE(gain.size() == 13); // six topologies x two placements + summary
    CHECK(gain[0].filename == "snr_gain_2-1_balanced.csv");
    CHECK(gain[1].filename == "snr_gain_2-1_unbalanced.csv");

    CHECK_THROWS_AS(reproduce_figure("nope", 10, 1), std::invalid_argument);
}
