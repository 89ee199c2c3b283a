#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "cdfmr/analytic_engine.hpp"
#include "cdfmr/quadrature.hpp"
#include "cdfmr/special_functions.hpp"

using namespace cdfmr;

namespace {

// Random budget with hop SNRs log-uniform in [lo, hi].
LinkBudget random_budget(std::mt19937_64& rng, int n_clusters, double lo = 0.1,
                         double hi = 1e4)
{
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    std::vector<double> hops;
    for (int i = 0; i <= n_clusters; ++i)
        hops.push_back(std::exp(u(rng)));
    return LinkBudget(std::move(hops), std::exp(u(rng)));
}

ClusterTopology random_topology(std::mt19937_64& rng, int max_total = 20)
{
    std::uniform_int_distribution<int> nd(1, 4);
    const int n = nd(rng);
    std::vector<int> sizes;
    int budget = max_total;
    for (int i = 0; i < n; ++i) {
        const int remaining_clusters = n - i - 1;
        const int max_here = std::max(1, budget - remaining_clusters);
        std::uniform_int_distribution<int> ld(1, std::min(6, max_here));
        const int l = ld(rng);
        sizes.push_back(l);
        budget -= l;
    }
    return ClusterTopology(sizes);
}

} // namespace

TEST_CASE("outage threshold")
{
    CHECK(OutageThreshold(0.0).snr_threshold(2) == 0.0);
    CHECK(OutageThreshold(0.5).snr_threshold(1) == doctest::Approx(1.0).epsilon(1e-14));
    // expm1 path keeps precision for tiny thresholds
    const double a = OutageThreshold(1e-12).snr_threshold(1);
    CHECK(a == doctest::Approx(2e-12 * M_LN2).epsilon(1e-9));
    CHECK_THROWS_AS(OutageThreshold(-0.1), std::invalid_argument);
}

TEST_CASE("multi-index enumeration")
{
    const ClusterTopology topo({2, 1});
    const LinkBudget budget({4, 6, 3}, 1.0);
    const auto terms = enumerate_terms(topo, budget);
    REQUIRE(terms.size() == 2);
    // G^t = [4, 2]; terms (j1,j2) = (1,1) weight (+1)*2, (2,1) weight -1
    CHECK(terms[0].weight == 2.0);
    CHECK(terms[0].k_factor == doctest::Approx(1.0 / 4 + 1.0 / 2).epsilon(1e-14));
    CHECK(terms[1].weight == -1.0);
    CHECK(terms[1].k_factor == doctest::Approx(2.0 / 4 + 1.0 / 2).epsilon(1e-14));

    // window guard
    CHECK_THROWS_AS(enumerate_terms(ClusterTopology({16, 16}),
                                    LinkBudget({1, 1, 1}, 1.0)),
                    std::domain_error);
}

TEST_CASE("cdf_product basics")
{
    const ClusterTopology topo({1});
    const LinkBudget budget({10, 10}, 1.0);
    CHECK(cdf_product(0.0, topo, budget) == 0.0);
    CHECK(cdf_product(5.0, topo, budget) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-13));
    CHECK(cdf_product(1e9 * 10.0, topo, budget) > 1.0 - 1e-12);
    CHECK_THROWS_AS(cdf_product(-1.0, topo, budget), std::domain_error);
}

TEST_CASE("cdf_product monotone in [0,1]")
{
    const ClusterTopology topo({3, 2, 2});
    const LinkBudget budget = unbalanced_budget(3, 4.0, 2.0);
    double prev = 0.0;
    for (double x = 0.0; x < 2e4; x += 37.0) {
        const double f = cdf_product(x, topo, budget);
        CHECK(f >= prev);
        CHECK(f <= 1.0);
        prev = f;
    }
}

TEST_CASE("cdf_expanded matches cdf_product")
{
    const ClusterTopology single({1});
    const LinkBudget b1({10, 10}, 1.0);
    CHECK(cdf_expanded(0.0, single, b1) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(cdf_expanded(3.0, single, b1) ==
          doctest::Approx(1.0 - std::exp(-3.0 / 5.0)).epsilon(1e-13));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        const auto topo = random_topology(rng);
        const auto budget = random_budget(rng, topo.n_clusters());
        const auto eff = effective_gammas(topo, budget);
        const double scale = *std::max_element(eff.begin(), eff.end());
        const double x = ux(rng) * 5.0 * scale;
        CHECK(std::abs(cdf_expanded(x, topo, budget) - cdf_product(x, topo, budget)) <
              1e-9);
    }
}

TEST_CASE("pdf examples")
{
    const ClusterTopology topo({1});
    const LinkBudget budget({10, 10}, 1.0);
    CHECK(pdf(0.0, topo, budget) == doctest::Approx(0.2).epsilon(1e-13));
    CHECK(pdf(5.0, topo, budget) == doctest::Approx(0.2 * std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("pdf integrates to one")
{
    const ClusterTopology topo({3, 2});
    const LinkBudget budget = unbalanced_budget(2, 4.0, 1.0);
    QuadratureSpec spec;
    spec.abs_tol = 1e-9;
    const double mass = integrate_adaptive(
        [&](double x) { return pdf(x, topo, budget); }, 0.0, 2e5, spec);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("pdf matches central difference of cdf_product")
{
    const ClusterTopology topo({2, 2});
    const LinkBudget budget({20, 15, 8}, 1.0);
    for (double x : {0.5, 2.0, 5.0, 12.0, 30.0}) {
        const double h = 1e-4 * x;
        const double fd =
            (cdf_product(x + h, topo, budget) - cdf_product(x - h, topo, budget)) /
            (2.0 * h);
        CHECK(pdf(x, topo, budget) == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("ergodic capacity closed form")
{
    const ClusterTopology topo({1});
    const LinkBudget budget({10, 10}, 1.0);
    // (1/(2 ln 2)) * e^{0.2} E1(0.2)
    CHECK(ergodic_capacity(topo, budget) ==
          doctest::Approx(1.07722341575844).epsilon(1e-10));
    CHECK(ergodic_capacity(topo, budget) ==
          doctest::Approx(exp_e1(0.2) / (2.0 * M_LN2)).epsilon(1e-13));

    // capacity vanishes with the signal
    double prev = ergodic_capacity(topo, balanced_budget(1, 4.0, 1.0));
    for (double gd : {0.3, 0.1, 0.03, 0.01, 1e-3, 1e-4}) {
        const double c = ergodic_capacity(topo, balanced_budget(1, 4.0, gd));
        CHECK(c < prev);
        CHECK(c >= 0.0);
        prev = c;
    }
    CHECK(prev < 2e-3);
}

TEST_CASE("outage probability")
{
    const ClusterTopology topo({1});
    const LinkBudget budget({10, 10}, 1.0);
    CHECK(outage_probability(topo, budget, OutageThreshold(0.0)) == 0.0);
    CHECK(outage_probability(topo, budget, OutageThreshold(0.5)) ==
          doctest::Approx(1.0 - std::exp(-0.2)).epsilon(1e-12));

    // strictly decreasing in gamma_d
    const ClusterTopology t32({3, 2});
    double prev = 1.0;
    for (double gdb = 0.0; gdb <= 30.0; gdb += 2.0) {
        const double p = outage_probability(
            t32, unbalanced_budget(2, 4.0, std::pow(10.0, gdb / 10.0)),
            OutageThreshold(0.3));
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("outage agrees with expanded form")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const auto topo = random_topology(rng);
        const auto budget = random_budget(rng, topo.n_clusters());
        const OutageThreshold th(0.3);
        const double a = th.snr_threshold(topo.n_clusters());
        CHECK(std::abs(outage_probability(topo, budget, th) -
                       cdf_expanded(a, topo, budget)) < 1e-9);
    }
}

TEST_CASE("ser closed form")
{
    const ClusterTopology topo({1});
    const LinkBudget budget({10, 10}, 1.0);
    const auto bpsk = modulation_from_name("BPSK");
    CHECK(ser(topo, budget, bpsk) ==
          doctest::Approx(0.0435645354123616).epsilon(1e-12));

    // monotone decreasing in beta
    double prev = 1.0;
    for (double beta : {0.1, 0.3, 1.0, 3.0, 10.0, 100.0}) {
        const double s = ser(topo, budget, {0.5, beta, true, "test"});
        CHECK(s < prev);
        prev = s;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("prob_snr_gain")
{
    const ClusterTopology topo({1});
    const LinkBudget budget({10, 10}, 1.0);
    CHECK(prob_snr_gain(topo, budget, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prob_snr_gain(topo, budget, 1.0) == doctest::Approx(1.0 / 1.2).epsilon(1e-12));
    CHECK(prob_snr_gain(topo, budget, 1e12) < 1e-9);

    // nonincreasing in mu
    const ClusterTopology t32({3, 2});
    const LinkBudget b32 = unbalanced_budget(2, 4.0, 1.0);
    double prev = 1.0;
    for (double mu = 0.0; mu <= 50.0; mu += 2.5) {
        const double w = prob_snr_gain(t32, b32, mu);
        CHECK(w <= prev + 1e-12);
        prev = w;
    }
}

TEST_CASE("asymptotic ser hand instantiation")
{
    // topology [2,1]: only the second cluster has minimum size 1
    const ClusterTopology topo({2, 1});
    const LinkBudget budget({40, 60, 30}, 1.0);
    const auto bpsk = modulation_from_name("BPSK");
    const double eff2 = 60.0 * 30.0 / 90.0;
    const double expected =
        0.5 / eff2 * gamma_half_integer(1) / (std::sqrt(M_PI) * 1.0);
    CHECK(asymptotic_ser(topo, budget, bpsk) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("asymptotic ser collapses in the symmetric cases")
{
    const auto bpsk = modulation_from_name("BPSK");
    // all clusters size L, all hop SNRs equal G: alpha (2^L + N - 1) G(L+1/2) / (sqrt(pi) (beta G)^L)
    for (int n : {2, 3, 5}) {
        for (int l : {1, 2, 3}) {
            const double g = 50.0;
            const ClusterTopology topo(std::vector<int>(n, l));
            const LinkBudget budget(std::vector<double>(n + 1, g), 1.0);
            const double expected = 0.5 * (std::pow(2.0, l) + n - 1) *
                                    gamma_half_integer(l) /
                                    (std::sqrt(M_PI) * std::pow(g, l));
            CHECK(asymptotic_ser(topo, budget, bpsk) ==
                  doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("asymptotic outage hand instantiation and symmetric collapse")
{
    const OutageThreshold th(0.3);
    // [3,2]: only i = 2 in the minimum set
    const ClusterTopology topo({3, 2});
    const LinkBudget budget({500, 300, 200}, 1.0);
    const double eff2 = 300.0 * 200.0 / 500.0;
    const double a = th.snr_threshold(2);
    CHECK(asymptotic_outage(topo, budget, th) ==
          doctest::Approx(a * a / (eff2 * eff2)).epsilon(1e-13));

    // symmetric N=2, L=2, all hops G: (G^-2 + (G/2)^-2) A^2 = 5 (A/G)^2
    const double g = 80.0;
    const ClusterTopology sym({2, 2});
    const LinkBudget symb({g, g, g}, 1.0);
    CHECK(asymptotic_outage(sym, symb, th) ==
          doctest::Approx(5.0 * a * a / (g * g)).epsilon(1e-13));
}

TEST_CASE("moment identity vanishes")
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 50; ++i) {
        const ClusterTopology t22({2, 2});
        const auto b22 = random_budget(rng, 2);
        CHECK(std::abs(moment_identity_residual(t22, b22, 1)) <=
              1e-9 * moment_identity_scale(t22, b22, 1));

        const ClusterTopology t333({3, 3, 3});
        const auto b333 = random_budget(rng, 3);
        for (int z : {1, 2})
            CHECK(std::abs(moment_identity_residual(t333, b333, z)) <=
                  1e-9 * moment_identity_scale(t333, b333, z));
    }
    CHECK_THROWS_AS(
        moment_identity_residual(ClusterTopology({2, 1}), LinkBudget({1, 1, 1}, 1), 1),
        std::out_of_range);
}

TEST_CASE("removing a relay never decreases outage")
{
    const OutageThreshold th(0.3);
    const std::vector<int> base{3, 2, 2};
    const LinkBudget budget = unbalanced_budget(3, 4.0, 3.0);
    const double p0 = outage_probability(ClusterTopology(base), budget, th);
    for (std::size_t i = 0; i < base.size(); ++i) {
        auto smaller = base;
        smaller[i] -= 1;
        const double p1 = outage_probability(ClusterTopology(smaller), budget, th);
        CHECK(p1 >= p0);
    }
}

TEST_CASE("asymptotics converge from 30 to 60 dB")
{
    const ClusterTopology topo({3, 2});
    const OutageThreshold th(0.3);
    const auto bpsk = modulation_from_name("BPSK");
    double prev_out = 1e9, prev_ser = 1e9;
    for (double gdb : {30.0, 40.0, 50.0, 60.0}) {
        const LinkBudget b = unbalanced_budget(2, 4.0, std::pow(10.0, gdb / 10.0));
        const double rout = asymptotic_outage(topo, b, th) / outage_probability(topo, b, th);
        const double rser = asymptotic_ser(topo, b, bpsk) / ser(topo, b, bpsk);
        CHECK(std::abs(rout - 1.0) < std::abs(prev_out - 1.0));
        CHECK(std::abs(rser - 1.0) < std::abs(prev_ser - 1.0));
        prev_out = rout;
        prev_ser = rser;
    }
    CHECK(prev_out == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(prev_ser == doctest::Approx(1.0).epsilon(1e-3));
}
