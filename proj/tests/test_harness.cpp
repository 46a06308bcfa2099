#include <catch2/catch_amalgamated.hpp>

#include <boost/math/special_functions/beta.hpp>
#include <cmath>

#include "bmanova/harness.hpp"

using namespace bmanova;

TEST_CASE("ecdf_eval step values") {
    Ecdf e({1.0, 2.0, 3.0});
    CHECK(ecdf_eval(e, 0.5) == 0.0);
    CHECK(ecdf_eval(e, 2.0) == Catch::Approx(2.0 / 3.0));
    CHECK(ecdf_eval(e, 3.0) == 1.0);
    CHECK(ecdf_eval(e, 99.0) == 1.0);
}

TEST_CASE("ks_one_sample hand-checked values") {
    {
        // cdf equal to the ecdf of its own samples: step-gap floor 1/N
        Ecdf e({0.1, 0.2, 0.3, 0.4});
        const double d = ks_one_sample(e, [&](double x) { return ecdf_eval(e, x); });
        CHECK(d == Catch::Approx(0.25));
    }
    {
        Ecdf e({0.25, 0.5, 0.75});
        const double d = ks_one_sample(e, [](double x) { return x; });
        CHECK(d == Catch::Approx(0.25));
    }
    {
        // uniform draws vs identity cdf at N = 1e5
        const std::size_t N = 100000;
        RngStream rng(3, 0);
        std::vector<double> u(N);
        for (auto& x : u) x = rng.uniform();
        Ecdf e(std::move(u));
        CHECK(ks_one_sample(e, [](double x) { return x; }) < 1.63 / std::sqrt(static_cast<double>(N)));
    }
}

TEST_CASE("ks critical values") {
    CHECK(ks_critical_one_sample(0.01, 10000) == Catch::Approx(0.0163).margin(5e-5));
    CHECK_THROWS_AS(ks_critical_one_sample(0.01, 100), std::invalid_argument);
}

TEST_CASE("dense_real_manova_gsv support and n=1 law") {
    RngStream rng(41, 0);
    std::size_t redraws = 0;
    for (int rep = 0; rep < 50; ++rep) {
        const auto c = dense_real_manova_gsv(7, 4, 5, {1.0, 2.0, 2.5, 2.7}, rng, &redraws);
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(c[i] > 0.0);
            CHECK(c[i] < 1.0);
            if (i > 0) CHECK(c[i] <= c[i - 1]);
        }
    }
    CHECK(redraws == 0);

    const int m = 6, p = 4;
    const std::size_t N = 100000;
    std::vector<double> u(N);
    for (auto& x : u) {
        const auto c = dense_real_manova_gsv(m, 1, p, {1.0}, rng);
        x = c[0] * c[0];
    }
    Ecdf e(std::move(u));
    const double d =
        ks_one_sample(e, [&](double x) { return boost::math::ibeta(0.5 * p, 0.5 * m, x); });
    CHECK(d < ks_critical_one_sample(0.01, N));
}

TEST_CASE("verify_figure is deterministic and detects a wrong parameter") {
    ManovaParams params(5, 2, 3, BetaParam(2.0), {1.0, 1.5});
    std::vector<double> grid;
    for (int i = 1; i < 50; ++i) grid.push_back(i / 50.0);

    const auto a = verify_figure(params, 2000, grid, 0.01, 12345);
    const auto b = verify_figure(params, 2000, grid, 0.01, 12345);
    CHECK(a.report.ks_stat == b.report.ks_stat);
    CHECK(a.report.config_digest == b.report.config_digest);
    CHECK(a.report.passed);
    for (std::size_t i = 0; i < a.curve.size(); ++i) {
        CHECK(a.curve[i].empirical == b.curve[i].empirical);
        CHECK(a.curve[i].analytic == b.curve[i].analytic);
    }

    // power check: analytic CDF with p off by one must fail at N = 1e4
    ManovaParams wrong(5, 2, 4, BetaParam(2.0), {1.0, 1.5});
    LargestGsvCdf wrong_cdf(wrong);
    Ecdf e(sample_largest_gsv(params, 10000, 12345));
    const double d = ks_one_sample(e, [&](double x) { return wrong_cdf(x); });
    CHECK(d > ks_critical_one_sample(0.01, 10000));
}

TEST_CASE("kaneko_mc_check") {
    RngStream rng(61, 0);
    {
        // kappa = (), n = 1: the scalar Beta integral B(a+1, b+1)
        const auto r = kaneko_mc_check(Partition{}, 0.5, 1.5, BetaParam(2.0), 1, 200000, rng);
        CHECK(r.closed_form == Catch::Approx(std::exp(std::lgamma(1.5) + std::lgamma(2.5) -
                                                      std::lgamma(4.0))).epsilon(1e-12));
        CHECK(std::abs(r.mc_estimate - r.closed_form) < 3.0 * r.mc_stderr);
    }
    {
        const auto r = kaneko_mc_check(Partition{1}, 0.0, 0.0, BetaParam(1.0), 2, 1000000, rng);
        CHECK(r.closed_form == Catch::Approx(1.0 / 3.0).epsilon(1e-12));
        CHECK(std::abs(r.mc_estimate - r.closed_form) < 3.0 * r.mc_stderr);
    }
    {
        const auto r = kaneko_mc_check(Partition{2, 1}, 0.3, 0.7, BetaParam(2.5), 2, 100000, rng);
        CHECK(r.closed_form > 0.0);
        CHECK(std::isfinite(r.closed_form));
        CHECK(std::abs(r.mc_estimate - r.closed_form) < 3.0 * r.mc_stderr);
    }
}
