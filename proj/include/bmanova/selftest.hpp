#pragma once

// Fast identity suite behind the `selftest` CLI command: Jack sum rule, the
// 1F0 determinant form, the 2F1 factorization and Gauss-value identities, and
// the n=1 scalar sampling oracles.

#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <string>
#include <vector>

#include "bmanova/densities.hpp"
#include "bmanova/harness.hpp"
#include "bmanova/mhg.hpp"

namespace bmanova {

struct SelftestItem {
    std::string name;
    bool passed;
    double worst;  // worst observed deviation, for the report
};

inline std::vector<SelftestItem> run_selftest() {
    std::vector<SelftestItem> items;

    // Jack sum rule: sum_{kappa |- k} C_kappa(x) = (sum x_i)^k
    {
        double worst = 0.0;
        RngStream rng(20240817, 0);
        for (double b : {0.5, 1.0, 2.0, 2.5, 4.0}) {
            BetaParam beta(b);
            for (int n = 1; n <= 5; ++n) {
                DiagSpectrum x(static_cast<std::size_t>(n));
                for (auto& xi : x) xi = rng.uniform();
                double tr = 0.0;
                for (double xi : x) tr += xi;
                JackBasis basis(beta, n, 6);
                const auto C = basis.eval_C(x);
                for (int k = 1; k <= 6; ++k) {
                    auto [lo, hi] = basis.weight_range(k);
                    double s = 0.0;
                    for (int i = lo; i < hi; ++i) s += C[static_cast<std::size_t>(i)];
                    worst = std::max(worst, std::abs(s - std::pow(tr, k)) / std::pow(tr, k));
                }
            }
        }
        items.push_back({"jack sum rule", worst <= 1e-10, worst});
    }

    // 1F0 series vs determinant closed form
    {
        double worst = 0.0;
        RngStream rng(20240817, 1);
        // The draw radius shrinks with the exponent: near radius 0.7 the
        // a = 7.5 series needs weight > 120 with heavy cancellation, beyond
        // double precision. All radii stay within the convergence domain.
        const SeriesControl ctl(48, 1e-13);
        for (double b : {1.0, 2.0, 2.5}) {
            BetaParam beta(b);
            for (int n = 1; n <= 4; ++n) {
                JackBasis basis(beta, n, ctl.max_weight);
                for (double a : {0.5, 2.0, 7.5}) {
                    const double radius = a <= 0.5 ? 0.6 : (a <= 2.0 ? 0.5 : 0.4);
                    DiagSpectrum x(static_cast<std::size_t>(n));
                    for (auto& xi : x) xi = radius * (2.0 * rng.uniform() - 1.0);
                    const double series = hyper_pq({a}, {}, basis, x, std::nullopt, ctl).value;
                    const double closed = f10_closed(a, x);
                    worst = std::max(worst, std::abs(series - closed) / std::abs(closed));
                }
            }
        }
        items.push_back({"1F0 determinant form", worst <= 1e-8, worst});
    }

    // 2F1 factorization for truncating parameters (Prop 2.5 pattern)
    {
        double worst = 0.0;
        RngStream rng(20240817, 2);
        for (double b : {1.0, 2.5}) {
            BetaParam beta(b);
            for (int n = 2; n <= 3; ++n) {
                DiagSpectrum x(static_cast<std::size_t>(n)), one_minus(static_cast<std::size_t>(n));
                for (std::size_t i = 0; i < x.size(); ++i) {
                    x[i] = rng.uniform();
                    one_minus[i] = 1.0 - x[i];
                }
                const double a = -2.0, bb = 1.5, cc = 0.5 * (n + 3) * b + 2.0;
                SeriesControl ctl(40, 1e-13);
                const double lhs = hyper_pq({a, bb}, {cc}, beta, x, std::nullopt, ctl).value;
                const double rhs =
                    hyper_pq({a, bb}, {cc}, beta, DiagSpectrum(static_cast<std::size_t>(n), 1.0), std::nullopt, ctl).value *
                    hyper_pq({a, bb}, {a + bb + 1.0 + 0.5 * (n - 1) * b - cc}, beta, one_minus,
                             std::nullopt, ctl)
                        .value;
                worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-30));
            }
        }
        items.push_back({"2F1 truncating factorization", worst <= 1e-9, worst});
    }

    // Gauss value: truncating 2F1 near X = I vs the closed Gamma-ratio form
    {
        double worst = 0.0;
        for (double b : {1.0, 2.0}) {
            BetaParam beta(b);
            const int n = 2;
            // bb kept small so the continuity gap at eps = 1e-3, which scales
            // with the logarithmic derivative ~ n|a|bb/c, stays under 1e-4.
            const double a = -3.0, bb = 0.05, cc = 0.5 * (n + 4) * b + 2.0;
            const DiagSpectrum x(static_cast<std::size_t>(n), 1.0 - 1e-3);
            const double series = hyper_pq({a, bb}, {cc}, beta, x, std::nullopt, SeriesControl(40, 1e-13)).value;
            const double closed = std::exp(log_gauss_2f1_identity(a, bb, cc, n, beta));
            worst = std::max(worst, std::abs(series - closed) / std::abs(closed));
        }
        items.push_back({"2F1 Gauss value continuity", worst <= 1e-4, worst});
    }

    // n=1 scalar oracle: gsv^2 ~ Beta(p beta/2, m beta/2)
    {
        const int m = 4, p = 3;
        const BetaParam beta(1.5);
        ManovaParams params(m, 1, p, beta, {1.0});
        const std::size_t N = 20000;
        std::vector<double> u(N);
        for (std::size_t s = 0; s < N; ++s) {
            RngStream rng(99, s);
            const double c = beta_manova_gsv(params, rng)[0];
            u[s] = c * c;
        }
        Ecdf e(std::move(u));
        const double d = ks_one_sample(e, [&](double x) {
            return boost::math::ibeta(0.5 * p * beta.beta, 0.5 * m * beta.beta, x);
        });
        const double crit = ks_critical_one_sample(0.01, N);
        items.push_back({"n=1 Beta-law sampling oracle", d < crit, d});
    }

    // n=1 largest-gsv CDF vs regularized incomplete beta
    {
        const int m = 5, p = 3;
        const BetaParam beta(2.0);
        ManovaParams params(m, 1, p, beta, {1.0});
        LargestGsvCdf cdf(params);
        double worst = 0.0;
        for (double x : {0.2, 0.5, 0.8})
            worst = std::max(worst, std::abs(cdf(x) - boost::math::ibeta(0.5 * p * beta.beta,
                                                                         0.5 * m * beta.beta, x * x)));
        items.push_back({"n=1 largest-gsv CDF vs incomplete beta", worst <= 1e-10, worst});
    }

    return items;
}

}  // namespace bmanova
