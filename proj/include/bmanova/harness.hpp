#pragma once

// Monte-Carlo verification: empirical CDFs, Kolmogorov-Smirnov statistics,
// the beta=1 dense-Gaussian oracle, and the figure-reproduction experiment.

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bmanova/densities.hpp"
#include "bmanova/rng.hpp"
#include "bmanova/sampler.hpp"

namespace bmanova {

struct Ecdf {
    std::vector<double> sorted_samples;

    explicit Ecdf(std::vector<double> samples) : sorted_samples(std::move(samples)) {
        if (sorted_samples.empty()) throw std::invalid_argument("Ecdf: needs at least one sample");
        std::sort(sorted_samples.begin(), sorted_samples.end());
    }
    std::size_t count() const { return sorted_samples.size(); }
};

// Fraction of samples <= x (right-continuous step function).
inline double ecdf_eval(const Ecdf& e, double x) {
    const auto it = std::upper_bound(e.sorted_samples.begin(), e.sorted_samples.end(), x);
    return static_cast<double>(it - e.sorted_samples.begin()) / static_cast<double>(e.count());
}

// One-sample KS statistic against a reference CDF, with both one-sided
// corrections at the step points.
inline double ks_one_sample(const Ecdf& e, const std::function<double(double)>& cdf) {
    const double inv_n = 1.0 / static_cast<double>(e.count());
    double d = 0.0;
    for (std::size_t i = 0; i < e.count(); ++i) {
        const double f = cdf(e.sorted_samples[i]);
        d = std::max(d, static_cast<double>(i + 1) * inv_n - f);
        d = std::max(d, f - static_cast<double>(i) * inv_n);
    }
    return d;
}

// Two-sample KS statistic (sup distance between the two step functions).
inline double ks_two_sample(const Ecdf& a, const Ecdf& b) {
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.count() && j < b.count()) {
        const double xa = a.sorted_samples[i], xb = b.sorted_samples[j];
        if (xa <= xb) ++i;
        if (xb <= xa) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.count() - static_cast<double>(j) / b.count()));
    }
    return d;
}

// Asymptotic critical values c(alpha)/sqrt(N): c(alpha) = sqrt(-ln(alpha/2)/2),
// c(0.01) = 1.6276. The asymptotic form is used only for N >= 1000.
inline double ks_critical_one_sample(double alpha, std::size_t n) {
    if (n < 1000) throw std::invalid_argument("ks_critical_one_sample: asymptotic form needs N >= 1000");
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

inline double ks_critical_two_sample(double alpha, std::size_t n1, std::size_t n2) {
    if (n1 < 1000 || n2 < 1000)
        throw std::invalid_argument("ks_critical_two_sample: asymptotic form needs N >= 1000");
    return std::sqrt(-0.5 * std::log(0.5 * alpha)) *
           std::sqrt(static_cast<double>(n1 + n2) / (static_cast<double>(n1) * static_cast<double>(n2)));
}

struct KsReport {
    std::size_t n_samples = 0;
    double ks_stat = 0.0;
    double critical_value = 0.0;
    double alpha = 0.0;
    bool passed = false;
    std::string config_digest;
    std::int64_t runtime_ms = 0;
};

inline unsigned worker_threads() {
    if (const char* env = std::getenv("BMANOVA_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// n_samples draws of the largest generalized singular value; sample s uses
// stream_id = stream_base + s, so the result is independent of thread count.
inline std::vector<double> sample_largest_gsv(const ManovaParams& params, std::size_t n_samples,
                                              std::uint64_t seed, std::uint64_t stream_base = 0) {
    std::vector<double> out(n_samples);
    const unsigned nt = std::min<std::size_t>(worker_threads(), n_samples);
    std::vector<std::thread> workers;
    workers.reserve(nt);
    for (unsigned w = 0; w < nt; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t s = w; s < n_samples; s += nt) {
                RngStream rng(seed, stream_base + s);
                out[s] = beta_manova_gsv(params, rng)[0];
            }
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

// beta=1 ground truth: cosine generalized singular values of the Gaussian pair
// (Y, X Omega), computed as c = (mu+1)^{-1/2} from the symmetric-definite
// generalized eigenproblem Omega X^T X Omega v = mu Y^T Y v.
// Ill-conditioned Y^T Y draws (cond > 1e12) are redrawn and counted.
inline DiagSpectrum dense_real_manova_gsv(int m, int n, int p, const DiagSpectrum& omega,
                                          RngStream& rng, std::size_t* redraws = nullptr) {
    if (m < n || p < n) throw std::invalid_argument("dense_real_manova_gsv: requires m,p >= n");
    for (;;) {
        Eigen::MatrixXd X(m, n), Y(p, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) X(i, j) = rng.normal();
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < n; ++j) Y(i, j) = rng.normal();
        Eigen::MatrixXd B = Y.transpose() * Y;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bes(B, Eigen::EigenvaluesOnly);
        const double lmin = bes.eigenvalues()(0), lmax = bes.eigenvalues()(n - 1);
        if (!(lmin > 0.0) || lmax / lmin > 1e12) {
            if (redraws) ++*redraws;
            continue;
        }
        Eigen::MatrixXd XO = X;
        for (int j = 0; j < n; ++j) XO.col(j) *= omega[static_cast<std::size_t>(j)];
        Eigen::MatrixXd A = XO.transpose() * XO;
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(A, B, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
        DiagSpectrum c(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            c[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(std::max(ges.eigenvalues()(n - 1 - i), 0.0) + 1.0);
        std::sort(c.begin(), c.end(), std::greater<>());
        return c;
    }
}

struct CurveRow {
    double x;
    double empirical;
    double analytic;
};

struct FigureResult {
    KsReport report;
    std::vector<CurveRow> curve;
};

// Empirical-vs-analytic comparison, reduced to a one-sample KS
// pass/fail at the given alpha plus the curve table for plotting.
inline FigureResult verify_figure(const ManovaParams& params, std::size_t n_samples,
                                  const std::vector<double>& grid, double alpha,
                                  std::uint64_t seed) {
    if (n_samples < 100) throw std::invalid_argument("verify_figure: needs n_samples >= 100");
    const auto t0 = std::chrono::steady_clock::now();

    LargestGsvCdf cdf(params);
    Ecdf ecdf(sample_largest_gsv(params, n_samples, seed));

    FigureResult result;
    result.curve.reserve(grid.size());
    for (double x : grid)
        result.curve.push_back({x, ecdf_eval(ecdf, x), cdf(x)});

    KsReport& rep = result.report;
    rep.n_samples = n_samples;
    rep.alpha = alpha;
    rep.ks_stat = ks_one_sample(ecdf, [&](double x) { return cdf(x); });
    rep.critical_value = ks_critical_one_sample(alpha, n_samples);
    rep.passed = rep.ks_stat < rep.critical_value;
    {
        std::ostringstream cfg;
        cfg << params.m << ',' << params.n << ',' << params.p << ',' << params.beta.beta << ",[";
        for (double w : params.omega) cfg << w << ';';
        cfg << "]," << n_samples << ',' << seed << ',' << alpha;
        rep.config_digest = cfg.str();
    }
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    return result;
}

// Monte-Carlo check of Kaneko's Selberg-type Jack polynomial integral over
// the unordered box (0,1)^n. Test-only helper; returns (estimate, std error,
// closed form).
struct KanekoCheck {
    double mc_estimate;
    double mc_stderr;
    double closed_form;
};

inline KanekoCheck kaneko_mc_check(const Partition& kappa, double a, double b,
                                   const BetaParam& beta, int n, std::size_t n_points,
                                   RngStream& rng) {
    if (!(a > -1.0 && b > -1.0)) throw std::invalid_argument("kaneko_mc_check: requires a,b > -1");
    JackBasis basis(beta, n, kappa.weight(), std::max(kappa.part(0), 1));
    const int idx = basis.index_of(kappa);
    double sum = 0.0, sum2 = 0.0;
    DiagSpectrum x(static_cast<std::size_t>(n));
    for (std::size_t s = 0; s < n_points; ++s) {
        for (auto& xi : x) xi = rng.uniform();
        double f = basis.eval_C(x)[static_cast<std::size_t>(idx)];
        for (int i = 0; i < n; ++i) {
            f *= std::pow(x[static_cast<std::size_t>(i)], a) * std::pow(1.0 - x[static_cast<std::size_t>(i)], b);
            for (int j = i + 1; j < n; ++j)
                f *= std::pow(std::abs(x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)]), beta.beta);
        }
        sum += f;
        sum2 += f * f;
    }
    const double mean = sum / static_cast<double>(n_points);
    const double var = std::max(sum2 / static_cast<double>(n_points) - mean * mean, 0.0);

    double cf = jack_C_identity(kappa, beta, n);
    const double h = 0.5 * beta.beta;
    for (int i = 1; i <= n; ++i) {
        cf *= std::exp(std::lgamma(i * h + 1.0) + std::lgamma(kappa.part(i - 1) + a + h * (n - i) + 1.0) +
                       std::lgamma(b + h * (n - i) + 1.0) - std::lgamma(h + 1.0) -
                       std::lgamma(kappa.part(i - 1) + a + b + h * (2 * n - i - 1) + 2.0));
    }
    return {mean, std::sqrt(var / static_cast<double>(n_points)), cf};
}

}  // namespace bmanova
