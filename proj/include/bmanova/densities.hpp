#pragma once

// Analytic laws of the beta-MANOVA ensemble: the joint generalized singular
// value density, its beta-Jacobi reduction at Omega = I, and the largest-GSV
// CDF in both the exact truncated-polynomial form and the 2F1 form.
//
// All densities are in the ordered convention (c_1 > ... > c_n, no 1/n!).

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "bmanova/mhg.hpp"
#include "bmanova/sampler.hpp"
#include "bmanova/special.hpp"

namespace bmanova {

struct GsvPoint {
    DiagSpectrum c;  // strictly decreasing, entries in (0,1)

    explicit GsvPoint(DiagSpectrum values) : c(std::move(values)) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!(c[i] > 0.0 && c[i] < 1.0))
                throw std::domain_error("GsvPoint: entries must lie in (0,1)");
            if (i > 0 && !(c[i] < c[i - 1]))
                throw std::domain_error("GsvPoint: entries must be strictly decreasing");
        }
    }
};

namespace detail {

inline bool all_equal(const DiagSpectrum& v) {
    for (double x : v)
        if (x != v[0]) return false;
    return true;
}

// Truncation order t = (m-n+1)beta/2 - 1, or nullopt if not a nonnegative integer.
inline std::optional<int> truncation_order(int m, int n, double beta) {
    const double t = 0.5 * (m - n + 1) * beta - 1.0;
    const double r = std::round(t);
    if (r < -0.5 || std::abs(t - r) > 1e-9) return std::nullopt;
    return static_cast<int>(r);
}

// Working type for the alternating truncated 2F1: its slices can exceed the
// final value by ~1e19, so double (and long double) mantissas are too short.
using quad = __float128;

// Generalized Pochhammer (a)_kappa^{(beta)} in extended precision.
inline quad gen_pochhammer_quad(quad a, const Partition& kappa, quad half_beta) {
    quad r(1);
    for (int i = 0; i < kappa.length(); ++i)
        for (int j = 0; j < kappa.part(i); ++j) r *= a - half_beta * quad(i) + quad(j);
    return r;
}

}  // namespace detail

// Ordered beta-Jacobi log-density at u in (0,1)^n, strictly decreasing:
//   K_{m+p,n}/(K_{m,n} K_{p,n}) prod u_i^{(p-n+1)beta/2-1} (1-u_i)^{(m-n+1)beta/2-1}
//   prod_{i<j} |u_i - u_j|^beta.
inline double jacobi_logdensity(int m, int n, int p, const BetaParam& beta,
                                const DiagSpectrum& u) {
    if (m < n || p < n) throw std::invalid_argument("jacobi_logdensity: requires m,p >= n");
    if (static_cast<int>(u.size()) != n)
        throw std::invalid_argument("jacobi_logdensity: u must have length n");
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!(u[i] > 0.0 && u[i] < 1.0)) throw std::domain_error("jacobi_logdensity: u in (0,1) required");
        if (i > 0 && !(u[i] < u[i - 1]))
            throw std::domain_error("jacobi_logdensity: u must be strictly decreasing");
    }
    const double b = beta.beta;
    double ld = log_K(m + p, n, beta) - log_K(m, n, beta) - log_K(p, n, beta);
    for (int i = 0; i < n; ++i) {
        ld += (0.5 * (p - n + 1) * b - 1.0) * std::log(u[static_cast<std::size_t>(i)]);
        ld += (0.5 * (m - n + 1) * b - 1.0) * std::log1p(-u[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            ld += b * std::log(u[static_cast<std::size_t>(i)] - u[static_cast<std::size_t>(j)]);
    return ld;
}

// Log of the ordered joint GSV density:
//   2^n K_{m+p,n}/(K_{m,n} K_{p,n}) det(Omega)^{p beta}
//   prod c_i^{(p-n+1)beta-1} (1-c_i^2)^{-(p+n-1)beta/2-1} prod_{i<j}|c_i^2-c_j^2|^beta
//   * 1F0((m+p)beta/2 ;; C^2(C^2-I)^{-1}, Omega^2).
//
// When Omega is a scalar matrix the 1F0 collapses to the determinant closed
// form (always convergent, the argument spectrum is nonpositive); otherwise
// the two-argument series is summed under ctl and its diagnostics returned.
inline SeriesResult joint_gsv_logdensity(const ManovaParams& params, const GsvPoint& point,
                                         const SeriesControl& ctl) {
    const int n = params.n;
    if (static_cast<int>(point.c.size()) != n)
        throw std::invalid_argument("joint_gsv_logdensity: point must have length n");
    const double b = params.beta.beta;
    const auto& c = point.c;

    double ld = n * std::log(2.0) + log_K(params.m + params.p, n, params.beta) -
                log_K(params.m, n, params.beta) - log_K(params.p, n, params.beta);
    for (int i = 0; i < n; ++i) {
        const double ci = c[static_cast<std::size_t>(i)];
        ld += params.p * b * std::log(params.omega[static_cast<std::size_t>(i)]);
        ld += ((params.p - n + 1) * b - 1.0) * std::log(ci);
        ld += (-0.5 * (params.p + n - 1) * b - 1.0) * std::log1p(-ci * ci);
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            ld += b * std::log(c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)] -
                               c[static_cast<std::size_t>(j)] * c[static_cast<std::size_t>(j)]);

    DiagSpectrum X(static_cast<std::size_t>(n));  // C^2 (C^2 - I)^{-1}, entries <= 0
    DiagSpectrum omega_sq(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double ci2 = c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(i)];
        X[static_cast<std::size_t>(i)] = ci2 / (ci2 - 1.0);
        omega_sq[static_cast<std::size_t>(i)] =
            params.omega[static_cast<std::size_t>(i)] * params.omega[static_cast<std::size_t>(i)];
    }
    const double a = 0.5 * (params.m + params.p) * b;

    SeriesResult res;
    if (detail::all_equal(omega_sq)) {
        // 1F0(a;;X, w I) = 1F0(a;; wX) = prod (1 - w x_i)^{-a}
        double lf = 0.0;
        for (double x : X) lf += -a * std::log1p(-omega_sq[0] * x);
        res.value = ld + lf;
        res.converged = true;
        res.weight_reached = 0;
        res.tail_estimate = 0.0;
        return res;
    }
    SeriesResult f = hyper_pq({a}, {}, params.beta, X, omega_sq, ctl);
    res = f;
    if (!(f.value > 0.0)) {
        res.converged = false;
        res.value = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    res.value = ld + std::log(f.value);
    return res;
}

// Exact truncated-polynomial CDF of the largest generalized singular value,
//   P(c_1 < x) = det(x^2 Omega^2 ((1-x^2)I + x^2 Omega^2)^{-1})^{p beta/2}
//     * sum_{k=0}^{nt} sum_{kappa |- k, kappa_1 <= t} (p beta/2)_kappa
//       C_kappa((1-x^2)((1-x^2)I + x^2 Omega^2)^{-1}) / k!,
// valid when t = (m-n+1)beta/2 - 1 is a nonnegative integer.
//
// The partition basis and coefficients are x-independent; this class builds
// them once so a CDF sweep over many x is cheap.
class LargestGsvCdf {
public:
    explicit LargestGsvCdf(const ManovaParams& params)
        : params_(params),
          t_(detail::truncation_order(params.m, params.n, params.beta.beta)
                 ? *detail::truncation_order(params.m, params.n, params.beta.beta)
                 : throw std::invalid_argument(
                       "LargestGsvCdf: t = (m-n+1)beta/2-1 is not a nonnegative integer; "
                       "the truncated form does not apply")),
          basis_(params.beta, params.n, params.n * t_, t_) {
        coeff_.resize(static_cast<std::size_t>(basis_.size()));
        const double a = 0.5 * params_.p * params_.beta.beta;
        for (int idx = 0; idx < basis_.size(); ++idx) {
            const Partition& kappa = basis_.partition(idx);
            coeff_[static_cast<std::size_t>(idx)] =
                gen_pochhammer(a, kappa, params_.beta) / std::exp(std::lgamma(kappa.weight() + 1.0));
        }
    }

    int truncation_order() const { return t_; }

    double operator()(double x) const {
        if (!(x > 0.0 && x < 1.0)) throw std::domain_error("LargestGsvCdf: x must lie in (0,1)");
        const int n = params_.n;
        const double x2 = x * x, r2 = 1.0 - x * x;
        double log_det = 0.0;
        DiagSpectrum y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double w2 = params_.omega[static_cast<std::size_t>(i)] * params_.omega[static_cast<std::size_t>(i)];
            const double denom = r2 + x2 * w2;
            y[static_cast<std::size_t>(i)] = r2 / denom;
            log_det += std::log(x2 * w2 / denom);
        }
        const auto C = basis_.eval_C(y);
        double sum = 0.0;
        for (std::size_t idx = 0; idx < C.size(); ++idx) sum += coeff_[idx] * C[idx];
        const double p = std::exp(0.5 * params_.p * params_.beta.beta * log_det + std::log(sum));
        if (p < -1e-10 || p > 1.0 + 1e-10)
            throw std::runtime_error("LargestGsvCdf: accumulated value left [0,1]");
        return std::min(std::max(p, 0.0), 1.0);
    }

private:
    ManovaParams params_;
    int t_;
    JackBasis basis_;
    std::vector<double> coeff_;  // (p beta/2)_kappa / k!
};

inline double cdf_largest_gsv(const ManovaParams& params, double x) {
    return LargestGsvCdf(params)(x);
}

// 2F1 form of the same CDF:
//   P(c_1 < x) = det(x^2 Omega^2 (...)^{-1})^{p beta/2}
//     * Gamma_n((m+p)beta/2) Gamma_n((n-1)beta/2+1)
//       / (Gamma_n(m beta/2) Gamma_n((n+p-1)beta/2+1))
//     * 2F1((n-m-1)beta/2+1, p beta/2; (p+n-1)beta/2+1; x^2 Omega^2 (...)^{-1}).
// Truncates exactly when (n-m-1)beta/2+1 = -t with t a nonnegative integer.
inline SeriesResult cdf_largest_gsv_2f1(const ManovaParams& params, double x,
                                        const SeriesControl& ctl) {
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("cdf_largest_gsv_2f1: x must lie in (0,1)");
    const int n = params.n;
    const double b = params.beta.beta;
    const double x2 = x * x, r2 = 1.0 - x * x;
    double log_det = 0.0;
    DiagSpectrum z(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double w2 = params.omega[static_cast<std::size_t>(i)] * params.omega[static_cast<std::size_t>(i)];
        const double denom = r2 + x2 * w2;
        z[static_cast<std::size_t>(i)] = x2 * w2 / denom;
        log_det += std::log(x2 * w2 / denom);
    }
    const double a1 = 0.5 * (n - params.m - 1) * b + 1.0;
    const double a2 = 0.5 * params.p * b;
    const double c1 = 0.5 * (params.p + n - 1) * b + 1.0;
    const double log_gamma_ratio =
        log_gen_gamma(0.5 * (params.m + params.p) * b, n, params.beta) +
        log_gen_gamma(0.5 * (n - 1) * b + 1.0, n, params.beta) -
        log_gen_gamma(0.5 * params.m * b, n, params.beta) - log_gen_gamma(c1, n, params.beta);

    if (auto t = detail::truncation_order(params.m, n, b)) {
        // Exact finite sum: a1 = -t caps kappa_1 at t, so the series is a
        // polynomial over kappa_1 <= t, l(kappa) <= n. The terms alternate in
        // sign and can exceed the O(1) result by many orders of magnitude, so
        // the whole sum is taken in extended precision.
        using detail::quad;
        const quad half_beta = quad(b) / quad(2);
        JackBasisT<quad> qbasis(params.beta, n, n * *t, *t);
        std::vector<quad> zq(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const quad w2 = quad(params.omega[static_cast<std::size_t>(i)]) *
                            quad(params.omega[static_cast<std::size_t>(i)]);
            const quad xq2 = quad(x) * quad(x);
            zq[static_cast<std::size_t>(i)] = xq2 * w2 / ((quad(1) - xq2) + xq2 * w2);
        }
        const auto C = qbasis.eval_C(zq);
        const quad a1q = quad(1) + half_beta * quad(n - params.m - 1);
        const quad a2q = half_beta * quad(params.p);
        const quad c1q = quad(1) + half_beta * quad(params.p + n - 1);
        quad sum(0);
        for (int idx = 0; idx < qbasis.size(); ++idx) {
            const Partition& kappa = qbasis.partition(idx);
            quad term = detail::gen_pochhammer_quad(a1q, kappa, half_beta) *
                        detail::gen_pochhammer_quad(a2q, kappa, half_beta) /
                        detail::gen_pochhammer_quad(c1q, kappa, half_beta) *
                        C[static_cast<std::size_t>(idx)];
            for (int j = 2; j <= kappa.weight(); ++j) term /= quad(j);
            sum += term;
        }
        SeriesResult f;
        f.value = static_cast<double>(sum) * std::exp(0.5 * params.p * b * log_det + log_gamma_ratio);
        f.weight_reached = n * *t;
        f.converged = true;
        f.tail_estimate = 0.0;
        return f;
    }
    SeriesResult f = hyper_pq({a1, a2}, {c1}, params.beta, z, std::nullopt, ctl);
    f.value *= std::exp(0.5 * params.p * b * log_det + log_gamma_ratio);
    return f;
}

}  // namespace bmanova
