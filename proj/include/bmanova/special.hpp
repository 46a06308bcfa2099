#pragma once

// Generalized Pochhammer symbols, generalized Gamma functions, and the
// normalization constants K_{m,n}^{(beta)}, all with log-space variants.

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "bmanova/partition.hpp"

namespace bmanova {

// Magnitude-and-sign representation for products that overflow double range.
struct LogSigned {
    double log_abs;  // -inf encodes zero
    int sign;        // -1, 0, +1

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// (a)_kappa^{(beta)} = prod_{i=1}^{l} prod_{j=1}^{kappa_i} (a - (i-1)beta/2 + j - 1).
// Exact product; may be zero or negative.
inline double gen_pochhammer(double a, const Partition& kappa, const BetaParam& beta) {
    double prod = 1.0;
    for (int i = 0; i < kappa.length(); ++i) {
        const double base = a - 0.5 * i * beta.beta;
        for (int j = 0; j < kappa.part(i); ++j) prod *= base + j;
    }
    return prod;
}

inline LogSigned gen_pochhammer_log(double a, const Partition& kappa, const BetaParam& beta) {
    double log_abs = 0.0;
    int sign = 1;
    for (int i = 0; i < kappa.length(); ++i) {
        const double base = a - 0.5 * i * beta.beta;
        for (int j = 0; j < kappa.part(i); ++j) {
            const double f = base + j;
            if (f == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
            if (f < 0.0) sign = -sign;
            log_abs += std::log(std::abs(f));
        }
    }
    return {log_abs, sign};
}

// ln Gamma_n^{(beta)}(c) = (n(n-1)beta/4) ln pi + sum_i ln Gamma(c - (i-1)beta/2).
// Real c only; every shifted argument must be positive.
inline double log_gen_gamma(double c, int n, const BetaParam& beta) {
    if (n < 1) throw std::invalid_argument("log_gen_gamma: n must be >= 1");
    double s = 0.25 * n * (n - 1) * beta.beta * std::log(std::numbers::pi);
    for (int i = 0; i < n; ++i) {
        const double arg = c - 0.5 * i * beta.beta;
        if (!(arg > 0.0))
            throw std::domain_error("log_gen_gamma: argument c - (i-1)beta/2 <= 0 (outside m,p >= n regime)");
        s += std::lgamma(arg);
    }
    return s;
}

// ln K_{m,n}^{(beta)}, K = 2^{mn beta/2} / pi^{n(n-1)beta/2}
//                        * Gamma_n(m beta/2) Gamma_n(n beta/2) / Gamma(beta/2)^n.
inline double log_K(int m, int n, const BetaParam& beta) {
    if (m < n) throw std::invalid_argument("log_K: requires m >= n");
    const double b = beta.beta;
    return 0.5 * m * n * b * std::log(2.0) - 0.5 * n * (n - 1) * b * std::log(std::numbers::pi) +
           log_gen_gamma(0.5 * m * b, n, beta) + log_gen_gamma(0.5 * n * b, n, beta) -
           n * std::lgamma(0.5 * b);
}

// ln 2F1^{(beta)}(a,b;c;I) by the closed Gauss form:
// Gamma_n(c) Gamma_n(c-a-b) / (Gamma_n(c-a) Gamma_n(c-b)).
inline double log_gauss_2f1_identity(double a, double b, double c, int n, const BetaParam& beta) {
    return log_gen_gamma(c, n, beta) + log_gen_gamma(c - a - b, n, beta) -
           log_gen_gamma(c - a, n, beta) - log_gen_gamma(c - b, n, beta);
}

}  // namespace bmanova
