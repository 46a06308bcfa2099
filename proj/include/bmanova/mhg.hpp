#pragma once

// Truncated hypergeometric functions of matrix argument pFq^{(beta)} with one
// and two diagonal arguments, plus the closed forms used as identities.

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "bmanova/jack.hpp"
#include "bmanova/partition.hpp"
#include "bmanova/special.hpp"

namespace bmanova {

struct SeriesControl {
    int max_weight = 30;     // hard truncation on |kappa|
    double rel_tol = 1e-12;  // slice-relative stopping tolerance
    int max_part = kUnbounded;

    SeriesControl() = default;
    SeriesControl(int mw, double tol, int mp = kUnbounded)
        : max_weight(mw), rel_tol(tol), max_part(mp) {}
};

struct SeriesResult {
    double value = 0.0;
    int weight_reached = 0;
    bool converged = false;
    double tail_estimate = 0.0;  // |last weight slice| / |running sum|
};

namespace detail {

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

// Index of the parent partition (last nonzero part decremented) and the
// Pochhammer update factor row index. Row i (0-based) is the last nonzero part.
inline Partition parent_of(const Partition& kappa, int& row, int& new_part) {
    auto parts = kappa.parts();
    row = kappa.length() - 1;
    new_part = parts[static_cast<std::size_t>(row)];
    parts[static_cast<std::size_t>(row)] -= 1;
    return Partition(std::move(parts));
}

}  // namespace detail

// pFq^{(beta)}(a; b; X[, Y]) truncated per ctl. The one-argument form follows
// the convention pFq(a;b;X) = pFq(a;b;X,I), i.e. C_kappa(Y)/C_kappa(I) -> 1.
//
// Numerator Pochhammer products are updated incrementally along the partition
// lattice (parent = last part decremented) instead of being recomputed per
// kappa. Slices are accumulated in decreasing-lex partition order with
// compensated summation. If an entire weight slice has identically zero
// numerator coefficients the series has truncated exactly and the result is
// marked converged (zero coefficients propagate to all larger partitions).
inline SeriesResult hyper_pq(std::span<const double> a, std::span<const double> b,
                             const JackBasis& basis, const DiagSpectrum& X,
                             const std::optional<DiagSpectrum>& Y, const SeriesControl& ctl) {
    const int n = static_cast<int>(X.size());
    if (Y && static_cast<int>(Y->size()) != n)
        throw std::invalid_argument("hyper_pq: X and Y must have the same length");
    if (basis.n() != n) throw std::invalid_argument("hyper_pq: basis variable count mismatch");
    if (basis.max_weight() < ctl.max_weight)
        throw std::invalid_argument("hyper_pq: basis too shallow for requested max_weight");

    const BetaParam& beta = basis.beta();
    const auto CX = basis.eval_C(X);
    std::vector<double> CY;
    if (Y) CY = basis.eval_C(*Y);

    // Per-partition numerator/denominator Pochhammer products, built by the
    // one-box update (a)_{kappa} = (a)_{parent} * (a - (i-1)beta/2 + kappa_i - 1).
    std::vector<double> num(static_cast<std::size_t>(basis.size()), 1.0);
    std::vector<double> den(static_cast<std::size_t>(basis.size()), 1.0);

    detail::KahanSum total;
    total.add(1.0);  // k = 0, empty partition: coefficient 1, C_() = 1
    SeriesResult res;
    res.weight_reached = 0;

    double log_fact = 0.0;
    int small_slices = 0;
    for (int k = 1; k <= ctl.max_weight; ++k) {
        log_fact += std::log(static_cast<double>(k));
        const double inv_fact = std::exp(-log_fact);
        auto [lo, hi] = basis.weight_range(k);
        detail::KahanSum slice;
        bool any_nonzero_num = false;
        for (int idx = lo; idx < hi; ++idx) {
            const Partition& kappa = basis.partition(idx);
            int row = 0, part_val = 0;
            const Partition par = detail::parent_of(kappa, row, part_val);
            const int pidx = basis.index_of(par);
            const double shift = -0.5 * row * beta.beta + part_val - 1;
            double nu = num[static_cast<std::size_t>(pidx)];
            for (double ai : a) nu *= ai + shift;
            double de = den[static_cast<std::size_t>(pidx)];
            for (double bi : b) de *= bi + shift;
            num[static_cast<std::size_t>(idx)] = nu;
            den[static_cast<std::size_t>(idx)] = de;
            if (nu != 0.0) {
                any_nonzero_num = true;
                if (de == 0.0)
                    throw std::domain_error(
                        "hyper_pq: lower parameter produces a zero Pochhammer with nonzero numerator");
            }
            double term = nu / (de == 0.0 ? 1.0 : de) * CX[static_cast<std::size_t>(idx)] * inv_fact;
            if (Y) term *= CY[static_cast<std::size_t>(idx)] / basis.c_identity(idx);
            slice.add(term);
        }
        total.add(slice.sum);
        res.weight_reached = k;
        res.tail_estimate = std::abs(slice.sum) / std::max(std::abs(total.sum), 1e-300);
        if (!any_nonzero_num) {
            // exact truncation: every surviving partition has been exhausted
            res.converged = true;
            res.tail_estimate = 0.0;
            break;
        }
        small_slices = (res.tail_estimate < ctl.rel_tol) ? small_slices + 1 : 0;
        if (small_slices >= 3) {
            res.converged = true;
            break;
        }
    }
    if (ctl.max_weight == 0) res.converged = true;  // degree-0 request is exact by definition
    res.value = total.sum;
    return res;
}

inline SeriesResult hyper_pq(std::span<const double> a, std::span<const double> b,
                             const BetaParam& beta, const DiagSpectrum& X,
                             const std::optional<DiagSpectrum>& Y, const SeriesControl& ctl) {
    JackBasis basis(beta, static_cast<int>(X.size()), ctl.max_weight, ctl.max_part);
    return hyper_pq(a, b, basis, X, Y, ctl);
}

inline SeriesResult hyper_pq(std::initializer_list<double> a, std::initializer_list<double> b,
                             const BetaParam& beta, const DiagSpectrum& X,
                             const std::optional<DiagSpectrum>& Y, const SeriesControl& ctl) {
    return hyper_pq(std::span<const double>(a.begin(), a.size()),
                    std::span<const double>(b.begin(), b.size()), beta, X, Y, ctl);
}

// Shared-basis variant for parameter sweeps: the basis must have been built
// with the same beta, variable count, and at least ctl.max_weight (and a
// compatible part cap).
inline SeriesResult hyper_pq(std::initializer_list<double> a, std::initializer_list<double> b,
                             const JackBasis& basis, const DiagSpectrum& X,
                             const std::optional<DiagSpectrum>& Y, const SeriesControl& ctl) {
    return hyper_pq(std::span<const double>(a.begin(), a.size()),
                    std::span<const double>(b.begin(), b.size()), basis, X, Y, ctl);
}

// 1F0^{(beta)}(a;;X) = prod_i (1 - x_i)^{-a}, valid for X < I.
inline double f10_closed(double a, const DiagSpectrum& X) {
    double prod = 1.0;
    for (double x : X) {
        if (!(x < 1.0)) throw std::domain_error("f10_closed: requires x_i < 1");
        prod *= std::pow(1.0 - x, -a);
    }
    return prod;
}

// Both sides of the Euler transformation
//   2F1(a,b;c;X) = |I-X|^{c-a-b} 2F1(c-a,c-b;c;X),
// evaluated by independent series. (The scalar Pfaff transformation does not
// carry over to matrix arguments; the Euler form above does.) Self-test
// helper, not a computation path.
inline std::pair<double, double> f21_transform_check(double a, double b, double c,
                                                     const BetaParam& beta, const DiagSpectrum& X,
                                                     const SeriesControl& ctl) {
    const auto lhs = hyper_pq({a, b}, {c}, beta, X, std::nullopt, ctl);
    double det_pow = 1.0;
    for (const double x : X) {
        if (!(x < 1.0)) throw std::domain_error("f21_transform_check: requires X < I");
        det_pow *= std::pow(1.0 - x, c - a - b);
    }
    const auto rhs = hyper_pq({c - a, c - b}, {c}, beta, X, std::nullopt, ctl);
    return {lhs.value, rhs.value * det_pow};
}

}  // namespace bmanova
