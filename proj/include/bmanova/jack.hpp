#pragma once

// Jack polynomials C_kappa^{(beta)} at diagonal (real-spectrum) arguments.
//
// Evaluation path: the branching recurrence over variables for the monic
// P normalization,
//     P_kappa(x_1..x_v) = sum_{mu: kappa/mu horizontal strip}
//                         psi_{kappa/mu} P_mu(x_1..x_{v-1}) x_v^{|kappa|-|mu|},
// followed by conversion to the C normalization, which is pinned by the
// sum rule  sum_{kappa |- k, l(kappa)<=n} C_kappa(X) = trace(X)^k.
//
// The x-independent parts (partition list, strip coefficients psi, conversion
// constants) are precomputed once in a JackBasis and reused across evaluation
// points; a series sweep then costs one sparse pass per variable.

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "bmanova/partition.hpp"
#include "bmanova/special.hpp"

namespace bmanova {

using DiagSpectrum = std::vector<double>;

namespace detail {

// Hook-length products for the P -> C conversion:
//   C_kappa = alpha^k k! / c'_kappa(alpha) * P_kappa,
//   c'_kappa(alpha) = prod_{cells s} (alpha (arm(s)+1) + leg(s)).
inline double c_prime(const Partition& kappa, double alpha) {
    const auto conj = kappa.conjugate();
    double prod = 1.0;
    for (int i = 0; i < kappa.length(); ++i)
        for (int j = 0; j < kappa.part(i); ++j) {
            const double arm = kappa.part(i) - (j + 1);
            const double leg = conj[static_cast<std::size_t>(j)] - (i + 1);
            prod *= alpha * (arm + 1.0) + leg;
        }
    return prod;
}

// P_kappa(1^n) = prod_{cells (i,j)} (n + alpha (j-1) - (i-1)) / (alpha arm + leg + 1).
template <typename Real = double>
inline Real p_at_identity(const Partition& kappa, Real alpha, int n) {
    if (kappa.length() > n) return Real(0);
    const auto conj = kappa.conjugate();
    Real prod(1);
    for (int i = 0; i < kappa.length(); ++i)
        for (int j = 0; j < kappa.part(i); ++j) {
            const Real arm(kappa.part(i) - (j + 1));
            const Real leg(conj[static_cast<std::size_t>(j)] - (i + 1));
            prod *= (Real(n) + alpha * Real(j) - Real(i)) / (alpha * arm + leg + Real(1));
        }
    return prod;
}

// b_lambda(s) = (alpha*arm + leg + 1) / (alpha*arm + alpha + leg) for a cell of lambda.
template <typename Real = double>
inline Real b_cell(const std::vector<int>& parts, const std::vector<int>& conj, int i, int j,
                   Real alpha) {
    const Real arm(parts[static_cast<std::size_t>(i)] - (j + 1));
    const Real leg(conj[static_cast<std::size_t>(j)] - (i + 1));
    return (alpha * arm + leg + Real(1)) / (alpha * arm + alpha + leg);
}

// Branching coefficient psi_{lambda/mu} for a horizontal strip lambda/mu:
// product of b_mu(s)/b_lambda(s) over cells s of mu whose row meets the strip
// and whose column does not.
template <typename Real = double>
inline Real psi_strip(const Partition& lambda, const std::vector<int>& lconj, const Partition& mu,
                      Real alpha) {
    const auto mconj = mu.conjugate();
    const int lmax = lambda.part(0);
    // column j (0-based) meets the strip iff mu'_j < lambda'_j
    std::vector<char> col_in_strip(static_cast<std::size_t>(lmax), 0);
    for (int j = 0; j < lmax; ++j) {
        const int mj = j < static_cast<int>(mconj.size()) ? mconj[static_cast<std::size_t>(j)] : 0;
        col_in_strip[static_cast<std::size_t>(j)] = (mj < lconj[static_cast<std::size_t>(j)]) ? 1 : 0;
    }
    Real psi(1);
    const auto& lp = lambda.parts();
    const auto& mp = mu.parts();
    for (int i = 0; i < lambda.length(); ++i) {
        if (lambda.part(i) == mu.part(i)) continue;  // row not in strip
        for (int j = 0; j < mu.part(i); ++j) {
            if (col_in_strip[static_cast<std::size_t>(j)]) continue;
            psi *= b_cell<Real>(mp, mconj, i, j, alpha) / b_cell<Real>(lp, lconj, i, j, alpha);
        }
    }
    return psi;
}

}  // namespace detail

// Precomputed evaluation structure for all kappa with |kappa| <= max_weight,
// l(kappa) <= n, kappa_1 <= max_part. Real selects the working precision;
// extended types (long double, __float128) are used where the alternating
// hypergeometric sums need more headroom than double provides.
template <typename Real = double>
class JackBasisT {
public:
    using Spectrum = std::vector<Real>;

    JackBasisT(BetaParam beta, int n, int max_weight, int max_part = kUnbounded)
        : beta_(beta), alpha_(Real(2) / Real(beta.beta)), n_(n), max_weight_(max_weight) {
        max_part_ = std::min(max_part, max_weight);
        // Partitions grouped by weight, decreasing lex within each weight.
        weight_begin_.assign(static_cast<std::size_t>(max_weight) + 2, 0);
        for (int k = 0; k <= max_weight; ++k) {
            weight_begin_[static_cast<std::size_t>(k)] = static_cast<int>(partitions_.size());
            for (auto& kp : partitions_of(k, n, max_part_)) partitions_.push_back(std::move(kp));
        }
        weight_begin_[static_cast<std::size_t>(max_weight) + 1] = static_cast<int>(partitions_.size());
        for (int idx = 0; idx < static_cast<int>(partitions_.size()); ++idx)
            index_[partitions_[static_cast<std::size_t>(idx)]] = idx;

        const std::size_t np = partitions_.size();
        c_factor_.resize(np);
        c_identity_.resize(np);
        strips_.resize(np);
        for (std::size_t idx = 0; idx < np; ++idx) {
            const Partition& lam = partitions_[idx];
            // C = alpha^k k! / c'_lambda * P, accumulated as a ratio with the
            // factorial factors interleaved against the k hook cells so the
            // running product stays moderate.
            const auto conj = lam.conjugate();
            Real f(1);
            int cell_no = 0;
            for (int i = 0; i < lam.length(); ++i)
                for (int j = 0; j < lam.part(i); ++j) {
                    const Real arm(lam.part(i) - (j + 1));
                    const Real leg(conj[static_cast<std::size_t>(j)] - (i + 1));
                    ++cell_no;
                    f *= alpha_ * Real(cell_no) / (alpha_ * (arm + Real(1)) + leg);
                }
            c_factor_[idx] = f;
            c_identity_[idx] = f * detail::p_at_identity<Real>(lam, alpha_, n_);
            build_strips(static_cast<int>(idx));
        }
    }

    const BetaParam& beta() const { return beta_; }
    int n() const { return n_; }
    int max_weight() const { return max_weight_; }
    int size() const { return static_cast<int>(partitions_.size()); }
    const std::vector<Partition>& partitions() const { return partitions_; }
    const Partition& partition(int idx) const { return partitions_[static_cast<std::size_t>(idx)]; }
    int index_of(const Partition& kappa) const {
        auto it = index_.find(kappa);
        return it == index_.end() ? -1 : it->second;
    }
    // [begin, end) index range of partitions of weight k.
    std::pair<int, int> weight_range(int k) const {
        return {weight_begin_[static_cast<std::size_t>(k)], weight_begin_[static_cast<std::size_t>(k) + 1]};
    }
    Real c_identity(int idx) const { return c_identity_[static_cast<std::size_t>(idx)]; }

    // C_kappa(x) for every partition in the basis, aligned with partitions().
    // x must have exactly n entries.
    Spectrum eval_C(const Spectrum& x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("JackBasis::eval_C: spectrum length mismatch");
        const std::size_t np = partitions_.size();
        Spectrum cur(np, Real(0)), next(np, Real(0));
        cur[0] = Real(1);  // empty partition, zero variables
        Spectrum pw(static_cast<std::size_t>(max_weight_) + 1);
        for (int v = 0; v < n_; ++v) {
            pw[0] = Real(1);
            for (int k = 1; k <= max_weight_; ++k) pw[static_cast<std::size_t>(k)] = pw[static_cast<std::size_t>(k - 1)] * x[static_cast<std::size_t>(v)];
            for (std::size_t idx = 0; idx < np; ++idx) {
                Real acc(0);
                for (const auto& tr : strips_[idx])
                    acc += tr.psi * cur[static_cast<std::size_t>(tr.mu)] * pw[static_cast<std::size_t>(tr.drop)];
                next[idx] = acc;
            }
            std::swap(cur, next);
        }
        for (std::size_t idx = 0; idx < np; ++idx) cur[idx] *= c_factor_[idx];
        return cur;
    }

private:
    struct Transition {
        int mu;    // index of the inner partition
        int drop;  // |lambda| - |mu|
        Real psi;  // branching coefficient
    };

    void build_strips(int lam_idx) {
        const Partition& lam = partitions_[static_cast<std::size_t>(lam_idx)];
        const auto lconj = lam.conjugate();
        const int l = lam.length();
        std::vector<int> mu_parts(static_cast<std::size_t>(l), 0);
        // enumerate mu with lam_{i+1} <= mu_i <= lam_i (horizontal strips)
        std::function<void(int)> rec = [&](int i) {
            if (i == l) {
                Partition mu(mu_parts);
                auto it = index_.find(mu);
                if (it == index_.end()) return;  // outside part cap; unused by capped bases
                strips_[static_cast<std::size_t>(lam_idx)].push_back(
                    {it->second, lam.weight() - mu.weight(), detail::psi_strip<Real>(lam, lconj, mu, alpha_)});
                return;
            }
            const int lo = lam.part(i + 1);
            const int hi = std::min(lam.part(i), i == 0 ? lam.part(0) : mu_parts[static_cast<std::size_t>(i - 1)]);
            for (int p = lo; p <= hi; ++p) {
                mu_parts[static_cast<std::size_t>(i)] = p;
                rec(i + 1);
            }
            mu_parts[static_cast<std::size_t>(i)] = 0;
        };
        rec(0);
    }

    BetaParam beta_;
    Real alpha_;  // 2/beta in working precision
    int n_;
    int max_weight_;
    int max_part_;
    std::vector<Partition> partitions_;
    std::vector<int> weight_begin_;
    std::unordered_map<Partition, int, PartitionHash> index_;
    Spectrum c_factor_;    // P -> C conversion per partition
    Spectrum c_identity_;  // C_kappa(I_n)
    std::vector<std::vector<Transition>> strips_;
};

using JackBasis = JackBasisT<double>;

// Memoized table of C_kappa(x) for all |kappa| <= max_weight, l(kappa) <= n.
struct JackTable {
    BetaParam beta;
    int max_weight;
    std::unordered_map<Partition, double, PartitionHash> values;
};

inline JackTable build_jack_table(const BetaParam& beta, const DiagSpectrum& x, int max_weight) {
    if (max_weight < 0) throw std::invalid_argument("build_jack_table: max_weight must be >= 0");
    JackBasis basis(beta, static_cast<int>(x.size()), max_weight);
    auto vals = basis.eval_C(x);
    JackTable table{beta, max_weight, {}};
    for (int idx = 0; idx < basis.size(); ++idx)
        table.values.emplace(basis.partition(idx), vals[static_cast<std::size_t>(idx)]);
    return table;
}

// Single-point evaluation of C_kappa^{(beta)}(x). Zero when l(kappa) > |x|.
inline double jack_C(const Partition& kappa, const BetaParam& beta, const DiagSpectrum& x) {
    const int n = static_cast<int>(x.size());
    if (kappa.length() > n) return 0.0;
    if (kappa.empty()) return 1.0;
    JackBasis basis(beta, n, kappa.weight(), kappa.part(0));
    return basis.eval_C(x)[static_cast<std::size_t>(basis.index_of(kappa))];
}

// C_kappa^{(beta)}(I_n) by the closed hook-product form.
inline double jack_C_identity(const Partition& kappa, const BetaParam& beta, int n) {
    if (kappa.length() > n) return 0.0;
    const double alpha = beta.alpha;
    const double c_fac = std::exp(kappa.weight() * std::log(alpha) + std::lgamma(kappa.weight() + 1.0) -
                                  std::log(detail::c_prime(kappa, alpha)));
    return c_fac * detail::p_at_identity(kappa, alpha, n);
}

}  // namespace bmanova
