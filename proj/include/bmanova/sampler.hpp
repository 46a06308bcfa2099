#pragma once

// The recursive beta-Wishart singular value sampler and the beta-MANOVA
// generalized singular value sampler built on top of it.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bmanova/jack.hpp"
#include "bmanova/partition.hpp"
#include "bmanova/rng.hpp"

namespace bmanova {

struct ManovaParams {
    int m;
    int n;
    int p;
    BetaParam beta;
    DiagSpectrum omega;  // length n, all entries > 0

    ManovaParams(int m_, int n_, int p_, BetaParam beta_, DiagSpectrum omega_)
        : m(m_), n(n_), p(p_), beta(beta_), omega(std::move(omega_)) {
        if (n < 1) throw std::invalid_argument("ManovaParams: n must be >= 1");
        if (m < n || p < n) throw std::invalid_argument("ManovaParams: requires m >= n and p >= n");
        if (static_cast<int>(omega.size()) != n)
            throw std::invalid_argument("ManovaParams: omega must have length n");
        for (double w : omega)
            if (!(w > 0.0)) throw std::invalid_argument("ManovaParams: omega entries must be > 0");
    }
};

// Singular values of the broken-arrow matrix
//   Z = [ diag(d)  col ]
//       [ 0        corner ]
// sorted descending, via symmetric eigendecomposition of Z^T Z.
inline DiagSpectrum arrow_singular_values(const DiagSpectrum& diag_block,
                                          const std::vector<double>& last_col, double corner) {
    const int r = static_cast<int>(diag_block.size());
    if (static_cast<int>(last_col.size()) != r)
        throw std::invalid_argument("arrow_singular_values: diag/column length mismatch");
    if (r == 0) return {std::abs(corner)};
    const int n = r + 1;
    Eigen::MatrixXd ata = Eigen::MatrixXd::Zero(n, n);
    double tail = corner * corner;
    for (int i = 0; i < r; ++i) {
        ata(i, i) = diag_block[static_cast<std::size_t>(i)] * diag_block[static_cast<std::size_t>(i)];
        ata(i, r) = ata(r, i) = diag_block[static_cast<std::size_t>(i)] * last_col[static_cast<std::size_t>(i)];
        tail += last_col[static_cast<std::size_t>(i)] * last_col[static_cast<std::size_t>(i)];
    }
    ata(r, r) = tail;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ata, Eigen::EigenvaluesOnly);
    DiagSpectrum sv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) sv[static_cast<std::size_t>(i)] = std::sqrt(std::max(es.eigenvalues()(n - 1 - i), 0.0));
    return sv;  // eigenvalues come out ascending; reversed here
}

// Singular values of the beta-Wishart ensemble with diagonal covariance D,
// by the recursive broken-arrow construction:
//   base case: chi_{m beta} * sqrt(D_11)
//   step j:    arrow matrix with the previous spectrum on the diagonal,
//              j-1 iid chi_beta * sqrt(D_jj) column entries, and a
//              chi_{(m-j+1) beta} * sqrt(D_jj) corner.
inline DiagSpectrum beta_wishart_sv(int m, int n, const BetaParam& beta, const DiagSpectrum& D,
                                    RngStream& rng) {
    if (n < 1 || m < n) throw std::invalid_argument("beta_wishart_sv: requires m >= n >= 1");
    if (static_cast<int>(D.size()) != n)
        throw std::invalid_argument("beta_wishart_sv: D must have length n");
    for (double d : D)
        if (!(d > 0.0)) throw std::invalid_argument("beta_wishart_sv: D entries must be > 0");

    DiagSpectrum sv{rng.chi(m * beta.beta) * std::sqrt(D[0])};
    for (int j = 2; j <= n; ++j) {
        const double scale = std::sqrt(D[static_cast<std::size_t>(j - 1)]);
        std::vector<double> col(static_cast<std::size_t>(j - 1));
        for (auto& c : col) c = rng.chi(beta.beta) * scale;
        const double corner = rng.chi((m - j + 1) * beta.beta) * scale;
        sv = arrow_singular_values(sv, col, corner);
    }
    return sv;
}

// Generalized singular values of the beta-MANOVA ensemble, each in (0,1),
// sorted descending:
//   Lambda = BetaWishart(m,n,beta,Omega^2) squared spectrum,
//   M      = 1 / BetaWishart(p,n,beta,Lambda^{-1}) squared spectrum,
//   C      = (M+1)^{-1/2} elementwise.
inline DiagSpectrum beta_manova_gsv(const ManovaParams& params, RngStream& rng) {
    const int n = params.n;
    DiagSpectrum omega_sq(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) omega_sq[static_cast<std::size_t>(i)] = params.omega[static_cast<std::size_t>(i)] * params.omega[static_cast<std::size_t>(i)];

    const DiagSpectrum sigma = beta_wishart_sv(params.m, n, params.beta, omega_sq, rng);
    DiagSpectrum lambda_inv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) lambda_inv[static_cast<std::size_t>(i)] = 1.0 / (sigma[static_cast<std::size_t>(i)] * sigma[static_cast<std::size_t>(i)]);

    const DiagSpectrum tau = beta_wishart_sv(params.p, n, params.beta, lambda_inv, rng);
    DiagSpectrum c(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double mu = 1.0 / (tau[static_cast<std::size_t>(i)] * tau[static_cast<std::size_t>(i)]);
        c[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(mu + 1.0);
    }
    std::sort(c.begin(), c.end(), std::greater<>());
    return c;
}

}  // namespace bmanova
