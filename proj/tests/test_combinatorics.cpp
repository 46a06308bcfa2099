#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "bmanova/partition.hpp"
#include "bmanova/special.hpp"

using namespace bmanova;

namespace {

// independent recursive count of partitions of k with at most max_len parts
long long count_partitions(int k, int max_len, int max_part) {
    if (k == 0) return 1;
    if (max_len == 0 || max_part == 0) return 0;
    long long total = 0;
    for (int p = std::min(k, max_part); p >= 1; --p) total += count_partitions(k - p, max_len - 1, p);
    return total;
}

}  // namespace

TEST_CASE("partitions_of enumerates exactly once in decreasing lex order") {
    CHECK(partitions_of(0, 3) == std::vector<Partition>{Partition{}});
    CHECK(partitions_of(3, 2) == std::vector<Partition>{Partition{3}, Partition{2, 1}});
    CHECK(partitions_of(4, 4, 1) == std::vector<Partition>{Partition{1, 1, 1, 1}});
    CHECK(partitions_of(5, 2, 2).empty());  // unsatisfiable constraints

    for (int k = 0; k <= 12; ++k)
        for (int n = 1; n <= 6; ++n) {
            const auto parts = partitions_of(k, n);
            CHECK(static_cast<long long>(parts.size()) == count_partitions(k, n, k == 0 ? 1 : k));
            for (std::size_t i = 1; i < parts.size(); ++i) {
                // decreasing lexicographic: previous > current
                CHECK(parts[i - 1].parts() > parts[i].parts());
            }
        }
}

TEST_CASE("generalized Pochhammer values and recursion") {
    BetaParam b2(2.0);
    CHECK(gen_pochhammer(5.0, Partition{}, b2) == 1.0);
    CHECK(gen_pochhammer(3.0, Partition{1}, b2) == 3.0);
    // (3)_(2,1) at beta=2: (3)(4) * (3-1) = 24
    CHECK(gen_pochhammer(3.0, Partition{2, 1}, b2) == Catch::Approx(24.0).epsilon(1e-14));

    // one-box recursion (a)_{kappa} = (a)_{parent} * (a - (i-1)beta/2 + kappa_i - 1)
    for (double beta : {0.5, 1.0, 2.5}) {
        BetaParam bp(beta);
        for (int k = 1; k <= 8; ++k)
            for (const auto& kappa : partitions_of(k, 5)) {
                auto parent = kappa.parts();
                const int i = kappa.length() - 1;
                parent[static_cast<std::size_t>(i)] -= 1;
                const double factor = 2.7 - 0.5 * i * beta + kappa.part(i) - 1;
                CHECK(gen_pochhammer(2.7, kappa, bp) ==
                      Catch::Approx(gen_pochhammer(2.7, Partition(parent), bp) * factor).margin(1e-12));
            }
    }

    // log-sign variant agrees with the product form
    const auto ls = gen_pochhammer_log(-2.0, Partition{2, 1}, BetaParam(1.0));
    CHECK(ls.value() == Catch::Approx(gen_pochhammer(-2.0, Partition{2, 1}, BetaParam(1.0))).epsilon(1e-12));
    CHECK(gen_pochhammer_log(-2.0, Partition{4}, BetaParam(1.0)).sign == 0);
}

TEST_CASE("log_gen_gamma reduces to scalar lgamma and flags poles") {
    for (double c : {0.5, 1.0, 2.5, 10.0})
        for (double beta : {0.7, 2.0})
            CHECK(log_gen_gamma(c, 1, BetaParam(beta)) == Catch::Approx(std::lgamma(c)).margin(1e-13));

    // Gamma_2 at beta = 2, c = 2: pi^{n(n-1)beta/4} Gamma(2) Gamma(1) = pi.
    CHECK(log_gen_gamma(2.0, 2, BetaParam(2.0)) ==
          Catch::Approx(std::log(std::numbers::pi)).margin(1e-13));
    CHECK_THROWS_AS(log_gen_gamma(0.4, 2, BetaParam(1.0)), std::domain_error);
}

TEST_CASE("log_K values") {
    CHECK(std::exp(log_K(1, 1, BetaParam(2.0))) == Catch::Approx(2.0).epsilon(1e-13));
    CHECK(std::isfinite(log_K(7, 4, BetaParam(2.5))));
    CHECK_THROWS_AS(log_K(3, 4, BetaParam(1.0)), std::invalid_argument);
}

TEST_CASE("Gauss 2F1 closed form at the identity") {
    // a = 0 collapses the ratio to 1
    CHECK(log_gauss_2f1_identity(0.0, 1.3, 5.0, 3, BetaParam(2.0)) == Catch::Approx(0.0).margin(1e-12));
    // n = 1 is the classical scalar Gauss formula
    const double a = 0.5, b = 1.0, c = 3.0;
    const double classical =
        std::lgamma(c) + std::lgamma(c - a - b) - std::lgamma(c - a) - std::lgamma(c - b);
    CHECK(log_gauss_2f1_identity(a, b, c, 1, BetaParam(1.7)) == Catch::Approx(classical).margin(1e-13));
}
