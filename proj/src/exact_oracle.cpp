#include "gcdlab/exact_oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gcdlab {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace

ExactProb exact_pair_prob(std::uint64_t n, std::uint64_t ell, const PrimeTable& table) {
    if (n == 0) throw std::domain_error("exact_pair_prob: n must be positive");
    if (ell == 0) throw std::domain_error("exact_pair_prob: ell must be positive");
    if (n > 3'000'000'000ULL) throw std::domain_error("exact_pair_prob: n too large for exact count");

    const auto total = static_cast<std::int64_t>(n * n);
    if (ell > n) return {0, total};

    const std::uint64_t reduced = n / ell;
    if (table.limit < reduced)
        throw std::domain_error("exact_pair_prob: table limit below n/ell");

    // #{(x,y) <= N^2 : gcd(x,y) = 1} = sum_m mobius(m) * floor(N/m)^2.
    std::int64_t count = 0;
    for (std::uint64_t m = 1; m <= reduced; ++m) {
        const int mu = table.mobius_table[m];
        if (mu == 0) continue;
        const auto q = static_cast<std::int64_t>(reduced / m);
        count += mu * q * q;
    }
    return {count, total};
}

ExactProb exact_triple_prob(std::uint64_t n, std::uint64_t ell, const PrimeTable& table) {
    if (n == 0) throw std::domain_error("exact_triple_prob: n must be positive");
    if (ell == 0) throw std::domain_error("exact_triple_prob: ell must be positive");
    if (n > 2'000'000ULL) throw std::domain_error("exact_triple_prob: n too large for exact count");

    const auto total = static_cast<std::int64_t>(n * n * n);
    if (ell > n) return {0, total};

    const std::uint64_t reduced = n / ell;
    if (table.limit < reduced)
        throw std::domain_error("exact_triple_prob: table limit below n/ell");

    // coprime_to[x] = #{y <= N : gcd(x,y) = 1}, filled by scattering
    // mobius(d) * floor(N/d) over the multiples of each squarefree d.
    std::vector<std::int64_t> coprime_to(reduced + 1, 0);
    for (std::uint64_t d = 1; d <= reduced; ++d) {
        const int mu = table.mobius_table[d];
        if (mu == 0) continue;
        const auto contrib = static_cast<std::int64_t>(mu) * static_cast<std::int64_t>(reduced / d);
        for (std::uint64_t x = d; x <= reduced; x += d) coprime_to[x] += contrib;
    }

    std::int64_t count = 0;
    for (std::uint64_t x = 1; x <= reduced; ++x) count += coprime_to[x] * coprime_to[x];
    return {count, total};
}

ExactStats exact_variance(std::uint64_t n, std::uint64_t ell, const PrimeTable& table) {
    if (n < 3) throw std::domain_error("exact_variance: n must be >= 3");

    ExactStats s;
    s.n = n;
    s.ell = ell;
    s.alpha = exact_pair_prob(n, ell, table);
    s.beta = exact_triple_prob(n, ell, table);

    const long double a = s.alpha.value_l();
    const long double b = s.beta.value_l();
    const long double pairs = static_cast<long double>(n) * (n - 1) / 2.0L;
    const long double triples6 = static_cast<long double>(n) * (n - 1) * (n - 2);
    s.sigma_n_sq = static_cast<double>(pairs * (a - a * a) + triples6 * (b - a * a));
    return s;
}

LimitVariance limit_variance(std::uint64_t ell, int d, const PrimeTable& table) {
    if (ell == 0) throw std::domain_error("limit_variance: ell must be positive");
    if (d < 2) throw std::domain_error("limit_variance: d must be >= 2");
    if (d >= 3 && ell > 1)
        throw std::domain_error("limit_variance: unsupported combination d >= 3 with ell > 1");

    LimitVariance lv;
    if (d == 2) {
        const auto triple = euler_product(ProductFamily::Triple, 2, table.limit, table);
        const double ell3 = static_cast<double>(ell) * ell * ell;
        const double pi2 = std::numbers::pi * std::numbers::pi;
        lv.value = triple.value / ell3 - 36.0 / (ell3 * static_cast<double>(ell) * pi2 * pi2);
        lv.tail_bound = triple.value / ell3 * std::expm1(triple.tail_bound);
    } else {
        const auto triple = euler_product(ProductFamily::Triple, d, table.limit, table);
        const auto pair = euler_product(ProductFamily::CoprimePair, d, table.limit, table);
        lv.value = triple.value - pair.value * pair.value;
        lv.tail_bound = triple.value * std::expm1(triple.tail_bound) +
                        pair.value * pair.value * std::expm1(2.0 * pair.tail_bound);
    }
    return lv;
}

std::uint64_t squarefree_count(std::uint64_t n, const PrimeTable& table) {
    if (n == 0) throw std::domain_error("squarefree_count: n must be >= 1");
    const std::uint64_t r = isqrt_u64(n);
    if (table.limit < r) throw std::domain_error("squarefree_count: table limit below sqrt(n)");

    std::int64_t count = 0;
    for (std::uint64_t d = 1; d <= r; ++d) {
        const int mu = table.mobius_table[d];
        if (mu == 0) continue;
        count += static_cast<std::int64_t>(mu) * static_cast<std::int64_t>(n / (d * d));
    }
    return static_cast<std::uint64_t>(count);
}

double squarefree_density() {
    const double pi2 = std::numbers::pi * std::numbers::pi;
    return 6.0 / pi2;
}

}  // namespace gcdlab
