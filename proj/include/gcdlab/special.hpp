// Scalar special functions shared by the statistics modules.
#pragma once

#include <cstdint>

namespace gcdlab {

/// Standard normal CDF, accurate to ~1e-15 via erfc.
double normal_cdf(double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a), a > 0, x >= 0.
double gamma_q(double a, double x);

/// Survival function of the chi-square distribution with `dof` degrees of freedom.
double chi_square_sf(double stat, int dof);

/// log of the binomial coefficient C(n, k) via lgamma.
double log_binomial(std::int64_t n, std::int64_t k);

/// FNV-1a 64-bit hash over a byte range.
std::uint64_t fnv1a64(const void* data, std::size_t bytes);

}  // namespace gcdlab
