// Probability measures over truncated prime-digit state spaces: binary
// states for the coprime problem, mixed ternary/binary states for a target
// gcd ell > 1. Provides the coprimality kernels, the quadratic pair
// functional and relative entropy against the reference digit measure.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gcdlab/prime_table.hpp"
#include "gcdlab/sampler.hpp"

namespace gcdlab {

/// Which reading of the mixed-state kernel to use. Divisibility is the
/// default: a shared ternary 1 (both integers exactly divisible by q^beta)
/// keeps the gcd exponent at beta and is allowed; only a shared 2 is
/// forbidden. StrictPhrase additionally forbids shared 1s.
enum class KernelVariant { Divisibility, StrictPhrase };

/// Shape of a truncated state space. ternary_primes holds the distinct prime
/// divisors q_i of ell with their exponents beta_i; binary_primes holds the
/// tail primes (the smallest primes distinct from all q_i). A pure binary
/// space has no ternary digits and ell = 1.
struct StateShape {
    std::uint64_t ell = 1;
    std::vector<std::uint32_t> ternary_primes;
    std::vector<std::uint32_t> ternary_exponents;
    std::vector<std::uint32_t> binary_primes;

    int ternary_count() const { return static_cast<int>(ternary_primes.size()); }
    int binary_count() const { return static_cast<int>(binary_primes.size()); }
    std::size_t ternary_states() const;
    std::size_t state_count() const { return ternary_states() << binary_count(); }
    bool same_shape(const StateShape& other) const;

    /// Flat index of (ternary digits t, binary mask b): t * 2^k + b.
    std::size_t index(std::size_t ternary_index, std::uint64_t binary_mask) const {
        return (ternary_index << binary_count()) | binary_mask;
    }
};

/// Binary space over the first k primes.
StateShape binary_shape(int k, const PrimeTable& table);

/// Mixed space for a target gcd ell > 1 with k binary tail digits.
StateShape mixed_shape(std::uint64_t ell, int k, const PrimeTable& table);

/// Weights plus the strictly positive reference measure on the same states.
struct TruncatedMeasure {
    StateShape shape;
    Eigen::ArrayXd weights;
    Eigen::ArrayXd reference;
};

/// The reference digit measure: independent Bernoulli(1/p) binary digits and
/// g(q_i) ternary digit weights; weights initialized to the reference.
TruncatedMeasure reference_measure(const StateShape& shape);

/// Throws unless weights are nonnegative, sum to 1 within 1e-12, match the
/// reference in size, and the reference is strictly positive.
void validate_measure(const TruncatedMeasure& mu);

/// Binary coprimality kernel: 1 iff no position carries a 1 in both patterns.
int kernel_f(DigitPattern a, DigitPattern b);

/// Mixed state: ternary digit block (base-3 packed, digit 0 first) plus
/// binary tail mask.
struct MixedState {
    std::uint32_t ternary = 0;
    std::uint64_t binary = 0;
    int m = 0;
    int k = 0;
};

/// Mixed kernel: 1 iff no ternary digit of either state is 0, the states do
/// not share a forbidden ternary digit (per the variant), and the binary
/// tails share no common 1.
int kernel_f_ell(const MixedState& a, const MixedState& b,
                 KernelVariant variant = KernelVariant::Divisibility);

/// F(mu) = sum over state pairs with kernel 1 of mu(a) mu(b). Binary spaces
/// use the complement-subset-sum transform in O(k 2^k); mixed spaces use the
/// direct double sum below 2^10 states and a factorized transform otherwise.
double quadratic_functional(const TruncatedMeasure& mu,
                            KernelVariant variant = KernelVariant::Divisibility);

/// Interaction field G(a) = sum_b kernel(a,b) mu(b); quadratic_functional is
/// (weights * G).sum().
Eigen::ArrayXd interaction_field(const StateShape& shape, const Eigen::ArrayXd& weights,
                                 KernelVariant variant = KernelVariant::Divisibility);

/// KL(mu || reference) with the 0 log 0 = 0 convention. Finite because the
/// reference is strictly positive.
double kl_divergence(const TruncatedMeasure& mu);

/// Empirical measure of a batch of binary digit patterns on a binary shape,
/// with the reference attached.
TruncatedMeasure empirical_measure(const PatternBatch& patterns, const StateShape& shape);

}  // namespace gcdlab
