#pragma once

#include "qconv/rational.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qconv {

using Int = std::int64_t;

/// σ_k(n) = Σ_{d|n} d^k, and 0 for n ≤ 0.
Integer sigma_k(Int n, unsigned k);

/// σ_k(n/d) when d | n, otherwise 0.
Integer sigma_k_at_ratio(Int n, Int d, unsigned k);

/// Positive divisors of n in increasing order.
std::vector<Int> divisors(Int n);

/// Prime factorisation as (p, e) pairs with p increasing.
std::vector<std::pair<Int, int>> factorize(Int n);

/// Exponent of the prime p in n (n ≠ 0).
int valuation(Int n, Int p);

Int euler_phi(Int n);

/// Kronecker symbol (m|n).
int kronecker(Int m, Int n);

struct KroneckerChar {
    Int discriminant = 1;
    Int conductor = 1;

    KroneckerChar() = default;
    explicit KroneckerChar(Int disc);

    int operator()(Int n) const { return kronecker(discriminant, n); }

    friend bool operator==(const KroneckerChar&, const KroneckerChar&) = default;
};

}  // namespace qconv
