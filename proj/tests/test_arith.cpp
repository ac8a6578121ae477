#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qconv/arith.hpp"
#include "qconv/bareiss.hpp"

#include <functional>
#include <numeric>

using namespace qconv;

namespace {

Integer naive_sigma(Int n, unsigned k) {
    Integer s = 0;
    for (Int d = 1; d <= n; ++d)
        if (n % d == 0) {
            Integer p = 1;
            for (unsigned i = 0; i < k; ++i) p *= d;
            s += p;
        }
    return s;
}

bool is_prime(Int p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Legendre symbol by Euler's criterion.
int euler_criterion(Int a, Int p) {
    a = ((a % p) + p) % p;
    if (a == 0) return 0;
    Int r = 1, b = a, e = (p - 1) / 2;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("sigma_k agrees with divisor enumeration") {
    for (unsigned k : {0u, 1u, 3u})
        for (Int n = 1; n <= 300; ++n) CHECK(sigma_k(n, k) == naive_sigma(n, k));
    CHECK(sigma_k(0, 3) == 0);
    CHECK(sigma_k(-4, 1) == 0);
    CHECK(sigma_k(12, 1) == 28);
    CHECK(sigma_k(6, 3) == 252);
}

TEST_CASE("sigma_k is multiplicative") {
    for (Int m = 1; m <= 60; ++m)
        for (Int n = 1; n <= 60; ++n)
            if (std::gcd(m, n) == 1) {
                CHECK(sigma_k(m * n, 1) == sigma_k(m, 1) * sigma_k(n, 1));
                CHECK(sigma_k(m * n, 3) == sigma_k(m, 3) * sigma_k(n, 3));
            }
}

TEST_CASE("sigma at a ratio") {
    CHECK(sigma_k_at_ratio(45, 5, 1) == sigma_k(9, 1));
    CHECK(sigma_k_at_ratio(44, 5, 1) == 0);
}

TEST_CASE("divisors, factorisation, phi") {
    CHECK(divisors(1) == std::vector<Int>{1});
    CHECK(divisors(45) == std::vector<Int>{1, 3, 5, 9, 15, 45});
    CHECK_THROWS(divisors(0));
    for (Int n = 1; n <= 500; ++n) {
        Int prod = 1;
        for (auto [p, e] : factorize(n)) {
            CHECK(is_prime(p));
            for (int i = 0; i < e; ++i) prod *= p;
            CHECK(valuation(n, p) == e);
        }
        CHECK(prod == n);
        Int coprime = 0;
        for (Int k = 1; k <= n; ++k) coprime += std::gcd(k, n) == 1;
        CHECK(euler_phi(n) == coprime);
    }
}

TEST_CASE("Kronecker symbol matches Euler's criterion at odd primes") {
    for (Int p = 3; p < 200; ++p) {
        if (!is_prime(p)) continue;
        for (Int a : {-4, -3, -7, 5, 8, 12})
            CHECK(kronecker(a, p) == euler_criterion(a, p));
    }
}

TEST_CASE("Kronecker characters are periodic and completely multiplicative") {
    for (Int D : {-3, -4, -7, -8, 5, 8, 12, 13}) {
        KroneckerChar chi(D);
        for (Int n = 1; n <= 400; ++n) {
            CHECK(chi(n + chi.conductor) == chi(n));
            for (Int m = 1; m <= 40; ++m) CHECK(chi(m * n) == chi(m) * chi(n));
        }
    }
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(-3, 0) == 0);
    CHECK(kronecker(1, 0) == 1);
    CHECK(KroneckerChar(-4).conductor == 4);
    CHECK(KroneckerChar(-3).conductor == 3);
    CHECK_THROWS(KroneckerChar(-5));
    CHECK_THROWS(KroneckerChar(0));
}

TEST_CASE("rational parsing") {
    CHECK(parse_rational("-6/4") == ratio(-3, 2));
    CHECK(to_string(parse_rational("10/5")) == "2");
    CHECK(to_string(ratio(3, -6)) == "-1/2");
    CHECK_THROWS(parse_rational("1/0"));
    CHECK_THROWS(parse_rational("1 /2"));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational(""));
}

TEST_CASE("Bareiss determinant and rank") {
    Matrix<Rational> A(3, 3);
    A << 2, 1, 1, 1, 3, 2, 1, 0, 0;
    CHECK(determinant(A) == -1);
    Matrix<Rational> B(3, 3);
    B << ratio(1, 2), 1, 2, 1, 2, 4, 0, 1, 1;
    CHECK(determinant(B) == 0);
    CHECK(rank(B) == 2);
    Vector<Rational> b(3);
    b << 1, 2, 3;
    auto x = solve_exact(A, b);
    REQUIRE(x);
    CHECK(A * *x == b);
    CHECK_FALSE(solve_exact(B, b));
}

TEST_CASE("Bareiss determinant agrees with cofactor expansion") {
    // Hilbert-like matrices have small exact determinants
    for (int n = 1; n <= 5; ++n) {
        Matrix<Rational> H(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) H(i, j) = ratio(1, i + j + 1);
        std::function<Rational(const Matrix<Rational>&)> cof = [&](const Matrix<Rational>& M) -> Rational {
            if (M.rows() == 1) return M(0, 0);
            Rational s = 0;
            for (Eigen::Index j = 0; j < M.cols(); ++j) {
                Matrix<Rational> m(M.rows() - 1, M.cols() - 1);
                for (Eigen::Index r = 1; r < M.rows(); ++r)
                    for (Eigen::Index c = 0, cc = 0; c < M.cols(); ++c)
                        if (c != j) m(r - 1, cc++) = M(r, c);
                s += (j % 2 ? -1 : 1) * M(0, j) * cof(m);
            }
            return s;
        };
        CHECK(determinant(H) == cof(H));
    }
}

TEST_CASE("incremental rank") {
    IncrementalRank r(3);
    Vector<Integer> a(3), b(3), c(3);
    a << 1, 2, 3;
    b << 2, 4, 6;
    c << 0, 1, 1;
    CHECK(r.add(a));
    CHECK_FALSE(r.add(b));
    CHECK(r.add(c));
    CHECK(r.rank() == 2);
}
