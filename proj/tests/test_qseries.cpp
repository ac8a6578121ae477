#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qconv/modular.hpp"

using namespace qconv;

namespace {

using S = QSeries<Integer>;

// ∏_{n≥1} (1 − q^{tn}) by repeated multiplication with binomials.
S naive_product(Int t, Int T) {
    std::vector<Integer> c(T + 1, 0);
    c[0] = 1;
    for (Int n = 1; t * n <= T; ++n)
        for (Int i = T; i >= t * n; --i) c[i] -= c[i - t * n];
    return S::from_coeffs(T, c);
}

// 1 / ∏ (1 − q^{tn}): multiply by geometric series.
S naive_inverse_product(Int t, Int T) {
    std::vector<Integer> c(T + 1, 0);
    c[0] = 1;
    for (Int n = 1; t * n <= T; ++n)
        for (Int i = t * n; i <= T; ++i) c[i] += c[i - t * n];
    return S::from_coeffs(T, c);
}

// Partitions of n by counting multisets of parts directly.
std::vector<Integer> partitions(Int T) {
    std::vector<std::vector<Integer>> p(T + 1, std::vector<Integer>(T + 1, 0));  // p[n][k]: parts ≤ k
    for (Int k = 0; k <= T; ++k) p[0][k] = 1;
    for (Int n = 1; n <= T; ++n)
        for (Int k = 1; k <= T; ++k) p[n][k] = p[n][k - 1] + (n >= k ? p[n - k][k] : Integer(0));
    std::vector<Integer> out(T + 1);
    for (Int n = 0; n <= T; ++n) out[n] = p[n][T];
    return out;
}

S naive_eta(const EtaQuotient& e, Int T) {
    Int n0 = e.sum_delta_r() / 24;
    S body = S::constant(T, 1);
    for (auto [d, r] : e.exponents)
        for (int i = 0; i < std::abs(r); ++i) body = body * (r > 0 ? naive_product(d, T) : naive_inverse_product(d, T));
    S out(T);
    for (Int i = 0; i + n0 <= T; ++i) out[i + n0] = body[i];
    return out;
}

}  // namespace

TEST_CASE("arithmetic truncates to the shorter operand") {
    S a = S::from_coeffs(5, {Integer(1), Integer(2), Integer(3)});
    S b = S::from_coeffs(3, {Integer(1), Integer(1)});
    CHECK((a + b).truncation() == 3);
    CHECK((a * b)[2] == 5);
    CHECK((a - a) == S(5));
    CHECK(dilate(a, 2)[4] == 3);
    CHECK(shift(a, 2)[2] == 1);
}

TEST_CASE("Euler product matches the naive product") {
    CHECK(euler_product<Integer>(300) == naive_product(1, 300));
}

TEST_CASE("pentagonal product times partition generating function is one") {
    const Int T = 300;
    S p = S::from_coeffs(T, partitions(T));
    CHECK(euler_product<Integer>(T) * p == S::constant(T, 1));
    CHECK(inverse(euler_product<Integer>(T)) == p);
}

TEST_CASE("inverse and power") {
    S f = euler_product<Integer>(80);
    S cube = f * f * f;
    CHECK(power(f, 3) == cube);
    CHECK(power(f, -2) * f * f == S::constant(80, 1));
    CHECK(power(f, 0) == S::constant(80, 1));
    QSeries<Rational> g = series_cast<Rational>(S::from_coeffs(10, {Integer(1), Integer(3)}));
    CHECK((inverse(g) * g) == QSeries<Rational>::constant(10, 1));
    CHECK_THROWS(inverse(S::from_coeffs(5, {Integer(2)})));
}

TEST_CASE("eta quotients match naive products") {
    for (const auto& e : {EtaQuotient(45, {{3, 8}}), EtaQuotient(45, {{1, 3}, {3, 1}, {5, -3}, {15, 7}}),
                          EtaQuotient(64, {{2, -4}, {4, 10}, {8, -1}, {32, -3}, {64, 6}}),
                          EtaQuotient(36, {{1, -5}, {2, 11}, {3, 5}, {4, -5}, {6, -1}, {9, -2}, {36, 5}})})
        CHECK(eta_quotient_series(e, 120) == naive_eta(e, 120));
}

TEST_CASE("eta quotient bookkeeping") {
    EtaQuotient e(45, {{1, 3}, {3, 1}, {5, -3}, {15, 7}, {9, 0}});
    CHECK(e.exponents.count(9) == 0);
    CHECK(e.weight_twice() == 8);
    CHECK(e.sum_delta_r() == 96);
    CHECK(e.leading_exponent() == 4);
    CHECK(e.exponent_vector() == std::vector<int>{3, 1, -3, 0, 7, 0});
    CHECK(EtaQuotient::from_vector(45, e.exponent_vector()) == e);
    CHECK(e.to_string() == "1:3 3:1 5:-3 15:7");
    CHECK_THROWS(EtaQuotient(45, {{2, 4}}));
    CHECK_THROWS(eta_quotient_series(EtaQuotient(4, {{1, 1}}), 10));
    CHECK_THROWS(eta_quotient_series(EtaQuotient(4, {{1, -24}}), 10));
}

TEST_CASE("Eisenstein series coefficients") {
    const Int T = 60;
    auto L = eisenstein_series(EisensteinGen::L(1), T);
    auto M = eisenstein_series(EisensteinGen::M(3), T);
    CHECK(L[0] == 1);
    CHECK(M[0] == 1);
    for (Int n = 1; n <= T; ++n) {
        CHECK(L[n] == -24 * sigma_k(n, 1));
        CHECK(M[n] == (n % 3 ? Integer(0) : 240 * sigma_k(n / 3, 3)));
    }
    auto chi = eisenstein_series(EisensteinGen::Mchi(-4, 1), T, CharacterReading::product);
    auto plain = eisenstein_series(EisensteinGen::Mchi(-4, 1), T, CharacterReading::plain);
    CHECK(chi == plain);
    CHECK(chi[0] == 0);
    for (Int n = 1; n <= T; ++n) {
        Integer s = 0;
        for (Int d = 1; d <= n; ++d)
            if (n % d == 0) s += kronecker(-4, d) * kronecker(-4, n / d) * Integer(d * d * d);
        CHECK(chi[n] == s);
    }
}

TEST_CASE("truncation below the leading exponent gives zero") {
    EtaQuotient e(45, {{3, 1}, {9, 1}, {15, -1}, {45, 7}});
    auto s = eta_quotient_series(e, 5);
    CHECK(s == QSeries<Integer>(5));
    auto full = eta_quotient_series(e, 20);
    for (Int n = 0; n <= 12; ++n) CHECK(full.coeffs()[n] == 0);
    CHECK(full.coeffs()[13] == 1);
}
