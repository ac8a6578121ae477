#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qconv/convolution.hpp"

#include <numeric>

using namespace qconv;

namespace {

// Σ_{αl+βm=n} σ(l)σ(m) with σ from trial division
Integer naive_w(Int a, Int b, Int n) {
    auto sigma = [](Int m) {
        Int s = 0;
        for (Int d = 1; d <= m; ++d)
            if (m % d == 0) s += d;
        return s;
    };
    Integer s = 0;
    for (Int l = 1; a * l < n; ++l)
        if ((n - a * l) % b == 0) s += Integer(sigma(l)) * sigma((n - a * l) / b);
    return s;
}

// (αL(q^α) − βL(q^β))² from L = 1 − 24Σσ(n)qⁿ, multiplied out directly
std::vector<Integer> naive_lhs(Int a, Int b, Int T) {
    std::vector<Integer> f(T + 1, 0);
    f[0] = a - b;
    for (Int m = 1; m <= T; ++m) {
        if (m % a == 0) f[m] -= 24 * a * sigma_k(m / a, 1);
        if (m % b == 0) f[m] += 24 * b * sigma_k(m / b, 1);
    }
    std::vector<Integer> g(T + 1, 0);
    for (Int i = 0; i <= T; ++i)
        for (Int j = 0; i + j <= T; ++j) g[i + j] += f[i] * f[j];
    return g;
}

}  // namespace

TEST_CASE("lhs constant term and zero case") {
    CHECK(lhs_series(1, 5, 10).coeffs()[0] == 16);
    CHECK(lhs_series(1, 45, 10).coeffs()[0] == 1936);
    auto zero = lhs_series(1, 1, 30);
    for (const auto& c : zero.coeffs()) CHECK(c == 0);
    CHECK_THROWS_AS(lhs_series(2, 4, 10), std::invalid_argument);
}

TEST_CASE("lhs against a direct product") {
    for (auto [a, b] : std::vector<std::pair<Int, Int>>{{1, 5}, {2, 9}, {3, 16}, {4, 9}}) {
        auto want = naive_lhs(a, b, 60);
        auto got = lhs_series(a, b, 60).coeffs();
        for (Int n = 0; n <= 60; ++n) CHECK(got[n] == want[n]);
    }
}

TEST_CASE("brute-force W examples") {
    CHECK(brute_force_w(5, 9, 14) == 1);
    CHECK(brute_force_w(5, 9, 4) == 0);
    CHECK(brute_force_w(1, 9, 10) == 1);
    CHECK(brute_force_w(1, 1, 3) == 6);
    CHECK(brute_force_w(3, 16, 2) == 0);
    for (Int n = 1; n <= 80; ++n) {
        CHECK(brute_force_w(2, 9, n) == naive_w(2, 9, n));
        CHECK(brute_force_w(9, 5, n) == brute_force_w(5, 9, n));
    }
}

TEST_CASE("master identity holds for brute-force W") {
    for (auto [a, b] : std::vector<std::pair<Int, Int>>{{1, 2}, {1, 5}, {3, 5}, {2, 9}, {1, 16}}) {
        auto lhs = lhs_series(a, b, 80).coeffs();
        for (Int n = 1; n <= 80; ++n) {
            CAPTURE(a); CAPTURE(b); CAPTURE(n);
            CHECK(lhs[n] == master_rhs_known(a, b, n) - 1152 * a * b * brute_force_w(a, b, n));
        }
    }
}

TEST_CASE("solved formulas reproduce brute force") {
    for (auto [a, b] : std::vector<std::pair<Int, Int>>{{1, 2}, {1, 3}, {1, 5}, {3, 5}, {1, 9}, {2, 9}}) {
        CAPTURE(a); CAPTURE(b);
        BasisSpec basis = build_default_basis(a * b);
        FitResult fit = fit_formula(a, b, basis);
        CHECK_FALSE(fit.first_mismatch.has_value());
        CHECK(fit.formula.sum_X() == Rational((a - b) * (a - b)));
        WEvaluator ev(fit.formula, 150);
        for (Int n = 1; n <= 150; ++n) CHECK(ev(n) == Rational(brute_force_w(a, b, n)));
        CHECK_THROWS_AS(ev(0), std::out_of_range);
        CHECK_THROWS_AS(ev(151), std::out_of_range);
    }
}

TEST_CASE("swapping alpha and beta gives the same values") {
    BasisSpec basis = build_default_basis(45);
    WEvaluator e1(solve_formula(5, 9, basis), 100), e2(solve_formula(9, 5, basis), 100);
    for (Int n = 1; n <= 100; ++n) CHECK(e1(n) == e2(n));
}

TEST_CASE("formula serialization") {
    BasisSpec basis = build_default_basis(15);
    ConvolutionFormula f = solve_formula(3, 5, basis);
    std::string text = serialize_formula(f);
    CHECK(parse_formula(text, basis) == f);
    CHECK(serialize_formula(solve_formula(3, 5, build_default_basis(15))) == text);

    BasisSpec other = build_default_basis(15, 2 * basis.truncation);
    CHECK_THROWS(parse_formula(text, other));
}

TEST_CASE("W display tail") {
    BasisSpec basis = build_default_basis(5);
    WDisplay d = w_display(solve_formula(1, 5, basis));
    CHECK(d.tail_alpha_const == ratio(1, 24));
    CHECK(d.tail_alpha_n == ratio(-1, 20));
    CHECK(d.tail_beta_const == ratio(1, 24));
    CHECK(d.tail_beta_n == ratio(-1, 4));
}
