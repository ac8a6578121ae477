#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qconv/modular.hpp"

#include <numeric>

using namespace qconv;

TEST_CASE("dimensions of the weight-4 spaces") {
    struct Row {
        Int N, mE, mS;
    };
    for (Row r : {Row{1, 1, 0}, Row{2, 2, 0}, Row{5, 2, 1}, Row{9, 4, 1}, Row{11, 2, 2}, Row{13, 2, 3}, Row{15, 4, 4},
                  Row{16, 6, 3}, Row{18, 8, 5}, Row{25, 6, 5}, Row{36, 12, 12}, Row{45, 8, 14}, Row{48, 12, 18},
                  Row{50, 12, 17}, Row{64, 12, 18}}) {
        CAPTURE(r.N);
        SpaceDims d = dims(r.N);
        CHECK(d.dim_eisenstein == r.mE);
        CHECK(d.dim_cusp == r.mS);
    }
    CHECK(dims(45).index == 72);
    CHECK(dims(45).genus == 3);
    CHECK_THROWS(dims(0));
}

TEST_CASE("cusp count equals the number of Gamma0(N)-inequivalent cusps by direct count") {
    // cusps a/c with c | N correspond to units of Z/gcd(c,N/c)
    for (Int N = 1; N <= 100; ++N) {
        Int c = 0;
        for (Int d : divisors(N)) {
            Int g = std::gcd(d, N / d);
            for (Int u = 0; u < g; ++u) c += std::gcd(u, g) == 1;
        }
        CHECK(dims(N).cusp_count == c);
    }
}

TEST_CASE("Ligozat conditions") {
    EtaQuotient a(45, {{3, 8}});
    auto r = ligozat_check(a);
    CHECK(r.cuspidal);
    CHECK(r.weight == 4);
    CHECK(r.leading_exponent == 1);

    EtaQuotient row14(45, {{3, -1}, {5, 3}, {9, 9}, {15, -3}});
    CHECK_FALSE(ligozat_check(row14).holomorphic);
    CHECK_FALSE(ligozat_check(row14).cuspidal);

    EtaQuotient odd(45, {{1, 4}, {3, 4}});
    CHECK_FALSE(ligozat_check(odd).sum_delta);
}

TEST_CASE("valence: cusp orders sum to 4·index/12") {
    for (Int N : {12, 16, 18, 20, 36, 45}) {
        for (const auto& e : search_cusp_quotients(N, 8)) {
            Rational total = 0;
            for (Int d : divisors(N)) {
                Rational o = cusp_order(e, d);
                CHECK(o > 0);
                total += euler_phi(std::gcd(d, N / d)) * o;
            }
            CHECK(total == ratio(dims(N).index, 3));
        }
    }
}

TEST_CASE("both search strategies agree") {
    for (Int N : {6, 10, 12, 14, 16, 18, 20, 21, 25, 27}) {
        CAPTURE(N);
        auto a = search_cusp_quotients_by_exponents(N, 6);
        auto b = search_cusp_quotients_by_orders(N, 6);
        CHECK(a == b);
        for (const auto& e : a) {
            CHECK(ligozat_check(e).cuspidal);
            CHECK(e.weight_twice() == 8);
            for (auto [d, x] : e.exponents) CHECK(std::abs(x) <= 6);
        }
    }
    CHECK(search_cusp_quotients(1, 12).empty());
}

TEST_CASE("search results are canonically ordered") {
    auto v = search_cusp_quotients(45, 12);
    REQUIRE(!v.empty());
    for (size_t i = 1; i < v.size(); ++i) {
        auto key = [](const EtaQuotient& e) { return std::make_pair(e.sum_delta_r(), e.exponent_vector()); };
        CHECK(key(v[i - 1]) < key(v[i]));
    }
}

TEST_CASE("generator names") {
    CHECK(EisensteinGen::M(3).to_string() == "M t=3");
    CHECK(EisensteinGen::Mchi(-4, 1).to_string() == "Mchi d=-4 t=1");
}
