#pragma once

#include "qconv/qseries.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qconv {

struct SpaceDims {
    Int level = 1;
    Int dim_eisenstein = 0;
    Int dim_cusp = 0;
    Int index = 1;
    Int cusp_count = 1;
    Int elliptic2 = 0;
    Int elliptic3 = 0;
    Int genus = 0;
};

/// Dimensions of E₄(Γ₀(N)) and S₄(Γ₀(N)) with the classical invariants of Γ₀(N).
SpaceDims dims(Int N);

struct LigozatResult {
    bool sum_delta = false;     // Σ δ r_δ ≡ 0 (mod 24)
    bool sum_codelta = false;   // Σ (N/δ) r_δ ≡ 0 (mod 24)
    bool square = false;        // ∏ δ^{r_δ} is a rational square
    bool weight_ok = false;     // 0 < Σ r_δ ≡ 0 (mod 4)
    bool holomorphic = false;   // every order sum ≥ 0
    bool vanishing = false;     // every order sum > 0
    bool modular = false;
    bool cuspidal = false;
    Rational weight;
    Rational leading_exponent;
    std::vector<Rational> order_sums;  // aligned with divisors(level)

    std::string describe() const;
};

LigozatResult ligozat_check(const EtaQuotient& e);

/// Order of e at the cusps with denominator d, in the local parameter.
Rational cusp_order(const EtaQuotient& e, Int d);

/**
 * Every weight-4 cusp eta quotient of level N with |r_δ| ≤ bound,
 * sorted by (leading exponent, exponent vector).
 */
std::vector<EtaQuotient> search_cusp_quotients(Int N, int bound);

/// Same contract, exhaustive over exponent vectors (slow reference path).
std::vector<EtaQuotient> search_cusp_quotients_by_exponents(Int N, int bound);

/// Same contract, exhaustive over cusp-order vectors.
std::vector<EtaQuotient> search_cusp_quotients_by_orders(Int N, int bound);

enum class CharacterReading {
    product,  // Σ_{d|n} χ(d) χ(n/d) d³
    plain     // χ(n) σ₃(n)
};

struct EisensteinGen {
    enum class Kind { L, M, Mchi };

    Kind kind = Kind::M;
    std::optional<KroneckerChar> character;
    Int dilation = 1;

    static EisensteinGen L(Int t) { return {Kind::L, std::nullopt, t}; }
    static EisensteinGen M(Int t) { return {Kind::M, std::nullopt, t}; }
    static EisensteinGen Mchi(Int disc, Int t) { return {Kind::Mchi, KroneckerChar(disc), t}; }

    std::string to_string() const;

    friend bool operator==(const EisensteinGen&, const EisensteinGen&) = default;
};

QSeries<Integer> eisenstein_series(const EisensteinGen& g, Int T,
                                   CharacterReading reading = CharacterReading::product);

}  // namespace qconv
