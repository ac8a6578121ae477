#pragma once

#include "qconv/basis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qconv {

/// (αL(q^α) − βL(q^β))² to truncation T; α, β coprime.
QSeries<Integer> lhs_series(Int alpha, Int beta, Int T);

/// Known part of the q^n coefficient of the master identity, i.e. the LHS coefficient plus 1152αβ W(n).
Integer master_rhs_known(Int alpha, Int beta, Int n);

struct CharacterCoefficient {
    Int discriminant = 0;
    Int dilation = 1;
    Rational value;

    friend bool operator==(const CharacterCoefficient&, const CharacterCoefficient&) = default;
};

struct ConvolutionFormula {
    Int alpha = 1;
    Int beta = 1;
    BasisSpec basis;
    std::vector<std::pair<Int, Rational>> X;  // (δ, X_δ) in basis order
    std::vector<CharacterCoefficient> Z;      // in basis order
    std::vector<Rational> Y;                  // Y_1 .. Y_{m_S}

    /// Coefficients aligned with basis_series(basis, ·).
    Vector<Rational> coefficient_vector() const;
    static ConvolutionFormula from_coefficients(Int alpha, Int beta, const BasisSpec& basis, const Vector<Rational>& c);

    Rational sum_X() const;

    friend bool operator==(const ConvolutionFormula&, const ConvolutionFormula&) = default;
};

struct FitResult {
    ConvolutionFormula formula;
    std::optional<Int> first_mismatch;  // first n ≤ T where the basis combination differs from the LHS
    Int checked_upto = 0;
};

/// Solve at the basis sample indices and check every coefficient up to the basis truncation.
FitResult fit_formula(Int alpha, Int beta, const BasisSpec& basis);

/// fit_formula that throws on a singular system or a verification mismatch.
ConvolutionFormula solve_formula(Int alpha, Int beta, const BasisSpec& basis);

/// First index ≤ T (including 0) where the reconstructed combination differs from the LHS.
std::optional<Int> identity_mismatch(const ConvolutionFormula& f, Int T);

/// Coefficients of the closed form of W_(α,β)(n).
struct WDisplay {
    std::vector<std::pair<Int, Rational>> sigma3;  // coefficient of σ₃(n/δ)
    std::vector<CharacterCoefficient> character;   // coefficient of the M_χ(q^s) term
    std::vector<Rational> cusp;                    // coefficient of 𝔟_j(n)
    Rational tail_alpha_const, tail_alpha_n;       // (c₀ + c₁n) σ(n/α)
    Rational tail_beta_const, tail_beta_n;         // (c₀ + c₁n) σ(n/β)
};

WDisplay w_display(const ConvolutionFormula& f);

class WEvaluator {
public:
    WEvaluator(ConvolutionFormula f, Int T);

    Int truncation() const { return T_; }
    const ConvolutionFormula& formula() const { return f_; }

    /// Closed-form W_(α,β)(n) for 1 ≤ n ≤ T (an integer for a correct formula).
    Rational operator()(Int n) const;

private:
    ConvolutionFormula f_;
    Int T_;
    std::vector<QSeries<Integer>> series_;  // non-M basis elements: characters then cusps
    Vector<Rational> coeffs_;
};

Rational evaluate_w(const WEvaluator& ev, Int n);

/// Σ_{αl+βm=n} σ(l)σ(m) by direct enumeration.
Integer brute_force_w(Int alpha, Int beta, Int n);

std::string serialize_formula(const ConvolutionFormula& f);
/// Parse against a basis; rejects files whose basis_hash differs.
ConvolutionFormula parse_formula(const std::string& text, const BasisSpec& basis);
void save_formula(const ConvolutionFormula& f, const std::string& path);
ConvolutionFormula load_formula(const std::string& path, const BasisSpec& basis);

}  // namespace qconv
