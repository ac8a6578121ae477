#pragma once

#include "qconv/convolution.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qconv {

enum class FormKind {
    squares,  // a(x₁²+…+x₄²) + b(x₅²+…+x₈²)
    hex       // c(x₁²+x₁x₂+x₂²+x₃²+x₃x₄+x₄²) + d(…)
};

struct FormPair {
    FormKind kind = FormKind::squares;
    Int a = 1;
    Int b = 1;

    std::string to_string() const;

    friend bool operator==(const FormPair&, const FormPair&) = default;
};

/// Coprime block-factor pairs (a ≤ b) of Λ = N/4 with the power of 2 kept as one block.
std::vector<FormPair> omega4(Int level);

/// Coprime block-factor pairs (c ≤ d) of Δ = N/3 with the power of 3 kept as one block.
std::vector<FormPair> omega3(Int level);

/// 8σ(n) − 32σ(n/4), with r4(0) = 1.
Integer r4(Int n);

/// 12σ(n) − 36σ(n/3), with s4(0) = 1.
Integer s4(Int n);

struct MissingFormula : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Coprime pairs (α ≤ β) whose W values a count needs; pairs with a common factor are reduced.
std::vector<std::pair<Int, Int>> w_dependencies(const FormPair& p);

struct CatalogEntry {
    Int alpha;
    Int beta;
    std::string role;
};

/// Pairs evaluated throughout the library: the golden catalog and the representation inputs.
std::vector<CatalogEntry> known_w_catalog();

/**
 * W evaluators keyed by coprime (α ≤ β).
 *
 * W_(gα,gβ)(n) is served as W_(α,β)(n/g).  Formulas come from a basis
 * directory when one is set (files levelN.basis), otherwise from a basis
 * built by the default search.
 */
class WCatalog {
public:
    explicit WCatalog(Int truncation, std::string basis_dir = {});

    Int truncation() const { return T_; }

    /// Build or load what the pairs need; throws MissingFormula naming the level when that fails.
    void resolve(const std::vector<std::pair<Int, Int>>& pairs);

    void add(ConvolutionFormula f);
    bool has(Int alpha, Int beta) const;
    const WEvaluator& evaluator(Int alpha, Int beta) const;

    /// W_(α,β)(n) for any positive α, β; 0 for n ≤ 0.
    Rational w(Int alpha, Int beta, Int n) const;

private:
    Int T_;
    std::string dir_;
    std::map<std::pair<Int, Int>, std::unique_ptr<WEvaluator>> ev_;
};

/// N_(a,b)(n) from σ and W values; n = 0 gives 1.
Integer count_n(const FormPair& p, Int n, const WCatalog& w);

/// R_(c,d)(n) from σ and W values; n = 0 gives 1.
Integer count_r(const FormPair& p, Int n, const WCatalog& w);

/// Dispatch on p.kind.
Integer count(const FormPair& p, Int n, const WCatalog& w);

/// Exhaustive lattice count of the 4-variable form over a box, for every k ≤ n.
std::vector<Integer> quaternary_counts(FormKind kind, Int n);

/// Exhaustive lattice count for the octonary form, split into its two 4-variable blocks.
Integer lattice_oracle(const FormPair& p, Int n);

}  // namespace qconv
