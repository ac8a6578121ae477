#pragma once

#include "qconv/modular.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qconv {

struct CharacterConfig {
    Int level = 1;
    std::vector<std::pair<KroneckerChar, std::vector<Int>>> entries;

    Int generator_count() const;
};

/// Built-in character choices for levels 9, 16, 18, 25, 36, 45, 48, 50, 64; empty otherwise.
CharacterConfig default_character_config(Int N);

/// m_E minus the number of Eisenstein generators the config yields (positive means too few).
Int eisenstein_shortfall(const CharacterConfig& cfg);

/// Truncation used when none is requested: max(4N, 10(m_E + m_S)).
Int default_truncation(Int N);

struct BasisSpec {
    Int level = 1;
    Int truncation = 0;
    std::vector<EisensteinGen> eisenstein_part;
    std::vector<EtaQuotient> cusp_part;
    std::vector<Int> sample_indices;
    CharacterReading reading = CharacterReading::product;

    Int size() const { return static_cast<Int>(eisenstein_part.size() + cusp_part.size()); }

    friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

struct BuildOptions {
    bool keep_order = false;        // use candidates in the given order instead of the canonical one
    bool require_cuspidal = true;   // drop candidates failing the cusp-form conditions
    CharacterReading reading = CharacterReading::product;
};

/**
 * Eisenstein part from the character config, cusp part picked greedily from
 * the candidates so that the combined coefficient vectors stay independent,
 * then sample indices n = 1, 2, ... kept whenever they raise the rank.
 */
BasisSpec build_basis(Int N, const CharacterConfig& cfg, const std::vector<EtaQuotient>& candidates, Int T,
                      const BuildOptions& opts = {});

/// Search candidates at the default bound and build with the default config.
BasisSpec build_default_basis(Int N, Int T = 0, int exponent_bound = 12);

/// Expansions of every basis element to truncation T, Eisenstein part first.
std::vector<QSeries<Integer>> basis_series(const BasisSpec& b, Int T);

/// Sample-index coefficient matrix (rows: sample indices, columns: basis elements).
Matrix<Rational> sample_matrix(const BasisSpec& b);

/// Exact determinant of the sample matrix; nonzero certifies independence.
Rational certify_independence(const BasisSpec& b);

/// Cusp quotients in the basis that fail the cusp-form conditions at its level.
std::vector<std::string> basis_warnings(const BasisSpec& b);

std::string serialize_basis(const BasisSpec& b);
BasisSpec parse_basis(const std::string& text);
void save_basis(const BasisSpec& b, const std::string& path);
BasisSpec load_basis(const std::string& path);

/// FNV-1a digest of the serialized basis, 16 hex digits.
std::string basis_hash(const BasisSpec& b);

/// Parse "δ:r δ:r ..." tokens into an eta quotient of level N.
EtaQuotient parse_eta_tokens(Int N, const std::vector<std::string>& tokens);

/// Candidate file: optional "level N" line, then one "eta δ:r ..." line per quotient.
std::vector<EtaQuotient> load_candidates(const std::string& path, Int N);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qconv
