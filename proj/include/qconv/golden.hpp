#pragma once

#include "qconv/convolution.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qconv {

/// Directory holding tables/, displays/, bases.txt and quotients.txt.
std::string default_golden_dir();

struct ExponentTable {
    Int level = 1;
    std::vector<Int> divisors;
    std::vector<std::vector<int>> rows;
};

struct GoldenData {
    std::map<Int, ExponentTable> tables;
    std::map<std::string, std::map<Int, int>> primed;   // label -> exponents
    std::map<Int, std::vector<std::string>> bases;      // level -> cusp labels

    static GoldenData load(const std::string& dir = default_golden_dir());

    /// "45,3" is row 3 of the level 45 table; primed labels come from quotients.txt.
    bool has_label(const std::string& label) const;
    EtaQuotient quotient(const std::string& label, Int level) const;
};

struct TailTerm {
    Int delta = 1;
    Rational constant;  // (constant + linear·n) σ(n/δ)
    Rational linear;
};

struct Display {
    enum class Kind { lhs, w };

    std::string name;
    Kind kind = Kind::w;
    Int alpha = 1;
    Int beta = 1;
    Int level = 1;
    std::string group;
    std::optional<Rational> constant;
    std::vector<std::pair<Int, Rational>> sigma3;
    std::optional<std::vector<TailTerm>> tail;  // nullopt when the display omits it
    std::vector<std::pair<std::string, Rational>> cusp;
};

Display parse_display(const std::string& text, const std::string& name = "display");
Display load_display(const std::string& path);
/// Every display file of the directory, sorted by file name.
std::vector<Display> load_displays(const std::string& dir = default_golden_dir() + "/displays");

/// Basis with the listed cusp part, kept in its order, non-cuspidal rows allowed.
BasisSpec golden_basis(const GoldenData& data, Int level, Int T = 0);

struct TermCheck {
    std::string term;
    Rational expected;
    Rational actual;

    bool ok() const { return expected == actual; }
};

struct GoldenReport {
    Display display;
    std::string error;                       // basis or solve failure
    std::vector<std::string> warnings;       // non-cuspidal rows, unknown labels
    std::vector<TermCheck> terms;            // displayed (or implied zero) vs solved
    std::optional<Int> fit_mismatch;         // reference basis cannot reproduce the LHS from this index on
    std::optional<Int> display_mismatch;     // literal display fails against the oracle at this n
    Int display_checked_upto = 0;

    int term_mismatches() const;
    bool passed() const;
    std::string summary() const;
};

/// Solve with the reference basis, compare every term, then test the display literally against the oracle.
GoldenReport check_display(const GoldenData& data, const Display& d, Int check_upto = 100);

/// Table rows missing from the search result at the same level.
std::vector<int> missing_table_rows(const ExponentTable& t, const std::vector<EtaQuotient>& found);

}  // namespace qconv
