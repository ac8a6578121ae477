#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qconv/golden.hpp"

#include <cstdio>
#include <filesystem>

using namespace qconv;

namespace {

std::vector<EtaQuotient> table_rows(Int N) {
    GoldenData p = GoldenData::load();
    std::vector<EtaQuotient> v;
    for (const auto& r : p.tables.at(N).rows) v.push_back(EtaQuotient::from_vector(N, r));
    return v;
}

std::string replace_line(const std::string& text, const std::string& prefix, const std::string& with) {
    auto at = text.find(prefix);
    REQUIRE(at != std::string::npos);
    auto end = text.find('\n', at);
    return text.substr(0, at) + with + text.substr(end);
}

}  // namespace

TEST_CASE("level 1 basis is M alone") {
    BasisSpec b = build_default_basis(1);
    CHECK(b.cusp_part.empty());
    REQUIRE(b.eisenstein_part.size() == 1);
    CHECK(b.eisenstein_part[0] == EisensteinGen::M(1));
    CHECK(certify_independence(b) == 240);
}

TEST_CASE("level 45 from the table rows keeps their order") {
    auto rows = table_rows(45);
    BuildOptions o;
    o.keep_order = true;
    o.require_cuspidal = false;
    BasisSpec b = build_basis(45, default_character_config(45), rows, 0, o);
    CHECK(b.cusp_part == rows);
    CHECK(certify_independence(b) != 0);
    CHECK(!basis_warnings(b).empty());
}

TEST_CASE("level 15 from the primed quotients is full rank") {
    GoldenData p = GoldenData::load();
    BasisSpec b = golden_basis(p, 15);
    CHECK(b.cusp_part.size() == 4);
    CHECK(b.cusp_part[0] == EtaQuotient(15, {{1, 4}, {5, 4}}));
    CHECK(certify_independence(b) != 0);
}

TEST_CASE("default bases are certified and cuspidal") {
    for (Int N : {5, 9, 12, 16, 18, 25, 36, 45, 50}) {
        CAPTURE(N);
        BasisSpec b = build_default_basis(N);
        SpaceDims d = dims(N);
        CHECK(static_cast<Int>(b.cusp_part.size()) == d.dim_cusp);
        CHECK(static_cast<Int>(b.eisenstein_part.size()) == d.dim_eisenstein);
        CHECK(certify_independence(b) != 0);
        CHECK(basis_warnings(b).empty());
        auto series = basis_series(b, b.truncation);
        for (size_t j = b.eisenstein_part.size(); j < series.size(); ++j) CHECK(series[j][0] == 0);
        for (Int n : b.sample_indices) CHECK(n <= b.truncation);
    }
}

TEST_CASE("duplicated cusp row has zero determinant") {
    BasisSpec b = build_default_basis(45);
    b.cusp_part[1] = b.cusp_part[0];
    CHECK(certify_independence(b) == 0);
}

TEST_CASE("too few candidates is reported") {
    auto rows = table_rows(45);
    rows.resize(5);
    CHECK_THROWS_WITH_AS(build_basis(45, default_character_config(45), rows, 0),
                         doctest::Contains("rank deficiency unrepairable"), std::runtime_error);
    CHECK_THROWS_WITH_AS(build_basis(45, CharacterConfig{45, {}}, table_rows(45), 0),
                         doctest::Contains("expected m_E=8"), std::invalid_argument);
}

TEST_CASE("basis files round-trip and are deterministic") {
    BasisSpec a = build_default_basis(45);
    BasisSpec b = build_default_basis(45);
    CHECK(serialize_basis(a) == serialize_basis(b));
    CHECK(basis_hash(a) == basis_hash(b));
    CHECK(parse_basis(serialize_basis(a)) == a);

    auto path = (std::filesystem::temp_directory_path() / "qconv_test_level45.basis").string();
    save_basis(a, path);
    CHECK(load_basis(path) == a);
    std::remove(path.c_str());
}

TEST_CASE("malformed basis files are rejected") {
    std::string text = serialize_basis(build_default_basis(45));
    CHECK_THROWS_WITH_AS(parse_basis(replace_line(text, "eta", "eta 2:8")), doctest::Contains("does not divide"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_basis(replace_line(text, "eta", "")), doctest::Contains("expected m_S=14"), ParseError);
    CHECK_THROWS_WITH_AS(parse_basis(replace_line(text, "samples", "samples 1 2 3")),
                         doctest::Contains("sample indices"), ParseError);
    CHECK_THROWS_WITH_AS(parse_basis(replace_line(text, "truncation", "truncation 180\nbogus 1")),
                         doctest::Contains("line 3"), ParseError);
    CHECK_THROWS_AS(parse_basis("truncation 10\n"), ParseError);
}

TEST_CASE("candidate files") {
    auto path = (std::filesystem::temp_directory_path() / "qconv_test_cands.txt").string();
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        std::fputs("level 15\n# comment\neta 1:4 5:4\neta 3:4 15:4\n", f);
        std::fclose(f);
    }
    auto c = load_candidates(path, 15);
    CHECK(c.size() == 2);
    CHECK(c[0] == EtaQuotient(15, {{1, 4}, {5, 4}}));
    CHECK_THROWS(load_candidates(path, 45));
    std::remove(path.c_str());
}
