#include "qconv/basis.hpp"

#include "qconv/bareiss.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace qconv {

Int CharacterConfig::generator_count() const {
    Int n = static_cast<Int>(divisors(level).size());
    for (const auto& e : entries) n += static_cast<Int>(e.second.size());
    return n;
}

CharacterConfig default_character_config(Int N) {
    CharacterConfig cfg;
    cfg.level = N;
    auto add = [&](Int disc, std::vector<Int> s) { cfg.entries.emplace_back(KroneckerChar(disc), std::move(s)); };
    switch (N) {
        case 9: add(-4, {1}); break;
        case 16: add(-3, {1}); break;
        case 18: add(-4, {1, 3}); break;
        case 25: add(-3, {1, 5, 25}); break;
        case 36: add(-4, {1, 3, 9}); break;
        case 45: add(-4, {1, 3}); break;
        case 48: add(-3, {1, 2}); break;
        case 50: add(-3, {1, 2, 5, 10, 25, 50}); break;
        case 64: add(-3, {1, 2, 4, 8, 16}); break;
        default: break;
    }
    return cfg;
}

Int eisenstein_shortfall(const CharacterConfig& cfg) { return dims(cfg.level).dim_eisenstein - cfg.generator_count(); }

Int default_truncation(Int N) {
    SpaceDims d = dims(N);
    return std::max<Int>(4 * N, 10 * (d.dim_eisenstein + d.dim_cusp));
}

namespace {

Vector<Integer> coefficient_row(const QSeries<Integer>& s) { return s.coeffs(); }

EtaQuotient relevel(const EtaQuotient& e, Int N) {
    for (auto [d, r] : e.exponents)
        if (N % d != 0) throw std::invalid_argument("eta quotient " + e.to_string() + " is not of level " + std::to_string(N));
    return EtaQuotient(N, e.exponents);
}

}  // namespace

BasisSpec build_basis(Int N, const CharacterConfig& cfg, const std::vector<EtaQuotient>& candidates, Int T,
                      const BuildOptions& opts) {
    if (N < 1) throw std::invalid_argument("build_basis: level must be positive");
    if (cfg.level != N) throw std::invalid_argument("build_basis: character config is for another level");
    const SpaceDims sd = dims(N);
    if (T <= 0) T = default_truncation(N);

    BasisSpec b;
    b.level = N;
    b.truncation = T;
    b.reading = opts.reading;
    for (Int t : divisors(N)) b.eisenstein_part.push_back(EisensteinGen::M(t));
    for (const auto& [chi, ss] : cfg.entries)
        for (Int s : ss) {
            if (s < 1 || N % s != 0)
                throw std::invalid_argument("character dilation " + std::to_string(s) + " does not divide " +
                                            std::to_string(N));
            b.eisenstein_part.push_back(EisensteinGen::Mchi(chi.discriminant, s));
        }
    const Int have = static_cast<Int>(b.eisenstein_part.size());
    if (have != sd.dim_eisenstein)
        throw std::invalid_argument("insufficient Eisenstein generators: have " + std::to_string(have) +
                                    ", expected m_E=" + std::to_string(sd.dim_eisenstein) + " at level " +
                                    std::to_string(N));

    IncrementalRank span(T + 1);
    for (const auto& g : b.eisenstein_part)
        if (!span.add(coefficient_row(eisenstein_series(g, T, opts.reading))))
            throw std::runtime_error("Eisenstein generator " + g.to_string() + " is dependent on the others");

    std::vector<EtaQuotient> pool;
    for (const auto& c : candidates) {
        EtaQuotient e = relevel(c, N);
        if (e.sum_delta_r() % 24 != 0 || e.sum_delta_r() < 24) continue;
        if (opts.require_cuspidal && !ligozat_check(e).cuspidal) continue;
        if (std::find(pool.begin(), pool.end(), e) == pool.end()) pool.push_back(std::move(e));
    }
    if (!opts.keep_order) {
        std::stable_sort(pool.begin(), pool.end(), [](const EtaQuotient& a, const EtaQuotient& c) {
            if (a.sum_delta_r() != c.sum_delta_r()) return a.sum_delta_r() < c.sum_delta_r();
            return a.exponent_vector() < c.exponent_vector();
        });
    }

    std::vector<bool> used(pool.size(), false);
    auto try_take = [&](size_t i) {
        if (pool[i].sum_delta_r() / 24 > T) return false;
        if (!span.add(coefficient_row(eta_quotient_series(pool[i], T)))) return false;
        used[i] = true;
        b.cusp_part.push_back(pool[i]);
        return true;
    };
    const Int mS = sd.dim_cusp;
    if (!opts.keep_order) {
        // slot i prefers a quotient starting at q^i
        for (Int slot = 1; slot <= mS; ++slot)
            for (size_t i = 0; i < pool.size(); ++i) {
                if (used[i] || pool[i].sum_delta_r() != 24 * slot) continue;
                if (try_take(i)) break;
            }
    }
    for (size_t i = 0; i < pool.size() && static_cast<Int>(b.cusp_part.size()) < mS; ++i)
        if (!used[i]) try_take(i);
    if (static_cast<Int>(b.cusp_part.size()) < mS)
        throw std::runtime_error("rank deficiency unrepairable with given candidates: found " +
                                 std::to_string(b.cusp_part.size()) + " independent cusp quotients, expected m_S=" +
                                 std::to_string(mS) + " at level " + std::to_string(N));
    if (!opts.keep_order) {
        std::stable_sort(b.cusp_part.begin(), b.cusp_part.end(), [](const EtaQuotient& a, const EtaQuotient& c) {
            if (a.sum_delta_r() != c.sum_delta_r()) return a.sum_delta_r() < c.sum_delta_r();
            return a.exponent_vector() < c.exponent_vector();
        });
    }

    auto series = basis_series(b, T);
    const Int m = b.size();
    IncrementalRank rows(m);
    for (Int n = 1; n <= T && static_cast<Int>(b.sample_indices.size()) < m; ++n) {
        Vector<Integer> r(m);
        for (Int j = 0; j < m; ++j) r(j) = series[j][n];
        if (rows.add(std::move(r))) b.sample_indices.push_back(n);
    }
    if (static_cast<Int>(b.sample_indices.size()) < m)
        throw std::runtime_error("truncation " + std::to_string(T) + " too small to certify independence at level " +
                                 std::to_string(N));
    return b;
}

BasisSpec build_default_basis(Int N, Int T, int exponent_bound) {
    return build_basis(N, default_character_config(N), search_cusp_quotients(N, exponent_bound), T);
}

std::vector<QSeries<Integer>> basis_series(const BasisSpec& b, Int T) {
    std::vector<QSeries<Integer>> out;
    out.reserve(b.eisenstein_part.size() + b.cusp_part.size());
    for (const auto& g : b.eisenstein_part) out.push_back(eisenstein_series(g, T, b.reading));
    for (const auto& e : b.cusp_part) out.push_back(eta_quotient_series(e, T));
    return out;
}

Matrix<Rational> sample_matrix(const BasisSpec& b) {
    Int maxn = 0;
    for (Int n : b.sample_indices) maxn = std::max(maxn, n);
    if (maxn > b.truncation) throw std::invalid_argument("sample index beyond truncation");
    auto series = basis_series(b, maxn);
    const Int m = b.size();
    Matrix<Rational> A(static_cast<Eigen::Index>(b.sample_indices.size()), m);
    for (size_t i = 0; i < b.sample_indices.size(); ++i)
        for (Int j = 0; j < m; ++j) A(static_cast<Eigen::Index>(i), j) = Rational(series[j][b.sample_indices[i]]);
    return A;
}

Rational certify_independence(const BasisSpec& b) {
    Matrix<Rational> A = sample_matrix(b);
    if (A.rows() != A.cols()) return 0;
    return determinant(A);
}

std::vector<std::string> basis_warnings(const BasisSpec& b) {
    std::vector<std::string> w;
    for (size_t j = 0; j < b.cusp_part.size(); ++j) {
        LigozatResult r = ligozat_check(b.cusp_part[j]);
        if (!r.cuspidal)
            w.push_back("cusp slot " + std::to_string(j + 1) + " (" + b.cusp_part[j].to_string() + ") is " +
                        (r.modular ? "modular but not cuspidal" : "not a holomorphic modular form") + ": " +
                        r.describe());
    }
    return w;
}

std::string serialize_basis(const BasisSpec& b) {
    SpaceDims sd = dims(b.level);
    std::ostringstream os;
    os << "level " << b.level << '\n';
    os << "truncation " << b.truncation << '\n';
    os << "m_E " << sd.dim_eisenstein << '\n';
    os << "m_S " << sd.dim_cusp << '\n';
    if (b.reading == CharacterReading::plain) os << "reading plain\n";
    for (const auto& g : b.eisenstein_part) os << g.to_string() << '\n';
    for (const auto& e : b.cusp_part) os << "eta " << e.to_string() << '\n';
    os << "samples";
    for (Int n : b.sample_indices) os << ' ' << n;
    os << '\n';
    return os.str();
}

EtaQuotient parse_eta_tokens(Int N, const std::vector<std::string>& tokens) {
    std::map<Int, int> r;
    for (const auto& t : tokens) {
        auto colon = t.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("expected <delta>:<r>, got '" + t + "'");
        size_t p1 = 0, p2 = 0;
        Int d = std::stoll(t.substr(0, colon), &p1);
        int x = std::stoi(t.substr(colon + 1), &p2);
        if (p1 != colon || p2 != t.size() - colon - 1) throw std::invalid_argument("malformed token '" + t + "'");
        if (d < 1 || N % d != 0)
            throw std::invalid_argument(std::to_string(d) + " does not divide level " + std::to_string(N));
        if (r.count(d)) throw std::invalid_argument("divisor " + std::to_string(d) + " listed twice");
        r[d] = x;
    }
    return EtaQuotient(N, std::move(r));
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::string strip_comment(const std::string& line) {
    auto h = line.find('#');
    return h == std::string::npos ? line : line.substr(0, h);
}

Int parse_int_field(const std::string& s, const std::string& what) {
    size_t p = 0;
    Int v = std::stoll(s, &p);
    if (p != s.size()) throw std::invalid_argument("malformed " + what + " '" + s + "'");
    return v;
}

Int parse_keyed(const std::string& tok, const std::string& key) {
    if (tok.rfind(key + "=", 0) != 0) throw std::invalid_argument("expected " + key + "=<int>, got '" + tok + "'");
    return parse_int_field(tok.substr(key.size() + 1), key);
}

}  // namespace

BasisSpec parse_basis(const std::string& text) {
    BasisSpec b;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_level = false, have_samples = false;
    Int mE = -1, mS = -1;
    auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, raw)) {
        ++lineno;
        auto tok = split_ws(strip_comment(raw));
        if (tok.empty()) continue;
        try {
            const std::string& key = tok[0];
            if (key == "level") {
                if (tok.size() != 2) fail("level takes one value");
                b.level = parse_int_field(tok[1], "level");
                if (b.level < 1) fail("level must be positive");
                have_level = true;
                continue;
            }
            if (!have_level) fail("'level' must come first");
            if (key == "truncation") {
                if (tok.size() != 2) fail("truncation takes one value");
                b.truncation = parse_int_field(tok[1], "truncation");
            } else if (key == "m_E") {
                if (tok.size() != 2) fail("m_E takes one value");
                mE = parse_int_field(tok[1], "m_E");
            } else if (key == "m_S") {
                if (tok.size() != 2) fail("m_S takes one value");
                mS = parse_int_field(tok[1], "m_S");
            } else if (key == "reading") {
                if (tok.size() != 2 || (tok[1] != "plain" && tok[1] != "product")) fail("reading is plain or product");
                b.reading = tok[1] == "plain" ? CharacterReading::plain : CharacterReading::product;
            } else if (key == "M") {
                if (tok.size() != 2) fail("M takes t=<int>");
                Int t = parse_keyed(tok[1], "t");
                if (t < 1 || b.level % t != 0) fail("dilation " + std::to_string(t) + " does not divide level");
                b.eisenstein_part.push_back(EisensteinGen::M(t));
            } else if (key == "Mchi") {
                if (tok.size() != 3) fail("Mchi takes d=<int> t=<int>");
                Int d = parse_keyed(tok[1], "d");
                Int t = parse_keyed(tok[2], "t");
                if (t < 1 || b.level % t != 0) fail("dilation " + std::to_string(t) + " does not divide level");
                b.eisenstein_part.push_back(EisensteinGen::Mchi(d, t));
            } else if (key == "eta") {
                b.cusp_part.push_back(parse_eta_tokens(b.level, {tok.begin() + 1, tok.end()}));
            } else if (key == "samples") {
                for (size_t i = 1; i < tok.size(); ++i) b.sample_indices.push_back(parse_int_field(tok[i], "sample"));
                have_samples = true;
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    if (!have_level) throw ParseError("missing 'level'");
    SpaceDims sd = dims(b.level);
    if (mE >= 0 && mE != sd.dim_eisenstein)
        throw ParseError("header m_E=" + std::to_string(mE) + " but expected m_E=" + std::to_string(sd.dim_eisenstein));
    if (mS >= 0 && mS != sd.dim_cusp)
        throw ParseError("header m_S=" + std::to_string(mS) + " but expected m_S=" + std::to_string(sd.dim_cusp));
    if (static_cast<Int>(b.eisenstein_part.size()) != sd.dim_eisenstein)
        throw ParseError("found " + std::to_string(b.eisenstein_part.size()) + " Eisenstein generators, expected m_E=" +
                         std::to_string(sd.dim_eisenstein));
    if (static_cast<Int>(b.cusp_part.size()) != sd.dim_cusp)
        throw ParseError("found " + std::to_string(b.cusp_part.size()) + " cusp quotients, expected m_S=" +
                         std::to_string(sd.dim_cusp));
    if (b.truncation < 1) throw ParseError("missing or invalid 'truncation'");
    if (!have_samples) throw ParseError("missing 'samples'");
    if (static_cast<Int>(b.sample_indices.size()) != b.size())
        throw ParseError("expected " + std::to_string(b.size()) + " sample indices, found " +
                         std::to_string(b.sample_indices.size()));
    for (Int n : b.sample_indices)
        if (n < 1 || n > b.truncation) throw ParseError("sample index " + std::to_string(n) + " outside 1..truncation");
    return b;
}

void save_basis(const BasisSpec& b, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_basis(b);
    if (!out) throw std::runtime_error("write failed for " + path);
}

BasisSpec load_basis(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_basis(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string basis_hash(const BasisSpec& b) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : serialize_basis(b)) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<EtaQuotient> load_candidates(const std::string& path, Int N) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::vector<EtaQuotient> out;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto tok = split_ws(strip_comment(raw));
        if (tok.empty()) continue;
        try {
            if (tok[0] == "level") {
                if (tok.size() != 2 || parse_int_field(tok[1], "level") != N)
                    throw std::invalid_argument("candidate file is not for level " + std::to_string(N));
            } else if (tok[0] == "eta") {
                out.push_back(parse_eta_tokens(N, {tok.begin() + 1, tok.end()}));
            } else {
                throw std::invalid_argument("unknown key '" + tok[0] + "'");
            }
        } catch (const std::exception& e) {
            throw ParseError(path + ": line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace qconv
