#include "qconv/representations.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>
#include <set>

namespace qconv {

std::string FormPair::to_string() const {
    return std::string(kind == FormKind::squares ? "squares" : "hex") + " (" + std::to_string(a) + "," +
           std::to_string(b) + ")";
}

namespace {

std::vector<FormPair> block_pairs(FormKind kind, const std::vector<Int>& blocks) {
    std::set<std::pair<Int, Int>> seen;
    Int total = 1;
    for (Int q : blocks) total *= q;
    const size_t k = blocks.size();
    for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
        Int a = 1;
        for (size_t i = 0; i < k; ++i)
            if (mask >> i & 1) a *= blocks[i];
        Int b = total / a;
        seen.insert({std::min(a, b), std::max(a, b)});
    }
    std::vector<FormPair> out;
    for (auto [a, b] : seen) out.push_back({kind, a, b});
    return out;
}

Integer checked_integer(const Rational& r, const char* what) {
    if (!is_integral(r)) throw std::logic_error(std::string(what) + " is not an integer: " + to_string(r));
    return r.get_num();
}

}  // namespace

std::vector<FormPair> omega4(Int level) {
    if (level < 4 || level % 4 != 0)
        throw std::invalid_argument("omega4: level " + std::to_string(level) + " is not divisible by 4");
    std::vector<Int> blocks;
    for (auto [p, e] : factorize(level)) {
        Int q = 1;
        for (int i = 0; i < (p == 2 ? e - 2 : e); ++i) q *= p;
        if (q > 1) blocks.push_back(q);
    }
    return block_pairs(FormKind::squares, blocks);
}

std::vector<FormPair> omega3(Int level) {
    if (level < 3 || level % 3 != 0)
        throw std::invalid_argument("omega3: level " + std::to_string(level) + " is not divisible by 3");
    std::vector<Int> blocks;
    for (auto [p, e] : factorize(level)) {
        Int q = 1;
        for (int i = 0; i < (p == 3 ? e - 1 : e); ++i) q *= p;
        if (q > 1) blocks.push_back(q);
    }
    return block_pairs(FormKind::hex, blocks);
}

Integer r4(Int n) {
    if (n < 0) throw std::invalid_argument("r4: negative argument");
    if (n == 0) return 1;
    return 8 * sigma_k(n, 1) - 32 * sigma_k_at_ratio(n, 4, 1);
}

Integer s4(Int n) {
    if (n < 0) throw std::invalid_argument("s4: negative argument");
    if (n == 0) return 1;
    return 12 * sigma_k(n, 1) - 36 * sigma_k_at_ratio(n, 3, 1);
}

std::vector<std::pair<Int, Int>> w_dependencies(const FormPair& p) {
    const Int m = p.kind == FormKind::squares ? 4 : 3;
    std::set<std::pair<Int, Int>> s;
    for (auto [x, y] : {std::pair{p.a, p.b}, std::pair{m * p.a, p.b}, std::pair{p.a, m * p.b}}) {
        Int g = std::gcd(x, y);
        x /= g;
        y /= g;
        s.insert({std::min(x, y), std::max(x, y)});
    }
    return {s.begin(), s.end()};
}

std::vector<CatalogEntry> known_w_catalog() {
    std::vector<CatalogEntry> out;
    for (auto [a, b] : std::vector<std::pair<Int, Int>>{{1, 9},  {1, 16}, {1, 18}, {2, 9},  {1, 25}, {1, 36},
                                                        {4, 9},  {1, 5},  {3, 5},  {1, 15}, {5, 9},  {1, 45},
                                                        {1, 48}, {3, 16}, {2, 25}, {1, 50}, {1, 64}})
        out.push_back({a, b, "golden"});
    std::set<std::pair<Int, Int>> extra;
    for (Int level : {48, 64})
        for (const auto& p : omega4(level))
            for (auto d : w_dependencies(p)) extra.insert(d);
    for (Int level : {45, 48})
        for (const auto& p : omega3(level))
            for (auto d : w_dependencies(p)) extra.insert(d);
    for (auto [a, b] : extra) {
        bool dup = std::any_of(out.begin(), out.end(), [&](const CatalogEntry& e) { return e.alpha == a && e.beta == b; });
        if (!dup) out.push_back({a, b, "representation input"});
    }
    return out;
}

WCatalog::WCatalog(Int truncation, std::string basis_dir) : T_(truncation), dir_(std::move(basis_dir)) {
    if (T_ < 1) throw std::invalid_argument("WCatalog: truncation must be positive");
}

void WCatalog::add(ConvolutionFormula f) {
    std::pair<Int, Int> key{std::min(f.alpha, f.beta), std::max(f.alpha, f.beta)};
    ev_[key] = std::make_unique<WEvaluator>(std::move(f), T_);
}

bool WCatalog::has(Int alpha, Int beta) const {
    return ev_.count({std::min(alpha, beta), std::max(alpha, beta)}) > 0;
}

void WCatalog::resolve(const std::vector<std::pair<Int, Int>>& pairs) {
    namespace fs = std::filesystem;
    for (auto [a, b] : pairs) {
        Int g = std::gcd(a, b);
        a /= g;
        b /= g;
        if (a > b) std::swap(a, b);
        if (has(a, b)) continue;
        const Int N = a * b;
        BasisSpec basis;
        if (dir_.empty()) {
            basis = build_default_basis(N);
        } else {
            fs::path bp = fs::path(dir_) / ("level" + std::to_string(N) + ".basis");
            if (!fs::exists(bp))
                throw MissingFormula("needs basis for level " + std::to_string(N) + " (W_(" + std::to_string(a) + "," +
                                     std::to_string(b) + ")): " + bp.string() + " not found");
            basis = load_basis(bp.string());
        }
        fs::path fp;
        if (!dir_.empty()) fp = fs::path(dir_) / ("w_" + std::to_string(a) + "_" + std::to_string(b) + ".formula");
        if (!fp.empty() && fs::exists(fp))
            add(load_formula(fp.string(), basis));
        else
            add(solve_formula(a, b, basis));
    }
}

const WEvaluator& WCatalog::evaluator(Int alpha, Int beta) const {
    auto it = ev_.find({std::min(alpha, beta), std::max(alpha, beta)});
    if (it == ev_.end())
        throw MissingFormula("needs formula for (" + std::to_string(alpha) + "," + std::to_string(beta) + ")");
    return *it->second;
}

Rational WCatalog::w(Int alpha, Int beta, Int n) const {
    if (alpha < 1 || beta < 1) throw std::invalid_argument("W: alpha and beta must be positive");
    Int g = std::gcd(alpha, beta);
    const WEvaluator& ev = evaluator(alpha / g, beta / g);
    if (n <= 0 || n % g != 0) return 0;
    return ev(n / g);
}

namespace {

Integer count_generic(const FormPair& p, Int n, const WCatalog& w, Int m, Int base) {
    if (n < 0) throw std::invalid_argument("count: negative argument");
    if (n == 0) return 1;
    const Int a = p.a, b = p.b;
    auto need = [&](Int x, Int y, const char* label) {
        Int g = std::gcd(x, y);
        if (!w.has(x / g, y / g))
            throw MissingFormula(std::string("needs formula for ") + label + " = (" + std::to_string(x) + "," +
                                 std::to_string(y) + ")");
    };
    const bool sq = m == 4;
    need(a, b, sq ? "(a,b)" : "(c,d)");
    need(m * a, b, sq ? "(4a,b)" : "(3c,d)");
    need(a, m * b, sq ? "(a,4b)" : "(c,3d)");

    const Int c1 = base, c2 = base * m;  // 8, 32 or 12, 36
    Integer r = c1 * sigma_k_at_ratio(n, a, 1) - c2 * sigma_k_at_ratio(n, m * a, 1);
    r += c1 * sigma_k_at_ratio(n, b, 1) - c2 * sigma_k_at_ratio(n, m * b, 1);
    Rational ws = Rational(c1 * c1) * w.w(a, b, n);
    if (n % m == 0) ws += Rational(c2 * c2) * w.w(a, b, n / m);
    ws -= Rational(c1 * c2) * (w.w(m * a, b, n) + w.w(a, m * b, n));
    r += checked_integer(ws, "W combination");
    if (r < 0) throw std::logic_error("negative representation count at n = " + std::to_string(n));
    return r;
}

}  // namespace

Integer count_n(const FormPair& p, Int n, const WCatalog& w) {
    if (p.kind != FormKind::squares) throw std::invalid_argument("count_n: expects a squares pair");
    return count_generic(p, n, w, 4, 8);
}

Integer count_r(const FormPair& p, Int n, const WCatalog& w) {
    if (p.kind != FormKind::hex) throw std::invalid_argument("count_r: expects a hex pair");
    return count_generic(p, n, w, 3, 12);
}

Integer count(const FormPair& p, Int n, const WCatalog& w) {
    return p.kind == FormKind::squares ? count_n(p, n, w) : count_r(p, n, w);
}

std::vector<Integer> quaternary_counts(FormKind kind, Int n) {
    if (n < 0) throw std::invalid_argument("quaternary_counts: negative bound");
    std::vector<Integer> c(static_cast<size_t>(n + 1), 0);
    // x² + xy + y² ≥ (x² + y²)/2, so |x| ≤ √(2n) for the hex form
    const Int B = static_cast<Int>(std::sqrt(static_cast<double>(kind == FormKind::squares ? n : 2 * n))) + 1;
    std::vector<Int> pair_val;
    for (Int x = -B; x <= B; ++x)
        for (Int y = -B; y <= B; ++y) {
            Int v = kind == FormKind::squares ? x * x + y * y : x * x + x * y + y * y;
            if (v <= n) pair_val.push_back(v);
        }
    std::vector<Int> twos(static_cast<size_t>(n + 1), 0);
    for (Int v : pair_val) ++twos[static_cast<size_t>(v)];
    for (Int i = 0; i <= n; ++i)
        for (Int j = 0; i + j <= n; ++j) c[static_cast<size_t>(i + j)] += Integer(twos[i]) * twos[j];
    return c;
}

Integer lattice_oracle(const FormPair& p, Int n) {
    if (p.a < 1 || p.b < 1) throw std::invalid_argument("lattice_oracle: coefficients must be positive");
    if (n < 0) throw std::invalid_argument("lattice_oracle: negative argument");
    auto q = quaternary_counts(p.kind, n);
    Integer s = 0;
    for (Int l = 0; p.a * l <= n; ++l) {
        Int rest = n - p.a * l;
        if (rest % p.b == 0) s += q[static_cast<size_t>(l)] * q[static_cast<size_t>(rest / p.b)];
    }
    return s;
}

}  // namespace qconv
