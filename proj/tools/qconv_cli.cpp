// qconv: convolution sums, bases of M4(Gamma0(N)) and octonary representation counts.

#include "qconv/golden.hpp"
#include "qconv/representations.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace qconv;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kMissing = 3;

struct MissingFile : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    Int level = 0;
    Int alpha = 0, beta = 0;
    Int upto = 50;
    Int truncation = 0;
    int bound = 12;
    std::string basis_dir;
    std::string candidates;
    std::string formula;
    std::string reading = "product";
    std::string format = "text";
    std::string kind;
    bool keep_order = false;
    bool oracle = false;
    bool no_banner = false;
};

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

    void print(std::ostream& os, bool tsv) const {
        if (tsv) {
            auto line = [&](const std::vector<std::string>& r) {
                for (size_t i = 0; i < r.size(); ++i) os << (i ? "\t" : "") << r[i];
                os << '\n';
            };
            line(header_);
            for (const auto& r : rows_) line(r);
            return;
        }
        std::vector<size_t> w(header_.size());
        for (size_t i = 0; i < w.size(); ++i) w[i] = header_[i].size();
        for (const auto& r : rows_)
            for (size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
        auto line = [&](const std::vector<std::string>& r) {
            std::string s;
            for (size_t i = 0; i < r.size(); ++i) {
                if (i) s += "  ";
                s += std::string(w[i] - r[i].size(), ' ') + r[i];
            }
            os << s << '\n';
        };
        line(header_);
        for (const auto& r : rows_) line(r);
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string num(Int v) { return std::to_string(v); }

CharacterReading reading_of(const Options& o) {
    return o.reading == "plain" ? CharacterReading::plain : CharacterReading::product;
}

std::string basis_path(const Options& o, Int N) {
    return (fs::path(o.basis_dir) / ("level" + std::to_string(N) + ".basis")).string();
}

std::string formula_path(const Options& o, Int a, Int b) {
    return (fs::path(o.basis_dir) / ("w_" + std::to_string(a) + "_" + std::to_string(b) + ".formula")).string();
}

BasisSpec make_basis(const Options& o, Int N) {
    std::vector<EtaQuotient> cands;
    if (!o.candidates.empty()) {
        if (!fs::exists(o.candidates)) throw MissingFile("candidate file not found: " + o.candidates);
        cands = load_candidates(o.candidates, N);
    } else {
        cands = search_cusp_quotients(N, o.bound);
    }
    BuildOptions opts;
    opts.keep_order = o.keep_order;
    opts.reading = reading_of(o);
    return build_basis(N, default_character_config(N), cands, o.truncation, opts);
}

// Stored basis when the directory has one, otherwise a fresh build.
BasisSpec obtain_basis(const Options& o, Int N) {
    if (!o.basis_dir.empty() && fs::exists(basis_path(o, N))) return load_basis(basis_path(o, N));
    if (!o.formula.empty()) throw MissingFile("formula given but no basis file " + basis_path(o, N));
    return make_basis(o, N);
}

ConvolutionFormula obtain_formula(const Options& o, Int a, Int b) {
    if (!o.formula.empty()) {
        if (!fs::exists(o.formula)) throw MissingFile("formula file not found: " + o.formula);
        return load_formula(o.formula, obtain_basis(o, a * b));
    }
    BasisSpec basis = obtain_basis(o, a * b);
    if (!o.basis_dir.empty() && fs::exists(formula_path(o, a, b))) {
        try {
            return load_formula(formula_path(o, a, b), basis);
        } catch (const ParseError&) {
            // stale cache: the basis changed since the formula was written
        }
    }
    ConvolutionFormula f = solve_formula(a, b, basis);
    if (!o.basis_dir.empty()) {
        fs::create_directories(o.basis_dir);
        if (!fs::exists(basis_path(o, a * b))) save_basis(basis, basis_path(o, a * b));
        save_formula(f, formula_path(o, a, b));
    }
    return f;
}

void check_pair(Int a, Int b) {
    if (a < 1 || b < 1) throw CLI::ValidationError("alpha and beta must be positive");
    if (std::gcd(a, b) != 1) throw CLI::ValidationError("alpha and beta must be coprime");
}

std::string signed_term(const Rational& c, const std::string& what) {
    std::string s = c < 0 ? "  - " : "  + ";
    Rational a = abs(c);
    return s + to_string(a) + " " + what;
}

int cmd_dims(const Options& o) {
    SpaceDims d = dims(o.level);
    Table t({"level", "index", "cusps", "e2", "e3", "genus", "m_E", "m_S"});
    t.add({num(d.level), num(d.index), num(d.cusp_count), num(d.elliptic2), num(d.elliptic3), num(d.genus),
           num(d.dim_eisenstein), num(d.dim_cusp)});
    t.print(std::cout, o.format == "tsv");
    return kOk;
}

int cmd_eta_search(const Options& o) {
    auto found = search_cusp_quotients(o.level, o.bound);
    std::vector<std::string> header = {"row"};
    for (Int d : divisors(o.level)) header.push_back(num(d));
    header.push_back("lead");
    Table t(header);
    int i = 0;
    for (const auto& e : found) {
        std::vector<std::string> r = {num(++i)};
        for (int x : e.exponent_vector()) r.push_back(std::to_string(x));
        r.push_back(num(e.sum_delta_r() / 24));
        t.add(r);
    }
    t.print(std::cout, o.format == "tsv");
    std::cout << found.size() << " cusp eta quotients, m_S = " << dims(o.level).dim_cusp << '\n';
    return kOk;
}

int cmd_build_basis(const Options& o) {
    BasisSpec b = make_basis(o, o.level);
    Rational det = certify_independence(b);
    if (det == 0) {
        std::cout << "determinant is zero: basis not certified\n";
        return kMismatch;
    }
    std::cout << serialize_basis(b);
    std::cout << "determinant nonzero (" << (det < 0 ? "negative" : "positive") << "), hash " << basis_hash(b) << '\n';
    for (const auto& w : basis_warnings(b)) std::cout << "warning: " << w << '\n';
    if (!o.basis_dir.empty()) {
        fs::create_directories(o.basis_dir);
        save_basis(b, basis_path(o, o.level));
        std::cout << "saved " << basis_path(o, o.level) << '\n';
    }
    return kOk;
}

int cmd_evaluate(const Options& o) {
    ConvolutionFormula f = obtain_formula(o, o.alpha, o.beta);
    WDisplay d = w_display(f);
    std::cout << "W_(" << o.alpha << "," << o.beta << ")(n) =\n";
    for (const auto& [delta, c] : d.sigma3)
        if (c != 0) std::cout << signed_term(c, delta == 1 ? "sigma3(n)" : "sigma3(n/" + num(delta) + ")") << '\n';
    for (const auto& z : d.character)
        if (z.value != 0)
            std::cout << signed_term(z.value, "Mchi d=" + num(z.discriminant) + " t=" + num(z.dilation)) << '\n';
    auto tail = [](const Rational& c0, const Rational& c1, Int delta) {
        std::cout << "  + (" << to_string(c0) << (c1 < 0 ? " - " : " + ") << to_string(abs(c1)) << " n) "
                  << (delta == 1 ? "sigma(n)" : "sigma(n/" + num(delta) + ")") << '\n';
    };
    tail(d.tail_alpha_const, d.tail_alpha_n, o.alpha);
    tail(d.tail_beta_const, d.tail_beta_n, o.beta);
    for (size_t j = 0; j < d.cusp.size(); ++j)
        if (d.cusp[j] != 0)
            std::cout << signed_term(d.cusp[j], "b_" + num(static_cast<Int>(j) + 1) + "(n)") << "    [eta "
                      << f.basis.cusp_part[j].to_string() << "]\n";
    for (const auto& z : f.Z) std::cout << "Z d=" << z.discriminant << " s=" << z.dilation << " : " << to_string(z.value) << '\n';
    std::cout << '\n';
    WEvaluator ev(f, std::max<Int>(o.upto, 1));
    Table t({"n", "W(n)"});
    for (Int n = 1; n <= o.upto; ++n) t.add({num(n), to_string(ev(n))});
    t.print(std::cout, o.format == "tsv");
    return kOk;
}

int cmd_verify(const Options& o) {
    ConvolutionFormula f = obtain_formula(o, o.alpha, o.beta);
    WEvaluator ev(f, std::max<Int>(o.upto, 1));
    for (Int n = 1; n <= o.upto; ++n) {
        Rational w = ev(n);
        Integer b = brute_force_w(o.alpha, o.beta, n);
        if (w != b) {
            std::cout << "mismatch at n=" << n << ": formula " << to_string(w) << ", brute force " << to_string(b) << '\n';
            return kMismatch;
        }
    }
    std::cout << "W_(" << o.alpha << "," << o.beta << ") agrees with brute force for 1 <= n <= " << o.upto << '\n';
    return kOk;
}

int cmd_repr(const Options& o) {
    FormPair p{o.kind == "hex" ? FormKind::hex : FormKind::squares, o.alpha, o.beta};
    if (std::gcd(p.a, p.b) != 1) throw CLI::ValidationError("pair must be coprime");
    WCatalog cat(std::max<Int>(o.upto, 1), o.basis_dir);
    auto deps = w_dependencies(p);
    std::cout << "needs W for";
    for (auto [a, b] : deps) std::cout << " (" << a << "," << b << ")";
    std::cout << '\n';
    cat.resolve(deps);
    const bool sq = p.kind == FormKind::squares;
    std::vector<std::string> header = {"n", sq ? "N(n)" : "R(n)"};
    if (o.oracle) header.push_back("oracle");
    Table t(header);
    bool bad = false;
    for (Int n = 1; n <= o.upto; ++n) {
        Integer c = count(p, n, cat);
        std::vector<std::string> r = {num(n), to_string(c)};
        if (o.oracle) {
            Integer l = lattice_oracle(p, n);
            r.push_back(to_string(l) + (l == c ? "" : " *"));
            bad = bad || l != c;
        }
        t.add(r);
    }
    t.print(std::cout, o.format == "tsv");
    return bad ? kMismatch : kOk;
}

int cmd_golden(const Options& o) {
    GoldenData data = GoldenData::load();
    int failed = 0, total = 0;
    for (const auto& d : load_displays()) {
        if (o.level != 0 && d.level != o.level) continue;
        GoldenReport r = check_display(data, d, o.upto);
        ++total;
        if (!r.passed()) ++failed;
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.summary() << '\n';
        for (const auto& w : r.warnings) std::cout << "    warning: " << w << '\n';
        for (const auto& t : r.terms)
            if (!t.ok())
                std::cout << "    " << t.term << ": shown " << to_string(t.expected) << ", solved " << to_string(t.actual)
                          << '\n';
    }
    if (total == 0) throw MissingFile("no displays for level " + num(o.level));
    std::cout << total - failed << "/" << total << " displays reproduced\n";
    return failed ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Convolution sums of divisor functions via bases of weight-4 modular forms"};
    app.require_subcommand(1);
    Options o;
    if (const char* env = std::getenv("QCONV_BASIS_DIR")) o.basis_dir = env;

    app.add_flag("--no-banner", o.no_banner, "Omit the version line");
    app.add_option("--format", o.format, "Table format")->check(CLI::IsMember({"text", "tsv"}));

    auto level_arg = [&](CLI::App* c) { c->add_option("level", o.level, "Level N")->required()->check(CLI::PositiveNumber); };
    auto pair_args = [&](CLI::App* c) {
        c->add_option("alpha", o.alpha)->required()->check(CLI::PositiveNumber);
        c->add_option("beta", o.beta)->required()->check(CLI::PositiveNumber);
    };
    auto basis_opts = [&](CLI::App* c) {
        c->add_option("--truncation", o.truncation, "Series truncation T (default max(4N, 10 dim M4))");
        c->add_option("--bound", o.bound, "Exponent bound for the eta search")->check(CLI::Range(1, 24));
        c->add_option("--basis-dir", o.basis_dir, "Directory of basis and formula files (env QCONV_BASIS_DIR)");
        c->add_option("--candidates", o.candidates, "Candidate eta quotients instead of the search");
        c->add_flag("--keep-order", o.keep_order, "Use the candidates in file order");
        c->add_option("--reading", o.reading, "Twisted Eisenstein coefficient")->check(CLI::IsMember({"product", "plain"}));
    };

    auto* dims_c = app.add_subcommand("dims", "Dimensions of E4 and S4 for Gamma0(N)");
    level_arg(dims_c);
    auto* search_c = app.add_subcommand("eta-search", "Cusp eta quotients of weight 4 and level N");
    level_arg(search_c);
    search_c->add_option("--bound", o.bound, "Exponent bound")->check(CLI::Range(1, 24));
    auto* build_c = app.add_subcommand("build-basis", "Build, certify and save a basis of M4(Gamma0(N))");
    level_arg(build_c);
    basis_opts(build_c);
    auto* eval_c = app.add_subcommand("evaluate", "Closed form of W_(alpha,beta) and a table of values");
    pair_args(eval_c);
    basis_opts(eval_c);
    eval_c->add_option("--upto", o.upto, "Largest n")->check(CLI::NonNegativeNumber);
    eval_c->add_option("--formula", o.formula, "Formula file to use instead of solving");
    auto* verify_c = app.add_subcommand("verify", "Compare the closed form with brute force");
    pair_args(verify_c);
    basis_opts(verify_c);
    verify_c->add_option("--upto", o.upto, "Largest n")->check(CLI::NonNegativeNumber);
    verify_c->add_option("--formula", o.formula, "Formula file to use instead of solving");
    auto* repr_c = app.add_subcommand("repr", "Representation numbers of the octonary forms");
    repr_c->add_option("kind", o.kind, "squares or hex")->required()->check(CLI::IsMember({"squares", "hex"}));
    pair_args(repr_c);
    repr_c->add_option("--upto", o.upto, "Largest n")->check(CLI::NonNegativeNumber);
    repr_c->add_option("--basis-dir", o.basis_dir, "Directory of basis and formula files (env QCONV_BASIS_DIR)");
    repr_c->add_flag("--oracle", o.oracle, "Add a lattice enumeration column");
    auto* golden_c = app.add_subcommand("golden", "Compare solved coefficients with the displayed ones");
    golden_c->add_option("level", o.level, "Only displays of this level");
    golden_c->add_option("--upto", o.upto, "Range of the literal display check")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    if (!o.no_banner) std::cout << "# qconv 1.0\n";
    try {
        if (*dims_c) return cmd_dims(o);
        if (*search_c) return cmd_eta_search(o);
        if (*build_c) return cmd_build_basis(o);
        if (*eval_c || *verify_c) check_pair(o.alpha, o.beta);
        if (*eval_c) return cmd_evaluate(o);
        if (*verify_c) return cmd_verify(o);
        if (*repr_c) return cmd_repr(o);
        if (*golden_c) return cmd_golden(o);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const MissingFile& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMissing;
    } catch (const MissingFormula& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMissing;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMismatch;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMismatch;
    }
    return kUsage;
}
