#include "qconv/convolution.hpp"

#include "qconv/bareiss.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace qconv {

QSeries<Integer> lhs_series(Int alpha, Int beta, Int T) {
    if (alpha < 1 || beta < 1) throw std::invalid_argument("lhs_series: alpha and beta must be positive");
    if (std::gcd(alpha, beta) != 1)
        throw std::invalid_argument("lhs_series: (" + std::to_string(alpha) + "," + std::to_string(beta) +
                                    ") is not coprime");
    auto a = scale(eisenstein_series(EisensteinGen::L(alpha), T), Integer(alpha));
    auto b = scale(eisenstein_series(EisensteinGen::L(beta), T), Integer(beta));
    auto d = a - b;
    return d * d;
}

Integer master_rhs_known(Int alpha, Int beta, Int n) {
    Integer r = 240 * alpha * alpha * sigma_k_at_ratio(n, alpha, 3);
    r += 240 * beta * beta * sigma_k_at_ratio(n, beta, 3);
    r += 48 * alpha * (beta - 6 * n) * sigma_k_at_ratio(n, alpha, 1);
    r += 48 * beta * (alpha - 6 * n) * sigma_k_at_ratio(n, beta, 1);
    return r;
}

Vector<Rational> ConvolutionFormula::coefficient_vector() const {
    Vector<Rational> c(static_cast<Eigen::Index>(X.size() + Z.size() + Y.size()));
    Eigen::Index k = 0;
    for (const auto& x : X) c(k++) = x.second;
    for (const auto& z : Z) c(k++) = z.value;
    for (const auto& y : Y) c(k++) = y;
    return c;
}

ConvolutionFormula ConvolutionFormula::from_coefficients(Int alpha, Int beta, const BasisSpec& basis,
                                                         const Vector<Rational>& c) {
    if (c.size() != basis.size()) throw std::invalid_argument("coefficient count does not match basis size");
    ConvolutionFormula f;
    f.alpha = alpha;
    f.beta = beta;
    f.basis = basis;
    Eigen::Index k = 0;
    for (const auto& g : basis.eisenstein_part) {
        if (g.kind == EisensteinGen::Kind::M)
            f.X.emplace_back(g.dilation, c(k));
        else
            f.Z.push_back({g.character->discriminant, g.dilation, c(k)});
        ++k;
    }
    for (size_t j = 0; j < basis.cusp_part.size(); ++j) f.Y.push_back(c(k++));
    return f;
}

Rational ConvolutionFormula::sum_X() const {
    Rational s = 0;
    for (const auto& x : X) s += x.second;
    return s;
}

namespace {

std::optional<Int> first_difference(const std::vector<QSeries<Integer>>& series, const Vector<Rational>& c,
                                    const QSeries<Integer>& lhs, Int T) {
    Rational acc;
    for (Int n = 0; n <= T; ++n) {
        acc = 0;
        for (Eigen::Index j = 0; j < c.size(); ++j)
            if (c(j) != 0 && series[j][n] != 0) acc += c(j) * series[j][n];
        if (acc != lhs[n]) return n;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Int> identity_mismatch(const ConvolutionFormula& f, Int T) {
    auto series = basis_series(f.basis, T);
    return first_difference(series, f.coefficient_vector(), lhs_series(f.alpha, f.beta, T), T);
}

FitResult fit_formula(Int alpha, Int beta, const BasisSpec& basis) {
    if (alpha * beta != basis.level)
        throw std::invalid_argument("basis level " + std::to_string(basis.level) + " does not match alpha*beta = " +
                                    std::to_string(alpha * beta));
    const Int T = basis.truncation;
    auto series = basis_series(basis, T);
    auto lhs = lhs_series(alpha, beta, T);
    const Eigen::Index m = basis.size();
    if (static_cast<Eigen::Index>(basis.sample_indices.size()) != m)
        throw std::invalid_argument("basis has " + std::to_string(basis.sample_indices.size()) + " sample indices, needs " +
                                    std::to_string(m));
    Matrix<Rational> A(m, m);
    Vector<Rational> rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Int n = basis.sample_indices[static_cast<size_t>(i)];
        for (Eigen::Index j = 0; j < m; ++j) A(i, j) = Rational(series[j][n]);
        rhs(i) = Rational(lhs[n]);
    }
    auto sol = solve_exact(A, rhs);
    if (!sol) throw std::runtime_error("system singular at level " + std::to_string(basis.level));
    FitResult res;
    res.formula = ConvolutionFormula::from_coefficients(alpha, beta, basis, *sol);
    res.first_mismatch = first_difference(series, *sol, lhs, T);
    res.checked_upto = T;
    return res;
}

ConvolutionFormula solve_formula(Int alpha, Int beta, const BasisSpec& basis) {
    FitResult r = fit_formula(alpha, beta, basis);
    if (r.first_mismatch)
        throw std::runtime_error("verification mismatch at index " + std::to_string(*r.first_mismatch) + " for (" +
                                 std::to_string(alpha) + "," + std::to_string(beta) + ")");
    return r.formula;
}

WDisplay w_display(const ConvolutionFormula& f) {
    const Rational den(1152 * f.alpha * f.beta);
    WDisplay d;
    for (const auto& [delta, x] : f.X) {
        Rational c = -240 * x;
        if (delta == f.alpha) c += 240 * f.alpha * f.alpha;
        if (delta == f.beta) c += 240 * f.beta * f.beta;
        c /= den;
        d.sigma3.emplace_back(delta, c);
    }
    for (const auto& z : f.Z) d.character.push_back({z.discriminant, z.dilation, Rational(-z.value / den)});
    for (const auto& y : f.Y) d.cusp.push_back(-y / den);
    d.tail_alpha_const = ratio(1, 24);
    d.tail_alpha_n = ratio(-1, 4 * f.beta);
    d.tail_beta_const = ratio(1, 24);
    d.tail_beta_n = ratio(-1, 4 * f.alpha);
    return d;
}

WEvaluator::WEvaluator(ConvolutionFormula f, Int T) : f_(std::move(f)), T_(T) {
    if (T < 1) throw std::invalid_argument("WEvaluator: truncation must be positive");
    coeffs_ = f_.coefficient_vector();
    for (const auto& g : f_.basis.eisenstein_part)
        if (g.kind != EisensteinGen::Kind::M) series_.push_back(eisenstein_series(g, T, f_.basis.reading));
    for (const auto& e : f_.basis.cusp_part) series_.push_back(eta_quotient_series(e, T));
}

Rational WEvaluator::operator()(Int n) const {
    if (n < 1 || n > T_)
        throw std::out_of_range("W evaluator defined for 1 <= n <= " + std::to_string(T_) + ", got " + std::to_string(n));
    Rational combo = 0;
    Eigen::Index k = 0;
    for (const auto& [delta, x] : f_.X) {
        if (n % delta == 0) combo += x * 240 * sigma_k(n / delta, 3);
        ++k;
    }
    for (const auto& s : series_) {
        if (coeffs_(k) != 0 && s[n] != 0) combo += coeffs_(k) * s[n];
        ++k;
    }
    Rational w = Rational(master_rhs_known(f_.alpha, f_.beta, n)) - combo;
    w /= 1152 * f_.alpha * f_.beta;
    return w;
}

Rational evaluate_w(const WEvaluator& ev, Int n) { return ev(n); }

Integer brute_force_w(Int alpha, Int beta, Int n) {
    if (alpha < 1 || beta < 1) throw std::invalid_argument("brute_force_w: alpha and beta must be positive");
    Integer s = 0;
    for (Int l = 1; alpha * l < n; ++l) {
        Int rest = n - alpha * l;
        if (rest % beta != 0) continue;
        s += sigma_k(l, 1) * sigma_k(rest / beta, 1);
    }
    return s;
}

std::string serialize_formula(const ConvolutionFormula& f) {
    std::ostringstream os;
    os << "alpha " << f.alpha << '\n';
    os << "beta " << f.beta << '\n';
    os << "basis_hash " << basis_hash(f.basis) << '\n';
    for (const auto& [d, x] : f.X) os << "X " << d << ' ' << to_string(x) << '\n';
    for (const auto& z : f.Z) os << "Z " << z.discriminant << ' ' << z.dilation << ' ' << to_string(z.value) << '\n';
    for (size_t j = 0; j < f.Y.size(); ++j) os << "Y " << j + 1 << ' ' << to_string(f.Y[j]) << '\n';
    return os.str();
}

ConvolutionFormula parse_formula(const std::string& text, const BasisSpec& basis) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    Int alpha = 0, beta = 0;
    std::string hash;
    std::vector<std::pair<Int, Rational>> X;
    std::vector<CharacterCoefficient> Z;
    std::vector<std::pair<Int, Rational>> Y;
    auto fail = [&](const std::string& msg) { throw ParseError("line " + std::to_string(lineno) + ": " + msg); };
    while (std::getline(in, raw)) {
        ++lineno;
        auto h = raw.find('#');
        std::istringstream ls(h == std::string::npos ? raw : raw.substr(0, h));
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        try {
            if (tok[0] == "alpha" && tok.size() == 2) {
                alpha = std::stoll(tok[1]);
            } else if (tok[0] == "beta" && tok.size() == 2) {
                beta = std::stoll(tok[1]);
            } else if (tok[0] == "basis_hash" && tok.size() == 2) {
                hash = tok[1];
            } else if (tok[0] == "X" && tok.size() == 3) {
                X.emplace_back(std::stoll(tok[1]), parse_rational(tok[2]));
            } else if (tok[0] == "Z" && tok.size() == 4) {
                Z.push_back({std::stoll(tok[1]), std::stoll(tok[2]), parse_rational(tok[3])});
            } else if (tok[0] == "Y" && tok.size() == 3) {
                Y.emplace_back(std::stoll(tok[1]), parse_rational(tok[2]));
            } else {
                fail("unrecognised line '" + raw + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            fail(e.what());
        }
    }
    if (alpha < 1 || beta < 1) throw ParseError("missing alpha/beta");
    if (alpha * beta != basis.level) throw ParseError("formula is for level " + std::to_string(alpha * beta) +
                                                      ", basis has level " + std::to_string(basis.level));
    if (hash != basis_hash(basis)) throw ParseError("basis_hash " + hash + " does not match basis " + basis_hash(basis));
    Vector<Rational> c(basis.size());
    size_t xi = 0, zi = 0;
    Eigen::Index k = 0;
    for (const auto& g : basis.eisenstein_part) {
        if (g.kind == EisensteinGen::Kind::M) {
            if (xi >= X.size() || X[xi].first != g.dilation)
                throw ParseError("X entries do not follow the basis divisors");
            c(k++) = X[xi++].second;
        } else {
            if (zi >= Z.size() || Z[zi].discriminant != g.character->discriminant || Z[zi].dilation != g.dilation)
                throw ParseError("Z entries do not follow the basis characters");
            c(k++) = Z[zi++].value;
        }
    }
    if (xi != X.size() || zi != Z.size()) throw ParseError("extra X or Z entries");
    if (Y.size() != basis.cusp_part.size())
        throw ParseError("expected " + std::to_string(basis.cusp_part.size()) + " Y entries, found " +
                         std::to_string(Y.size()));
    for (size_t j = 0; j < Y.size(); ++j) {
        if (Y[j].first != static_cast<Int>(j + 1)) throw ParseError("Y entries must be numbered 1..m_S in order");
        c(k++) = Y[j].second;
    }
    return ConvolutionFormula::from_coefficients(alpha, beta, basis, c);
}

void save_formula(const ConvolutionFormula& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize_formula(f);
}

ConvolutionFormula load_formula(const std::string& path, const BasisSpec& basis) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_formula(ss.str(), basis);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace qconv
