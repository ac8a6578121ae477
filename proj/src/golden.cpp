#include "qconv/golden.hpp"

#include "qconv/bareiss.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qconv {

namespace fs = std::filesystem;

std::string default_golden_dir() {
    if (const char* env = std::getenv("QCONV_GOLDEN_DIR")) return env;
    return std::string(QCONV_DATA_DIR) + "/golden";
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Non-empty, non-comment lines split into tokens, with 1-based line numbers.
std::vector<std::pair<int, std::vector<std::string>>> token_lines(const std::string& text) {
    std::vector<std::pair<int, std::vector<std::string>>> out;
    std::istringstream in(text);
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (!tok.empty()) out.emplace_back(no, std::move(tok));
    }
    return out;
}

Int to_int(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": expected an integer, got '" + s + "'");
    }
}

Rational to_rational(const std::string& s, const std::string& where) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw ParseError(where + ": expected a rational, got '" + s + "'");
    }
}

std::pair<Int, int> split_label(const std::string& label) {
    auto comma = label.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad quotient label '" + label + "'");
    std::string idx = label.substr(comma + 1);
    if (!idx.empty() && idx.back() == '\'') idx.pop_back();
    return {std::stoll(label.substr(0, comma)), std::stoi(idx)};
}

std::string sigma3_term(Int d) { return d == 1 ? "sigma3(n)" : "sigma3(n/" + std::to_string(d) + ")"; }

}  // namespace

GoldenData GoldenData::load(const std::string& dir) {
    GoldenData p;
    for (const auto& entry : fs::directory_iterator(fs::path(dir) / "tables")) {
        const std::string path = entry.path().string();
        ExponentTable t;
        for (const auto& [no, tok] : token_lines(read_file(path))) {
            const std::string where = path + ":" + std::to_string(no);
            if (tok[0] == "divisors") {
                for (size_t i = 1; i < tok.size(); ++i) t.divisors.push_back(to_int(tok[i], where));
                t.level = t.divisors.empty() ? 1 : t.divisors.back();
                if (t.divisors != divisors(t.level)) throw ParseError(where + ": divisor list is not complete");
            } else if (tok[0] == "row") {
                if (tok.size() != t.divisors.size() + 2) throw ParseError(where + ": row length does not match divisors");
                if (to_int(tok[1], where) != static_cast<Int>(t.rows.size()) + 1)
                    throw ParseError(where + ": rows must be numbered consecutively");
                std::vector<int> r;
                for (size_t i = 2; i < tok.size(); ++i) r.push_back(static_cast<int>(to_int(tok[i], where)));
                t.rows.push_back(std::move(r));
            } else {
                throw ParseError(where + ": unknown key '" + tok[0] + "'");
            }
        }
        p.tables[t.level] = std::move(t);
    }
    const std::string qpath = (fs::path(dir) / "quotients.txt").string();
    for (const auto& [no, tok] : token_lines(read_file(qpath))) {
        const std::string where = qpath + ":" + std::to_string(no);
        if (tok[0] != "quotient" || tok.size() < 3) throw ParseError(where + ": expected 'quotient <label> δ:r ...'");
        std::map<Int, int> ex;
        for (size_t i = 2; i < tok.size(); ++i) {
            auto colon = tok[i].find(':');
            if (colon == std::string::npos) throw ParseError(where + ": bad token '" + tok[i] + "'");
            ex[to_int(tok[i].substr(0, colon), where)] = static_cast<int>(to_int(tok[i].substr(colon + 1), where));
        }
        p.primed[tok[1]] = std::move(ex);
    }
    const std::string bpath = (fs::path(dir) / "bases.txt").string();
    for (const auto& [no, tok] : token_lines(read_file(bpath))) {
        const std::string where = bpath + ":" + std::to_string(no);
        if (tok[0] != "basis" || tok.size() < 2) throw ParseError(where + ": expected 'basis <level> <label> ...'");
        Int level = to_int(tok[1], where);
        p.bases[level] = std::vector<std::string>(tok.begin() + 2, tok.end());
        for (const auto& l : p.bases[level])
            if (!p.has_label(l)) throw ParseError(where + ": unknown label " + l);
    }
    return p;
}

bool GoldenData::has_label(const std::string& label) const {
    if (primed.count(label)) return true;
    if (label.empty() || label.back() == '\'') return false;
    try {
        auto [lv, i] = split_label(label);
        auto it = tables.find(lv);
        return it != tables.end() && i >= 1 && i <= static_cast<int>(it->second.rows.size());
    } catch (const std::exception&) {
        return false;
    }
}

EtaQuotient GoldenData::quotient(const std::string& label, Int level) const {
    if (!has_label(label)) throw std::invalid_argument("unknown quotient label " + label);
    if (auto it = primed.find(label); it != primed.end()) return EtaQuotient(level, it->second);
    auto [lv, i] = split_label(label);
    const ExponentTable& t = tables.at(lv);
    std::map<Int, int> ex;
    for (size_t j = 0; j < t.divisors.size(); ++j)
        if (t.rows[i - 1][j] != 0) ex[t.divisors[j]] = t.rows[i - 1][j];
    return EtaQuotient(level, ex);
}

Display parse_display(const std::string& text, const std::string& name) {
    Display d;
    d.name = name;
    bool have_kind = false, no_tail = false;
    std::vector<TailTerm> tail;
    for (const auto& [no, tok] : token_lines(text)) {
        const std::string where = name + ":" + std::to_string(no);
        const std::string& key = tok[0];
        auto need = [&](size_t n) {
            if (tok.size() != n) throw ParseError(where + ": '" + key + "' expects " + std::to_string(n - 1) + " fields");
        };
        if (key == "kind") {
            need(2);
            if (tok[1] == "lhs")
                d.kind = Display::Kind::lhs;
            else if (tok[1] == "w")
                d.kind = Display::Kind::w;
            else
                throw ParseError(where + ": kind must be lhs or w");
            have_kind = true;
        } else if (key == "alpha") {
            need(2);
            d.alpha = to_int(tok[1], where);
        } else if (key == "beta") {
            need(2);
            d.beta = to_int(tok[1], where);
        } else if (key == "level") {
            need(2);
            d.level = to_int(tok[1], where);
        } else if (key == "group") {
            need(2);
            d.group = tok[1];
        } else if (key == "constant") {
            need(2);
            d.constant = to_rational(tok[1], where);
        } else if (key == "sigma3") {
            need(3);
            d.sigma3.emplace_back(to_int(tok[1], where), to_rational(tok[2], where));
        } else if (key == "tail") {
            if (tok.size() == 2 && tok[1] == "none") {
                no_tail = true;
                continue;
            }
            need(4);
            tail.push_back({to_int(tok[1], where), to_rational(tok[2], where), to_rational(tok[3], where)});
        } else if (key == "cusp") {
            need(3);
            d.cusp.emplace_back(tok[1], to_rational(tok[2], where));
        } else {
            throw ParseError(where + ": unknown key '" + key + "'");
        }
    }
    if (!have_kind) throw ParseError(name + ": missing 'kind'");
    if (d.alpha * d.beta != d.level) throw ParseError(name + ": level must equal alpha*beta");
    if (!no_tail && (d.kind == Display::Kind::w || !tail.empty())) d.tail = std::move(tail);
    return d;
}

Display load_display(const std::string& path) { return parse_display(read_file(path), fs::path(path).stem().string()); }

std::vector<Display> load_displays(const std::string& dir) {
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".txt") paths.push_back(entry.path().string());
    std::sort(paths.begin(), paths.end());
    std::vector<Display> out;
    for (const auto& p : paths) out.push_back(load_display(p));
    return out;
}

BasisSpec golden_basis(const GoldenData& data, Int level, Int T) {
    auto it = data.bases.find(level);
    if (it == data.bases.end()) throw std::invalid_argument("no reference basis listed for level " + std::to_string(level));
    std::vector<EtaQuotient> qs;
    for (const auto& l : it->second) qs.push_back(data.quotient(l, level));
    BuildOptions opts;
    opts.keep_order = true;
    opts.require_cuspidal = false;
    const CharacterConfig cfg = default_character_config(level);
    BasisSpec b;
    try {
        b = build_basis(level, cfg, qs, T, opts);
        if (b.cusp_part == qs) return b;
    } catch (const std::runtime_error&) {
    }
    // name the first listed quotient that adds nothing to the span
    const Int TT = T > 0 ? T : default_truncation(level);
    IncrementalRank span(TT + 1);
    for (Int t : divisors(level)) span.add(eisenstein_series(EisensteinGen::M(t), TT).coeffs());
    for (const auto& [chi, ss] : cfg.entries)
        for (Int s : ss) span.add(eisenstein_series(EisensteinGen::Mchi(chi.discriminant, s), TT).coeffs());
    std::string culprit = "?";
    for (size_t j = 0; j < qs.size(); ++j)
        if (!span.add(eta_quotient_series(qs[j], TT).coeffs())) {
            culprit = it->second[j];
            break;
        }
    throw std::runtime_error("reference basis for level " + std::to_string(level) + " is rank deficient: " + culprit +
                             " lies in the span of the generators before it");
}

int GoldenReport::term_mismatches() const {
    return static_cast<int>(std::count_if(terms.begin(), terms.end(), [](const TermCheck& t) { return !t.ok(); }));
}

bool GoldenReport::passed() const {
    return error.empty() && term_mismatches() == 0 && !fit_mismatch && !display_mismatch;
}

std::string GoldenReport::summary() const {
    std::ostringstream os;
    os << (display.kind == Display::Kind::lhs ? "lhs" : "W") << " (" << display.alpha << "," << display.beta << ")";
    if (passed()) {
        os << ": all " << terms.size() << " terms match, display holds for n <= " << display_checked_upto;
        return os.str();
    }
    if (!error.empty()) {
        os << ": error: " << error;
        return os.str();
    }
    os << ": " << term_mismatches() << "/" << terms.size() << " terms differ";
    for (const auto& t : terms)
        if (!t.ok()) {
            os << " (first: " << t.term << " shown " << to_string(t.expected) << ", solved " << to_string(t.actual) << ")";
            break;
        }
    if (fit_mismatch) os << "; reference basis misses the series at n=" << *fit_mismatch;
    if (display_mismatch)
        os << "; display fails the oracle at n=" << *display_mismatch;
    else
        os << "; display holds for n <= " << display_checked_upto;
    return os.str();
}

GoldenReport check_display(const GoldenData& data, const Display& d, Int check_upto) {
    GoldenReport rep;
    rep.display = d;
    const Int N = d.level;

    BasisSpec basis;
    try {
        basis = golden_basis(data, N);
    } catch (const std::exception& e) {
        rep.error = e.what();
        return rep;
    }
    const auto& labels = data.bases.at(N);
    for (size_t j = 0; j < basis.cusp_part.size(); ++j) {
        LigozatResult r = ligozat_check(basis.cusp_part[j]);
        if (!r.cuspidal)
            rep.warnings.push_back(labels[j] + " is " + (r.modular ? "modular but not cuspidal" : "not modular") +
                                   " at level " + std::to_string(N));
    }

    FitResult fit;
    try {
        fit = fit_formula(d.alpha, d.beta, basis);
    } catch (const std::exception& e) {
        rep.error = e.what();
        return rep;
    }
    rep.fit_mismatch = fit.first_mismatch;
    const ConvolutionFormula& f = fit.formula;

    auto shown = [](const auto& list, const auto& key) -> Rational {
        for (const auto& [k, v] : list)
            if (k == key) return v;
        return 0;
    };
    for (const auto& [label, v] : d.cusp)
        if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
            rep.warnings.push_back("displayed label " + label + " is not in the level " + std::to_string(N) + " basis");
            rep.terms.push_back({"b_" + label + " (not in basis)", v, 0});
        }

    if (d.kind == Display::Kind::lhs) {
        rep.terms.push_back({"constant", d.constant.value_or(0), f.sum_X()});
        for (const auto& [delta, x] : f.X) rep.terms.push_back({sigma3_term(delta), shown(d.sigma3, delta), 240 * x});
        for (const auto& z : f.Z)
            rep.terms.push_back({EisensteinGen::Mchi(z.discriminant, z.dilation).to_string(), 0, z.value});
        for (size_t j = 0; j < f.Y.size(); ++j) rep.terms.push_back({"b_" + labels[j], shown(d.cusp, labels[j]), f.Y[j]});
    } else {
        WDisplay w = w_display(f);
        for (const auto& [delta, x] : w.sigma3) rep.terms.push_back({sigma3_term(delta), shown(d.sigma3, delta), x});
        for (const auto& z : w.character)
            rep.terms.push_back({EisensteinGen::Mchi(z.discriminant, z.dilation).to_string(), 0, z.value});
        for (size_t j = 0; j < w.cusp.size(); ++j) rep.terms.push_back({"b_" + labels[j], shown(d.cusp, labels[j]), w.cusp[j]});
        std::vector<TailTerm> solved = {{f.alpha, w.tail_alpha_const, w.tail_alpha_n},
                                        {f.beta, w.tail_beta_const, w.tail_beta_n}};
        for (const auto& t : solved) {
            TailTerm s{t.delta, 0, 0};
            if (d.tail)
                for (const auto& u : *d.tail)
                    if (u.delta == t.delta) s = u;
            const std::string sig = t.delta == 1 ? "sigma(n)" : "sigma(n/" + std::to_string(t.delta) + ")";
            rep.terms.push_back({sig + " constant", s.constant, t.constant});
            rep.terms.push_back({"n " + sig, s.linear, t.linear});
        }
    }

    // literal reading of the display against the oracle
    std::vector<std::pair<QSeries<Integer>, Rational>> cusp_series;
    try {
        for (const auto& [label, v] : d.cusp) {
            auto [lv, i] = split_label(label);
            (void)i;
            cusp_series.emplace_back(eta_quotient_series(data.quotient(label, lv), check_upto), v);
        }
    } catch (const std::exception& e) {
        rep.error = e.what();
        return rep;
    }
    QSeries<Integer> lhs;
    if (d.kind == Display::Kind::lhs) lhs = lhs_series(d.alpha, d.beta, check_upto);
    if (d.kind == Display::Kind::lhs && d.constant.value_or(0) != lhs[0]) rep.display_mismatch = 0;
    for (Int n = 1; n <= check_upto && !rep.display_mismatch; ++n) {
        Rational v = 0;
        for (const auto& [delta, c] : d.sigma3)
            if (n % delta == 0) v += c * sigma_k(n / delta, 3);
        if (d.tail)
            for (const auto& t : *d.tail)
                if (n % t.delta == 0) v += (t.constant + t.linear * n) * sigma_k(n / t.delta, 1);
        for (const auto& [s, c] : cusp_series) v += c * s[n];
        Rational want = d.kind == Display::Kind::lhs ? Rational(lhs[n]) : Rational(brute_force_w(d.alpha, d.beta, n));
        if (v != want) rep.display_mismatch = n;
    }
    rep.display_checked_upto = check_upto;
    return rep;
}

std::vector<int> missing_table_rows(const ExponentTable& t, const std::vector<EtaQuotient>& found) {
    std::vector<int> missing;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        EtaQuotient e = EtaQuotient::from_vector(t.level, t.rows[i]);
        if (std::find(found.begin(), found.end(), e) == found.end()) missing.push_back(static_cast<int>(i) + 1);
    }
    return missing;
}

}  // namespace qconv
