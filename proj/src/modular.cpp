#include "qconv/modular.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qconv {

SpaceDims dims(Int N) {
    if (N < 1) throw std::invalid_argument("dims: level must be positive");
    SpaceDims s;
    s.level = N;
    auto fac = factorize(N);

    Int mu = N;
    for (auto [p, e] : fac) mu = mu / p * (p + 1);
    s.index = mu;

    if (N % 4 == 0) {
        s.elliptic2 = 0;
    } else {
        Int e2 = 1;
        for (auto [p, e] : fac) e2 *= 1 + kronecker(-4, p);
        s.elliptic2 = e2;
    }
    if (N % 9 == 0) {
        s.elliptic3 = 0;
    } else {
        Int e3 = 1;
        for (auto [p, e] : fac) e3 *= 1 + kronecker(-3, p);
        s.elliptic3 = e3;
    }

    Int cusps = 0;
    for (Int d : divisors(N)) cusps += euler_phi(std::gcd(d, N / d));
    s.cusp_count = cusps;

    // 12g = 12 + μ − 3ε₂ − 4ε₃ − 6ε∞
    Int twelve_g = 12 + mu - 3 * s.elliptic2 - 4 * s.elliptic3 - 6 * cusps;
    s.genus = twelve_g / 12;

    s.dim_eisenstein = cusps;
    s.dim_cusp = 3 * (s.genus - 1) + s.elliptic2 + s.elliptic3 + cusps;
    return s;
}

std::string LigozatResult::describe() const {
    std::ostringstream os;
    os << "sum_delta=" << sum_delta << " sum_codelta=" << sum_codelta << " square=" << square
       << " weight=" << to_string(weight) << " holomorphic=" << holomorphic << " vanishing=" << vanishing
       << " orders=[";
    for (size_t i = 0; i < order_sums.size(); ++i) os << (i ? " " : "") << to_string(order_sums[i]);
    os << "]";
    return os.str();
}

LigozatResult ligozat_check(const EtaQuotient& e) {
    LigozatResult res;
    const Int N = e.level;
    res.sum_delta = e.sum_delta_r() % 24 == 0;
    res.sum_codelta = e.sum_codelta_r() % 24 == 0;
    res.square = true;
    for (auto [p, k] : factorize(N)) {
        Int v = 0;
        for (auto [d, x] : e.exponents) v += x * valuation(d, p);
        if (v % 2 != 0) res.square = false;
    }
    int w2 = e.weight_twice();
    res.weight_ok = w2 > 0 && w2 % 4 == 0;
    res.weight = ratio(w2, 2);
    res.weight.canonicalize();
    res.holomorphic = true;
    res.vanishing = true;
    for (Int d : divisors(N)) {
        Rational o = e.order_sum(d);
        if (o < 0) res.holomorphic = false;
        if (o <= 0) res.vanishing = false;
        res.order_sums.push_back(o);
    }
    bool base = res.sum_delta && res.sum_codelta && res.square && res.weight_ok;
    res.modular = base && res.holomorphic;
    res.cuspidal = base && res.vanishing;
    res.leading_exponent = res.order_sums.back() / 24;
    res.leading_exponent.canonicalize();
    return res;
}

Rational cusp_order(const EtaQuotient& e, Int d) {
    const Int N = e.level;
    Rational o = e.order_sum(d) * N / (24 * std::gcd(d, N / d) * d);
    o.canonicalize();
    return o;
}

namespace {

void sort_canonical(std::vector<EtaQuotient>& v) {
    std::vector<std::pair<std::pair<Int, std::vector<int>>, size_t>> keys;
    for (size_t i = 0; i < v.size(); ++i) keys.push_back({{v[i].sum_delta_r(), v[i].exponent_vector()}, i});
    std::sort(keys.begin(), keys.end());
    std::vector<EtaQuotient> out;
    out.reserve(v.size());
    for (auto& k : keys) out.push_back(v[k.second]);
    v = std::move(out);
}

// Number of positive solutions of Σ w_i v_i = target, as a double (work estimate only).
double composition_count(const std::vector<Int>& w, Int target) {
    std::vector<double> ways(target + 1, 0.0);
    ways[0] = 1.0;
    for (Int wi : w) {
        std::vector<double> next(target + 1, 0.0);
        for (Int s = 0; s <= target; ++s) {
            if (ways[s] == 0.0) continue;
            for (Int t = s + wi; t <= target; t += wi) next[t] += ways[s];
        }
        ways = std::move(next);
    }
    return ways[target];
}

}  // namespace

std::vector<EtaQuotient> search_cusp_quotients_by_exponents(Int N, int bound) {
    if (bound < 1) throw std::invalid_argument("search: exponent bound must be positive");
    const auto D = divisors(N);
    const size_t k = D.size();
    std::vector<EtaQuotient> out;
    if (N == 1) return out;

    // gcd(d,δ)² · N/δ, integral order sums scaled by N
    std::vector<std::vector<Int>> ord(k, std::vector<Int>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            Int g = std::gcd(D[i], D[j]);
            ord[i][j] = g * g * (N / D[j]);
        }

    std::vector<int> r(k, 0);
    auto leaf = [&]() {
        Int sd = 0, sc = 0;
        for (size_t j = 0; j < k; ++j) {
            sd += D[j] * r[j];
            sc += (N / D[j]) * r[j];
        }
        if (sd % 24 || sc % 24) return;
        for (size_t i = 0; i < k; ++i) {
            Int o = 0;
            for (size_t j = 0; j < k; ++j) o += ord[i][j] * r[j];
            if (o <= 0) return;
        }
        EtaQuotient e = EtaQuotient::from_vector(N, r);
        if (ligozat_check(e).cuspidal) out.push_back(std::move(e));
    };

    auto rec = [&](auto&& self, size_t i, int partial) -> void {
        if (i + 1 == k) {
            int last = 8 - partial;
            if (std::abs(last) > bound) return;
            r[i] = last;
            leaf();
            return;
        }
        const int rest = static_cast<int>(k - 1 - i);
        for (int x = -bound; x <= bound; ++x) {
            int rem = 8 - partial - x;
            if (std::abs(rem) > bound * rest) continue;
            r[i] = x;
            self(self, i + 1, partial + x);
        }
    };
    rec(rec, 0, 0);
    sort_canonical(out);
    return out;
}

std::vector<EtaQuotient> search_cusp_quotients_by_orders(Int N, int bound) {
    if (bound < 1) throw std::invalid_argument("search: exponent bound must be positive");
    std::vector<EtaQuotient> out;
    if (N == 1) return out;
    const auto D = divisors(N);
    const size_t k = D.size();
    const SpaceDims sd = dims(N);
    const Int target = sd.index / 3;  // Σ_d w_d v_d = 4μ/12

    // u = A r with A_{dδ} = gcd(d,δ)²/δ and u_d = s_d v_d, s_d = 24 gcd(d,N/d) d / N
    Matrix<Rational> A(k, k);
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            Int g = std::gcd(D[i], D[j]);
            A(i, j) = ratio(g * g, D[j]);
            A(i, j).canonicalize();
        }
    Matrix<Rational> aug(k, 2 * k);
    aug.leftCols(k) = A;
    aug.rightCols(k).setZero();
    for (size_t i = 0; i < k; ++i) aug(i, k + i) = 1;
    for (size_t c = 0; c < k; ++c) {
        size_t p = c;
        while (aug(p, c) == 0) ++p;
        if (p != c) aug.row(p).swap(aug.row(c));
        Rational inv = 1 / aug(c, c);
        for (size_t j = 0; j < 2 * k; ++j) aug(c, j) *= inv;
        for (size_t i = 0; i < k; ++i) {
            if (i == c || aug(i, c) == 0) continue;
            Rational f = aug(i, c);
            for (size_t j = 0; j < 2 * k; ++j) aug(i, j) -= f * aug(c, j);
        }
    }
    Matrix<Rational> M(k, k);
    std::vector<Int> w(k);
    for (size_t j = 0; j < k; ++j) {
        Int g = std::gcd(D[j], N / D[j]);
        w[j] = euler_phi(g);
        Rational s(24 * g * D[j], N);
        s.canonicalize();
        for (size_t i = 0; i < k; ++i) M(i, j) = aug(i, k + j) * s;
    }
    Integer den = 1;
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), M(i, j).get_den_mpz_t());
    if (!den.fits_slong_p()) throw std::overflow_error("search: order matrix denominator too large");
    const Int Den = den.get_si();
    std::vector<std::vector<Int>> B(k, std::vector<Int>(k));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            Rational x = M(i, j) * Den;
            B[i][j] = x.get_num().get_si();
        }

    std::vector<Int> acc(k, 0);
    std::vector<Int> tail_weight(k + 1, 0);
    for (size_t j = k; j-- > 0;) tail_weight[j] = tail_weight[j + 1] + w[j];

    auto add_col = [&](size_t j, Int times) {
        for (size_t i = 0; i < k; ++i) acc[i] += times * B[i][j];
    };
    auto leaf = [&]() {
        std::vector<int> r(k);
        for (size_t i = 0; i < k; ++i) {
            if (acc[i] % Den != 0) return;
            Int x = acc[i] / Den;
            if (x > bound || x < -bound) return;
            r[i] = static_cast<int>(x);
        }
        EtaQuotient e = EtaQuotient::from_vector(N, r);
        if (e.weight_twice() == 8 && ligozat_check(e).cuspidal) out.push_back(std::move(e));
    };
    auto rec = [&](auto&& self, size_t j, Int remaining) -> void {
        if (j + 1 == k) {
            if (remaining % w[j] != 0 || remaining < w[j]) return;
            Int v = remaining / w[j];
            add_col(j, v);
            leaf();
            add_col(j, -v);
            return;
        }
        Int room = remaining - tail_weight[j + 1];
        for (Int v = 1; v * w[j] <= room; ++v) {
            add_col(j, 1);
            self(self, j + 1, remaining - v * w[j]);
        }
        Int used = room / w[j];
        if (used > 0) add_col(j, -used);
    };
    if (target >= tail_weight[0]) rec(rec, 0, target);
    sort_canonical(out);
    return out;
}

std::vector<EtaQuotient> search_cusp_quotients(Int N, int bound) {
    if (bound < 1) throw std::invalid_argument("search: exponent bound must be positive");
    if (N < 1) throw std::invalid_argument("search: level must be positive");
    if (N == 1) return {};
    const auto D = divisors(N);
    std::vector<Int> w;
    for (Int d : D) w.push_back(euler_phi(std::gcd(d, N / d)));
    double by_orders = composition_count(w, dims(N).index / 3) * static_cast<double>(D.size());
    double by_exponents = std::pow(2.0 * bound + 1.0, static_cast<double>(D.size() - 1));
    return by_orders < by_exponents ? search_cusp_quotients_by_orders(N, bound)
                                    : search_cusp_quotients_by_exponents(N, bound);
}

std::string EisensteinGen::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::L: os << "L t=" << dilation; break;
        case Kind::M: os << "M t=" << dilation; break;
        case Kind::Mchi: os << "Mchi d=" << character->discriminant << " t=" << dilation; break;
    }
    return os.str();
}

QSeries<Integer> eisenstein_series(const EisensteinGen& g, Int T, CharacterReading reading) {
    if (g.dilation < 1) throw std::invalid_argument("eisenstein_series: dilation must be positive");
    const Int t = g.dilation;
    QSeries<Integer> s(T);
    switch (g.kind) {
        case EisensteinGen::Kind::L:
            s[0] = 1;
            for (Int n = 1; n * t <= T; ++n) s[n * t] = -24 * sigma_k(n, 1);
            break;
        case EisensteinGen::Kind::M:
            s[0] = 1;
            for (Int n = 1; n * t <= T; ++n) s[n * t] = 240 * sigma_k(n, 3);
            break;
        case EisensteinGen::Kind::Mchi: {
            if (!g.character || g.character->conductor <= 1)
                throw std::invalid_argument("eisenstein_series: M_chi needs a character of conductor > 1");
            const KroneckerChar& chi = *g.character;
            for (Int n = 1; n * t <= T; ++n) {
                Integer c = 0;
                if (reading == CharacterReading::plain) {
                    c = chi(n) * sigma_k(n, 3);
                } else {
                    for (Int d : divisors(n)) {
                        int x = chi(d) * chi(n / d);
                        if (x) c += x * d * d * d;
                    }
                }
                s[n * t] = c;
            }
            break;
        }
    }
    return s;
}

}  // namespace qconv
