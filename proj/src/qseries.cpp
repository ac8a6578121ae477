#include "qconv/qseries.hpp"

#include <numeric>
#include <sstream>

namespace qconv {

EtaQuotient::EtaQuotient(Int N, std::map<Int, int> r) : level(N) {
    if (N < 1) throw std::invalid_argument("EtaQuotient: level must be positive");
    for (auto [d, x] : r) {
        if (d < 1 || N % d != 0)
            throw std::invalid_argument("EtaQuotient: " + std::to_string(d) + " does not divide " + std::to_string(N));
        if (x != 0) exponents[d] = x;
    }
}

std::vector<int> EtaQuotient::exponent_vector() const {
    std::vector<int> v;
    for (Int d : divisors(level)) v.push_back(exponent(d));
    return v;
}

EtaQuotient EtaQuotient::from_vector(Int N, const std::vector<int>& r) {
    auto D = divisors(N);
    if (r.size() != D.size())
        throw std::invalid_argument("EtaQuotient: expected " + std::to_string(D.size()) + " exponents for level " +
                                    std::to_string(N));
    std::map<Int, int> m;
    for (size_t i = 0; i < D.size(); ++i) m[D[i]] = r[i];
    return EtaQuotient(N, std::move(m));
}

int EtaQuotient::exponent(Int delta) const {
    auto it = exponents.find(delta);
    return it == exponents.end() ? 0 : it->second;
}

int EtaQuotient::weight_twice() const {
    int s = 0;
    for (auto [d, x] : exponents) s += x;
    return s;
}

Int EtaQuotient::sum_delta_r() const {
    Int s = 0;
    for (auto [d, x] : exponents) s += d * x;
    return s;
}

Int EtaQuotient::sum_codelta_r() const {
    Int s = 0;
    for (auto [d, x] : exponents) s += (level / d) * x;
    return s;
}

Rational EtaQuotient::order_sum(Int d) const {
    Rational s = 0;
    for (auto [delta, x] : exponents) {
        Int g = std::gcd(d, delta);
        s += ratio(g * g * x, delta);
    }
    s.canonicalize();
    return s;
}

Rational EtaQuotient::leading_exponent() const {
    Rational r(sum_delta_r(), 24);
    r.canonicalize();
    return r;
}

std::string EtaQuotient::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (auto [d, x] : exponents) {
        os << (first ? "" : " ") << d << ':' << x;
        first = false;
    }
    return os.str();
}

QSeries<Integer> eta_quotient_series(const EtaQuotient& e, Int T) {
    Int s = e.sum_delta_r();
    if (s % 24 != 0)
        throw std::invalid_argument("eta quotient " + e.to_string() + " is not a q-series: sum of delta*r = " +
                                    std::to_string(s) + " is not divisible by 24");
    Int n0 = s / 24;
    if (n0 < 0) throw std::invalid_argument("eta quotient " + e.to_string() + " has a pole at infinity");
    if (T < n0) return QSeries<Integer>(T);
    Int body = T - n0;
    QSeries<Integer> prod = QSeries<Integer>::constant(body, 1);
    for (auto [delta, r] : e.exponents) {
        auto f = power(euler_product<Integer>(body / delta), r);
        QSeries<Integer> g(body);
        for (Int i = 0; i * delta <= body; ++i) g[i * delta] = f[i];
        prod = prod * g;
    }
    QSeries<Integer> out(T);
    for (Int i = 0; i <= body; ++i) out[i + n0] = prod[i];
    return out;
}

}  // namespace qconv
