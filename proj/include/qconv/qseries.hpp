#pragma once

#include "qconv/arith.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qconv {

/**
 * Truncated power series Σ_{i=0}^{T} c_i q^i over an exact scalar.
 *
 * Binary operations truncate to the smaller operand.
 */
template <class Scalar>
class QSeries {
public:
    using Coeffs = Vector<Scalar>;

    QSeries() : c_(Coeffs::Zero(1)) {}
    explicit QSeries(Int T) : c_(Coeffs::Zero(check_truncation(T) + 1)) {}
    explicit QSeries(Coeffs c) : c_(std::move(c)) {
        if (c_.size() == 0) throw std::invalid_argument("QSeries: empty coefficient vector");
    }

    static QSeries constant(Int T, const Scalar& v) {
        QSeries s(T);
        s.c_(0) = v;
        return s;
    }

    static QSeries from_coeffs(Int T, const std::vector<Scalar>& head) {
        QSeries s(T);
        for (Int i = 0; i <= T && i < static_cast<Int>(head.size()); ++i) s.c_(i) = head[i];
        return s;
    }

    Int truncation() const { return static_cast<Int>(c_.size()) - 1; }

    const Scalar& operator[](Int i) const { return c_(i); }
    Scalar& operator[](Int i) { return c_(i); }

    const Coeffs& coeffs() const { return c_; }
    Coeffs& coeffs() { return c_; }

    QSeries truncated(Int T) const {
        if (T > truncation()) throw std::invalid_argument("QSeries::truncated: cannot extend truncation");
        return QSeries(Coeffs(c_.head(T + 1)));
    }

    /// Indices with nonzero coefficient.
    std::vector<Int> support() const {
        std::vector<Int> idx;
        for (Int i = 0; i <= truncation(); ++i)
            if (c_(i) != 0) idx.push_back(i);
        return idx;
    }

    friend bool operator==(const QSeries& a, const QSeries& b) {
        return a.c_.size() == b.c_.size() && a.c_ == b.c_;
    }

private:
    static Int check_truncation(Int T) {
        if (T < 0) throw std::invalid_argument("QSeries: negative truncation");
        return T;
    }

    Coeffs c_;
};

namespace detail {

inline void exact_divide(Integer& a, const Integer& b) { mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t()); }
inline void exact_divide(Rational& a, const Rational& b) { a /= b; }

}  // namespace detail

template <class Scalar>
QSeries<Scalar> operator+(const QSeries<Scalar>& a, const QSeries<Scalar>& b) {
    Int T = std::min(a.truncation(), b.truncation());
    return QSeries<Scalar>(typename QSeries<Scalar>::Coeffs(a.coeffs().head(T + 1) + b.coeffs().head(T + 1)));
}

template <class Scalar>
QSeries<Scalar> operator-(const QSeries<Scalar>& a, const QSeries<Scalar>& b) {
    Int T = std::min(a.truncation(), b.truncation());
    return QSeries<Scalar>(typename QSeries<Scalar>::Coeffs(a.coeffs().head(T + 1) - b.coeffs().head(T + 1)));
}

template <class Scalar>
QSeries<Scalar> operator-(const QSeries<Scalar>& a) {
    return QSeries<Scalar>(typename QSeries<Scalar>::Coeffs(-a.coeffs()));
}

template <class Scalar>
QSeries<Scalar> scale(const QSeries<Scalar>& a, const Scalar& k) {
    typename QSeries<Scalar>::Coeffs c = a.coeffs();
    for (Int i = 0; i < c.size(); ++i) c(i) *= k;
    return QSeries<Scalar>(std::move(c));
}

template <class Scalar>
QSeries<Scalar> operator*(const Scalar& k, const QSeries<Scalar>& a) {
    return scale(a, k);
}

/// Cauchy product truncated at min(T_a, T_b).
template <class Scalar>
QSeries<Scalar> operator*(const QSeries<Scalar>& a, const QSeries<Scalar>& b) {
    Int T = std::min(a.truncation(), b.truncation());
    std::vector<Int> sa, sb;
    for (Int i = 0; i <= T; ++i) {
        if (a[i] != 0) sa.push_back(i);
        if (b[i] != 0) sb.push_back(i);
    }
    QSeries<Scalar> r(T);
    Scalar t;
    for (Int i : sa)
        for (Int j : sb) {
            if (i + j > T) break;
            t = a[i] * b[j];
            r[i + j] += t;
        }
    return r;
}

/// Substitution q ↦ q^t, keeping the truncation.
template <class Scalar>
QSeries<Scalar> dilate(const QSeries<Scalar>& a, Int t) {
    if (t < 1) throw std::invalid_argument("dilate: t must be positive");
    QSeries<Scalar> r(a.truncation());
    for (Int i = 0; i * t <= a.truncation(); ++i) r[i * t] = a[i];
    return r;
}

/// Multiply by q^k (k ≥ 0), keeping the truncation.
template <class Scalar>
QSeries<Scalar> shift(const QSeries<Scalar>& a, Int k) {
    if (k < 0) throw std::invalid_argument("shift: negative shift");
    QSeries<Scalar> r(a.truncation());
    for (Int i = 0; i + k <= a.truncation(); ++i) r[i + k] = a[i];
    return r;
}

/// Multiplicative inverse; over the integers the constant term must be ±1.
template <class Scalar>
QSeries<Scalar> inverse(const QSeries<Scalar>& a) {
    const Scalar& a0 = a[0];
    if (a0 == 0) throw std::domain_error("inverse: constant term is zero");
    if constexpr (Eigen::NumTraits<Scalar>::IsInteger) {
        if (a0 != 1 && a0 != -1) throw std::domain_error("inverse: integer series needs constant term ±1");
    }
    Int T = a.truncation();
    std::vector<Int> sa;
    for (Int k = 1; k <= T; ++k)
        if (a[k] != 0) sa.push_back(k);
    QSeries<Scalar> g(T);
    g[0] = 1;
    detail::exact_divide(g[0], a0);
    Scalar acc, t;
    for (Int n = 1; n <= T; ++n) {
        acc = 0;
        for (Int k : sa) {
            if (k > n) break;
            t = a[k] * g[n - k];
            acc += t;
        }
        acc = -acc;
        detail::exact_divide(acc, a0);
        g[n] = acc;
    }
    return g;
}

/// a^r for r ≥ 0 and a[0] = 1 (Miller recurrence); negative r goes through inverse(a).
template <class Scalar>
QSeries<Scalar> power(const QSeries<Scalar>& a, long r) {
    if (a[0] != 1) throw std::domain_error("power: constant term must be 1");
    if (r < 0) return power(inverse(a), -r);
    Int T = a.truncation();
    QSeries<Scalar> g(T);
    g[0] = 1;
    if (r == 0) return g;
    std::vector<Int> sa;
    for (Int k = 1; k <= T; ++k)
        if (a[k] != 0) sa.push_back(k);
    Scalar acc, t;
    for (Int n = 1; n <= T; ++n) {
        acc = 0;
        for (Int k : sa) {
            if (k > n) break;
            t = a[k] * g[n - k];
            t *= (r + 1) * k - n;
            acc += t;
        }
        detail::exact_divide(acc, Scalar(n));
        g[n] = acc;
    }
    return g;
}

/// F(q) = ∏_{n≥1} (1 − q^n) via the pentagonal number theorem.
template <class Scalar>
QSeries<Scalar> euler_product(Int T) {
    if (T < 0) throw std::invalid_argument("euler_product: negative truncation");
    QSeries<Scalar> f(T);
    f[0] = 1;
    for (Int k = 1;; ++k) {
        Int p1 = k * (3 * k - 1) / 2;
        if (p1 > T) break;
        int s = (k % 2) ? -1 : 1;
        f[p1] = s;
        Int p2 = k * (3 * k + 1) / 2;
        if (p2 <= T) f[p2] = s;
    }
    return f;
}

template <class To, class From>
QSeries<To> series_cast(const QSeries<From>& a) {
    QSeries<To> r(a.truncation());
    for (Int i = 0; i <= a.truncation(); ++i) r[i] = To(a[i]);
    return r;
}

/// ∏_{δ|N} η^{r_δ}(δz); entries with r_δ = 0 are dropped.
struct EtaQuotient {
    Int level = 1;
    std::map<Int, int> exponents;

    EtaQuotient() = default;
    EtaQuotient(Int N, std::map<Int, int> r);

    /// Exponent vector aligned with divisors(level).
    std::vector<int> exponent_vector() const;
    static EtaQuotient from_vector(Int N, const std::vector<int>& r);

    int exponent(Int delta) const;
    int weight_twice() const;
    Int sum_delta_r() const;
    Int sum_codelta_r() const;

    /// The order sum Σ_δ gcd(d,δ)² r_δ / δ at the cusp class of d | N.
    Rational order_sum(Int d) const;

    /// Σ δ r_δ / 24; may be non-integral when the quotient is not a q-series.
    Rational leading_exponent() const;

    std::string to_string() const;

    friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;
};

/// q^{n₀} ∏ F(q^δ)^{r_δ} with n₀ = Σδr_δ/24; coefficients are integers.
QSeries<Integer> eta_quotient_series(const EtaQuotient& e, Int T);

}  // namespace qconv
