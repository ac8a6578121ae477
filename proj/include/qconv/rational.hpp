#pragma once

#include <gmpxx.h>
#include <Eigen/Core>

#include <string>
#include <string_view>

namespace qconv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parse "p", "-p" or "p/q" into a canonical Rational; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1).
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

/// a/b in lowest terms.
inline Rational ratio(long a, long b) {
    Rational r(a, b);
    r.canonicalize();
    return r;
}

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace qconv

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    using Real = mpq_class;
    using NonInteger = mpq_class;
    using Nested = mpq_class;
    using Literal = mpq_class;

    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
};

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    using Real = mpz_class;
    using NonInteger = mpq_class;
    using Nested = mpz_class;
    using Literal = mpz_class;

    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }

    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 100,
        MulCost = 100
    };
};

}  // namespace Eigen
