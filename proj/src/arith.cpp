#include "qconv/arith.hpp"

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qconv {

Rational parse_rational(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    std::string s(text);
    Rational r;
    if (r.set_str(s, 10) != 0 || s.find_first_of(" \t") != std::string::npos)
        throw std::invalid_argument("malformed rational '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

std::vector<Int> divisors(Int n) {
    if (n < 1) throw std::invalid_argument("divisors: n must be positive");
    std::vector<Int> lo, hi;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

Integer sigma_k(Int n, unsigned k) {
    Integer total = 0;
    if (n <= 0) return total;
    Integer term;
    for (Int d : divisors(n)) {
        mpz_ui_pow_ui(term.get_mpz_t(), static_cast<unsigned long>(d), k);
        total += term;
    }
    return total;
}

Integer sigma_k_at_ratio(Int n, Int d, unsigned k) {
    if (d < 1) throw std::invalid_argument("sigma_k_at_ratio: d must be positive");
    if (n % d != 0) return 0;
    return sigma_k(n / d, k);
}

std::vector<std::pair<Int, int>> factorize(Int n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<Int, int>> out;
    for (Int p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

int valuation(Int n, Int p) {
    int e = 0;
    n = std::llabs(n);
    while (n != 0 && n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

Int euler_phi(Int n) {
    if (n < 1) throw std::invalid_argument("euler_phi: n must be positive");
    Int r = n;
    for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

namespace {

int jacobi(Int a, Int n) {
    a %= n;
    if (a < 0) a += n;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            Int r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

}  // namespace

int kronecker(Int m, Int n) {
    if (n == 0) return (m == 1 || m == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (m < 0) sign = -1;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (m % 2 == 0) return 0;
        Int r = ((m % 8) + 8) % 8;
        if ((r == 3 || r == 5) && (v % 2 == 1)) sign = -sign;
    }
    if (n == 1) return sign;
    return sign * jacobi(m, n);
}

KroneckerChar::KroneckerChar(Int disc) : discriminant(disc), conductor(std::llabs(disc)) {
    Int r = ((disc % 4) + 4) % 4;
    if (disc == 0 || (r != 0 && r != 1))
        throw std::invalid_argument("Kronecker character needs discriminant = 0 or 1 mod 4, got " +
                                    std::to_string(disc));
}

}  // namespace qconv
