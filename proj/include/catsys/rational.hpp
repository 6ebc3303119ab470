#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace catsys {

using Integer = mpz_class;
using Rational = mpq_class;

using IVec = std::vector<Integer>;
using QVec = std::vector<Rational>;

// num/den with canonicalization (gmpxx does not canonicalize two-arg ctors).
inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Integer floor_q(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

inline Integer ceil_q(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

// Nearest integer, half-ties rounded up (floor(x + 1/2)).
inline Integer round_half_up(const Rational& x) {
    return floor_q(x + make_rational(1, 2));
}

// floor(sqrt(x)) for x >= 0.  floor(sqrt(x)) == isqrt(floor(x)) since
// k <= sqrt(x) < k+1 iff k^2 <= floor(x) < (k+1)^2 for integer k.
inline Integer isqrt_floor(const Rational& x) {
    if (x < 0) throw std::domain_error("isqrt_floor: negative argument");
    Integer fl = floor_q(x);
    Integer r;
    mpz_sqrt(r.get_mpz_t(), fl.get_mpz_t());
    return r;
}

inline double to_double(const Rational& x) { return x.get_d(); }

// Accepts "p/q", plain integers, and decimal literals ("-0.25" -> -1/4).
Rational parse_rational(const std::string& text);

std::string rational_str(const Rational& x);

// Exact complex number with rational real/imaginary parts.  Enough field
// structure for central charges; no division by zero checks beyond GMP's.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() : re(0), im(0) {}
    ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    ComplexRational conj() const { return {re, -im}; }
    Rational norm_sq() const { return re * re + im * im; }

    ComplexRational operator+(const ComplexRational& o) const { return {re + o.re, im + o.im}; }
    ComplexRational operator-(const ComplexRational& o) const { return {re - o.re, im - o.im}; }
    ComplexRational operator-() const { return {-re, -im}; }
    ComplexRational operator*(const ComplexRational& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    ComplexRational operator*(const Rational& c) const { return {re * c, im * c}; }
    ComplexRational operator/(const ComplexRational& o) const {
        Rational n = o.norm_sq();
        if (n == 0) throw std::domain_error("ComplexRational: division by zero");
        ComplexRational p = *this * o.conj();
        return {p.re / n, p.im / n};
    }
    bool operator==(const ComplexRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const ComplexRational& o) const { return !(*this == o); }
};

}  // namespace catsys
