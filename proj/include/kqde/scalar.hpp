#pragma once
// Scalar coefficient fields: exact rationals (GMP) and cyclotomic numbers Q(zeta_N).

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace kq {

using Rational = mpq_class;
using cplx = std::complex<double>;

inline bool is_zero(const Rational& a) { return sgn(a) == 0; }
inline bool is_one(const Rational& a) { return a == 1; }
inline Rational inv(const Rational& a) { return Rational(1) / a; }
// p/q in lowest terms (mpq_class(p, q) does not reduce)
inline Rational fraction(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}
std::string to_string(const Rational& a);
Rational parse_rational(const std::string& s);  // "p", "p/q" or a finite decimal like "0.37"
inline cplx to_complex(const Rational& a) { return cplx(a.get_d(), 0.0); }
inline Rational one_of(const Rational&) { return Rational(1); }

inline bool is_zero(const cplx& a) { return a == 0.0; }
inline cplx one_of(const cplx&) { return 1.0; }
inline cplx conj_coeff(const cplx& a) { return std::conj(a); }

// Element of the cyclotomic field Q(zeta_N), zeta_N = exp(2 pi i / N), stored as
// a polynomial in zeta reduced modulo the N-th cyclotomic polynomial.
// N == 1 is the plain rational subfield and mixes with every other N.
class Cyclo {
public:
    Cyclo() : N_(1), c_{} {}
    Cyclo(long v) : N_(1), c_{Rational(v)} { trim(); }
    Cyclo(const Rational& v) : N_(1), c_{v} { trim(); }

    static Cyclo zeta(int N, long k = 1);  // zeta_N^k
    static const std::vector<Rational>& cyclotomic_poly(int N);
    static int totient(int N);

    int order() const { return N_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }

    Cyclo operator-() const;
    Cyclo& operator+=(const Cyclo& o);
    Cyclo& operator-=(const Cyclo& o);
    Cyclo& operator*=(const Cyclo& o);
    friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
    friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }
    friend Cyclo operator*(Cyclo a, const Cyclo& b) { return a *= b; }
    friend Cyclo operator/(const Cyclo& a, const Cyclo& b) { return a * b.inverse(); }
    bool operator==(const Cyclo& o) const;
    bool operator!=(const Cyclo& o) const { return !(*this == o); }

    Cyclo inverse() const;
    Cyclo conj() const;  // complex conjugation zeta -> zeta^{-1}
    cplx to_complex() const;
    std::string str() const;

private:
    Cyclo(int N, std::vector<Rational> c) : N_(N), c_(std::move(c)) { reduce(); }
    static int common_order(int a, int b);
    Cyclo lifted(int N) const;
    void reduce();
    void trim();

    int N_;
    std::vector<Rational> c_;  // c_[k] * zeta^k
};

inline bool is_zero(const Cyclo& a) { return a.is_zero(); }
inline bool is_one(const Cyclo& a) { return a.is_rational() && a.rational_part() == 1; }
inline Cyclo inv(const Cyclo& a) { return a.inverse(); }
inline std::string to_string(const Cyclo& a) { return a.str(); }
inline cplx to_complex(const Cyclo& a) { return a.to_complex(); }
inline Cyclo one_of(const Cyclo&) { return Cyclo(1L); }

}  // namespace kq
