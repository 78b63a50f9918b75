#pragma once
// Quotients of Laurent polynomials. No gcd cancellation; equality is tested by
// cross-multiplication, which is exact.

#include "kqde/laurent.hpp"

namespace kq {

template <class K>
class RationalFn {
public:
    using Poly = Laurent<K>;

    RationalFn() : num_(), den_(Poly::constant(num_.vars(), 1)) {}
    RationalFn(const Poly& p) : num_(p), den_(Poly::constant(p.vars(), 1)) {}
    RationalFn(const Poly& n, const Poly& d) : num_(n), den_(d) {
        if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
        normalize();
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator-() const { return RationalFn(-num_, den_); }
    friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
        if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
        return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
        return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
    RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
    RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
    bool operator==(const RationalFn& o) const { return num_ * o.den_ == o.num_ * den_; }
    bool operator!=(const RationalFn& o) const { return !(*this == o); }

    RationalFn bar() const { return RationalFn(num_.bar(), den_.bar()); }
    // true when the denominator divides out to a Laurent polynomial we can recover
    bool is_laurent() const { return den_.is_monomial(); }
    Poly to_laurent() const {
        if (!den_.is_monomial()) throw std::domain_error("rational function is not a Laurent polynomial");
        return num_ * den_.inverse_monomial();
    }
    template <class C>
    C eval(const std::vector<C>& pt) const {
        return num_.template eval<C>(pt) / den_.template eval<C>(pt);
    }
    std::string str() const { return "(" + num_.str() + ")/(" + den_.str() + ")"; }

private:
    void normalize() {
        if (den_.is_monomial()) {
            num_ = num_ * den_.inverse_monomial();
            den_ = Poly::constant(num_.vars(), 1);
        }
    }
    Poly num_, den_;
};

template <class K>
bool is_zero(const RationalFn<K>& f) { return f.is_zero(); }
template <class K>
std::string to_string(const RationalFn<K>& f) { return f.str(); }
template <class K>
RationalFn<K> conj_coeff(const RationalFn<K>& f) { return f.bar(); }
template <class K>
RationalFn<K> one_of(const RationalFn<K>& z) { return RationalFn<K>(Laurent<K>(z.num().vars(), K(1L))); }
template <class K>
RationalFn<K> inv(const RationalFn<K>& f) { return RationalFn<K>(f.den(), f.num()); }

}  // namespace kq
