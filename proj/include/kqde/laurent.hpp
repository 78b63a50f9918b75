#pragma once
// Multivariate Laurent polynomials over an exact coefficient field.

#include "kqde/scalar.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kq {

constexpr int kMaxVars = 8;
using Exp = std::array<int16_t, kMaxVars>;
using VarList = std::shared_ptr<const std::vector<std::string>>;

VarList make_vars(std::vector<std::string> names);
// "Z1".."Zn", the standard variable list for rank n
VarList z_vars(int n);
// names followed by one extra variable
VarList append_var(const VarList& v, const std::string& name);

inline bool same_vars(const VarList& a, const VarList& b) {
    if (a == b) return true;
    if (!a || !b) return (!a || a->empty()) && (!b || b->empty());
    return *a == *b;
}

inline Rational conj_coeff(const Rational& a) { return a; }
inline Cyclo conj_coeff(const Cyclo& a) { return a.conj(); }

template <class K>
class Laurent {
public:
    using Term = std::pair<Exp, K>;

    Laurent() : vars_(make_vars({})) {}
    explicit Laurent(VarList v) : vars_(std::move(v)) {}
    Laurent(VarList v, const K& c) : vars_(std::move(v)) {
        if (!kq::is_zero(c)) terms_.push_back({Exp{}, c});
    }
    static Laurent constant(const VarList& v, long c) { return Laurent(v, K(c)); }
    static Laurent monomial(const VarList& v, const Exp& e, const K& c = K(1L)) {
        Laurent r(v);
        if (!kq::is_zero(c)) r.terms_.push_back({e, c});
        return r;
    }
    static Laurent var(const VarList& v, int i, int power = 1) {
        if (i < 0 || i >= static_cast<int>(v->size())) throw std::out_of_range("variable index");
        Exp e{};
        e[i] = static_cast<int16_t>(power);
        return monomial(v, e);
    }

    const VarList& vars() const { return vars_; }
    int nvars() const { return static_cast<int>(vars_->size()); }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == Exp{}); }
    K constant_term() const {
        for (auto& t : terms_)
            if (t.first == Exp{}) return t.second;
        return K(0L);
    }
    bool is_monomial() const { return terms_.size() == 1; }
    K coeff(const Exp& e) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                                   [](const Term& t, const Exp& x) { return t.first < x; });
        return (it != terms_.end() && it->first == e) ? it->second : K(0L);
    }

    Laurent operator-() const {
        Laurent r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }
    Laurent& operator+=(const Laurent& o) {
        adopt(o);
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
                out.push_back(terms_[i++]);
            } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
                out.push_back(o.terms_[j++]);
            } else {
                K c = terms_[i].second + o.terms_[j].second;
                if (!kq::is_zero(c)) out.push_back({terms_[i].first, c});
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
        return *this;
    }
    Laurent& operator-=(const Laurent& o) { return *this += -o; }
    Laurent& operator*=(const Laurent& o) {
        adopt(o);
        std::vector<Term> prod;
        prod.reserve(terms_.size() * o.terms_.size());
        for (auto& a : terms_)
            for (auto& b : o.terms_) {
                Exp e;
                for (int k = 0; k < kMaxVars; ++k) e[k] = static_cast<int16_t>(a.first[k] + b.first[k]);
                prod.push_back({e, a.second * b.second});
            }
        terms_ = collect(std::move(prod));
        return *this;
    }
    Laurent& operator*=(const K& c) {
        if (kq::is_zero(c)) {
            terms_.clear();
            return *this;
        }
        for (auto& t : terms_) t.second = t.second * c;
        return *this;
    }
    friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
    friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
    friend Laurent operator*(Laurent a, const Laurent& b) { return a *= b; }
    friend Laurent operator*(Laurent a, const K& c) { return a *= c; }
    friend Laurent operator*(const K& c, Laurent a) { return a *= c; }
    friend Laurent operator+(Laurent a, long c) { return a += Laurent(a.vars_, K(c)); }
    friend Laurent operator-(Laurent a, long c) { return a -= Laurent(a.vars_, K(c)); }
    friend Laurent operator+(long c, const Laurent& a) { return a + c; }
    friend Laurent operator-(long c, const Laurent& a) { return Laurent(a.vars_, K(c)) - a; }
    friend Laurent operator*(Laurent a, long c) { return a *= K(c); }
    friend Laurent operator*(long c, Laurent a) { return a *= K(c); }

    bool operator==(const Laurent& o) const {
        if (!terms_.empty() && !o.terms_.empty() && !same_vars(vars_, o.vars_)) return false;
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].first != o.terms_[i].first || terms_[i].second != o.terms_[i].second) return false;
        return true;
    }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    Laurent pow(int e) const {
        if (e < 0) return inverse_monomial().pow(-e);
        Laurent r(vars_, K(1L)), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }
    Laurent inverse_monomial() const {
        if (!is_monomial()) throw std::domain_error("only monomials are invertible Laurent polynomials");
        Exp e;
        for (int k = 0; k < kMaxVars; ++k) e[k] = static_cast<int16_t>(-terms_[0].first[k]);
        return monomial(vars_, e, inv(terms_[0].second));
    }
    // f(Z) -> f(Z^{-1}) with conjugated coefficients
    Laurent bar() const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            Exp e;
            for (int k = 0; k < kMaxVars; ++k) e[k] = static_cast<int16_t>(-t.first[k]);
            out.push_back({e, conj_coeff(t.second)});
        }
        Laurent r(vars_);
        r.terms_ = collect(std::move(out));
        return r;
    }
    // substitute every variable by a monomial Z^{exp_map[i]} (row i lists exponents)
    Laurent substitute_monomials(const std::vector<Exp>& images, const VarList& target) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            Exp e{};
            for (int i = 0; i < nvars(); ++i)
                for (int k = 0; k < kMaxVars; ++k) e[k] = static_cast<int16_t>(e[k] + t.first[i] * images[i][k]);
            out.push_back({e, t.second});
        }
        Laurent r(target);
        r.terms_ = collect(std::move(out));
        return r;
    }
    // general substitution of each variable by a Laurent polynomial; negative powers need monomials
    Laurent substitute(const std::vector<Laurent>& images) const {
        if (static_cast<int>(images.size()) != nvars()) throw std::invalid_argument("substitute: arity mismatch");
        VarList target = images.empty() ? vars_ : images[0].vars();
        Laurent r(target);
        for (auto& t : terms_) {
            Laurent m(target, t.second);
            for (int i = 0; i < nvars(); ++i)
                if (t.first[i]) m *= images[i].pow(t.first[i]);
            r += m;
        }
        return r;
    }
    // rename onto a larger list of variables, matching by name
    Laurent embed(const VarList& target) const {
        std::vector<int> where(nvars());
        for (int i = 0; i < nvars(); ++i) {
            auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
            if (it == target->end()) throw std::invalid_argument("embed: missing variable " + (*vars_)[i]);
            where[i] = static_cast<int>(it - target->begin());
        }
        std::vector<Term> out;
        for (auto& t : terms_) {
            Exp e{};
            for (int i = 0; i < nvars(); ++i) e[where[i]] = static_cast<int16_t>(e[where[i]] + t.first[i]);
            out.push_back({e, t.second});
        }
        Laurent r(target);
        r.terms_ = collect(std::move(out));
        return r;
    }
    // collect by powers of variable v: returns (min power, coefficients)
    std::pair<int, std::vector<Laurent>> by_powers(int v) const {
        if (terms_.empty()) return {0, {}};
        int lo = terms_[0].first[v], hi = lo;
        for (auto& t : terms_) {
            lo = std::min<int>(lo, t.first[v]);
            hi = std::max<int>(hi, t.first[v]);
        }
        std::vector<std::vector<Term>> buckets(hi - lo + 1);
        for (auto& t : terms_) {
            Exp e = t.first;
            e[v] = 0;
            buckets[t.first[v] - lo].push_back({e, t.second});
        }
        std::vector<Laurent> c;
        c.reserve(buckets.size());
        for (auto& b : buckets) {
            Laurent p(vars_);
            p.terms_ = collect(std::move(b));
            c.push_back(std::move(p));
        }
        return {lo, c};
    }
    // inverse of by_powers
    static Laurent from_powers(const VarList& vars, int v, int lo, const std::vector<Laurent>& c) {
        std::vector<Term> all;
        for (size_t d = 0; d < c.size(); ++d)
            for (auto& t : c[d].terms_) {
                Exp e = t.first;
                e[v] = static_cast<int16_t>(e[v] + lo + static_cast<int>(d));
                all.push_back({e, t.second});
            }
        Laurent r(vars);
        r.terms_ = collect(std::move(all));
        return r;
    }
    // exact quotient by (x_c - x_b); throws if the division leaves a remainder
    Laurent divide_by_difference(int c, int b) const {
        if (terms_.empty()) return *this;
        auto [lo, N] = by_powers(c);
        int hi = lo + static_cast<int>(N.size()) - 1;
        if (hi == lo) throw std::domain_error("inexact division by a binomial");
        Laurent xb = var(vars_, b);
        // (x_c - x_b) Q = N with Q = sum_{d=lo}^{hi-1} Q_d x_c^d
        std::vector<Laurent> Q(N.size() - 1, Laurent(vars_));
        Q[hi - 1 - lo] = N[hi - lo];
        for (int d = hi - 1; d > lo; --d) Q[d - 1 - lo] = N[d - lo] + xb * Q[d - lo];
        if (!(N[0] + xb * Q[0]).is_zero()) throw std::domain_error("inexact division by a binomial");
        return from_powers(vars_, c, lo, Q);
    }
    int max_degree(int v) const {
        int d = -32768;
        for (auto& t : terms_) d = std::max<int>(d, t.first[v]);
        return d;
    }
    int min_degree(int v) const {
        int d = 32767;
        for (auto& t : terms_) d = std::min<int>(d, t.first[v]);
        return d;
    }

    template <class C>
    C eval(const std::vector<C>& pt) const {
        C r(0);
        for (auto& t : terms_) {
            C m = to_complex_like<C>(t.second);
            for (int i = 0; i < nvars(); ++i) {
                int e = t.first[i];
                if (e == 0) continue;
                C base = e > 0 ? pt[i] : C(1) / pt[i];
                m *= ipow(base, std::abs(e));
            }
            r += m;
        }
        return r;
    }
    // exact evaluation at a point of K
    K eval_exact(const std::vector<K>& pt) const {
        K r(0L);
        for (auto& t : terms_) {
            K m = t.second;
            for (int i = 0; i < nvars(); ++i) {
                int e = t.first[i];
                if (e == 0) continue;
                K base = e > 0 ? pt[i] : inv(pt[i]);
                for (int k = 0; k < std::abs(e); ++k) m = m * base;
            }
            r = r + m;
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& t : terms_) {
            std::string mono;
            for (int i = 0; i < nvars(); ++i) {
                if (!t.first[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += (*vars_)[i];
                if (t.first[i] != 1) mono += "^" + (t.first[i] < 0 ? "(" + std::to_string(t.first[i]) + ")" : std::to_string(t.first[i]));
            }
            std::string c = to_string(t.second);
            bool compound = c.find(' ') != std::string::npos;
            if (compound) c = "(" + c + ")";
            std::string term;
            if (mono.empty()) term = c;
            else if (c == "1") term = mono;
            else if (c == "-1") term = "-" + mono;
            else term = c + "*" + mono;
            if (s.empty()) s = term;
            else if (term[0] == '-') s += " - " + term.substr(1);
            else s += " + " + term;
        }
        return s;
    }

    void set_terms_unchecked(std::vector<Term> t) { terms_ = collect(std::move(t)); }

private:
    template <class C>
    static C ipow(C b, int e) {
        C r(1);
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }
    template <class C>
    static C to_complex_like(const K& k) {
        return C(to_complex(k));
    }
    void adopt(const Laurent& o) {
        if (same_vars(vars_, o.vars_)) {
            if (vars_->empty()) vars_ = o.vars_;
            return;
        }
        if (vars_->empty() || (terms_.size() <= 1 && is_constant())) {
            vars_ = o.vars_;
            return;
        }
        if (o.vars_->empty() || o.is_constant()) return;
        throw std::invalid_argument("Laurent polynomials over different variables");
    }
    static std::vector<Term> collect(std::vector<Term> v) {
        std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        std::vector<Term> out;
        out.reserve(v.size());
        for (auto& t : v) {
            if (!out.empty() && out.back().first == t.first) out.back().second = out.back().second + t.second;
            else out.push_back(std::move(t));
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return kq::is_zero(t.second); }),
                  out.end());
        return out;
    }

    VarList vars_;
    std::vector<Term> terms_;
};

using LaurentQ = Laurent<Rational>;
using LaurentC = Laurent<Cyclo>;

template <class K>
bool is_zero(const Laurent<K>& f) { return f.is_zero(); }
template <class K>
std::string to_string(const Laurent<K>& f) { return f.str(); }
template <class K>
Laurent<K> conj_coeff(const Laurent<K>& f) { return f.bar(); }
template <class K>
Laurent<K> one_of(const Laurent<K>& z) { return Laurent<K>(z.vars(), K(1L)); }

// coefficientwise conversion Q -> Q(zeta)
LaurentC to_cyclo(const LaurentQ& f);

}  // namespace kq
