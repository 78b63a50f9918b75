#include "kqde/scalar.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace kq {

std::string to_string(const Rational& a) { return a.get_str(); }

Rational parse_rational(const std::string& s0) {
    std::string s = s0;
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        Rational r;
        if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s0);
        r.canonicalize();
        return r;
    }
    if (s.find('/') != std::string::npos || s.find_first_of("eE") != std::string::npos)
        throw std::invalid_argument("bad rational: " + s0);
    std::string frac = s.substr(dot + 1);
    std::string whole = s.substr(0, dot);
    bool neg = !whole.empty() && whole[0] == '-';
    if (neg || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
    if (whole.empty()) whole = "0";
    mpz_class num(whole + frac, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    Rational r(num, den);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

// ---- cyclotomic polynomials ----

namespace {
using QPoly = std::vector<Rational>;  // ascending coefficients

void qtrim(QPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    qtrim(r);
    return r;
}

// returns (quotient, remainder)
std::pair<QPoly, QPoly> qdivmod(QPoly a, const QPoly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    qtrim(a);
    QPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (a.size() >= b.size() && !a.empty()) {
        size_t shift = a.size() - b.size();
        Rational f = a.back() / b.back();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
        qtrim(a);
    }
    qtrim(q);
    return {q, a};
}

QPoly qsub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    qtrim(r);
    return r;
}

std::mutex g_cyc_mutex;
std::map<int, QPoly> g_cyc;
}  // namespace

const std::vector<Rational>& Cyclo::cyclotomic_poly(int N) {
    if (N < 1) throw std::invalid_argument("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(g_cyc_mutex);
    auto it = g_cyc.find(N);
    if (it != g_cyc.end()) return it->second;
    // Phi_N = (x^N - 1) / prod_{d | N, d < N} Phi_d, built bottom-up
    for (int d = 1; d <= N; ++d) {
        if (N % d != 0 || g_cyc.count(d)) continue;
        QPoly p(d + 1, Rational(0));
        p[0] = -1;
        p[d] = 1;
        for (int e = 1; e < d; ++e)
            if (d % e == 0) p = qdivmod(p, g_cyc.at(e)).first;
        g_cyc[d] = p;
    }
    return g_cyc.at(N);
}

int Cyclo::totient(int N) { return static_cast<int>(cyclotomic_poly(N).size()) - 1; }

int Cyclo::common_order(int a, int b) {
    if (a == b || b == 1) return a;
    if (a == 1) return b;
    return std::lcm(a, b);
}

Cyclo Cyclo::zeta(int N, long k) {
    if (N < 1) throw std::invalid_argument("zeta order must be positive");
    long e = ((k % N) + N) % N;
    std::vector<Rational> c(e + 1, Rational(0));
    c[e] = 1;
    return Cyclo(N, std::move(c));
}

void Cyclo::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

void Cyclo::reduce() {
    trim();
    if (N_ == 1) return;
    const auto& phi = cyclotomic_poly(N_);
    if (c_.size() >= phi.size()) c_ = qdivmod(c_, phi).second;
    trim();
}

Cyclo Cyclo::lifted(int N) const {
    if (N == N_) return *this;
    if (N % N_ != 0) throw std::logic_error("cyclotomic lift to non-multiple order");
    int step = N / N_;
    std::vector<Rational> c(c_.empty() ? 0 : (c_.size() - 1) * step + 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i * step] = c_[i];
    return Cyclo(N, std::move(c));
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
    int N = common_order(N_, o.N_);
    if (N != N_) *this = lifted(N);
    const Cyclo& b = (o.N_ == N) ? o : o.lifted(N);
    if (c_.size() < b.c_.size()) c_.resize(b.c_.size(), Rational(0));
    for (size_t i = 0; i < b.c_.size(); ++i) c_[i] += b.c_[i];
    trim();
    return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo& Cyclo::operator*=(const Cyclo& o) {
    int N = common_order(N_, o.N_);
    Cyclo a = lifted(N);
    Cyclo b = o.lifted(N);
    *this = Cyclo(N, qmul(a.c_, b.c_));
    return *this;
}

bool Cyclo::operator==(const Cyclo& o) const {
    Cyclo d = *this - o;
    return d.c_.empty();
}

Cyclo Cyclo::inverse() const {
    if (c_.empty()) throw std::domain_error("inverse of zero in Q(zeta)");
    if (c_.size() == 1) return Cyclo(N_, {Rational(1) / c_[0]});
    // extended Euclid: s*a + t*phi = g (constant)
    const auto& phi = cyclotomic_poly(N_);
    QPoly r0 = phi, r1 = c_;
    QPoly s0{}, s1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = qdivmod(r0, r1);
        QPoly s2 = qsub(s0, qmul(q, s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if (r0.size() != 1) throw std::domain_error("non-invertible element in Q(zeta)");
    Rational g = r0[0];
    for (auto& x : s0) x /= g;
    return Cyclo(N_, s0);
}

Cyclo Cyclo::conj() const {
    std::vector<Rational> c(N_, Rational(0));
    for (size_t k = 0; k < c_.size(); ++k) c[(N_ - k % N_) % N_] += c_[k];
    return Cyclo(N_, std::move(c));
}

cplx Cyclo::to_complex() const {
    cplx r(0.0, 0.0);
    for (size_t k = 0; k < c_.size(); ++k) r += c_[k].get_d() * std::polar(1.0, 2.0 * M_PI * double(k) / N_);
    return r;
}

std::string Cyclo::str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (sgn(c_[k]) == 0) continue;
        std::string term = c_[k].get_str();
        if (k > 0) term = "(" + term + ")*w" + std::to_string(N_) + "^" + std::to_string(k);
        s += (s.empty() ? "" : " + ") + term;
    }
    return s;
}

}  // namespace kq
