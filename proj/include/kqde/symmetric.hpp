#pragma once
// Elementary and complete symmetric functions, Stirling numbers.

#include "kqde/laurent.hpp"

#include <vector>

namespace kq {

// s_k(x_1..x_m) over any commutative ring, s_0 = 1, s_k = 0 for k > m
template <class T>
T elementary(int k, const std::vector<T>& xs, const T& zero, const T& one) {
    if (k < 0) return zero;
    std::vector<T> e(k + 1, zero);
    e[0] = one;
    for (const T& x : xs)
        for (int j = k; j >= 1; --j) e[j] = e[j] + x * e[j - 1];
    return e[k];
}

// m_k(x_1..x_m): complete homogeneous symmetric function, m_0 = 1
template <class T>
T complete(int k, const std::vector<T>& xs, const T& zero, const T& one) {
    if (k < 0) return zero;
    std::vector<T> h(k + 1, zero);
    h[0] = one;
    for (const T& x : xs)
        for (int j = 1; j <= k; ++j) h[j] = h[j] + x * h[j - 1];
    return h[k];
}

enum class SymKind { elementary, complete };

// s_k(Z) or m_k(Z) in the variables Z1..Zn
LaurentQ sym_poly(SymKind kind, int k, int n);
LaurentQ sym_poly(SymKind kind, int k, const VarList& vars, int first, int count);

// the list of variables Z_i as Laurent polynomials
std::vector<LaurentQ> z_list(const VarList& vars, int n);

// unsigned Stirling numbers of the first kind [n,k] and second kind {n,k}
mpz_class stirling_first(int n, int k);
mpz_class stirling_second(int n, int k);

}  // namespace kq
