#pragma once
// R-matrices, qKZ operators in the g- and x-bases, and residual checks for the
// qKZ difference equations Y(q, z - e_i) = K_i(q, z) Y(q, z).

#include "kqde/qde.hpp"

#include <functional>

namespace kq {

// R_{ab}(u): g_i -> g_i (i != a, b), g_b -> g_a, g_a -> g_b + u g_a; indices 0-based.
// Columns are the images of the basis vectors.
template <class T>
Mat<T> r_matrix(int n, int a, int b, const T& u, const T& zero, const T& one) {
    if (a == b) throw std::invalid_argument("R-matrix needs two distinct indices");
    if (a < 0 || b < 0 || a >= n || b >= n) throw std::out_of_range("R-matrix index");
    Mat<T> R = Mat<T>::identity(n, zero, one);
    R(a, a) = u;
    R(b, a) = one;
    R(a, b) = one;
    R(b, b) = zero;
    return R;
}

// K_i = R_{i,i-1}(z_i - z_{i-1} - 1) ... R_{i,1}(z_i - z_1 - 1) q^{-E_i} R_{i,n}(z_i - z_n) ... R_{i,i+1}(z_i - z_{i+1})
// in the g-basis; i is 0-based and q_inv is q^{-1}.
template <class T>
Mat<T> qkz_g(int i, const std::vector<T>& z, const T& q_inv, const T& zero, const T& one) {
    int n = static_cast<int>(z.size());
    if (i < 0 || i >= n) throw std::out_of_range("qKZ operator index");
    Mat<T> K = Mat<T>::identity(n, zero, one);
    for (int a = i - 1; a >= 0; --a) K = K * r_matrix(n, i, a, z[i] - z[a] - one, zero, one);
    Mat<T> E = Mat<T>::identity(n, zero, one);
    E(i, i) = q_inv;
    K = K * E;
    for (int a = n - 1; a > i; --a) K = K * r_matrix(n, i, a, z[i] - z[a], zero, one);
    return K;
}

// K_i(q, z + e_i)^{-1} = R_{i+1,i}(z_{i+1} - z_i - 1) ... R_{n,i}(z_n - z_i - 1) q^{E_i} R_{1,i}(z_1 - z_i) ... R_{i-1,i}(z_{i-1} - z_i)
template <class T>
Mat<T> qkz_g_shifted_inverse(int i, const std::vector<T>& z, const T& q, const T& zero, const T& one) {
    int n = static_cast<int>(z.size());
    Mat<T> K = Mat<T>::identity(n, zero, one);
    for (int a = i + 1; a < n; ++a) K = K * r_matrix(n, a, i, z[a] - z[i] - one, zero, one);
    Mat<T> E = Mat<T>::identity(n, zero, one);
    E(i, i) = q;
    K = K * E;
    for (int a = 0; a < i; ++a) K = K * r_matrix(n, a, i, z[a] - z[i], zero, one);
    return K;
}

// symbolic ring for the qKZ operators: Laurent polynomials in z1..zn, q
VarList qkz_vars(int n);
// K_i in the g-basis, symbolic in (z, q)
Mat<LaurentQ> qkz_g_symbolic(int n, int i);
// x-basis matrix script-K_i = M(z - e_i) K_i M(z)^{-1}, M the g-to-x change of basis
Mat<LaurentQ> qkz_x_symbolic(int n, int i);
// A(q, z) = A_0 + A_1(z)/q in the same ring
Mat<LaurentQ> qde_A_symbolic(int n);
// z_j -> z_j - 1 in a Laurent polynomial of qkz_vars(n)
LaurentQ shift_down(const LaurentQ& f, int j);
Mat<LaurentQ> shift_down(const Mat<LaurentQ>& m, int j);
// d/dq
LaurentQ d_dq(const LaurentQ& f);
Mat<LaurentQ> d_dq(const Mat<LaurentQ>& m);

enum class QkzBasis { g, x };

// numeric operator tagged with the basis it acts in; products refuse mixed bases
struct QkzOperator {
    int i = 0;
    QkzBasis basis = QkzBasis::x;
    CMat m;
    QkzOperator compose(const QkzOperator& o) const;
};

QkzOperator qkz_operator(int i, cplx q, const NumericContext& ctx, QkzBasis basis);
CMat g_to_x(const NumericContext& ctx);  // columns: x-coordinates of g_j

// a family of fundamental solutions parameterized by z
using SolutionFamily = std::function<CMat(const NumericContext&, cplx log_q)>;

// || Y(q, z - e_i) - K_i(q, z) Y(q, z) || / || Y(q, z - e_i) ||, x-basis
double difference_residual(const SolutionFamily& Y, int i, const NumericContext& ctx, cplx log_q);

// numeric compatibility defect || dK_i/dq - A(z - e_i) K_i + K_i A(z) || at a sample point
double compatibility_residual(int i, const NumericContext& ctx, cplx q);

}  // namespace kq
