#pragma once
// Equivariant cohomology of P^{n-1}: fixed-point (Delta) basis, the x- and
// g-bases, the Vandermonde change of basis, the Poincare pairing, Chern
// character, Gamma classes and the morphism from K-theory.

#include "kqde/ktheory.hpp"
#include "kqde/special.hpp"

#include <Eigen/Dense>

#include <vector>

namespace kq {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RMat = Mat<RationalFn<Rational>>;

// Equivariant parameters with the guard against resonances z_i - z_j in Z.
struct NumericContext {
    std::vector<cplx> z;
    double omega_tol = 1e-9;

    int n() const { return static_cast<int>(z.size()); }
    bool in_omega() const;
    void require_omega() const;  // throws std::domain_error
    cplx sum_z() const;
};

// A class stored by its restrictions to the n fixed points.
template <class T>
struct CohClassT {
    std::vector<T> r;

    int n() const { return static_cast<int>(r.size()); }
    friend CohClassT operator+(CohClassT a, const CohClassT& b) {
        for (size_t i = 0; i < a.r.size(); ++i) a.r[i] = a.r[i] + b.r[i];
        return a;
    }
    friend CohClassT operator*(CohClassT a, const CohClassT& b) {
        for (size_t i = 0; i < a.r.size(); ++i) a.r[i] = a.r[i] * b.r[i];
        return a;
    }
};
using CohClass = CohClassT<cplx>;

// eta(v, w) = sum_a v_a w_a / prod_{j != a}(z_a - z_j), for any field T
template <class T>
T eta_pair(const std::vector<T>& z, const CohClassT<T>& v, const CohClassT<T>& w) {
    T acc(0);
    for (size_t a = 0; a < z.size(); ++a) {
        T den(1);
        for (size_t j = 0; j < z.size(); ++j)
            if (j != a) den = den * (z[a] - z[j]);
        acc = acc + v.r[a] * w.r[a] / den;
    }
    return acc;
}

// symbolic equivariant parameters z1..zn
VarList zc_vars(int n);

// D_{j alpha} = z_j^alpha and the closed-form inverse, symbolically
RMat vandermonde_symbolic(int n);
RMat vandermonde_inverse_symbolic(int n);
// closed-form Gram matrix of eta in the x-basis, and the same from D^T diag(chi) D
Mat<LaurentQ> eta_gram_symbolic(int n);
RMat eta_gram_localized(int n);
// coordinates of g_i = prod_{a > i}(x - z_a) in the x-basis (column i)
Mat<LaurentQ> g_basis_symbolic(int n);

CMat vandermonde(const NumericContext& ctx);
CMat vandermonde_inverse(const NumericContext& ctx);
CMat eta_gram(const NumericContext& ctx);
CVec to_x_basis(const NumericContext& ctx, const CohClass& c);
CohClass from_x_basis(const NumericContext& ctx, const CVec& x);

// Ch_T: X -> exp(2 pi i x), Z_a -> exp(2 pi i z_a)
CohClass chern_character(const KClass& F, const NumericContext& ctx);
// Gamma^{+} (sign = +1) or Gamma^{-} (sign = -1): prod_{a != I} Gamma(1 +- (z_a - z_I))
CohClass gamma_class(int sign, const NumericContext& ctx);
// c_1(P^{n-1}) = sum z_i - n x
CohClass first_chern_class(const NumericContext& ctx);
// Gamma^+ * exp(pi i c_1) * Ch_T(F)
CohClass b_morphism(const KClass& F, const NumericContext& ctx);
// matrix of the morphism from the Delta-basis of K (classes with restriction delta_j at
// the level of cohomology) to the x-basis: D^{-1} diag(e^{pi i(sum z - n z_j)} prod Gamma(1+z_a-z_j))
CMat connection_matrix_C(const NumericContext& ctx);

}  // namespace kq
