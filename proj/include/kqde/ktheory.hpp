#pragma once
// Equivariant K-theory of P^{n-1}: classes, the Euler pairing, exceptional bases,
// mutations and the braid group action.

#include "kqde/matrix.hpp"
#include "kqde/ratfn.hpp"
#include "kqde/symmetric.hpp"

#include <string>
#include <vector>

namespace kq {

using LMat = Mat<LaurentQ>;

// Element of K_0. Stored by its restrictions r[a] = f(X = Z_a) at the n fixed
// points (localization is injective); the normal form sum_k c_k X^k, 0 <= k < n,
// with X = [O(-1)] is recovered by KRing::coeffs.
struct KClass {
    int n = 0;
    std::vector<LaurentQ> r;

    bool operator==(const KClass& o) const { return n == o.n && r == o.r; }
    bool operator!=(const KClass& o) const { return !(*this == o); }
    KClass operator+(const KClass& o) const;
    KClass operator-(const KClass& o) const;
    KClass operator-() const;
    KClass scaled(const LaurentQ& f) const;  // f * this
    bool is_zero() const;
    std::string str() const;
};

class KRing {
public:
    explicit KRing(int n);

    int n() const { return n_; }
    const VarList& vars() const { return vars_; }
    const LaurentQ& s(int k) const { return s_.at(k); }  // s_k(Z)
    LaurentQ m(int k) const;                             // m_k(Z)
    LaurentQ zero() const { return LaurentQ(vars_); }
    LaurentQ one() const { return LaurentQ(vars_, Rational(1)); }
    LaurentQ Z(int i) const { return LaurentQ::var(vars_, i); }  // 0-based

    KClass scalar(const LaurentQ& f) const;
    KClass X_pow(int m) const;                   // X^m, any integer m
    KClass O(int i) const { return X_pow(-i); }  // [O(i)]
    KClass mul(const KClass& a, const KClass& b) const;
    KClass mul_X(const KClass& a) const;
    KClass mul_Xinv(const KClass& a) const;
    // reduce a Laurent polynomial in (Z1..Zn, X); X must be the last variable
    KClass from_laurent(const LaurentQ& f) const;
    VarList vars_with_X() const { return xvars_; }
    // restriction of the class at the fixed point a: substitute X = Z_a
    const LaurentQ& restrict_at(const KClass& f, int a) const { return f.r.at(a); }
    // normal-form coordinates wrt X^0..X^{n-1}, and back
    std::vector<LaurentQ> coeffs(const KClass& f) const;
    KClass from_coeffs(const std::vector<LaurentQ>& c) const;
    std::string str(const KClass& f) const;

    // Euler pairing, conjugate-linear in the first slot. Evaluated by fixed-point
    // localization with exact division by the Vandermonde product.
    LaurentQ chi(const KClass& f, const KClass& g) const;
    // the same pairing from normal-form coordinates and the closed-form table of
    // chi(X^i, X^j); independent of chi()
    LaurentQ chi_via_table(const KClass& f, const KClass& g) const;
    // localization sum kept as an unreduced rational function
    RationalFn<Rational> chi_localized(const KClass& f, const KClass& g) const;
    // exact quotient of a Laurent polynomial by prod_{b<c}(Z_c - Z_b)
    LaurentQ divide_by_vandermonde(const LaurentQ& num) const;
    // closed form of chi([O(i)],[O(j)])
    LaurentQ chi_line_bundles_closed_form(int i, int j) const;

    // the class of the canonical bundle X^n / prod Z_j
    KClass canonical_class() const;

private:
    int n_;
    VarList vars_, xvars_;
    std::vector<LaurentQ> s_;
    std::vector<std::vector<LaurentQ>> chi_table_;  // chi(X^i, X^j)
};

struct ExBasis {
    std::vector<KClass> e;
    std::vector<std::string> labels;
    std::vector<int> tags;  // eigenvalue indices, -1 when unset

    int size() const { return static_cast<int>(e.size()); }
    bool same_classes(const ExBasis& o) const { return e == o.e; }
};

LMat gram_matrix(const KRing& R, const std::vector<KClass>& e);
inline LMat gram_matrix(const KRing& R, const ExBasis& b) { return gram_matrix(R, b.e); }
bool is_exceptional(const KRing& R, const ExBasis& b);

enum class Side { left, right };
KClass mutate(const KRing& R, Side side, const KClass& e, const KClass& f);

// braid words: letter +i is tau_i, -i is its inverse; rightmost letter acts first
using BraidWord = std::vector<int>;
BraidWord braid_inverse(const BraidWord& w);
BraidWord braid_concat(const BraidWord& a, const BraidWord& b);
BraidWord braid_power(const BraidWord& w, int p);
BraidWord free_reduce(const BraidWord& w);

ExBasis act_generator(const KRing& R, int letter, const ExBasis& b);
ExBasis braid_act(const KRing& R, const BraidWord& w, const ExBasis& b);

enum class BraidName { C, gamma, delta_odd, delta_even, beta, sigma_odd, sigma_even };
BraidWord braid_constant(BraidName name, int n);
BraidName parse_braid_name(const std::string& s);

ExBasis left_dual(const KRing& R, const ExBasis& b);   // beta(b)
ExBasis right_dual(const KRing& R, const ExBasis& b);  // beta^{-1}(b)

ExBasis beilinson(const KRing& R);  // ([O(0)], [O(1)], ..., [O(n-1)])

// G^{-1} G^dagger for unitriangular G
LMat canonical_matrix(const LMat& G);
// det(L - G^{-1}G^dagger) - prod_i (L - (-1)^{n-1} Z_i^n / s_n), in variables Z1..Zn, L
LaurentQ dioph_residual(const KRing& R, const LMat& G);
LaurentQ char_poly(const LMat& M, const std::string& lambda_name = "L");

// Markov-type residuals (LHS - RHS), entries read from the unitriangular Gram matrix
LaurentQ markov1_residual(const KRing& R, const LaurentQ& a, const LaurentQ& b, const LaurentQ& c);
LaurentQ markov2_residual(const KRing& R, const LaurentQ& a, const LaurentQ& b, const LaurentQ& c);
std::vector<LaurentQ> markov4_residuals(const KRing& R, const LMat& G);

// Psi^m(l) preimage: sum_{j=0}^{m-l} (-1)^j s_j X^{m-j}
KClass psi_ml_class(const KRing& R, int m, int l);
// class of Lambda^h T (-m)... with the sign convention (-1)^h
KClass exterior_tangent_class(const KRing& R, int h, int m);

enum class QKind { Q, Qp, Qpp, Qt, Qtp, Qtpp };
QKind parse_qkind(const std::string& s);
// bases computed by braid actions
ExBasis structured_basis(const KRing& R, QKind kind, int k);
// the same bases assembled from the explicit position lists
ExBasis structured_basis_from_positions(const KRing& R, QKind kind, int k);

}  // namespace kq
