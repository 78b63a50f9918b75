#pragma once
// The equivariant quantum differential equation dY/dq = (A_0 + A_1(z)/q) Y in the
// x-basis: Levelt solution at q = 0, the topological-enumerative solution built
// from the a_j series, the scalar equation, and residual checks.

#include "kqde/cohomology.hpp"

#include <numbers>
#include <vector>

namespace kq {

// q = s^n with s = r exp(-2 pi i phi); fixes log q on the universal cover
struct BranchContext {
    double phi = 0.0;
    cplx log_s(double r) const { return cplx(std::log(r), -2.0 * std::numbers::pi * phi); }
    cplx log_q(double r, int n) const { return double(n) * log_s(r); }
};

// A_0 and A_1(z) symbolically in z1..zn
struct QdeMatrices {
    Mat<LaurentQ> A0, A1;
};
QdeMatrices system_matrices_symbolic(int n);
CMat system_A0(int n);
CMat system_A1(const NumericContext& ctx);
CMat system_A(const NumericContext& ctx, cplx q);

// Levelt recursion (z_i - z_j - k)(G_k)_{ij} = -(D A_0 D^{-1} G_{k-1})_{ij}, G_0 = 1.
// D A_0 D^{-1} has every row equal to (chi_1, ..., chi_n), chi_j = 1/prod_{m != j}(z_j - z_m).
template <class T>
std::vector<Mat<T>> levelt_coefficients(const std::vector<T>& z, int N, const T& zero, const T& one) {
    int n = static_cast<int>(z.size());
    std::vector<T> chi;
    for (int j = 0; j < n; ++j) {
        T den = one;
        for (int m = 0; m < n; ++m)
            if (m != j) den = den * (z[j] - z[m]);
        if (is_zero(den)) throw std::domain_error("coincident equivariant parameters");
        chi.push_back(one / den);
    }
    Mat<T> M(n, n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = chi[j];
    std::vector<Mat<T>> G{Mat<T>::identity(n, zero, one)};
    T k_val = zero;
    for (int k = 1; k <= N; ++k) {
        k_val = k_val + one;
        Mat<T> rhs = M * G.back();
        Mat<T> Gk(n, n, zero);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                T den = z[i] - z[j] - k_val;
                if (is_zero(den)) throw std::domain_error("resonant parameters: z_i - z_j is a positive integer");
                Gk(i, j) = (zero - rhs(i, j)) / den;
            }
        G.push_back(Gk);
    }
    return G;
}

// coefficients c_d of a_j = q^{z_j} sum_d c_d q^d, c_d = c_{d-1} / prod_i (z_j - z_i + d)
template <class T>
std::vector<T> a_coefficients(const std::vector<T>& z, int j, int N, const T& zero, const T& one) {
    std::vector<T> c{one};
    T d_val = zero;
    for (int d = 1; d <= N; ++d) {
        d_val = d_val + one;
        T den = one;
        for (auto& zi : z) den = den * (z[j] - zi + d_val);
        if (is_zero(den)) throw std::domain_error("resonant parameters in the a_j series");
        c.push_back(c.back() / den);
    }
    return c;
}

// Residual of the scalar equation
//   theta^n phi - (q + (-1)^{n-1} s_n) phi - sum_{j=1}^{n-1} (-1)^{n-j-1} s_{n-j} theta^j phi
// on phi = q^lambda sum_d c_d q^d. Entry d is the coefficient of q^{lambda+d}, d = 0..N;
// s holds s_0..s_n.
template <class T>
std::vector<T> scalar_qde_residual(const T& lambda, const std::vector<T>& c, const std::vector<T>& s, const T& zero,
                                   const T& one) {
    int n = static_cast<int>(s.size()) - 1;
    int N = static_cast<int>(c.size()) - 1;
    std::vector<T> res(N + 1, zero);
    T d_val = zero;
    for (int d = 0; d <= N; ++d, d_val = d_val + one) {
        T e = lambda + d_val;  // theta acts on q^{lambda+d} as multiplication by e
        std::vector<T> pw{one};
        for (int h = 1; h <= n; ++h) pw.push_back(pw.back() * e);
        // every term except q * phi carries c_d: collect the operator symbol first
        T symbol = pw[n];
        if ((n - 1) % 2) symbol = symbol + s[n];
        else symbol = symbol - s[n];
        for (int j = 1; j <= n - 1; ++j) {
            T t = s[n - j] * pw[j];
            if ((n - j - 1) % 2) symbol = symbol + t;
            else symbol = symbol - t;
        }
        T acc = symbol * c[d];
        if (d > 0) acc = acc - c[d - 1];  // the q * phi term
        res[d] = acc;
    }
    return res;
}

// A fundamental matrix solution in the x-basis, evaluated at a point of the
// universal cover given by log q.
class SolutionEvaluator {
public:
    virtual ~SolutionEvaluator() = default;
    virtual int n() const = 0;
    virtual CMat eval(cplx log_q) const = 0;
    virtual CMat deriv(cplx log_q) const = 0;  // d/dq
};

struct MatrixSeries {
    std::vector<CMat> coeffs;  // powers q^0 .. q^N
    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    CMat eval(cplx q) const;
    CMat deriv(cplx q) const;
    // size of the last retained term, a proxy for the truncation error
    double tail_estimate(double abs_q) const;
};

// Y_o(q) = D^{-1} (1 + sum G_k q^k) q^Z
class LeveltSolution : public SolutionEvaluator {
public:
    LeveltSolution(const NumericContext& ctx, int N);
    int n() const override { return ctx_.n(); }
    CMat eval(cplx log_q) const override;
    CMat deriv(cplx log_q) const override;
    const MatrixSeries& series() const { return G_; }
    MatrixSeries& mutable_series() { return G_; }  // for negative controls in tests

private:
    NumericContext ctx_;
    MatrixSeries G_;
    CMat Dinv_;
};

// Y_top = eta^{-1} Yhat eta with Yhat_{hk} = theta^h a_k, times (D^{-1})^T
class TopologicalSolution : public SolutionEvaluator {
public:
    TopologicalSolution(const NumericContext& ctx, int N);
    int n() const override { return ctx_.n(); }
    CMat eval(cplx log_q) const override;
    CMat deriv(cplx log_q) const override;
    // Phi(q) = Y_top(q) q^{-A_1}, single valued with Phi(0) = 1
    CMat phi(cplx log_q) const;

private:
    CMat theta_matrix(cplx log_q, int shift) const;
    NumericContext ctx_;
    std::vector<std::vector<cplx>> c_;  // c_[j][d]
    CMat eta_, eta_inv_, DinvT_;
};

// the power q^{A_1} = D^{-1} q^Z D
CMat q_pow_A1(const NumericContext& ctx, cplx log_q);

// ||dY/dq - A(q) Y|| / ||Y|| in the spectral norm
double ode_residual(const SolutionEvaluator& Y, const NumericContext& ctx, cplx log_q);

double spectral_norm(const CMat& m);

}  // namespace kq
