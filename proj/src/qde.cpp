#include "kqde/qde.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>

namespace kq {

namespace {
cplx q_power(cplx log_q, cplx exponent) { return std::exp(exponent * log_q); }
}  // namespace

QdeMatrices system_matrices_symbolic(int n) {
    auto v = zc_vars(n);
    LaurentQ zero(v), one(v, Rational(1));
    QdeMatrices m{Mat<LaurentQ>(n, n, zero), Mat<LaurentQ>(n, n, zero)};
    m.A0(0, n - 1) = one;
    for (int i = 1; i < n; ++i) m.A1(i, i - 1) = one;
    for (int r = 0; r < n; ++r) {
        // row r of the last column: (-1)^{n-1-r} s_{n-r}
        LaurentQ s = sym_poly(SymKind::elementary, n - r, v, 0, n);
        m.A1(r, n - 1) = (n - 1 - r) % 2 ? -s : s;
    }
    return m;
}

CMat system_A0(int n) {
    CMat A = CMat::Zero(n, n);
    A(0, n - 1) = 1.0;
    return A;
}

CMat system_A1(const NumericContext& ctx) {
    int n = ctx.n();
    CMat A = CMat::Zero(n, n);
    for (int i = 1; i < n; ++i) A(i, i - 1) = 1.0;
    for (int r = 0; r < n; ++r) {
        cplx s = elementary(n - r, ctx.z, cplx(0.0), cplx(1.0));
        A(r, n - 1) = (n - 1 - r) % 2 ? -s : s;
    }
    return A;
}

CMat system_A(const NumericContext& ctx, cplx q) {
    if (q == 0.0) throw std::domain_error("the system is singular at q = 0");
    return system_A0(ctx.n()) + system_A1(ctx) / q;
}

CMat MatrixSeries::eval(cplx q) const {
    CMat acc = coeffs.back();
    for (int k = order() - 1; k >= 0; --k) acc = acc * q + coeffs[k];
    return acc;
}

CMat MatrixSeries::deriv(cplx q) const {
    CMat acc = CMat::Zero(coeffs[0].rows(), coeffs[0].cols());
    for (int k = order(); k >= 1; --k) acc = acc * q + double(k) * coeffs[k];
    return acc;
}

double MatrixSeries::tail_estimate(double abs_q) const {
    return coeffs.back().norm() * std::pow(abs_q, order());
}

LeveltSolution::LeveltSolution(const NumericContext& ctx, int N) : ctx_(ctx) {
    ctx.require_omega();
    if (N < 1) throw std::invalid_argument("truncation order must be positive");
    auto G = levelt_coefficients<cplx>(ctx.z, N, 0.0, 1.0);
    int n = ctx.n();
    for (auto& g : G) {
        CMat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = g(i, j);
        G_.coeffs.push_back(m);
    }
    Dinv_ = vandermonde_inverse(ctx);
}

CMat LeveltSolution::eval(cplx log_q) const {
    cplx q = std::exp(log_q);
    CMat Y = Dinv_ * G_.eval(q);
    for (int j = 0; j < n(); ++j) Y.col(j) *= q_power(log_q, ctx_.z[j]);
    return Y;
}

CMat LeveltSolution::deriv(cplx log_q) const {
    cplx q = std::exp(log_q);
    CMat G = G_.eval(q), dG = G_.deriv(q);
    CMat Y = Dinv_ * dG;
    CMat GZ = Dinv_ * G;
    for (int j = 0; j < n(); ++j) {
        Y.col(j) += GZ.col(j) * (ctx_.z[j] / q);
        Y.col(j) *= q_power(log_q, ctx_.z[j]);
    }
    return Y;
}

TopologicalSolution::TopologicalSolution(const NumericContext& ctx, int N) : ctx_(ctx) {
    ctx.require_omega();
    if (N < 1) throw std::invalid_argument("truncation order must be positive");
    for (int j = 0; j < ctx.n(); ++j) c_.push_back(a_coefficients<cplx>(ctx.z, j, N, 0.0, 1.0));
    eta_ = eta_gram(ctx);
    eta_inv_ = eta_.inverse();
    DinvT_ = vandermonde_inverse(ctx).transpose();
}

CMat TopologicalSolution::theta_matrix(cplx log_q, int shift) const {
    int n = ctx_.n();
    cplx q = std::exp(log_q);
    CMat T(n, n);
    for (int k = 0; k < n; ++k) {
        const auto& c = c_[k];
        for (int h = 0; h < n; ++h) {
            cplx acc = 0.0;
            for (int d = static_cast<int>(c.size()) - 1; d >= 0; --d)
                acc = acc * q + c[d] * std::pow(ctx_.z[k] + double(d), h + shift);
            T(h, k) = acc * q_power(log_q, ctx_.z[k]);
        }
    }
    return T;
}

CMat TopologicalSolution::eval(cplx log_q) const { return eta_inv_ * theta_matrix(log_q, 0) * DinvT_ * eta_; }

CMat TopologicalSolution::deriv(cplx log_q) const {
    return eta_inv_ * theta_matrix(log_q, 1) * DinvT_ * eta_ / std::exp(log_q);
}

CMat TopologicalSolution::phi(cplx log_q) const { return eval(log_q) * q_pow_A1(ctx_, -log_q); }

CMat q_pow_A1(const NumericContext& ctx, cplx log_q) {
    CMat D = vandermonde(ctx), Dinv = vandermonde_inverse(ctx);
    CMat P = Dinv;
    for (int j = 0; j < ctx.n(); ++j) P.col(j) *= q_power(log_q, ctx.z[j]);
    return P * D;
}

double spectral_norm(const CMat& m) {
    Eigen::JacobiSVD<CMat> svd(m);
    return svd.singularValues()(0);
}

double ode_residual(const SolutionEvaluator& Y, const NumericContext& ctx, cplx log_q) {
    cplx q = std::exp(log_q);
    CMat y = Y.eval(log_q);
    CMat r = Y.deriv(log_q) - system_A(ctx, q) * y;
    return spectral_norm(r) / spectral_norm(y);
}

}  // namespace kq
