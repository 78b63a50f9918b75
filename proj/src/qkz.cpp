#include "kqde/qkz.hpp"

#include <stdexcept>

namespace kq {

VarList qkz_vars(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    names.push_back("q");
    return make_vars(names);
}

namespace {

std::vector<LaurentQ> z_symbols(const VarList& v, int n) {
    std::vector<LaurentQ> z;
    for (int i = 0; i < n; ++i) z.push_back(LaurentQ::var(v, i));
    return z;
}

// the g-to-x matrix of g_basis_symbolic, re-expressed in qkz_vars
Mat<LaurentQ> g_to_x_symbolic(int n) {
    auto G = g_basis_symbolic(n);
    auto v = qkz_vars(n);
    Mat<LaurentQ> M(n, n, LaurentQ(v));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) M(a, b) = G(a, b).embed(v);
    return M;
}

// M has column j of degree n-1-j with leading coefficient 1, so M P is upper unitriangular
// with P the order-reversing permutation
Mat<LaurentQ> inverse_g_to_x(const Mat<LaurentQ>& M) {
    int n = M.rows();
    Mat<LaurentQ> MP(n, n, M.zero());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) MP(a, b) = M(a, n - 1 - b);
    Mat<LaurentQ> U = MP.inverse_unitriangular();
    Mat<LaurentQ> inv(n, n, M.zero());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) inv(n - 1 - a, b) = U(a, b);
    return inv;
}

}  // namespace

Mat<LaurentQ> qkz_g_symbolic(int n, int i) {
    auto v = qkz_vars(n);
    LaurentQ zero(v), one(v, Rational(1));
    return qkz_g<LaurentQ>(i, z_symbols(v, n), LaurentQ::var(v, n, -1), zero, one);
}

Mat<LaurentQ> qkz_x_symbolic(int n, int i) {
    auto M = g_to_x_symbolic(n);
    return shift_down(M, i) * qkz_g_symbolic(n, i) * inverse_g_to_x(M);
}

Mat<LaurentQ> qde_A_symbolic(int n) {
    auto v = qkz_vars(n);
    auto m = system_matrices_symbolic(n);
    Mat<LaurentQ> A(n, n, LaurentQ(v));
    LaurentQ qinv = LaurentQ::var(v, n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) A(a, b) = m.A0(a, b).embed(v) + qinv * m.A1(a, b).embed(v);
    return A;
}

LaurentQ shift_down(const LaurentQ& f, int j) {
    const auto& v = f.vars();
    std::vector<LaurentQ> img;
    for (int k = 0; k < f.nvars(); ++k) img.push_back(LaurentQ::var(v, k));
    img[j] = img[j] - 1;
    return f.substitute(img);
}

Mat<LaurentQ> shift_down(const Mat<LaurentQ>& m, int j) { return m.map([j](const LaurentQ& f) { return shift_down(f, j); }); }

LaurentQ d_dq(const LaurentQ& f) {
    int qv = f.nvars() - 1;
    LaurentQ r(f.vars());
    for (auto& [e, c] : f.terms()) {
        if (e[qv] == 0) continue;
        Exp d = e;
        d[qv] = static_cast<int16_t>(d[qv] - 1);
        r += LaurentQ::monomial(f.vars(), d, c * Rational(e[qv]));
    }
    return r;
}

Mat<LaurentQ> d_dq(const Mat<LaurentQ>& m) { return m.map([](const LaurentQ& f) { return d_dq(f); }); }

QkzOperator QkzOperator::compose(const QkzOperator& o) const {
    if (basis != o.basis) throw std::invalid_argument("qKZ operators in different bases cannot be composed");
    return QkzOperator{i, basis, m * o.m};
}

CMat g_to_x(const NumericContext& ctx) {
    int n = ctx.n();
    CMat M = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> roots(ctx.z.begin() + i + 1, ctx.z.end());
        int deg = static_cast<int>(roots.size());
        for (int k = 0; k <= deg; ++k) {
            cplx e = elementary(k, roots, cplx(0.0), cplx(1.0));
            M(deg - k, i) = (k % 2) ? -e : e;
        }
    }
    return M;
}

namespace {
CMat qkz_x_at(int i, cplx q_inv, const NumericContext& ctx);
}

QkzOperator qkz_operator(int i, cplx q, const NumericContext& ctx, QkzBasis basis) {
    if (q == 0.0) throw std::domain_error("qKZ operators are singular at q = 0");
    if (basis == QkzBasis::x) return QkzOperator{i, basis, qkz_x_at(i, 1.0 / q, ctx)};
    int n = ctx.n();
    auto K = qkz_g<cplx>(i, ctx.z, 1.0 / q, 0.0, 1.0);
    CMat Kg(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Kg(a, b) = K(a, b);
    return QkzOperator{i, basis, Kg};
}

namespace {
CMat qkz_x_at(int i, cplx q_inv, const NumericContext& ctx) {
    int n = ctx.n();
    auto K = qkz_g<cplx>(i, ctx.z, q_inv, 0.0, 1.0);
    CMat Kg(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Kg(a, b) = K(a, b);
    NumericContext shifted = ctx;
    shifted.z[i] -= 1.0;
    return g_to_x(shifted) * Kg * g_to_x(ctx).inverse();
}
}  // namespace

double difference_residual(const SolutionFamily& Y, int i, const NumericContext& ctx, cplx log_q) {
    NumericContext shifted = ctx;
    shifted.z[i] -= 1.0;
    shifted.require_omega();
    CMat lhs = Y(shifted, log_q);
    CMat rhs = qkz_operator(i, std::exp(log_q), ctx, QkzBasis::x).m * Y(ctx, log_q);
    return spectral_norm(lhs - rhs) / spectral_norm(lhs);
}

double compatibility_residual(int i, const NumericContext& ctx, cplx q) {
    // K_i = K_inf + q^{-1} K_1 exactly, so dK_i/dq = -(K_i - K_inf)/q
    CMat K = qkz_x_at(i, 1.0 / q, ctx);
    CMat dK = -(K - qkz_x_at(i, 0.0, ctx)) / q;
    NumericContext shifted = ctx;
    shifted.z[i] -= 1.0;
    CMat r = dK - system_A(shifted, q) * K + K * system_A(ctx, q);
    return spectral_norm(r) / spectral_norm(K * system_A(ctx, q));
}

}  // namespace kq
