#include "kqde/cohomology.hpp"

#include <numbers>
#include <stdexcept>

namespace kq {

namespace {
constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

using RF = RationalFn<Rational>;

RF rf(const LaurentQ& p) { return RF(p); }
}  // namespace

bool NumericContext::in_omega() const {
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (dist_to_integer(z[i] - z[j]) < omega_tol) return false;
    return true;
}

void NumericContext::require_omega() const {
    if (n() < 2) throw std::invalid_argument("need at least two equivariant parameters");
    if (!in_omega()) throw std::domain_error("equivariant parameters outside Omega: some z_i - z_j is an integer");
}

cplx NumericContext::sum_z() const {
    cplx s = 0.0;
    for (auto& v : z) s += v;
    return s;
}

VarList zc_vars(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    return make_vars(names);
}

RMat vandermonde_symbolic(int n) {
    auto v = zc_vars(n);
    RMat D(n, n, rf(LaurentQ(v)));
    for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a) D(j, a) = rf(LaurentQ::var(v, j, a));
    return D;
}

RMat vandermonde_inverse_symbolic(int n) {
    // (D^{-1})_{alpha j} = (-1)^{n-1-alpha} e_{n-1-alpha}(z without z_j) / prod_{m != j}(z_j - z_m)
    auto v = zc_vars(n);
    LaurentQ zero(v), one(v, Rational(1));
    RMat Di(n, n, rf(zero));
    for (int j = 0; j < n; ++j) {
        std::vector<LaurentQ> others;
        LaurentQ den = one;
        for (int m = 0; m < n; ++m)
            if (m != j) {
                others.push_back(LaurentQ::var(v, m));
                den *= LaurentQ::var(v, j) - LaurentQ::var(v, m);
            }
        for (int a = 0; a < n; ++a) {
            LaurentQ e = elementary(n - 1 - a, others, zero, one);
            if ((n - 1 - a) % 2) e = -e;
            Di(a, j) = RF(e, den);
        }
    }
    return Di;
}

Mat<LaurentQ> eta_gram_symbolic(int n) {
    auto v = zc_vars(n);
    Mat<LaurentQ> eta(n, n, LaurentQ(v));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a + b >= n - 1) eta(a, b) = sym_poly(SymKind::complete, a + b - n + 1, v, 0, n);
    return eta;
}

RMat eta_gram_localized(int n) {
    auto v = zc_vars(n);
    RMat D = vandermonde_symbolic(n);
    RMat chi(n, n, rf(LaurentQ(v)));
    for (int i = 0; i < n; ++i) {
        LaurentQ den(v, Rational(1));
        for (int j = 0; j < n; ++j)
            if (j != i) den *= LaurentQ::var(v, i) - LaurentQ::var(v, j);
        chi(i, i) = RF(LaurentQ(v, Rational(1)), den);
    }
    return D.transpose() * chi * D;
}

Mat<LaurentQ> g_basis_symbolic(int n) {
    auto v = zc_vars(n);
    LaurentQ zero(v), one(v, Rational(1));
    Mat<LaurentQ> G(n, n, zero);
    for (int i = 0; i < n; ++i) {
        // prod_{a > i} (x - z_a) = sum_k (-1)^k e_k(z_{i+1..n}) x^{deg - k}
        std::vector<LaurentQ> roots;
        for (int a = i + 1; a < n; ++a) roots.push_back(LaurentQ::var(v, a));
        int deg = static_cast<int>(roots.size());
        for (int k = 0; k <= deg; ++k) {
            LaurentQ e = elementary(k, roots, zero, one);
            G(deg - k, i) = (k % 2 ? -e : e);
        }
    }
    return G;
}

CMat vandermonde(const NumericContext& ctx) {
    int n = ctx.n();
    CMat D(n, n);
    for (int j = 0; j < n; ++j) {
        cplx p = 1.0;
        for (int a = 0; a < n; ++a, p *= ctx.z[j]) D(j, a) = p;
    }
    return D;
}

CMat vandermonde_inverse(const NumericContext& ctx) {
    ctx.require_omega();
    int n = ctx.n();
    CMat Di(n, n);
    for (int j = 0; j < n; ++j) {
        std::vector<cplx> others;
        cplx den = 1.0;
        for (int m = 0; m < n; ++m)
            if (m != j) {
                others.push_back(ctx.z[m]);
                den *= ctx.z[j] - ctx.z[m];
            }
        for (int a = 0; a < n; ++a) {
            cplx e = elementary(n - 1 - a, others, cplx(0.0), cplx(1.0));
            if ((n - 1 - a) % 2) e = -e;
            Di(a, j) = e / den;
        }
    }
    return Di;
}

CMat eta_gram(const NumericContext& ctx) {
    int n = ctx.n();
    CMat eta = CMat::Zero(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (a + b >= n - 1) eta(a, b) = complete(a + b - n + 1, ctx.z, cplx(0.0), cplx(1.0));
    return eta;
}

CVec to_x_basis(const NumericContext& ctx, const CohClass& c) {
    CVec d(ctx.n());
    for (int i = 0; i < ctx.n(); ++i) d(i) = c.r.at(i);
    return vandermonde_inverse(ctx) * d;
}

CohClass from_x_basis(const NumericContext& ctx, const CVec& x) {
    CVec d = vandermonde(ctx) * x;
    CohClass c;
    for (int i = 0; i < ctx.n(); ++i) c.r.push_back(d(i));
    return c;
}

CohClass chern_character(const KClass& F, const NumericContext& ctx) {
    if (F.n != ctx.n()) throw std::invalid_argument("rank mismatch between class and parameters");
    std::vector<cplx> Zt;
    for (auto& v : ctx.z) Zt.push_back(std::exp(2.0 * kPi * kI * v));
    CohClass c;
    for (int a = 0; a < F.n; ++a) c.r.push_back(F.r[a].eval<cplx>(Zt));
    return c;
}

CohClass gamma_class(int sign, const NumericContext& ctx) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("gamma class sign must be +1 or -1");
    ctx.require_omega();
    CohClass c;
    for (int I = 0; I < ctx.n(); ++I) {
        cplx p = 1.0;
        for (int a = 0; a < ctx.n(); ++a)
            if (a != I) p *= gamma_fn(1.0 + double(sign) * (ctx.z[a] - ctx.z[I]));
        c.r.push_back(p);
    }
    return c;
}

CohClass first_chern_class(const NumericContext& ctx) {
    CohClass c;
    for (int I = 0; I < ctx.n(); ++I) c.r.push_back(ctx.sum_z() - double(ctx.n()) * ctx.z[I]);
    return c;
}

CohClass b_morphism(const KClass& F, const NumericContext& ctx) {
    CohClass e = first_chern_class(ctx);
    for (auto& v : e.r) v = std::exp(kPi * kI * v);
    return gamma_class(1, ctx) * e * chern_character(F, ctx);
}

CMat connection_matrix_C(const NumericContext& ctx) {
    ctx.require_omega();
    int n = ctx.n();
    CohClass e = first_chern_class(ctx), g = gamma_class(1, ctx);
    CMat diag = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) diag(j, j) = std::exp(kPi * kI * e.r[j]) * g.r[j];
    return vandermonde_inverse(ctx) * diag;
}

}  // namespace kq
