#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kqde/qkz.hpp"

#include <random>

using namespace kq;

namespace {

NumericContext random_ctx(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    NumericContext ctx;
    for (int i = 0; i < n; ++i) ctx.z.push_back(cplx(u(rng), 0.2 * u(rng)));
    return ctx;
}

}  // namespace

TEST_CASE("R-matrices: inversion and Yang-Baxter") {
    auto v = make_vars({"u", "v"});
    LaurentQ zero(v), one(v, Rational(1)), u = LaurentQ::var(v, 0), w = LaurentQ::var(v, 1);
    for (int n = 3; n <= 4; ++n) {
        auto id = Mat<LaurentQ>::identity(n, zero, one);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                CHECK(r_matrix(n, a, b, u, zero, one) * r_matrix(n, b, a, -u, zero, one) == id);
                for (int c = 0; c < n; ++c) {
                    if (c == a || c == b) continue;
                    auto lhs = r_matrix(n, a, b, u - w, zero, one) * r_matrix(n, a, c, u, zero, one) *
                               r_matrix(n, b, c, w, zero, one);
                    auto rhs = r_matrix(n, b, c, w, zero, one) * r_matrix(n, a, c, u, zero, one) *
                               r_matrix(n, a, b, u - w, zero, one);
                    CHECK(lhs == rhs);
                }
            }
    }
    // R_12(0) swaps g_1 and g_2
    auto R = r_matrix(3, 0, 1, zero, zero, one);
    CHECK(R(0, 0).is_zero());
    CHECK(R(1, 0) == one);
    CHECK(R(0, 1) == one);
    CHECK(R(2, 2) == one);
    CHECK_THROWS_AS(r_matrix(3, 1, 1, u, zero, one), std::invalid_argument);
}

TEST_CASE("qKZ operators for n = 2") {
    auto v = qkz_vars(2);
    LaurentQ z1 = LaurentQ::var(v, 0), z2 = LaurentQ::var(v, 1), q = LaurentQ::var(v, 2), qi = q.pow(-1);
    LaurentQ one(v, Rational(1));
    auto K1 = qkz_x_symbolic(2, 0), K2 = qkz_x_symbolic(2, 1);
    CHECK(K1(0, 0) == -z2 * qi);
    CHECK(K1(0, 1) == (q - z1 * z2) * qi);
    CHECK(K1(1, 0) == qi);
    CHECK(K1(1, 1) == z1 * qi);
    CHECK(K2(0, 0) == -z1 * qi);
    CHECK(K2(0, 1) == (q - z1 * z2) * qi);
    CHECK(K2(1, 0) == qi);
    CHECK(K2(1, 1) == z2 * qi);
}

TEST_CASE("structure of K_i") {
    for (int n = 2; n <= 3; ++n) {
        auto v = qkz_vars(n);
        LaurentQ zero(v), one(v, Rational(1)), q = LaurentQ::var(v, n);
        for (int i = 0; i < n; ++i) {
            auto K = qkz_g_symbolic(n, i);
            // each R-matrix has determinant -1 and q^{-E_i} contributes q^{-1}
            CHECK(K.det() == ((n - 1) % 2 ? -q.pow(-1) : q.pow(-1)));
            // the inverse formula at the shifted point
            std::vector<LaurentQ> z, zp;
            for (int a = 0; a < n; ++a) {
                z.push_back(LaurentQ::var(v, a));
                zp.push_back(LaurentQ::var(v, a) + (a == i ? 1 : 0));
            }
            auto Kp = qkz_g<LaurentQ>(i, zp, q.pow(-1), zero, one);
            CHECK(Kp * qkz_g_shifted_inverse<LaurentQ>(i, z, q, zero, one) == Mat<LaurentQ>::identity(n, zero, one));
        }
    }
}

TEST_CASE("compatibility of the joint system") {
    for (int n = 2; n <= 3; ++n) {
        auto A = qde_A_symbolic(n);
        std::vector<Mat<LaurentQ>> K;
        for (int i = 0; i < n; ++i) K.push_back(qkz_x_symbolic(n, i));
        for (int i = 0; i < n; ++i) {
            CHECK(d_dq(K[i]) == shift_down(A, i) * K[i] - K[i] * A);
            for (int j = 0; j < n; ++j)
                if (i != j) CHECK(shift_down(K[i], j) * K[j] == shift_down(K[j], i) * K[i]);
        }
    }
    std::mt19937 rng(6);
    for (int n = 2; n <= 4; ++n) {
        auto ctx = random_ctx(rng, n);
        for (int i = 0; i < n; ++i) CHECK(compatibility_residual(i, ctx, cplx(0.2, 0.1)) < 1e-12);
    }
}

TEST_CASE("numeric operators and residuals") {
    std::mt19937 rng(2);
    auto ctx = random_ctx(rng, 3);
    auto Kx = qkz_operator(1, 0.3, ctx, QkzBasis::x);
    auto Kg = qkz_operator(1, 0.3, ctx, QkzBasis::g);
    CHECK_THROWS_AS(Kx.compose(Kg), std::invalid_argument);
    CHECK_NOTHROW(Kx.compose(Kx));
    CHECK_THROWS_AS(qkz_operator(0, 0.0, ctx, QkzBasis::x), std::domain_error);
    // agreement with the symbolic x-basis matrix
    auto S = qkz_x_symbolic(3, 1);
    std::vector<cplx> pt = ctx.z;
    pt.push_back(0.3);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(std::abs(S(a, b).eval<cplx>(pt) - Kx.m(a, b)) < 1e-12);

    // the Levelt solution does not solve the qKZ equations
    SolutionFamily levelt = [](const NumericContext& c, cplx lq) { return LeveltSolution(c, 30).eval(lq); };
    CHECK(difference_residual(levelt, 0, ctx, cplx(std::log(0.2), 0.3)) > 1e-3);
}
