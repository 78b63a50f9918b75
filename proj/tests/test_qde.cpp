#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kqde/qde.hpp"

#include <numbers>
#include <random>

using namespace kq;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);
using RF = RationalFn<Rational>;

NumericContext random_ctx(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    NumericContext ctx;
    for (int i = 0; i < n; ++i) ctx.z.push_back(cplx(u(rng), 0.2 * u(rng)));
    return ctx;
}

double max_rel(const CMat& a, const CMat& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

cplx log_q_at(double r, double arg) { return cplx(std::log(r), arg); }

}  // namespace

TEST_CASE("system matrices") {
    auto m2 = system_matrices_symbolic(2);
    auto v2 = zc_vars(2);
    CHECK(m2.A1(0, 0).is_zero());
    CHECK(m2.A1(0, 1) == -sym_poly(SymKind::elementary, 2, v2, 0, 2));
    CHECK(m2.A1(1, 0) == LaurentQ(v2, Rational(1)));
    CHECK(m2.A1(1, 1) == sym_poly(SymKind::elementary, 1, v2, 0, 2));
    CHECK(m2.A0(0, 1) == LaurentQ(v2, Rational(1)));

    for (int n = 2; n <= 4; ++n) {
        auto m = system_matrices_symbolic(n);
        auto p = char_poly(m.A1, "L");
        auto lv = p.vars();
        LaurentQ L = LaurentQ::var(lv, n), expect(lv, Rational(1));
        for (int i = 0; i < n; ++i) expect *= L - LaurentQ::var(lv, i);
        CHECK(p == expect);
    }
    // D A_1 D^{-1} = diag(z), n = 3
    auto m3 = system_matrices_symbolic(3);
    auto v3 = zc_vars(3);
    RMat A1(3, 3, RF(LaurentQ(v3)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A1(i, j) = RF(m3.A1(i, j));
    RMat Zd(3, 3, RF(LaurentQ(v3)));
    for (int i = 0; i < 3; ++i) Zd(i, i) = RF(LaurentQ::var(v3, i));
    CHECK(vandermonde_symbolic(3) * A1 * vandermonde_inverse_symbolic(3) == Zd);
}

TEST_CASE("Levelt recursion, exact mode") {
    std::vector<Rational> z = {Rational(1, 3), Rational(-2, 7), Rational(1, 5)};
    for (auto& x : z) x.canonicalize();
    auto G = levelt_coefficients<Rational>(z, 6, Rational(0), Rational(1));
    CHECK(G[0] == Mat<Rational>::identity(3, Rational(0), Rational(1)));
    // independent oracle: D A_0 D^{-1} from the explicit Vandermonde matrix
    Mat<Rational> D(3, 3, Rational(0)), A0(3, 3, Rational(0)), Z(3, 3, Rational(0));
    for (int j = 0; j < 3; ++j) {
        Rational p = 1;
        for (int a = 0; a < 3; ++a, p *= z[j]) D(j, a) = p;
        Z(j, j) = z[j];
    }
    A0(0, 2) = 1;
    auto M = D * A0 * D.inverse_field();
    for (int k = 0; k < 6; ++k) {
        auto lhs = M * G[k] + (Z * G[k + 1] - G[k + 1] * Z) - Rational(k + 1) * G[k + 1];
        CHECK(lhs == Mat<Rational>(3, 3, Rational(0)));
    }
    CHECK(levelt_coefficients<Rational>(z, 6, Rational(0), Rational(1)) == G);
    std::vector<Rational> resonant = {Rational(0), Rational(2), Rational(1, 2)};
    CHECK_THROWS_AS(levelt_coefficients<Rational>(resonant, 4, Rational(0), Rational(1)), std::domain_error);
}

TEST_CASE("Levelt solution: residual and monodromy") {
    std::mt19937 rng(1);
    for (int n = 2; n <= 3; ++n) {
        auto ctx = random_ctx(rng, n);
        LeveltSolution Y(ctx, 30);
        for (double arg : {0.3, 2.0, -1.1}) {
            double r = ode_residual(Y, ctx, log_q_at(0.3, arg));
            CHECK(r < 1e-10);
        }
        CHECK(Y.series().tail_estimate(0.3) < 1e-20);
        // negative control: corrupt one coefficient
        LeveltSolution bad(ctx, 30);
        bad.mutable_series().coeffs[3](0, 1) += 0.01;
        CHECK(ode_residual(bad, ctx, log_q_at(0.3, 0.3)) > 1e-4);
    }
    for (int n = 2; n <= 4; ++n) {
        auto ctx = random_ctx(rng, n);
        LeveltSolution Y(ctx, 40);
        cplx lq = log_q_at(0.2, 0.7);
        CMat M0 = CMat::Zero(n, n);
        for (int j = 0; j < n; ++j) M0(j, j) = std::exp(2.0 * kPi * kI * ctx.z[j]);
        CHECK(max_rel(Y.eval(lq + 2.0 * kPi * kI), Y.eval(lq) * M0) < 1e-8);
    }
}

TEST_CASE("topological-enumerative solution") {
    std::mt19937 rng(3);
    for (int n = 2; n <= 3; ++n) {
        auto ctx = random_ctx(rng, n);
        auto c = a_coefficients<cplx>(ctx.z, 0, 5, 0.0, 1.0);
        cplx expect = 1.0;
        for (int i = 0; i < n; ++i) expect *= ctx.z[0] - ctx.z[i] + 1.0;
        CHECK(std::abs(c[1] - 1.0 / expect) < 1e-14);

        LeveltSolution Yo(ctx, 30);
        TopologicalSolution Yt(ctx, 30);
        CMat D = vandermonde(ctx);
        for (double arg : {0.0, 1.3, -2.5}) {
            cplx lq = log_q_at(0.3, arg);
            CHECK(max_rel(Yt.eval(lq), Yo.eval(lq) * D) < 1e-10);
            CHECK(ode_residual(Yt, ctx, lq) < 1e-9);
        }
        // Phi is single valued and Phi(0) = 1
        cplx lq = log_q_at(0.25, 0.4);
        CHECK(max_rel(Yt.phi(lq + 2.0 * kPi * kI), Yt.phi(lq)) < 1e-10);
        CHECK(max_rel(Yt.phi(log_q_at(1e-7, 0.4)), CMat::Identity(n, n)) < 1e-5);
        // monodromy of Y_top is D^{-1} exp(2 pi i Z) D = exp(2 pi i A_1)
        CHECK(max_rel(Yt.eval(lq + 2.0 * kPi * kI), Yt.eval(lq) * q_pow_A1(ctx, 2.0 * kPi * kI)) < 1e-8);
    }
}

TEST_CASE("scalar equation") {
    for (int n = 2; n <= 3; ++n) {
        auto v = zc_vars(n);
        RF zero{LaurentQ(v)}, one{LaurentQ(v, Rational(1))};
        std::vector<RF> z, s;
        for (int i = 0; i < n; ++i) z.push_back(RF(LaurentQ::var(v, i)));
        for (int k = 0; k <= n; ++k) s.push_back(RF(sym_poly(SymKind::elementary, k, v, 0, n)));
        for (int j = 0; j < n; ++j) {
            auto c = a_coefficients<RF>(z, j, 6, zero, one);
            auto res = scalar_qde_residual<RF>(z[j], c, s, zero, one);
            for (auto& r : res) CHECK(r.is_zero());
        }
    }
    // at z = 0 the operator is theta^n - q: test on an arbitrary series
    std::vector<cplx> s0 = {1.0, 0.0, 0.0, 0.0};
    std::vector<cplx> c = {1.0, 2.0, -1.0, 0.5};
    auto res = scalar_qde_residual<cplx>(0.25, c, s0, 0.0, 1.0);
    for (int d = 0; d < 4; ++d) {
        cplx expect = std::pow(0.25 + d, 3) * c[d] - (d > 0 ? c[d - 1] : 0.0);
        CHECK(std::abs(res[d] - expect) < 1e-14);
    }
    // negative control: phi = 1 is not a solution
    std::vector<cplx> s2 = {1.0, 0.3, 0.02};
    auto bad = scalar_qde_residual<cplx>(0.0, {1.0, 0.0}, s2, 0.0, 1.0);
    CHECK(std::abs(bad[1]) > 0.5);
}
