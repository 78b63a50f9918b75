#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kqde/json_io.hpp"
#include "kqde/matrix.hpp"
#include "kqde/ratfn.hpp"
#include "kqde/symmetric.hpp"

#include <random>

using namespace kq;

namespace {

LaurentQ random_poly(std::mt19937& rng, const VarList& v, int terms = 4, int span = 2) {
    std::uniform_int_distribution<int> ex(-span, span), co(-5, 5);
    LaurentQ f(v);
    for (int t = 0; t < terms; ++t) {
        Exp e{};
        for (size_t i = 0; i < v->size(); ++i) e[i] = static_cast<int16_t>(ex(rng));
        Rational c(co(rng), 1 + std::abs(co(rng)));
        c.canonicalize();
        f += LaurentQ::monomial(v, e, c);
    }
    return f;
}

}  // namespace

TEST_CASE("Laurent basic arithmetic") {
    auto v = z_vars(2);
    auto Z1 = LaurentQ::var(v, 0), Z2 = LaurentQ::var(v, 1);
    LaurentQ one(v, Rational(1));
    CHECK((Z1 + Z2) * one == Z1 + Z2);
    CHECK((Z1 - Z2) * (Z1 + Z2) == Z1 * Z1 - Z2 * Z2);
    CHECK((Z1 - Z1).is_zero());
    CHECK((Z1 - Z1).terms().empty());
    CHECK(Z1.pow(-2) * Z1.pow(2) == one);
    CHECK((Z1 + Z2.pow(-1)).bar() == Z1.pow(-1) + Z2);
    CHECK(one.bar() == one);
}

TEST_CASE("variable context mismatch is an error") {
    auto a = LaurentQ::var(make_vars({"x", "y"}), 0);
    auto b = LaurentQ::var(make_vars({"u"}), 0);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    // constants mix with anything
    CHECK_NOTHROW(a * LaurentQ(make_vars({}), Rational(3)));
}

TEST_CASE("ring axioms and the duality involution on random polynomials") {
    std::mt19937 rng(7);
    auto v = z_vars(3);
    for (int it = 0; it < 100; ++it) {
        auto f = random_poly(rng, v), g = random_poly(rng, v), h = random_poly(rng, v);
        CHECK(f.bar().bar() == f);
        if (it < 30) {
            CHECK((f * g) * h == f * (g * h));
            CHECK(f * (g + h) == f * g + f * h);
            CHECK((f * g).bar() == f.bar() * g.bar());
        }
    }
}

TEST_CASE("symmetric functions") {
    auto v = z_vars(2);
    auto Z1 = LaurentQ::var(v, 0), Z2 = LaurentQ::var(v, 1);
    CHECK(sym_poly(SymKind::elementary, 2, 2) == Z1 * Z2);
    CHECK(sym_poly(SymKind::complete, 2, 2) == Z1 * Z1 + Z1 * Z2 + Z2 * Z2);
    CHECK(sym_poly(SymKind::elementary, 0, 3) == LaurentQ(z_vars(3), Rational(1)));
    CHECK_THROWS_AS(sym_poly(SymKind::elementary, 3, 2), std::invalid_argument);

    // m_k(z_1..z_n) = m_k(z_1..z_{n-1}) + z_n m_{k-1}(z_1..z_n)
    for (int n = 2; n <= 5; ++n) {
        auto vn = z_vars(n);
        auto zn = LaurentQ::var(vn, n - 1);
        for (int k = 1; k <= 5; ++k) {
            auto lhs = sym_poly(SymKind::complete, k, vn, 0, n);
            auto rhs = sym_poly(SymKind::complete, k, vn, 0, n - 1) + zn * sym_poly(SymKind::complete, k - 1, vn, 0, n);
            CHECK(lhs == rhs);
        }
    }
    // Newton-type relation sum (-1)^i m_i s_{k-i} = 0
    for (int n = 2; n <= 5; ++n)
        for (int k = 1; k <= 6; ++k) {
            LaurentQ acc(z_vars(n));
            for (int i = 0; i <= k; ++i) {
                if (k - i > n) continue;
                auto t = sym_poly(SymKind::complete, i, n) * sym_poly(SymKind::elementary, k - i, n);
                acc += (i % 2 ? -t : t);
            }
            CHECK(acc.is_zero());
        }
}

TEST_CASE("Stirling numbers") {
    CHECK(stirling_first(0, 0) == 1);
    // [3,2]: [1,1]=1; [2,1]=1*[1,1]=1, [2,2]=1; [3,2]=2*[2,2]+[2,1]=3
    CHECK(stirling_first(3, 2) == 3);
    CHECK(stirling_second(4, 2) == 7);
    CHECK(stirling_first(4, 0) == 0);
    for (int n = 0; n <= 10; ++n)
        for (int k = 0; k <= 10; ++k) {
            mpz_class acc = 0;
            for (int j = 0; j <= std::max(n, k); ++j) {
                mpz_class t = stirling_second(n, j) * stirling_first(j, k);
                acc += ((n - j) % 2 ? -t : t);
            }
            CHECK(acc == (n == k ? 1 : 0));
        }
}

TEST_CASE("matrix dagger and determinants") {
    auto v = z_vars(3);
    auto Z1 = LaurentQ::var(v, 0);
    LaurentQ zero(v), one(v, Rational(1));
    Mat<LaurentQ> A(2, 2, zero);
    A(0, 0) = one;
    A(0, 1) = Z1;
    A(1, 1) = one;
    Mat<LaurentQ> expect(2, 2, zero);
    expect(0, 0) = one;
    expect(1, 0) = Z1.pow(-1);
    expect(1, 1) = one;
    CHECK(A.dagger() == expect);
    CHECK(Mat<LaurentQ>::identity(3, zero, one).dagger() == Mat<LaurentQ>::identity(3, zero, one));

    std::mt19937 rng(11);
    for (int it = 0; it < 5; ++it) {
        Mat<LaurentQ> P(3, 3, zero), Q(3, 3, zero);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                P(i, j) = random_poly(rng, v, 2, 1);
                Q(i, j) = random_poly(rng, v, 2, 1);
            }
        CHECK((P * Q).dagger() == Q.dagger() * P.dagger());
        CHECK((P * Q).det() == P.det() * Q.det());
    }
    Mat<LaurentQ> U(3, 3, zero);
    for (int i = 0; i < 3; ++i) {
        U(i, i) = one;
        for (int j = i + 1; j < 3; ++j) U(i, j) = random_poly(rng, v, 2, 1);
    }
    CHECK(U * U.inverse_unitriangular() == Mat<LaurentQ>::identity(3, zero, one));
    CHECK(U.det() == one);
}

TEST_CASE("rational matrix inverse") {
    Mat<Rational> m(3, 3, Rational(0));
    int vals[9] = {2, 1, 0, 1, 3, 1, 0, 1, 4};
    for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = vals[i];
    CHECK(m * m.inverse_field() == Mat<Rational>::identity(3, Rational(0), Rational(1)));
    CHECK(m.det() == 18);
}

TEST_CASE("cyclotomic field") {
    auto w = Cyclo::zeta(5);
    Cyclo one(1L);
    Cyclo p = one;
    for (int i = 0; i < 5; ++i) p *= w;
    CHECK(p == one);
    CHECK(Cyclo::totient(12) == 4);
    CHECK(w * w.inverse() == one);
    auto x = w + Cyclo(3L) * w * w - Cyclo(Rational(1, 2));
    CHECK(x * x.inverse() == one);
    CHECK(std::abs(x.conj().to_complex() - std::conj(x.to_complex())) < 1e-14);
    CHECK(Cyclo::zeta(4, 2) == Cyclo(-1L));
    CHECK(Cyclo::zeta(6, 3) == Cyclo::zeta(4, 2));
    // 1 + w + ... + w^4 = 0
    Cyclo s(0L);
    for (int i = 0; i < 5; ++i) s += Cyclo::zeta(5, i);
    CHECK(s.is_zero());
}

TEST_CASE("rational functions") {
    auto v = z_vars(2);
    auto Z1 = LaurentQ::var(v, 0), Z2 = LaurentQ::var(v, 1);
    using RF = RationalFn<Rational>;
    RF a(Z1 * Z1 - Z2 * Z2, Z1 - Z2);
    CHECK(a == RF(Z1 + Z2));
    RF b(LaurentQ(v, Rational(1)), Z1 - Z2);
    RF c(LaurentQ(v, Rational(1)), Z2 - Z1);
    CHECK((b + c).is_zero());
    CHECK_THROWS_AS(RF(Z1, LaurentQ(v)), std::domain_error);
}

TEST_CASE("JSON round trip") {
    auto v = z_vars(3);
    std::mt19937 rng(3);
    auto f = random_poly(rng, v, 5, 3);
    auto j = to_json(f);
    CHECK(laurent_from_json(j) == f);
    CHECK(j["vars"].size() == 3);
    CHECK(parse_rational("0.37") == Rational(37, 100));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK_THROWS(parse_rational("abc"));
}
