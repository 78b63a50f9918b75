// Acceptance run: one PASS/FAIL line per criterion. Every identity is checked
// against an oracle written here, independent of the library code under test
// wherever one is available: brute-force symmetric functions, exact rational
// determinants at random points, a hand-written gauge substitution, closed-form
// connection matrices from std::tgamma, and the discrete Fourier form of g_m.

#include "kqde/hypergeom.hpp"
#include "kqde/stokes.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace kq;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I1(0.0, 1.0);

using QMat = std::vector<std::vector<Rational>>;

// ---------------------------------------------------------------------------
// oracles

// complete homogeneous polynomial of degree k in the given monomials, by enumerating exponents
LaurentQ complete_brute(const std::vector<LaurentQ>& x, int k, const LaurentQ& one) {
    if (k < 0) return one - one;
    LaurentQ acc = one - one;
    std::function<void(size_t, int, LaurentQ)> rec = [&](size_t i, int left, LaurentQ term) {
        if (i + 1 == x.size()) {
            acc += term * x[i].pow(left);
            return;
        }
        for (int e = 0; e <= left; ++e) rec(i + 1, left - e, term * x[i].pow(e));
    };
    rec(0, k, one);
    return acc;
}

Rational det_q(QMat a) {
    int n = static_cast<int>(a.size());
    Rational d = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (int r = c + 1; r < n; ++r) {
            Rational f = a[r][c] / a[c][c];
            for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

QMat inverse_q(const QMat& a) {
    int n = static_cast<int>(a.size());
    QMat m = a, inv(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i) inv[i][i] = 1;
    for (int c = 0; c < n; ++c) {
        int p = c;
        while (m[p][c] == 0) ++p;
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rational s = 1 / m[c][c];
        for (int k = 0; k < n; ++k) {
            m[c][k] *= s;
            inv[c][k] *= s;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0) continue;
            Rational f = m[r][c];
            for (int k = 0; k < n; ++k) {
                m[r][k] -= f * m[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

QMat mul_q(const QMat& a, const QMat& b) {
    size_t n = a.size();
    QMat r(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t k = 0; k < n; ++k)
            for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

// M evaluated at Z = pt; with `dagger`, the conjugate transpose M(pt^{-1})^T
QMat eval_q(const LMat& M, const std::vector<Rational>& pt, bool dagger = false) {
    std::vector<Rational> p = pt;
    if (dagger)
        for (auto& x : p) x = 1 / x;
    int n = M.rows();
    QMat r(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational v = M(i, j).eval_exact(p);
            if (dagger) r[j][i] = v;
            else r[i][j] = v;
        }
    return r;
}

// det(L - M) == prod (L - w_i) at several rational L
bool char_poly_matches(const QMat& M, const std::vector<Rational>& w) {
    int n = static_cast<int>(M.size());
    for (int t = -2; t <= n; ++t) {
        Rational L(2 * t + 1, 3);
        L.canonicalize();
        QMat A = M;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A[i][j] = (i == j ? L : Rational(0)) - M[i][j];
        Rational rhs = 1;
        for (auto& x : w) rhs *= L - x;
        if (det_q(A) != rhs) return false;
    }
    return true;
}

std::vector<Rational> random_point(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> num(1, 9), den(1, 5);
    std::vector<Rational> p;
    for (int i = 0; i < n; ++i) {
        Rational x(num(rng) * (i % 2 ? -1 : 1), den(rng));
        x.canonicalize();
        p.push_back(x);
    }
    return p;
}

NumericContext random_ctx(std::mt19937& rng, int n, double imag_scale) {
    std::uniform_real_distribution<double> u(-0.45, 0.45);
    NumericContext ctx;
    for (int i = 0; i < n; ++i) ctx.z.push_back(cplx(u(rng), imag_scale * u(rng)));
    return ctx;
}

double max_rel(const CMat& a, const CMat& b) {
    return (a - b).cwiseAbs().maxCoeff() / std::max(1e-300, b.cwiseAbs().maxCoeff());
}

// Beilinson and `count` mutations of it by braid words of length 1 and 2
std::vector<ExBasis> sample_bases(const KRing& R, std::mt19937& rng, int count) {
    std::vector<BraidWord> words;
    int n = R.n();
    for (int i = 1; i < n; ++i) words.push_back({i}), words.push_back({-i});
    for (int i = -(n - 1); i < n; ++i)
        for (int j = -(n - 1); j < n; ++j)
            if (i && j && i != -j) words.push_back({i, j});
    std::shuffle(words.begin() + 2 * (n - 1), words.end(), rng);
    std::vector<ExBasis> out{beilinson(R)};
    for (int t = 0; t < count && t < static_cast<int>(words.size()); ++t) out.push_back(braid_act(R, words[t], out.front()));
    return out;
}

struct Tally {
    int checks = 0, failures = 0;
    double worst = 0.0;  // largest numeric defect relative to its tolerance
    std::string first_failure;

    void ok(bool cond, const std::string& what) {
        ++checks;
        if (!cond) {
            if (failures++ == 0) first_failure = what;
        }
    }
    void le(double value, double tol, const std::string& what) {
        worst = std::max(worst, value / tol);
        ok(value <= tol, what + " (" + std::to_string(value) + " > " + std::to_string(tol) + ")");
    }
};

std::string nstr(const char* fmt, int n) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, n);
    return buf;
}

// ---------------------------------------------------------------------------
// criteria

void criterion_chi(Tally& t) {
    for (int n = 2; n <= 5; ++n) {
        KRing R(n);
        std::vector<LaurentQ> Z, Zinv;
        LaurentQ prod = R.one();
        for (int a = 0; a < n; ++a) {
            Z.push_back(R.Z(a));
            Zinv.push_back(R.Z(a).pow(-1));
            prod *= R.Z(a);
        }
        for (int i = -n; i <= n; ++i)
            for (int j = -n; j <= n; ++j) {
                LaurentQ expect = R.zero();
                if (i <= j) expect = complete_brute(Zinv, j - i, R.one());
                else if (i >= j + n) expect = complete_brute(Z, i - j - n, R.one()) * prod * Rational((n - 1) % 2 ? -1 : 1);
                t.ok(R.chi(R.O(i), R.O(j)) == expect, "chi(O(" + std::to_string(i) + "),O(" + std::to_string(j) + ")) n=" + std::to_string(n));
            }
    }
}

void criterion_braids(Tally& t) {
    std::mt19937 rng(11);
    for (int n = 2; n <= 5; ++n) {
        KRing R(n);
        LaurentQ sn = R.one();
        for (int a = 0; a < n; ++a) sn *= R.Z(a);
        // K_T-class of the equivariant canonical sheaf, shifted by dim = n - 1
        KClass omega = R.X_pow(n).scaled(sn.pow(-1));
        if ((n - 1) % 2) omega = -omega;
        auto J = antidiagonal(n, R.zero(), R.one());
        for (auto& B : sample_bases(R, rng, 10)) {
            for (int i = 1; i < n; ++i) {
                t.ok(braid_act(R, {i, -i}, B).e == B.e, "tau tau^-1 = 1");
                t.ok(braid_act(R, {-i, i}, B).e == B.e, "tau^-1 tau = 1");
                if (i + 1 < n) t.ok(braid_act(R, {i, i + 1, i}, B).e == braid_act(R, {i + 1, i, i + 1}, B).e, "braid relation");
                for (int j = i + 2; j < n; ++j) t.ok(braid_act(R, {i, j}, B).e == braid_act(R, {j, i}, B).e, "far commutation");
            }
            auto L = left_dual(R, B), Rd = right_dual(R, B);
            for (int h = 0; h < n; ++h)
                for (int k = 0; k < n; ++k) {
                    LaurentQ d = (h + k == n - 1) ? R.one() : R.zero();
                    t.ok(R.chi(L.e[k], B.e[h]) == d, "left dual orthogonality");
                    t.ok(R.chi(B.e[h], Rd.e[k]) == d, "right dual orthogonality");
                }
            t.ok(gram_matrix(R, L) == J * gram_matrix(R, B).dagger().inverse_unitriangular() * J, "Gram matrix of the dual");
            // Serre functor: braid (tau_1 ... tau_{n-1})^{-n}, double right dual, and twist by omega[n-1]
            auto serre = braid_act(R, braid_power(braid_constant(BraidName::C, n), -n), B);
            auto dd = right_dual(R, Rd);
            for (int i = 0; i < n; ++i) {
                t.ok(serre.e[i] == R.mul(omega, B.e[i]), "Serre functor via braid");
                t.ok(dd.e[i] == R.mul(omega, B.e[i]), "Serre functor via double dual");
            }
            // sigma acts as beta: its image is the left dual, characterized by orthogonality
            for (auto name : {BraidName::sigma_odd, BraidName::sigma_even}) {
                auto S = braid_act(R, braid_constant(name, n), B);
                bool orth = true;
                for (int h = 0; h < n; ++h)
                    for (int k = 0; k < n; ++k) orth = orth && R.chi(S.e[k], B.e[h]) == ((h + k == n - 1) ? R.one() : R.zero());
                t.ok(orth, "sigma acts as beta");
            }
        }
    }
}

void criterion_diophantine(Tally& t) {
    std::mt19937 rng(12);
    for (int n = 2; n <= 5; ++n) {
        KRing R(n);
        for (auto& B : sample_bases(R, rng, 10)) {
            auto G = gram_matrix(R, B);
            t.ok(dioph_residual(R, G).is_zero(), nstr("Diophantine residual n=%d", n));
            // oracle: det(L - G^{-1} G^dagger) at rational points equals prod (L - (-1)^{n-1} Z_i^n / s_n)
            for (int trial = 0; trial < 2; ++trial) {
                auto p = random_point(rng, n);
                auto M = mul_q(inverse_q(eval_q(G, p)), eval_q(G, p, true));
                Rational sn = 1;
                for (auto& x : p) sn *= x;
                std::vector<Rational> w;
                for (auto& x : p) {
                    Rational v = x * x;
                    for (int e = 2; e < n; ++e) v *= x;
                    w.push_back(((n - 1) % 2 ? -v : v) / sn);
                }
                t.ok(char_poly_matches(M, w), nstr("canonical operator spectrum n=%d", n));
            }
        }
    }
    KRing R(3);
    auto Z1 = R.Z(0), Z2 = R.Z(1), Z3 = R.Z(2);
    auto s1 = Z1 + Z2 + Z3, s2 = Z1 * Z2 + Z1 * Z3 + Z2 * Z3, s3 = Z1 * Z2 * Z3;
    auto markov_a = [&](const LaurentQ& a, const LaurentQ& b, const LaurentQ& c) {
        return a * a.bar() + b * b.bar() + c * c.bar() - a * b.bar() * c - (R.one() * Rational(3) - (Z1.pow(3) + Z2.pow(3) + Z3.pow(3)) * s3.pow(-1));
    };
    auto markov_b = [&](const LaurentQ& a, const LaurentQ& b, const LaurentQ& c) {
        auto c3 = Z1.pow(3) * Z2.pow(3) + Z1.pow(3) * Z3.pow(3) + Z2.pow(3) * Z3.pow(3);
        return a * a.bar() + b * b.bar() + c * c.bar() - a.bar() * b * c.bar() - (R.one() * Rational(3) - c3 * s3.pow(-2));
    };
    t.ok(markov_a(s1, s2, s1).is_zero() && markov_b(s1, s2, s1).is_zero(), "(s1,s2,s1) solves both equations");
    std::vector<Rational> ones(3, Rational(1));
    Rational a = s1.eval_exact(ones), b = s2.eval_exact(ones), c = s1.eval_exact(ones);
    t.ok(a == 3 && b == 3 && c == 3 && a * a + b * b + c * c - a * b * c == 0, "Z = 1 limit gives the triple (3,3,3)");
}

void criterion_series(Tally& t) {
    std::mt19937 rng(13);
    for (int n = 2; n <= 3; ++n)
        for (int trial = 0; trial < 2; ++trial) {
            auto ctx = random_ctx(rng, n, 0.2);
            LeveltSolution Yo(ctx, 30);
            TopologicalSolution Yt(ctx, 30);
            CMat D(n, n);
            for (int j = 0; j < n; ++j)
                for (int a = 0; a < n; ++a) D(j, a) = std::pow(ctx.z[j], a);
            for (double arg : {0.0, 1.3, -2.5}) {
                cplx lq(std::log(0.3), arg);
                t.le(ode_residual(Yo, ctx, lq), 1e-9, "Levelt qDE residual");
                t.le(ode_residual(Yt, ctx, lq), 1e-9, "topological qDE residual");
                t.le(max_rel(Yt.eval(lq), Yo.eval(lq) * D), 1e-10, "Y_top = Y_o D");
                // the analytic derivative agrees with a Richardson-extrapolated difference quotient
                cplx q = std::exp(lq), h = 1e-3 * q;
                auto Yq = [&](cplx dq) { return Yo.eval(std::log(q + dq) + cplx(0, arg - std::arg(q))); };
                CMat d1 = (Yq(h) - Yq(-h)) / (2.0 * h), d2 = (Yq(2.0 * h) - Yq(-2.0 * h)) / (4.0 * h);
                t.le(max_rel(Yo.deriv(lq), (4.0 * d1 - d2) / 3.0), 1e-7, "Levelt derivative");
            }
        }
    // a_j = q^{z_j} sum c_d q^d solves prod_i (theta - z_i) a = q a: c_d prod_i (z_j + d - z_i) = c_{d-1}
    for (int n = 2; n <= 3; ++n) {
        auto v = zc_vars(n);
        using RF = RationalFn<Rational>;
        RF zero{LaurentQ(v)}, one{LaurentQ(v, Rational(1))};
        std::vector<RF> z;
        for (int i = 0; i < n; ++i) z.push_back(RF(LaurentQ::var(v, i)));
        for (int j = 0; j < n; ++j) {
            auto c = a_coefficients<RF>(z, j, 6, zero, one);
            RF d_val = zero;
            for (int d = 1; d <= 6; ++d) {
                d_val = d_val + one;
                RF symbol = one;
                for (int i = 0; i < n; ++i) symbol = symbol * (z[j] + d_val - z[i]);
                t.ok((symbol * c[d] - c[d - 1]).is_zero(), "a_j solves the scalar equation");
            }
        }
    }
}

void criterion_hypergeometric(Tally& t) {
    std::mt19937 rng(14);
    for (int n = 2; n <= 3; ++n)
        for (int trial = 0; trial < 2; ++trial) {
            auto ctx = random_ctx(rng, n, 0.1);
            auto Y = psi_J_solution(ctx, 40);
            SolutionFamily family = [](const NumericContext& c, cplx lq) { return psi_J_solution(c, 40).eval(lq); };
            for (double arg : {-0.5, 0.9}) {
                cplx lq(std::log(0.2), arg);
                t.le(ode_residual(Y, ctx, lq), 1e-8, "Psi_J qDE residual");
                for (int i = 0; i < n; ++i) t.le(difference_residual(family, i, ctx, lq), 1e-8, "Psi_J qKZ residual");
            }
            cplx lq(std::log(0.1), 0.3);
            for (int J = 0; J < n; ++J) {
                auto series = psi_J_series(J, ctx, 40).eval(lq);
                auto contour = contour_oracle(lagrange_weight(J, ctx), lq, ctx);
                double d = 0.0, m = 0.0;
                for (int i = 0; i < n; ++i) {
                    d = std::max(d, std::abs(series.r[i] - contour.r[i]));
                    m = std::max(m, std::abs(contour.r[i]));
                }
                t.le(d / m, 1e-6, "contour oracle");
            }
        }
    // leading term at real z: e^{pi i sum z} e^{-pi i n z_J} prod_{a != J} Gamma(1 + z_a - z_J)
    for (int n = 2; n <= 3; ++n) {
        auto ctx = random_ctx(rng, n, 0.0);
        auto S = residue_series(ctx, 1);
        for (int J = 0; J < n; ++J) {
            double sum = 0.0;
            for (auto& x : ctx.z) sum += x.real();
            cplx expect = std::exp(I1 * pi * (sum - n * ctx.z[J].real()));
            for (int a = 0; a < n; ++a)
                if (a != J) expect *= std::tgamma(1.0 + ctx.z[a].real() - ctx.z[J].real());
            t.le(std::abs(S.coeffs[J][0](J) - expect) / std::abs(expect), 1e-12, "leading term");
        }
    }
}

void criterion_b_theorem(Tally& t) {
    std::mt19937 rng(15);
    std::vector<cplx> samples{cplx(std::log(0.1), 0.2), cplx(std::log(0.2), -0.4), std::log(0.3)};
    for (int n = 2; n <= 3; ++n) {
        auto ctx = random_ctx(rng, n, 0.0);
        std::vector<double> z;
        double sum = 0.0;
        for (auto& x : ctx.z) z.push_back(x.real()), sum += x.real();
        CMat D(n, n), diag = CMat::Zero(n, n);
        for (int j = 0; j < n; ++j) {
            for (int a = 0; a < n; ++a) D(j, a) = std::pow(z[j], a);
            cplx d = std::exp(I1 * pi * (sum - n * z[j]));
            for (int a = 0; a < n; ++a)
                if (a != j) d *= std::tgamma(1.0 + z[a] - z[j]);
            diag(j, j) = d;
        }
        CMat C = D.inverse() * diag;
        for (int k = -1; k <= 1; ++k) {
            CMat V(n, n);
            for (int J = 0; J < n; ++J)
                for (int m = 0; m < n; ++m) V(J, m) = std::exp(2.0 * pi * I1 * double(k + n - 1 - m) * z[J]);
            auto rep = b_theorem_check(k, ctx, 40, samples);
            CMat P = C * V;
            double dev = 0.0, scale = P.cwiseAbs().maxCoeff();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double ref = std::abs(P(i, j)) < 1e-12 * scale ? scale : std::abs(P(i, j));
                    dev = std::max(dev, std::abs(rep.recovered(i, j) - P(i, j)) / ref);
                }
            t.le(dev, 1e-6, nstr("connection matrix n=%d", n));
        }
    }
}

void criterion_formal(Tally& t) {
    // rank 2: F_1 = [[s2 - (2 s1 + 1)^2/16, -i (2 s1 + 1)/8], [same, -(s2 - (2 s1 + 1)^2/16)]]
    auto fs = formal_reduce(2, 4);
    auto v = stokes_vars(2);
    auto cst = [&](const Cyclo& c) { return LaurentC(v, c); };
    auto z1 = LaurentC::var(v, 0), z2 = LaurentC::var(v, 1);
    auto tt = (z1 + z2) * cst(Cyclo(2L)) + cst(Cyclo(1L));
    auto F11 = z1 * z2 - tt * tt * cst(Cyclo(Rational(1, 16)));
    auto F12 = tt * cst(-Cyclo::zeta(4) * Cyclo(Rational(1, 8)));
    t.ok(fs.F[1](0, 0) == F11 && fs.F[1](1, 1) == -F11, "F_1 diagonal");
    t.ok(fs.F[1](0, 1) == F12 && fs.F[1](1, 0) == F12, "F_1 off-diagonal");
    // gauge substitution by hand: the coefficient of s^{-m} in
    //   F' + F Lambda / s + F U - Bhat F,  Bhat = E B E^{-1} = sum_j Bhat_j s^{-j},
    // is -(m-1) F_{m-1} + lambda F_{m-1} + F_m U - sum_j Bhat_j F_{m-j}
    auto E = e_matrix(2);
    auto B = shear_coeffs(2);
    std::vector<LCMat> Bh;
    for (auto& b : B) Bh.push_back(conjugate_by_E(E, b));
    LCMat U(2, 2, cst(Cyclo(0L)));
    for (int a = 0; a < 2; ++a) U(a, a) = cst(fs.u[a]);
    for (int m = 0; m <= 4; ++m) {
        LCMat r = fs.F[m] * U;
        if (m > 0) r = r + (fs.lambda - cst(Cyclo(static_cast<long>(m - 1)))) * fs.F[m - 1];
        for (int j = 0; j <= m && j < static_cast<int>(Bh.size()); ++j) r = r - Bh[j] * fs.F[m - j];
        bool zero = true;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) zero = zero && r(a, b).is_zero();
        t.ok(zero, nstr("gauge substitution, order %d", m));
    }
    for (int n = 2; n <= 5; ++n)
        for (int j = 1; j <= n; ++j) {
            auto K = qkz_normal_form(j, n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    cplx expect = a == b ? std::exp(-2.0 * pi * I1 * double(a) / double(n)) : 0.0;
                    bool constant = K(a, b).is_constant();
                    cplx got = constant && !K(a, b).is_zero() ? K(a, b).constant_term().to_complex() : 0.0;
                    t.ok(constant && std::abs(got - expect) < 1e-14, nstr("qKZ normal form n=%d", n));
                }
        }
}

void criterion_stokes(Tally& t) {
    std::mt19937 rng(16);
    for (int n = 2; n <= 4; ++n) {
        KRing R(n);
        auto J = antidiagonal(n, R.zero(), R.one());
        auto id = LMat::identity(n, R.zero(), R.one());
        for (auto kind : {SectorKind::Vprime, SectorKind::Vdprime})
            for (int k = -2; k <= 2; ++k) {
                std::string where = "n=" + std::to_string(n) + " " + SectorId{kind, k}.str();
                auto sd = stokes_matrices(R, {kind, k});
                // Gram matrix of the Stokes basis in exceptional (reversed lexicographic) order, recomputed here
                std::vector<KClass> rev(sd.eps.e.rbegin(), sd.eps.e.rend());
                auto G = gram_matrix(R, rev);
                t.ok(G.is_upper_unitriangular(), "exceptional order " + where);
                t.ok(sd.S1 == J * G.dagger().inverse_unitriangular() * J, "S1 = J (G^dagger)^-1 J " + where);
                t.ok(sd.S2 == J * G * J, "S2 = J G J " + where);
                t.ok(sd.S2 * sd.S1.dagger() == id, "S2 = (S1^dagger)^-1 " + where);
                // det(L - S1^dagger S1^{-1}) = prod (L - (-1)^{n+1} Z_i^n / s_n) at rational points
                auto p = random_point(rng, n);
                auto M = mul_q(eval_q(sd.S1, p, true), inverse_q(eval_q(sd.S1, p)));
                Rational sn = 1;
                for (auto& x : p) sn *= x;
                std::vector<Rational> w;
                for (auto& x : p) {
                    Rational v = x;
                    for (int e = 1; e < n; ++e) v *= x;
                    w.push_back(((n + 1) % 2 ? -v : v) / sn);
                }
                t.ok(char_poly_matches(M, w), "Stokes characteristic polynomial " + where);
                t.ok(dioph2_residual(R, sd.S1).is_zero(), "symbolic characteristic polynomial " + where);
            }
    }
    KRing R(2);
    NumericContext ctx{{0.13, 0.37}};
    for (auto& s : stokes_asymptotic_check(R, {SectorKind::Vprime, 0}, ctx, 20.0)) t.le(std::abs(s.ratio - 1.0), 5e-2, "asymptotic ratio");
}

void criterion_roots_of_unity(Tally& t) {
    // s_k(z_o) from prod (1 + z_j u) and the collapse of the scalar operator, n, k <= 8
    for (int n = 1; n <= 8; ++n) {
        std::vector<Rational> e(n + 1, Rational(0));
        e[0] = 1;
        for (int j = 0; j < n; ++j) {
            Rational zj(j, n);
            zj.canonicalize();
            for (int k = j + 1; k >= 1; --k) e[k] += zj * e[k - 1];
        }
        for (int k = 0; k <= n; ++k) t.ok(zo_elementary_stirling(n, k) == e[k], "Stirling identity");
        // theta (theta - 1) ... (theta - n + 1) / n^n in powers of theta
        std::vector<Rational> ff{Rational(1)};
        for (int j = 0; j < n; ++j) {
            std::vector<Rational> nx(ff.size() + 1, Rational(0));
            for (size_t i = 0; i < ff.size(); ++i) {
                nx[i + 1] += ff[i];
                nx[i] -= Rational(j) * ff[i];
            }
            ff = nx;
        }
        Rational nn = 1;
        for (int i = 0; i < n; ++i) nn *= n;
        for (auto& x : ff) x /= nn;
        if (n >= 2 && n <= 5) t.ok(zo_operator_coeffs(n) == ff, nstr("scalar collapse n=%d", n));
    }
    for (int n = 2; n <= 3; ++n) {
        KRing R(n);
        auto id = CycMat::identity(n, Cyclo(0L), Cyclo(1L));
        for (auto kind : {SectorKind::Vprime, SectorKind::Vdprime})
            for (int k = -2; k <= 2; ++k) {
                auto sd = stokes_matrices(R, {kind, k});
                t.ok(specialize_roots_of_unity(sd.S1) == id && specialize_roots_of_unity(sd.S2) == id, nstr("trivial Stokes data n=%d", n));
            }
        NumericContext ctx;
        for (auto& x : z_o(n)) ctx.z.push_back(x.get_d());
        for (int shift = 0; shift <= 1; ++shift) {
            ctx.z[0] += double(shift);
            CMat M = levelt_monodromy(ctx), P = CMat::Identity(n, n);
            bool earlier = false;
            for (int p = 1; p < n; ++p) {
                P = P * M;
                earlier = earlier || (P - CMat::Identity(n, n)).norm() < 1e-8;
            }
            P = P * M;
            t.ok(!earlier && (P - CMat::Identity(n, n)).norm() < 1e-8, nstr("monodromy order n=%d", n));
        }
        // g_m(s) = (1/n) sum_k zeta^{-mk} e^{n zeta^k s}
        cplx zeta = std::exp(2.0 * pi * I1 / double(n));
        for (cplx s : {cplx(0.7, 0.4), cplx(-1.3, 0.8), cplx(0.2, -2.5)})
            for (int m = 0; m < n; ++m) {
                cplx ref = 0.0;
                for (int k = 0; k < n; ++k) ref += std::pow(zeta, -m * k) * std::exp(double(n) * std::pow(zeta, k) * s);
                ref /= double(n);
                double scale = std::max(1.0, std::abs(ref));
                t.le(std::abs(g_function(m, n, s) - ref) / scale, 1e-10, "g_m closed form");
                t.le(std::abs(g_function(m, n, zeta * s) - std::pow(zeta, m) * g_function(m, n, s)) / scale, 1e-10, "g_m eigenbasis");
            }
    }
}

void criterion_dubrovin(Tally& t) {
    for (int n = 2; n <= 5; ++n) {
        auto V = dubrovin_V(n);
        t.ok(V + V.transpose() == CycMat(n, n, Cyclo(0L)), nstr("V antisymmetric n=%d", n));
        // numeric oracle: E mu E^{-1} with E_{ia} = exp((i-1)(2a-1) pi i / n) / sqrt(n)
        CMat E(n, n), mu = CMat::Zero(n, n);
        for (int i = 0; i < n; ++i)
            for (int a = 0; a < n; ++a) E(i, a) = std::exp(double(i * (2 * a + 1)) * pi * I1 / double(n)) / std::sqrt(double(n));
        for (int a = 0; a < n; ++a) mu(a, a) = a - (n - 1) / 2.0;
        CMat Vn = E * mu * E.inverse(), Vc(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) Vc(i, j) = V(i, j).to_complex();
        t.le((Vn - Vc).cwiseAbs().maxCoeff(), 1e-12, "V = E mu E^-1");
    }
    for (int n = 2; n <= 3; ++n) t.le(dubrovin_bridge(n).residual, 1e-8, nstr("transformed-solution residual n=%d", n));
}

struct Criterion {
    int id;
    std::string title;
    double budget_s;  // 0: no time limit stated
    std::function<void(Tally&)> run;
};

}  // namespace

int main() {
    std::vector<Criterion> all{
        {1, "chi table, n = 2..5, -n <= i,j <= n", 5.0, criterion_chi},
        {2, "braid algebra on Beilinson + 10 mutated bases, n = 2..5", 30.0, criterion_braids},
        {3, "Diophantine constraints and Markov-type equations", 0.0, criterion_diophantine},
        {4, "Levelt and topological series, n = 2,3, N = 30", 60.0, criterion_series},
        {5, "q-hypergeometric Psi_J, N = 40, |q| = 0.2", 120.0, criterion_hypergeometric},
        {6, "connection matrix C_TV,k, k = -1,0,1", 60.0, criterion_b_theorem},
        {7, "formal reduction and qKZ normal form", 0.0, criterion_formal},
        {8, "Stokes matrices = Gram matrices, n = 2..4, |k| <= 2", 0.0, criterion_stokes},
        {9, "roots of unity", 0.0, criterion_roots_of_unity},
        {10, "isomonodromic bridge at z = 0", 0.0, criterion_dubrovin},
    };
    int failed = 0;
    for (auto& c : all) {
        Tally t;
        auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            c.run(t);
        } catch (const std::exception& e) {
            error = e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_time = c.budget_s == 0.0 || secs <= c.budget_s;
        bool pass = error.empty() && t.failures == 0 && in_time;
        if (!pass) ++failed;
        std::ostringstream line;
        line << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.title << "  [" << t.checks << " checks";
        if (t.worst > 0.0) line << ", worst defect " << t.worst << " x tolerance";
        char tbuf[64];
        std::snprintf(tbuf, sizeof tbuf, ", %.2f s", secs);
        line << tbuf;
        if (c.budget_s > 0.0) line << " of " << c.budget_s << " s";
        line << "]";
        if (!error.empty()) line << "  error: " << error;
        else if (t.failures) line << "  " << t.failures << " failed, first: " << t.first_failure;
        else if (!in_time) line << "  over the time budget";
        std::printf("%s\n", line.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
    return failed ? 1 : 0;
}
