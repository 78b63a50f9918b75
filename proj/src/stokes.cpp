#include "kqde/stokes.hpp"

#include "kqde/qkz.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kq {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I1(0.0, 1.0);

Exp exp_of_var(int i, int power = 1) {
    Exp e{};
    e[i] = static_cast<int16_t>(power);
    return e;
}

// a Laurent polynomial of qkz_vars(n) rewritten in stokes_vars(n) with q = s^n
LaurentQ q_to_s(const LaurentQ& f, int n, const VarList& sv) {
    std::vector<Exp> images;
    for (int i = 0; i < n; ++i) images.push_back(exp_of_var(i));
    images.push_back(exp_of_var(n, n));
    return f.substitute_monomials(images, sv);
}

template <class K>
Laurent<K> s_pow(const VarList& sv, int n, int p) {
    return Laurent<K>::monomial(sv, exp_of_var(n, p), K(1L));
}

// the part of f whose s-degree lies in [lo, hi]
LaurentC s_degree_window(const LaurentC& f, int s_index, int lo, int hi) {
    LaurentC r(f.vars());
    for (auto& t : f.terms()) {
        int d = t.first[s_index];
        if (d >= lo && d <= hi) r += LaurentC::monomial(f.vars(), t.first, t.second);
    }
    return r;
}

LCMat lift(const CycMat& M, const VarList& v) {
    LCMat r(M.rows(), M.cols(), LaurentC(v));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) r(i, j) = LaurentC(v, M(i, j));
    return r;
}

LCMat to_cyclo(const Mat<LaurentQ>& M) {
    LCMat r(M.rows(), M.cols(), kq::to_cyclo(M.zero()));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) r(i, j) = kq::to_cyclo(M(i, j));
    return r;
}

bool all_polynomial(const LaurentC& f) {
    for (auto& t : f.terms())
        for (int i = 0; i < f.nvars(); ++i)
            if (t.first[i] < 0) return false;
    return true;
}

Cyclo zeta2n(int n, long e) {
    long m = ((e % (2 * n)) + 2 * n) % (2 * n);
    return Cyclo::zeta(2 * n, m);
}

}  // namespace

// ---------------------------------------------------------------------------

VarList stokes_vars(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("z" + std::to_string(i));
    names.push_back("s");
    return make_vars(names);
}

std::vector<Mat<LaurentQ>> shear_coeffs(int n) {
    if (n < 2) throw std::invalid_argument("shearing needs n >= 2");
    auto v = stokes_vars(n);
    LaurentQ zero(v);
    std::vector<Mat<LaurentQ>> B(n + 1, Mat<LaurentQ>(n, n, zero));
    B[0](0, n - 1) = LaurentQ(v, Rational(n));
    for (int a = 0; a + 1 < n; ++a) B[0](a + 1, a) = LaurentQ(v, Rational(n));
    for (int a = 0; a < n; ++a) B[1](a, a) = LaurentQ(v, Rational(a));
    for (int j = 1; j <= n; ++j) {
        LaurentQ e = sym_poly(SymKind::elementary, j, v, 0, n) * LaurentQ(v, Rational(j % 2 ? n : -n));
        B[j](n - j, n - 1) += e;
    }
    return B;
}

Mat<LaurentQ> shear_residual(int n) {
    auto v = stokes_vars(n);
    auto B = shear_coeffs(n);
    auto A = qde_A_symbolic(n);
    Mat<LaurentQ> r(n, n, LaurentQ(v));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            LaurentQ lhs(v);
            for (int j = 0; j <= n; ++j) lhs += B[j](a, b) * s_pow<Rational>(v, n, -j);
            // n s^{n-1} s^{a-b} A_ab(s^n) - (H^{-1} dH/ds)_ab, H = diag(s^{-a})
            LaurentQ rhs = LaurentQ(v, Rational(n)) * s_pow<Rational>(v, n, n - 1 + a - b) * q_to_s(A(a, b), n, v);
            if (a == b) rhs += LaurentQ(v, Rational(a)) * s_pow<Rational>(v, n, -1);
            r(a, b) = lhs - rhs;
        }
    return r;
}

EMatrix e_matrix(int n) {
    if (n < 2) throw std::invalid_argument("E-matrix needs n >= 2");
    EMatrix E;
    E.n = n;
    E.Et = CycMat(n, n, Cyclo(0L));
    E.Et_inv = CycMat(n, n, Cyclo(0L));
    E.E = CMat(n, n);
    E.E_inv = CMat(n, n);
    Cyclo inv_n(Rational(1, n));
    double rn = std::sqrt(double(n));
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) {
            long e = static_cast<long>(i) * (2 * a + 1);
            E.Et(i, a) = zeta2n(n, e);
            E.Et_inv(a, i) = zeta2n(n, -e) * inv_n;
            E.E(i, a) = std::exp(I1 * pi * double(e) / double(n)) / rn;
            E.E_inv(a, i) = std::exp(-I1 * pi * double(e) / double(n)) / rn;
        }
    return E;
}

LCMat conjugate_by_E(const EMatrix& E, const Mat<LaurentQ>& M) {
    auto v = M.zero().vars();
    return lift(E.Et, v) * to_cyclo(M) * lift(E.Et_inv, v);
}

std::vector<Cyclo> u_eigenvalues(int n) {
    std::vector<Cyclo> u;
    for (int m = 0; m < n; ++m) u.push_back(Cyclo(static_cast<long>(n)) * Cyclo::zeta(n, m));
    return u;
}

CycMat eta_classical(int n) {
    CycMat eta(n, n, Cyclo(0L));
    for (int a = 0; a < n; ++a) eta(a, n - 1 - a) = Cyclo(1L);
    return eta;
}

// ---------------------------------------------------------------------------

FormalSolution formal_reduce(int n, int N) {
    if (N < 0) throw std::invalid_argument("formal series order must be non-negative");
    auto v = stokes_vars(n);
    auto E = e_matrix(n);
    auto B = shear_coeffs(n);
    std::vector<LCMat> Ah;
    for (auto& b : B) Ah.push_back(conjugate_by_E(E, b));

    FormalSolution fs;
    fs.n = n;
    fs.u = u_eigenvalues(n);
    fs.lambda = kq::to_cyclo(sym_poly(SymKind::elementary, 1, v, 0, n)) + LaurentC(v, Cyclo(fraction(n - 1, 2)));
    LaurentC zero(v), one(v, Cyclo(1L));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            LaurentC expect0 = a == b ? LaurentC(v, fs.u[a]) : zero;
            if (Ah[0](a, b) != expect0) throw std::runtime_error("E B_0 E^{-1} is not diag(u)");
        }
    for (int a = 0; a < n; ++a)
        if (Ah[1](a, a) != fs.lambda) throw std::runtime_error("diagonal of E B_1 E^{-1} differs from Lambda");

    // the right-hand side of [U, F_{k+1}] = -k F_k + F_k Lambda - sum_{h=1}^{k+1} Ah_h F_{k+1-h}
    auto rhs = [&](int k) {
        LCMat r(n, n, zero);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) r(a, b) = fs.F[k](a, b) * (fs.lambda - LaurentC(v, Cyclo(static_cast<long>(k))));
        for (int h = 1; h <= std::min(k + 1, n); ++h) r = r - Ah[h] * fs.F[k + 1 - h];
        return r;
    };

    fs.F.push_back(LCMat::identity(n, zero, one));
    for (int k = 0; k < N; ++k) {
        LCMat R = rhs(k);
        for (int a = 0; a < n; ++a)
            if (!R(a, a).is_zero()) throw std::runtime_error("formal reduction: diagonal equation not satisfied");
        LCMat Fn(n, n, zero);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b) Fn(a, b) = R(a, b) * (fs.u[a] - fs.u[b]).inverse();
        fs.F.push_back(Fn);
        // with the diagonal of F_{k+1} still zero, the diagonal of the next equation is -(k+1) diag(F_{k+1}) + known
        LCMat R1 = rhs(k + 1);
        Cyclo inv_k(Rational(1, k + 1));
        for (int a = 0; a < n; ++a) fs.F[k + 1](a, a) = R1(a, a) * inv_k;
    }
    for (auto& F : fs.F)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (!all_polynomial(F(a, b))) throw std::runtime_error("formal reduction produced a non-polynomial entry");
    return fs;
}

LCMat gauge_residual(const FormalSolution& fs, int order) {
    int n = fs.n, N = static_cast<int>(fs.F.size()) - 1;
    if (order < 0 || order > N) throw std::invalid_argument("residual order must lie in [0, N]");
    auto v = stokes_vars(n);
    LaurentC zero(v);
    auto E = e_matrix(n);
    auto B = shear_coeffs(n);
    LCMat F(n, n, zero), dF(n, n, zero), Ahat(n, n, zero), U(n, n, zero);
    for (int k = 0; k <= N; ++k) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                auto t = fs.F[k](a, b);
                F(a, b) += t * s_pow<Cyclo>(v, n, -k);
                dF(a, b) += t * s_pow<Cyclo>(v, n, -k - 1) * LaurentC(v, Cyclo(static_cast<long>(-k)));
            }
    }
    for (int j = 0; j <= n; ++j) {
        auto Aj = conjugate_by_E(E, B[j]);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) Ahat(a, b) += Aj(a, b) * s_pow<Cyclo>(v, n, -j);
    }
    for (int a = 0; a < n; ++a) U(a, a) = LaurentC(v, fs.u[a]);
    LaurentC lam_s = fs.lambda * s_pow<Cyclo>(v, n, -1);
    LCMat R = dF + lam_s * F + F * U - Ahat * F;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) R(a, b) = s_degree_window(R(a, b), n, -order, 1 << 14);
    return R;
}

LCMat qkz_normal_form(int j, int n) {
    if (j < 1 || j > n) throw std::invalid_argument("qKZ index must lie in 1..n");
    auto v = stokes_vars(n);
    auto K = qkz_x_symbolic(n, j - 1);
    Mat<LaurentQ> M(n, n, LaurentQ(v));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) M(a, b) = q_to_s(K(a, b), n, v) * s_pow<Rational>(v, n, a - b);
    LCMat C = conjugate_by_E(e_matrix(n), M);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) C(a, b) = s_degree_window(C(a, b), n, -1, -1) * s_pow<Cyclo>(v, n, 1);
    return C;
}

CMat stokes_normalization(const NumericContext& ctx) {
    int n = ctx.n();
    CMat C = stokes_normalization_realized(ctx);
    for (int m = 0; m < n; ++m) C(m, m) *= std::exp(I1 * pi * double(m) / double(n));
    return C;
}

CMat stokes_normalization_realized(const NumericContext& ctx) {
    int n = ctx.n();
    cplx lam = ctx.sum_z() + 0.5 * double(n - 1);
    cplx pre = std::pow(2.0 * pi, 0.5 * double(n - 1)) * std::exp(-I1 * pi * 0.5 * double(n - 1));
    CMat C = CMat::Zero(n, n);
    for (int m = 0; m < n; ++m) C(m, m) = pre * std::exp(2.0 * pi * I1 * double(m) * lam / double(n));
    return C;
}

// ---------------------------------------------------------------------------

std::string SectorId::str() const {
    return std::string(kind == SectorKind::Vprime ? "vp:" : "vpp:") + std::to_string(k);
}

SectorId parse_sector(const std::string& s) {
    auto c = s.find(':');
    if (c == std::string::npos) throw std::invalid_argument("sector must look like vp:k or vpp:k");
    std::string kind = s.substr(0, c), num = s.substr(c + 1);
    SectorId v;
    if (kind == "vp") v.kind = SectorKind::Vprime;
    else if (kind == "vpp") v.kind = SectorKind::Vdprime;
    else throw std::invalid_argument("unknown sector kind '" + kind + "'");
    try {
        size_t pos = 0;
        v.k = std::stoi(num, &pos);
        if (pos != num.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad sector index '" + num + "'");
    }
    return v;
}

std::pair<double, double> sector_bounds(int n, const SectorId& v) {
    double k = v.k, dn = n;
    if (v.kind == SectorKind::Vprime) return {k / dn - 0.5 - 0.5 / dn, k / dn};
    return {k / dn - 0.5 - 1.0 / dn, k / dn - 0.5 / dn};
}

SectorId rotate_half(int n, const SectorId& v) {
    if (n % 2 == 0) return {v.kind, v.k - n / 2};
    if (v.kind == SectorKind::Vprime) return {SectorKind::Vdprime, v.k - (n - 1) / 2};
    return {SectorKind::Vprime, v.k - (n + 1) / 2};
}

BraidWord half_turn_braid(int n, SectorKind kind) {
    BraidWord dodd = braid_constant(BraidName::delta_odd, n), deven = braid_constant(BraidName::delta_even, n);
    BraidWord w;
    for (int f = 0; f < n; ++f) {
        bool odd = (kind == SectorKind::Vprime) == (f % 2 == 0);
        w = braid_concat(odd ? dodd : deven, w);  // factor f acts after factors 0..f-1
    }
    return w;
}

ExBasis stokes_basis(const KRing& R, const SectorId& v) {
    ExBasis b = structured_basis(R, v.kind == SectorKind::Vprime ? QKind::Qtp : QKind::Qtpp, v.k);
    std::vector<int> seen(R.n(), 0);
    for (int t : b.tags) {
        if (t < 0 || t >= R.n() || seen[t]++) throw std::runtime_error("Stokes basis without a complete set of eigen tags");
    }
    return b;
}

std::vector<int> lexicographic_order(int n, const SectorId& v) {
    auto [lo, hi] = sector_bounds(n, v);
    double phi = 0.5 * (lo + hi - 0.5);  // middle of V cap e^{pi i}V
    std::vector<int> o(n);
    for (int m = 0; m < n; ++m) o[m] = m;
    auto re = [&](int m) { return std::cos(2.0 * pi * (double(m) / n - phi)); };
    std::sort(o.begin(), o.end(), [&](int a, int b) { return re(a) < re(b); });
    return o;
}

std::vector<LaurentQ> basis_coordinates(const KRing& R, const ExBasis& e, const KClass& f) {
    int n = R.n();
    LMat G = gram_matrix(R, e);
    if (!G.is_upper_unitriangular()) throw std::invalid_argument("coordinates need an exceptional basis");
    LMat Gi = G.inverse_unitriangular();
    std::vector<LaurentQ> rhs(n, R.zero()), c(n, R.zero());
    for (int i = 0; i < n; ++i) rhs[i] = R.chi(e.e[i], f);  // chi(e_i, sum_j c_j e_j) = sum_j G_ij c_j
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c[i] += Gi(i, j) * rhs[j];
    return c;
}

namespace {

ExBasis reorder_by_tags(const ExBasis& b, const std::vector<int>& order) {
    ExBasis r;
    for (int t : order)
        for (int i = 0; i < b.size(); ++i)
            if (b.tags[i] == t) {
                r.e.push_back(b.e[i]);
                r.labels.push_back(i < static_cast<int>(b.labels.size()) ? b.labels[i] : "");
                r.tags.push_back(t);
            }
    return r;
}

// coordinates of the elements of f in e (both in exceptional order), rows/cols permuted
// into the given tag order
LMat transition(const KRing& R, const ExBasis& e, const ExBasis& f, const std::vector<int>& order) {
    int n = R.n();
    std::vector<int> pe(n), pf(n);
    for (int i = 0; i < n; ++i) {
        pe[e.tags[i]] = i;
        pf[f.tags[i]] = i;
    }
    LMat S(n, n, R.zero());
    for (int b = 0; b < n; ++b) {
        auto c = basis_coordinates(R, e, f.e[pf[order[b]]]);
        for (int a = 0; a < n; ++a) S(a, b) = c[pe[order[a]]];
    }
    return S;
}

}  // namespace

StokesData stokes_matrices(const KRing& R, const SectorId& v) {
    int n = R.n();
    StokesData sd;
    sd.sector = v;
    ExBasis e0 = stokes_basis(R, v);
    SectorId v1 = rotate_half(n, v), v2 = rotate_half(n, v1);
    ExBasis e1 = stokes_basis(R, v1), e2 = stokes_basis(R, v2);
    if (braid_act(R, half_turn_braid(n, v.kind), e0).e != e1.e)
        throw std::runtime_error("half-turn braid image differs from the Stokes basis on " + v1.str());
    if (braid_act(R, half_turn_braid(n, v1.kind), e1).e != e2.e)
        throw std::runtime_error("half-turn braid image differs from the Stokes basis on " + v2.str());
    sd.order = lexicographic_order(n, v);
    sd.S1 = transition(R, e0, e1, sd.order);
    sd.S2 = transition(R, e1, e2, sd.order);
    sd.eps = reorder_by_tags(e0, sd.order);
    sd.eps1 = reorder_by_tags(e1, sd.order);
    sd.eps2 = reorder_by_tags(e2, sd.order);
    // the exceptional order is the reverse of the lexicographic one
    ExBasis exc = sd.eps;
    std::reverse(exc.e.begin(), exc.e.end());
    std::reverse(exc.labels.begin(), exc.labels.end());
    std::reverse(exc.tags.begin(), exc.tags.end());
    sd.gram = gram_matrix(R, exc);
    if (!sd.S1.is_upper_unitriangular() || !sd.S2.is_lower_unitriangular())
        throw std::runtime_error("lexicographic order does not triangularize the Stokes matrices on " + v.str());
    return sd;
}

LMat antidiagonal_J(const KRing& R) {
    int n = R.n();
    LMat J(n, n, R.zero());
    for (int a = 0; a < n; ++a) J(a, n - 1 - a) = R.one();
    return J;
}

LaurentQ dioph2_residual(const KRing& R, const LMat& S1) {
    int n = R.n();
    LaurentQ p = char_poly(S1.dagger() * S1.inverse_unitriangular(), "L");
    VarList lv = p.vars();
    LaurentQ L = LaurentQ::var(lv, n);
    LaurentQ sn_inv = R.s(n).inverse_monomial();
    std::vector<LaurentQ> w;
    for (int i = 0; i < n; ++i) {
        LaurentQ wi = (R.Z(i).pow(n) * sn_inv).embed(lv);
        w.push_back(n % 2 ? wi : -wi);  // (-1)^{n+1}
    }
    // sum_j (-1)^j L^{n-j} s_j(w), with s_j(w) built by the elementary recursion
    std::vector<LaurentQ> e(n + 1, LaurentQ(lv));
    e[0] = LaurentQ(lv, Rational(1));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j >= 1; --j) e[j] += w[i] * e[j - 1];
    LaurentQ rhs(lv);
    for (int j = 0; j <= n; ++j) {
        LaurentQ t = L.pow(n - j) * e[j];
        rhs += j % 2 ? -t : t;
    }
    return p - rhs;
}

LaurentQ monodromy_residual(const KRing& R, const LMat& S1, const LMat& S2) {
    int n = R.n();
    LMat Minv = S2.inverse_unitriangular() * S1.inverse_unitriangular();
    LaurentQ c = R.s(n);
    if ((n - 1) % 2) c = -c;
    LaurentQ p = char_poly(c * Minv, "L");
    VarList lv = p.vars();
    LaurentQ L = LaurentQ::var(lv, n);
    LaurentQ rhs(lv, Rational(1));
    for (int j = 0; j < n; ++j) rhs *= L - R.Z(j).pow(n).embed(lv);  // s -> e^{2 pi i}s is n turns in q
    return p - rhs;
}

GramStokesReport gram_stokes_check(const KRing& R, const StokesData& sd) {
    GramStokesReport rep;
    const LMat &S1 = sd.S1, &S2 = sd.S2, &G = sd.gram;
    LMat J = antidiagonal_J(R);
    rep.s1_upper = S1.is_upper_unitriangular();
    rep.s2_lower = S2.is_lower_unitriangular();
    if (G.is_upper_unitriangular()) {
        rep.s1_is_gram_dual = S1 == J * G.inverse_unitriangular().dagger() * J;
        rep.s2_is_gram = S2 == J * G * J;
    }
    if (rep.s1_upper) {
        rep.s2_is_dagger_inverse = S2 == S1.dagger().inverse_unitriangular();
        rep.dioph2 = dioph2_residual(R, S1).is_zero();
        if (rep.s2_lower) rep.monodromy = monodromy_residual(R, S1, S2).is_zero();
    }
    return rep;
}

CMat specialize(const LMat& M, const NumericContext& ctx) {
    auto zt = z_tilde(ctx);
    CMat r(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) r(i, j) = M(i, j).eval<cplx>(zt);
    return r;
}

CycMat specialize_roots_of_unity(const LMat& M) {
    int n = static_cast<int>(M.zero().vars()->size());
    std::vector<Cyclo> pt;
    for (int a = 0; a < n; ++a) pt.push_back(Cyclo::zeta(n, a));
    CycMat r(M.rows(), M.cols(), Cyclo(0L));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) r(i, j) = kq::to_cyclo(M(i, j)).eval_exact(pt);
    return r;
}

Mat<Rational> specialize_nonequivariant(const LMat& M) {
    int n = static_cast<int>(M.zero().vars()->size());
    std::vector<Rational> pt(n, Rational(1));
    Mat<Rational> r(M.rows(), M.cols(), Rational(0));
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) r(i, j) = M(i, j).eval_exact(pt);
    return r;
}

std::vector<StokesAsymptoticSample> stokes_asymptotic_check(const KRing& R, const SectorId& v, const NumericContext& ctx,
                                                            double abs_s, int N) {
    int n = R.n();
    if (ctx.n() != n) throw std::invalid_argument("rank mismatch between ring and parameters");
    if (abs_s <= 0.0) throw std::invalid_argument("|s| must be positive");
    if (N <= 0) N = 40 + static_cast<int>(std::ceil(4.0 * abs_s));
    ExBasis b = stokes_basis(R, v);
    auto data = std::make_shared<const ResidueSeries>(residue_series(ctx, N));
    auto zt = z_tilde(ctx);
    CMat Creal = stokes_normalization_realized(ctx), Cprint = stokes_normalization(ctx);
    cplx lam = ctx.sum_z() + 0.5 * double(n - 1);
    auto [lo, hi] = sector_bounds(n, v);
    std::vector<StokesAsymptoticSample> out;
    for (double t : {0.3, 0.7}) {
        // move off rays where the two largest exponentials are comparable
        double phi = lo + t * (hi - lo);
        std::vector<double> re(n);
        int tag = 0;
        for (int step = 0; step < 8; ++step) {
            for (int m = 0; m < n; ++m) re[m] = std::cos(2.0 * pi * (double(m) / n - phi));
            std::vector<double> sorted = re;
            std::sort(sorted.rbegin(), sorted.rend());
            tag = static_cast<int>(std::max_element(re.begin(), re.end()) - re.begin());
            if (sorted[0] - sorted[1] > 0.05) break;
            phi += 0.03 * (hi - lo);
        }
        int idx = 0;
        for (int i = 0; i < n; ++i)
            if (b.tags[i] == tag) idx = i;
        std::vector<cplx> w;
        for (int J = 0; J < n; ++J) w.push_back(R.restrict_at(b.e[idx], J).eval<cplx>(zt));
        BranchContext br{phi};
        cplx lead = combine(data, w, b.labels.empty() ? "" : b.labels[idx]).eval_x(br.log_q(abs_s, n))(0);
        cplx log_s = br.log_s(abs_s);
        cplx s = std::exp(log_s);
        cplx expo = std::exp(lam * log_s + double(n) * s * std::exp(2.0 * pi * I1 * double(tag) / double(n))) / std::sqrt(double(n));
        out.push_back({phi, tag, lead / (Creal(tag, tag) * expo), lead / (Cprint(tag, tag) * expo)});
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<Rational> z_o(int n) {
    std::vector<Rational> z;
    for (int j = 0; j < n; ++j) {
        Rational r(j, n);
        r.canonicalize();
        z.push_back(r);
    }
    return z;
}

Rational zo_elementary_stirling(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("elementary symmetric index out of range");
    Rational r(mpz_class(stirling_first(n, n - k)), 1);
    mpz_class nk;
    mpz_ui_pow_ui(nk.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    r /= Rational(nk);
    return r;
}

std::vector<Rational> zo_operator_coeffs(int n) {
    std::vector<Rational> c(n + 1);
    for (int j = 0; j <= n; ++j) {
        Rational t = zo_elementary_stirling(n, n - j);
        mpz_class nj;
        mpz_ui_pow_ui(nj.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(j));
        t /= Rational(nj);
        c[j] = (n - j) % 2 ? Rational(-t) : t;
    }
    return c;
}

std::vector<Rational> scaled_derivative_coeffs(int n) {
    std::vector<Rational> c(n + 1);
    mpz_class nn;
    mpz_ui_pow_ui(nn.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n));
    for (int j = 0; j <= n; ++j) {
        Rational t(mpz_class(stirling_first(n, j)), nn);
        t.canonicalize();
        c[j] = (n - j) % 2 ? Rational(-t) : t;
    }
    return c;
}

cplx g_function(int m, int n, cplx s) {
    if (n < 1 || m < 0 || m >= n) throw std::invalid_argument("g_m needs 0 <= m < n");
    cplx x = double(n) * s;
    cplx term = 1.0, sum = 0.0;
    for (int j = 1; j <= m; ++j) term *= x / double(j);
    sum = term;
    for (int j = m + 1;; ++j) {
        term *= x / double(j);
        if ((j - m) % n == 0) sum += term;
        if (j > std::abs(x) + 2 && std::abs(term) <= 1e-18 * std::max(1.0, std::abs(sum))) break;
    }
    return sum;
}

int matrix_order(const CMat& M, int max_p, double tol) {
    int n = static_cast<int>(M.rows());
    CMat P = CMat::Identity(n, n);
    for (int p = 1; p <= max_p; ++p) {
        P = P * M;
        if ((P - CMat::Identity(n, n)).norm() <= tol * std::max(1.0, M.norm())) return p;
    }
    return 0;
}

CMat levelt_monodromy(const NumericContext& ctx, int N) {
    LeveltSolution Y(ctx, N);
    cplx lq = std::log(0.3);
    CMat Y0 = Y.eval(lq), Y1 = Y.eval(lq + 2.0 * pi * I1);
    return Y0.fullPivLu().solve(Y1);
}

RootsOfUnityReport roots_of_unity_suite(int n) {
    RootsOfUnityReport rep;
    rep.stirling_collapse = zo_operator_coeffs(n) == scaled_derivative_coeffs(n);

    cplx zeta = std::exp(2.0 * pi * I1 / double(n));
    for (cplx s : {cplx(0.7, 0.4), cplx(1.3, -0.8), cplx(-2.0, 1.0), cplx(0.2, 2.5)}) {
        cplx total = 0.0;
        for (int m = 0; m < n; ++m) {
            cplx g = g_function(m, n, s);
            double scale = std::max(1.0, std::exp(double(n) * std::abs(s)) * 1e-16 + std::abs(g));
            rep.g_eigen_dev = std::max(rep.g_eigen_dev, std::abs(g_function(m, n, zeta * s) - std::pow(zeta, m) * g) / scale);
            // g_m' = n g_{m-1}: fourth-order central difference
            double h = 1e-3;
            cplx d = (-g_function(m, n, s + 2.0 * h) + 8.0 * g_function(m, n, s + h) - 8.0 * g_function(m, n, s - h) +
                      g_function(m, n, s - 2.0 * h)) /
                     (12.0 * h);
            cplx prev = g_function((m + n - 1) % n, n, s);
            rep.g_ode_dev = std::max(rep.g_ode_dev, std::abs(d - double(n) * prev) / std::max(1.0, std::abs(double(n) * prev)));
            total += g;
        }
        cplx e = std::exp(double(n) * s);
        rep.g_partition_dev = std::max(rep.g_partition_dev, std::abs(total - e) / std::max(1.0, std::abs(e)));
    }

    KRing R(n);
    auto id = CycMat::identity(n, Cyclo(0L), Cyclo(1L));
    rep.beilinson_orthonormal = specialize_roots_of_unity(gram_matrix(R, beilinson(R))) == id;
    rep.stokes_trivial = true;
    for (auto kind : {SectorKind::Vprime, SectorKind::Vdprime})
        for (int k = -2; k <= 2; ++k) {
            auto sd = stokes_matrices(R, {kind, k});
            if (specialize_roots_of_unity(sd.S1) != id || specialize_roots_of_unity(sd.S2) != id) rep.stokes_trivial = false;
        }

    NumericContext ctx;
    for (auto& r : z_o(n)) ctx.z.push_back(r.get_d());
    rep.monodromy_order = matrix_order(levelt_monodromy(ctx), 2 * n);
    ctx.z[0] += 1.0;
    rep.monodromy_order_shifted = matrix_order(levelt_monodromy(ctx), 2 * n);
    return rep;
}

// ---------------------------------------------------------------------------

CycMat dubrovin_V(int n) {
    auto E = e_matrix(n);
    CycMat mu(n, n, Cyclo(0L));
    for (int a = 0; a < n; ++a) mu(a, a) = Cyclo(fraction(2 * a - (n - 1), 2));
    return E.Et * mu * E.Et_inv;
}

namespace {

using State = std::vector<cplx>;

// integrate dX/dr = e^{i theta} M(l) X, l = r e^{i theta}, from r0 to r1
CMat transport(const std::function<CMat(cplx)>& M, const CMat& X0, double theta, double r0, double r1) {
    namespace ode = boost::numeric::odeint;
    int n = static_cast<int>(X0.rows());
    cplx dir = std::exp(I1 * theta);
    State x(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) x[i * n + j] = X0(i, j);
    auto rhs = [&](const State& y, State& dy, double r) {
        CMat Y(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) Y(i, j) = y[i * n + j];
        CMat D = dir * M(r * dir) * Y;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dy[i * n + j] = D(i, j);
    };
    auto stepper = ode::make_controlled(1e-13, 1e-13, ode::runge_kutta_dopri5<State, double, State, double>());
    ode::integrate_adaptive(stepper, rhs, x, r0, r1, 1e-3);
    CMat X(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) X(i, j) = x[i * n + j];
    return X;
}

CMat to_cmat(const CycMat& M) {
    CMat r(M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) r(i, j) = M(i, j).to_complex();
    return r;
}

}  // namespace

DubrovinReport dubrovin_bridge(int n, double theta, double r0, double r1) {
    if (!(r0 > 0.0 && r1 > r0)) throw std::invalid_argument("need 0 < r0 < r1");
    DubrovinReport rep;
    auto E = e_matrix(n);
    rep.V = dubrovin_V(n);
    rep.V_antisymmetric = (rep.V + rep.V.transpose()) == CycMat(n, n, Cyclo(0L));

    // B_0 and B_1 at z = 0
    auto B = shear_coeffs(n);
    std::vector<Rational> origin(n + 1, Rational(0));
    origin[n] = 1;
    Mat<Rational> B0(n, n, Rational(0)), B1(n, n, Rational(0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            B0(a, b) = B[0](a, b).eval_exact(origin);
            B1(a, b) = B[1](a, b).eval_exact(origin);
        }
    CycMat B1c(n, n, Cyclo(0L)), B0c(n, n, Cyclo(0L));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            B1c(a, b) = Cyclo(B1(a, b));
            B0c(a, b) = Cyclo(B0(a, b));
        }
    CycMat EB1 = E.Et * B1c * E.Et_inv;
    bool ok = true;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            Cyclo expect = a == b ? Cyclo(fraction(n - 1, 2)) + rep.V(a, b) : rep.V(a, b);
            if (EB1(a, b) != expect) ok = false;
        }
    rep.V_is_offdiag_B1 = ok;

    CMat B0n = to_cmat(B0c), B1n = to_cmat(B1c), Vn = to_cmat(rep.V);
    CMat U = CMat::Zero(n, n);
    for (int m = 0; m < n; ++m) U(m, m) = double(n) * std::exp(2.0 * pi * I1 * double(m) / double(n));
    cplx dir = std::exp(I1 * theta);
    cplx l0 = r0 * dir, l1 = r1 * dir;
    double h = 0.5 * double(n - 1);
    CMat T0 = CMat::Identity(n, n);
    CMat T1 = transport([&](cplx l) -> CMat { return B0n + B1n / l; }, T0, theta, r0, r1);
    CMat Y0 = std::pow(l0, -h) * E.E * T0;
    CMat Y1 = transport([&](cplx l) -> CMat { return U + Vn / l; }, Y0, theta, r0, r1);
    CMat Y1_from_T = std::pow(l1, -h) * E.E * T1;
    rep.residual = (Y1 - Y1_from_T).norm() / Y1.norm();
    return rep;
}

}  // namespace kq
