#pragma once
// The irregular singularity at q = infinity: shearing, formal reduction, the
// normal form of the qKZ operators, Stokes sectors/bases/matrices and their
// Gram-matrix description, the roots-of-unity degeneration and the bridge to
// the isomonodromic system at z = 0.

#include "kqde/hypergeom.hpp"
#include "kqde/ktheory.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kq {

using CycMat = Mat<Cyclo>;
using LCMat = Mat<LaurentC>;

// ---------------------------------------------------------------------------
// Shearing and the E-matrix

// symbolic ring z1..zn, s  (q = s^n)
VarList stokes_vars(int n);

// B_0..B_n with B(s, z) = sum_j B_j s^{-j} = n s^{n-1} (H^{-1} A H - H^{-1} H')|_{q = s^n},
// H = diag(1, q^{-1/n}, ..., q^{-(n-1)/n}); entries in stokes_vars(n)
std::vector<Mat<LaurentQ>> shear_coeffs(int n);
// sum_j B_j s^{-j} minus the gauge formula computed from the qDE matrix A(q, z)
Mat<LaurentQ> shear_residual(int n);

// E_{i a} = exp((i-1)(2a-1) pi i / n) / sqrt(n). The exact parts are over the
// cyclotomic field: E = Et / sqrt(n), E^{-1} = sqrt(n) Et_inv, Et * Et_inv = 1,
// so conjugations E M E^{-1} = Et M Et_inv are exact.
struct EMatrix {
    int n = 0;
    CycMat Et, Et_inv;
    CMat E, E_inv;
};
EMatrix e_matrix(int n);
// Et M Et_inv for a matrix over stokes_vars(n)
LCMat conjugate_by_E(const EMatrix& E, const Mat<LaurentQ>& M);
// eigenvalues u_m = n zeta_n^m, m = 0..n-1
std::vector<Cyclo> u_eigenvalues(int n);
// (eta_cl)_{ab} = delta_{a+b, n-1} (0-based)
CycMat eta_classical(int n);

// ---------------------------------------------------------------------------
// Formal reduction: G = E^{-1} F(s) s^Lambda exp(sU), F = 1 + F_1/s + ...

struct FormalSolution {
    int n = 0;
    LaurentC lambda;          // s_1(z) + (n - 1)/2
    std::vector<Cyclo> u;     // diagonal of U
    std::vector<LCMat> F;     // F_0 = 1, ..., F_N; entries polynomial in z
};
FormalSolution formal_reduce(int n, int N);
// F' + F Lambda / s + F U - (E B E^{-1}) F, keeping only the powers s^0 .. s^{-order}
// of the truncated series (identically zero when the recursion is right)
LCMat gauge_residual(const FormalSolution& fs, int order);

// Res_{s=0} E H(s^n)^{-1} K_j(s^n, z) H(s^n) E^{-1}, j = 1..n (the x-basis qKZ operator)
LCMat qkz_normal_form(int j, int n);

// numeric normalization C(z) = (2 pi)^{(n-1)/2} e^{-pi i (n-1)/2} diag(e^{m pi i/n} (zeta_n^m)^{s_1 + (n-1)/2})
CMat stokes_normalization(const NumericContext& ctx);
// the normalization realized by the Q-tilde solutions: C(z) diag(e^{-m pi i/n})
CMat stokes_normalization_realized(const NumericContext& ctx);

// ---------------------------------------------------------------------------
// Stokes sectors, bases and matrices

enum class SectorKind { Vprime, Vdprime };

struct SectorId {
    SectorKind kind = SectorKind::Vprime;
    int k = 0;
    bool operator==(const SectorId& o) const { return kind == o.kind && k == o.k; }
    std::string str() const;  // "vp:k" or "vpp:k"
};
SectorId parse_sector(const std::string& s);

// open interval of phi (s = |s| e^{-2 pi i phi})
std::pair<double, double> sector_bounds(int n, const SectorId& v);
// e^{pi i} V: phi decreases by 1/2
SectorId rotate_half(int n, const SectorId& v);
// the half-turn braid: n alternating factors delta_odd/delta_even, the rightmost
// being delta_odd for V' and delta_even for V''
BraidWord half_turn_braid(int n, SectorKind kind);
// the Q-tilde basis with eigen tags
ExBasis stokes_basis(const KRing& R, const SectorId& v);
// tags m sorted by increasing Re(u_m s) on the middle ray of V intersected with e^{pi i}V
std::vector<int> lexicographic_order(int n, const SectorId& v);

struct StokesData {
    SectorId sector;
    std::vector<int> order;     // lexicographic order of the tags
    ExBasis eps, eps1, eps2;    // Stokes bases on V, e^{pi i}V, e^{2 pi i}V, in lexicographic order
    LMat S1, S2;                // Y1 = Y S1, Y2 = Y1 S2
    LMat gram;                  // Gram matrix of eps in exceptional (reversed lexicographic) order
};
// throws std::runtime_error when the braid images disagree with the rotated-sector
// bases or the lexicographic order fails to triangularize S1, S2
StokesData stokes_matrices(const KRing& R, const SectorId& v);
// coordinates of f in an exceptional basis (columns of the result when applied to a list)
std::vector<LaurentQ> basis_coordinates(const KRing& R, const ExBasis& e, const KClass& f);

LMat antidiagonal_J(const KRing& R);

struct GramStokesReport {
    bool s1_upper = false, s2_lower = false;
    bool s1_is_gram_dual = false;   // S1 = J (G^dagger)^{-1} J
    bool s2_is_gram = false;        // S2 = J G J
    bool s2_is_dagger_inverse = false;
    bool dioph2 = false;            // det(L - S^dagger S^{-1}) identity
    bool monodromy = false;         // det(L - (-1)^{n-1} s_n (S1 S2)^{-1}) = prod (L - Z_j^n)
    bool ok() const { return s1_upper && s2_lower && s1_is_gram_dual && s2_is_gram && s2_is_dagger_inverse && dioph2 && monodromy; }
};
GramStokesReport gram_stokes_check(const KRing& R, const StokesData& sd);
inline GramStokesReport gram_stokes_check(const KRing& R, const SectorId& v) {
    return gram_stokes_check(R, stokes_matrices(R, v));
}
// det(L - S^dagger S^{-1}) - sum_j (-1)^j L^{n-j} s_j(w), w_i = (-1)^{n+1} Z_i^n / s_n
LaurentQ dioph2_residual(const KRing& R, const LMat& S1);
// det(L - (-1)^{n-1} s_n (S1 S2)^{-1}) - prod_j (L - Z_j^n): the monodromy s -> e^{2 pi i}s
LaurentQ monodromy_residual(const KRing& R, const LMat& S1, const LMat& S2);

// Z_a = exp(2 pi i z_a)
CMat specialize(const LMat& M, const NumericContext& ctx);
// Z_a -> zeta_n^{a} (a = 0..n-1), exactly
CycMat specialize_roots_of_unity(const LMat& M);
// Z_a -> 1
Mat<Rational> specialize_nonequivariant(const LMat& M);

// loose numeric consistency of the tags with the asymptotics: on rays inside V,
// the x^0-coordinate of the dominant Stokes solution divided by its leading term
struct StokesAsymptoticSample {
    double phi = 0.0;
    int tag = 0;
    cplx ratio;           // with the realized normalization
    cplx ratio_printed;   // with C(z) as printed
};
std::vector<StokesAsymptoticSample> stokes_asymptotic_check(const KRing& R, const SectorId& v, const NumericContext& ctx,
                                                            double abs_s, int N = 0);

// ---------------------------------------------------------------------------
// Roots of unity

// z_o = (0, 1/n, ..., (n-1)/n)
std::vector<Rational> z_o(int n);
// s_k(z_o) computed from the Stirling numbers: [n, n-k] / n^k
Rational zo_elementary_stirling(int n, int k);
// coefficients (in theta_s^j, j = 0..n) of the scalar qDE symbol prod_j(theta_q - z_j)
// at z = z_o, with theta_q = theta_s / n, computed from zo_elementary_stirling
std::vector<Rational> zo_operator_coeffs(int n);
// coefficients of s^n d^n/ds^n = sum_j (-1)^{n-j} [n, j] theta^j, divided by n^n
std::vector<Rational> scaled_derivative_coeffs(int n);

// g_m(s) = sum_k (n s)^{m + kn} / (m + kn)!
cplx g_function(int m, int n, cplx s);

struct RootsOfUnityReport {
    bool stirling_collapse = false;  // operator at z_o equals n^{-n} s^n d^n/ds^n
    double g_eigen_dev = 0.0;        // max |g_m(zeta s) - zeta^m g_m(s)|, relative
    double g_partition_dev = 0.0;    // |sum g_m - e^{ns}|, relative
    double g_ode_dev = 0.0;          // |g_m^{(n)} - n^n g_m|, relative (via g_m' = n g_{m-1})
    bool beilinson_orthonormal = false;
    bool stokes_trivial = false;     // S1 = S2 = 1 for all sectors |k| <= 2
    int monodromy_order = 0;         // at z_o
    int monodromy_order_shifted = 0; // at z_o + e_1
};
RootsOfUnityReport roots_of_unity_suite(int n);
// smallest p <= max_p with M^p = 1 (tolerance tol), 0 if none
int matrix_order(const CMat& M, int max_p, double tol = 1e-8);
// monodromy of the Levelt solution around q = 0
CMat levelt_monodromy(const NumericContext& ctx, int N = 30);

// ---------------------------------------------------------------------------
// The isomonodromic system at z = 0

struct DubrovinReport {
    CycMat V;                 // E mu E^{-1}, exact
    bool V_antisymmetric = false;
    bool V_is_offdiag_B1 = false;   // V = offdiagonal part of E B_1(0) E^{-1}
    double residual = 0.0;    // transported-solution mismatch, relative
};
// mu = diag(0, ..., n-1) - (n-1)/2
CycMat dubrovin_V(int n);
// integrates dT/ds = (B_0 + B_1(0)/s) T and dY/dl = (U + V/l) Y along l = r e^{i theta},
// r in [r0, r1], and compares Y with l^{-(n-1)/2} E T
DubrovinReport dubrovin_bridge(int n, double theta = 0.3, double r0 = 1.0, double r1 = 3.0);

}  // namespace kq
