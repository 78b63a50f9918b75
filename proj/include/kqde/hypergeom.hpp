#pragma once
// q-hypergeometric solutions: the residue series Psi_J of the master function
// Phi(t) = e^{pi i sum z} (e^{-pi i n} q)^t prod_a Gamma(z_a - t) against the weight
// W(t)|_I = prod_{a != I}(z_a - t), the K-theoretic family Psi_Q, a contour
// integral oracle, large-s asymptotics and the numeric connection-matrix check.

#include "kqde/ktheory.hpp"
#include "kqde/qkz.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace kq {

// Residue data of all Psi_J at one z: Psi_J|_I = sum_r coeffs[J][r](I) q^{z_J + r}
struct ResidueSeries {
    NumericContext ctx;
    std::vector<std::vector<CVec>> coeffs;  // [J][r], restriction vectors
    int order() const { return static_cast<int>(coeffs.front().size()) - 1; }
};
ResidueSeries residue_series(const NumericContext& ctx, int N);

// A combination sum_J weight_J Psi_J, cohomology valued
struct SolutionSeries {
    std::string label;
    std::vector<cplx> weight;  // per J
    std::shared_ptr<const ResidueSeries> data;

    int n() const { return data->ctx.n(); }
    CohClass eval(cplx log_q) const;        // restrictions at the fixed points
    CohClass eval_deriv(cplx log_q) const;  // d/dq
    CVec eval_x(cplx log_q) const;          // x-basis coordinates
    CVec deriv_x(cplx log_q) const;
    // size of the last retained term at |q|, relative to the first
    double tail_estimate(double abs_q) const;
};

SolutionSeries psi_J_series(int J, const NumericContext& ctx, int N = 40);
// closed-form leading coefficient of Psi_J at pt_J: e^{pi i sum z} e^{-pi i n z_J} prod_{a != J} Gamma(1 + z_a - z_J)
cplx psi_J_leading(int J, const NumericContext& ctx);

// Zt_a = e^{2 pi i z_a}
std::vector<cplx> z_tilde(const NumericContext& ctx);
// Psi_Q = sum_J Q(Zt_J, Zt) Psi_J for Q a Laurent polynomial in (Z_1..Z_n, X)
SolutionSeries psi_Q(const LaurentQ& Q, const NumericContext& ctx, int N = 40);
// the same for a K-theory class: Q(Zt_J, Zt) is its restriction at pt_J evaluated at Zt
SolutionSeries psi_Q(const KRing& R, const KClass& F, const NumericContext& ctx, int N = 40);
// Psi^m = Psi_{X^m}
SolutionSeries psi_m(int m, const NumericContext& ctx, int N = 40);
// share one residue computation between several combinations
SolutionSeries combine(const std::shared_ptr<const ResidueSeries>& data, std::vector<cplx> weight, std::string label);

// (1/2 pi i) int_{C(p)} w(t) Phi(t) W(t) dt over the parabola C(p) = {p + tau^2 + i tau},
// by adaptive Gauss-Kronrod quadrature; p defaults to a value with every z_a inside.
struct ContourOptions {
    std::optional<double> p;
    double tol = 1e-12;
};
using ContourWeight = std::function<cplx(cplx t)>;
CohClass contour_oracle(const ContourWeight& w, cplx log_q, const NumericContext& ctx, const ContourOptions& opt = {});
CohClass contour_oracle(const LaurentQ& Q, cplx log_q, const NumericContext& ctx, const ContourOptions& opt = {});
// the weight that isolates Psi_J: Lagrange interpolation in e^{2 pi i t} at the Zt_a
ContourWeight lagrange_weight(int J, const NumericContext& ctx);

// Psi^m(s^n) divided by the predicted leading asymptotics
//   (2 pi)^{(n-1)/2}/sqrt(n) e^{pi i sum z} (e^{-i pi} zeta_n^m s)^{sum z + (n-1)/2} e^{n s zeta_n^m},
// with s = |s| e^{-2 pi i phi} and arg(e^{-i pi} zeta_n^m s) = 2 pi m/n - pi - 2 pi phi.
// Psi^m approaches this scalar times the unit class; the compared number is the
// x-basis coefficient of 1. The series is summed in double precision, so rays
// where e^{n s zeta_n^m} is much smaller than e^{n|s|} lose accuracy to cancellation.
// Throws std::domain_error when phi is outside (m/n - 1, m/n).
cplx asymptotic_ratio(int m, double abs_s, double phi, const NumericContext& ctx, int N = 0);
// the same without the window check, for negative controls
cplx asymptotic_ratio_unchecked(int m, double abs_s, double phi, const NumericContext& ctx, int N = 0);

// Y_qhyp with columns Psi^{k+n-1-m}, m = 0..n-1, x-basis, as a fundamental solution
class QHypSolution : public SolutionEvaluator {
public:
    QHypSolution(std::vector<SolutionSeries> cols);
    int n() const override { return static_cast<int>(cols_.size()); }
    CMat eval(cplx log_q) const override;
    CMat deriv(cplx log_q) const override;
    const std::vector<SolutionSeries>& columns() const { return cols_; }

private:
    std::vector<SolutionSeries> cols_;
};
QHypSolution psi_J_solution(const NumericContext& ctx, int N = 40);        // columns Psi_1..Psi_n
QHypSolution psi_k_solution(int k, const NumericContext& ctx, int N = 40);  // columns Psi^{k+n-1-m}

// C_{TV,k} = C V with V_{J,m} = e^{2 pi i (k+n-1-m) z_J}
CMat connection_matrix_tv(int k, const NumericContext& ctx);

struct BCheckReport {
    CMat recovered, predicted;
    // max over entries of |M - P| / |P|; entries with |P| below 1e-12 max|P| are
    // measured against max|P| instead
    double max_rel_dev = 0.0;
    double condition = 0.0;     // of the stacked least-squares system
};
// least-squares M from Y_qhyp(q) = Y_top(q) M over the samples (log q values)
BCheckReport b_theorem_check(int k, const NumericContext& ctx, int N, const std::vector<cplx>& log_q_samples);

}  // namespace kq
