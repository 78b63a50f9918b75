#include "kqde/hypergeom.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kq {

namespace {

constexpr double pi = std::numbers::pi;
const cplx I1(0.0, 1.0);

double sign_pow(int e) { return e % 2 ? -1.0 : 1.0; }

}  // namespace

ResidueSeries residue_series(const NumericContext& ctx, int N) {
    ctx.require_omega();
    if (N < 0) throw std::invalid_argument("truncation order must be non-negative");
    int n = ctx.n();
    ResidueSeries S{ctx, {}};
    cplx front = std::exp(I1 * pi * ctx.sum_z());
    for (int J = 0; J < n; ++J) {
        const cplx zJ = ctx.z[J];
        // -Res_{t = z_J + r} of Gamma(z_J - t) is (-1)^r / r!; the factor (e^{-pi i n})^r
        // adds (-1)^{nr}; Gamma(z_a - z_J - r) follows from the r = 0 value by recursion
        cplx g = front * std::exp(-I1 * pi * double(n) * zJ);
        for (int a = 0; a < n; ++a)
            if (a != J) g *= gamma_fn(ctx.z[a] - zJ);
        std::vector<CVec> terms;
        for (int r = 0; r <= N; ++r) {
            if (r > 0) {
                cplx den = double(r);
                for (int a = 0; a < n; ++a)
                    if (a != J) den *= ctx.z[a] - zJ - double(r);
                g *= sign_pow(n + 1) / den;
            }
            CVec c(n);
            for (int I = 0; I < n; ++I) {
                cplx w = 1.0;  // W(t)|_I at t = z_J + r
                for (int a = 0; a < n; ++a)
                    if (a != I) w *= ctx.z[a] - zJ - double(r);
                c(I) = g * w;
            }
            terms.push_back(c);
        }
        S.coeffs.push_back(std::move(terms));
    }
    return S;
}

CohClass SolutionSeries::eval(cplx log_q) const {
    int n = this->n();
    cplx q = std::exp(log_q);
    CVec acc = CVec::Zero(n);
    for (int J = 0; J < n; ++J) {
        if (weight[J] == 0.0) continue;
        const auto& c = data->coeffs[J];
        CVec h = c.back();
        for (int r = static_cast<int>(c.size()) - 2; r >= 0; --r) h = h * q + c[r];
        acc += weight[J] * std::exp(data->ctx.z[J] * log_q) * h;
    }
    CohClass out;
    out.r.assign(acc.data(), acc.data() + n);
    return out;
}

CohClass SolutionSeries::eval_deriv(cplx log_q) const {
    int n = this->n();
    cplx q = std::exp(log_q);
    CVec acc = CVec::Zero(n);
    for (int J = 0; J < n; ++J) {
        if (weight[J] == 0.0) continue;
        const auto& c = data->coeffs[J];
        const cplx zJ = data->ctx.z[J];
        int N = static_cast<int>(c.size()) - 1;
        CVec h = (zJ + double(N)) * c[N];
        for (int r = N - 1; r >= 0; --r) h = h * q + (zJ + double(r)) * c[r];
        acc += weight[J] * std::exp((zJ - 1.0) * log_q) * h;
    }
    CohClass out;
    out.r.assign(acc.data(), acc.data() + n);
    return out;
}

CVec SolutionSeries::eval_x(cplx log_q) const { return to_x_basis(data->ctx, eval(log_q)); }
CVec SolutionSeries::deriv_x(cplx log_q) const { return to_x_basis(data->ctx, eval_deriv(log_q)); }

double SolutionSeries::tail_estimate(double abs_q) const {
    double first = 0.0, last = 0.0;
    for (int J = 0; J < n(); ++J) {
        if (weight[J] == 0.0) continue;
        const auto& c = data->coeffs[J];
        first = std::max(first, std::abs(weight[J]) * c.front().norm());
        last = std::max(last, std::abs(weight[J]) * c.back().norm() * std::pow(abs_q, int(c.size()) - 1));
    }
    return first > 0.0 ? last / first : last;
}

SolutionSeries combine(const std::shared_ptr<const ResidueSeries>& data, std::vector<cplx> weight, std::string label) {
    if (static_cast<int>(weight.size()) != data->ctx.n()) throw std::invalid_argument("weight size must equal n");
    return SolutionSeries{std::move(label), std::move(weight), data};
}

SolutionSeries psi_J_series(int J, const NumericContext& ctx, int N) {
    if (J < 0 || J >= ctx.n()) throw std::out_of_range("fixed point index");
    auto data = std::make_shared<const ResidueSeries>(residue_series(ctx, N));
    std::vector<cplx> w(ctx.n(), 0.0);
    w[J] = 1.0;
    return combine(data, w, "Psi_" + std::to_string(J + 1));
}

cplx psi_J_leading(int J, const NumericContext& ctx) {
    int n = ctx.n();
    cplx v = std::exp(I1 * pi * (ctx.sum_z() - double(n) * ctx.z[J]));
    for (int a = 0; a < n; ++a)
        if (a != J) v *= gamma_fn(1.0 + ctx.z[a] - ctx.z[J]);
    return v;
}

std::vector<cplx> z_tilde(const NumericContext& ctx) {
    std::vector<cplx> zt;
    for (auto& z : ctx.z) zt.push_back(std::exp(2.0 * pi * I1 * z));
    return zt;
}

SolutionSeries psi_Q(const LaurentQ& Q, const NumericContext& ctx, int N) {
    int n = ctx.n();
    if (static_cast<int>(Q.vars()->size()) != n + 1)
        throw std::invalid_argument("Q must be a Laurent polynomial in Z1..Zn and X");
    auto zt = z_tilde(ctx);
    std::vector<cplx> w;
    for (int J = 0; J < n; ++J) {
        auto pt = zt;
        pt.push_back(zt[J]);
        w.push_back(Q.eval<cplx>(pt));
    }
    return combine(std::make_shared<const ResidueSeries>(residue_series(ctx, N)), w, "Psi_Q");
}

SolutionSeries psi_Q(const KRing& R, const KClass& F, const NumericContext& ctx, int N) {
    if (R.n() != ctx.n() || F.n != ctx.n()) throw std::invalid_argument("rank mismatch between class and parameters");
    auto zt = z_tilde(ctx);
    std::vector<cplx> w;
    for (int J = 0; J < ctx.n(); ++J) w.push_back(R.restrict_at(F, J).eval<cplx>(zt));
    return combine(std::make_shared<const ResidueSeries>(residue_series(ctx, N)), w, "Psi_F");
}

SolutionSeries psi_m(int m, const NumericContext& ctx, int N) {
    std::vector<cplx> w;
    for (auto& z : ctx.z) w.push_back(std::exp(2.0 * pi * I1 * double(m) * z));
    return combine(std::make_shared<const ResidueSeries>(residue_series(ctx, N)), w, "Psi^" + std::to_string(m));
}

CohClass contour_oracle(const ContourWeight& w, cplx log_q, const NumericContext& ctx, const ContourOptions& opt) {
    ctx.require_omega();
    int n = ctx.n();
    // z_a lies inside C(p) iff Re z_a > p + (Im z_a)^2
    double inside = 1e300;
    for (auto& z : ctx.z) inside = std::min(inside, z.real() - z.imag() * z.imag());
    double p = opt.p ? *opt.p : inside - 0.5;
    if (p >= inside) throw std::invalid_argument("contour parameter p leaves some z_a outside the parabola");

    cplx front = I1 * pi * ctx.sum_z();
    cplx slope = -I1 * pi * double(n) + log_q;
    auto log_phi = [&](double tau) {
        cplx t(p + tau * tau, tau);
        cplx l = front + t * slope;
        for (auto& z : ctx.z) l += log_gamma(z - t);
        return l;
    };
    // truncate where the master function is negligible against its peak
    double peak = -1e300;
    for (double tau = -3.0; tau <= 3.0; tau += 0.05) peak = std::max(peak, log_phi(tau).real());
    double T = 2.0;
    while (T < 64.0 && std::max(log_phi(T).real(), log_phi(-T).real()) > peak - 60.0) T *= 1.25;

    CohClass out;
    for (int I = 0; I < n; ++I) {
        auto f = [&](double tau) {
            cplx t(p + tau * tau, tau);
            cplx W = 1.0;
            for (int a = 0; a < n; ++a)
                if (a != I) W *= ctx.z[a] - t;
            return w(t) * std::exp(log_phi(tau)) * W * cplx(2.0 * tau, 1.0) / (2.0 * pi * I1);
        };
        double err = 0.0, l1 = 0.0;
        cplx v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, -T, T, 20, opt.tol, &err, &l1);
        if (!std::isfinite(err) || err > 1e3 * opt.tol * std::max(1.0, l1))
            throw std::runtime_error("contour quadrature did not converge");
        out.r.push_back(v);
    }
    return out;
}

CohClass contour_oracle(const LaurentQ& Q, cplx log_q, const NumericContext& ctx, const ContourOptions& opt) {
    int n = ctx.n();
    if (static_cast<int>(Q.vars()->size()) != n + 1)
        throw std::invalid_argument("Q must be a Laurent polynomial in Z1..Zn and X");
    auto zt = z_tilde(ctx);
    auto w = [Q, zt](cplx t) {
        auto pt = zt;
        pt.push_back(std::exp(2.0 * pi * I1 * t));
        return Q.eval<cplx>(pt);
    };
    return contour_oracle(w, log_q, ctx, opt);
}

ContourWeight lagrange_weight(int J, const NumericContext& ctx) {
    auto zt = z_tilde(ctx);
    return [zt, J](cplx t) {
        cplx X = std::exp(2.0 * pi * I1 * t), v = 1.0;
        for (int a = 0; a < static_cast<int>(zt.size()); ++a)
            if (a != J) v *= (X - zt[a]) / (zt[J] - zt[a]);
        return v;
    };
}

cplx asymptotic_ratio_unchecked(int m, double abs_s, double phi, const NumericContext& ctx, int N) {
    int n = ctx.n();
    if (abs_s <= 0.0) throw std::invalid_argument("|s| must be positive");
    if (N <= 0) N = 40 + static_cast<int>(std::ceil(4.0 * abs_s));
    BranchContext br{phi};
    cplx log_s = br.log_s(abs_s);
    auto psi = psi_m(m, ctx, N);
    // the leading class is the unit: compare the x-basis coefficient of 1
    cplx lead = psi.eval_x(br.log_q(abs_s, n))(0);

    cplx s = std::exp(log_s), zeta_m = std::exp(2.0 * pi * I1 * double(m) / double(n));
    cplx lam = ctx.sum_z() + 0.5 * double(n - 1);
    cplx log_base(std::log(abs_s), 2.0 * pi * double(m) / double(n) - pi - 2.0 * pi * phi);
    cplx log_pred = 0.5 * double(n - 1) * std::log(2.0 * pi) - 0.5 * std::log(double(n)) + I1 * pi * ctx.sum_z() +
                    lam * log_base + double(n) * s * zeta_m;
    return lead / std::exp(log_pred);
}

cplx asymptotic_ratio(int m, double abs_s, double phi, const NumericContext& ctx, int N) {
    int n = ctx.n();
    if (!(phi > double(m) / n - 1.0 && phi < double(m) / n))
        throw std::domain_error("phi outside the window (m/n - 1, m/n)");
    return asymptotic_ratio_unchecked(m, abs_s, phi, ctx, N);
}

QHypSolution::QHypSolution(std::vector<SolutionSeries> cols) : cols_(std::move(cols)) {
    if (cols_.empty()) throw std::invalid_argument("empty solution");
}

CMat QHypSolution::eval(cplx log_q) const {
    int n = this->n();
    CMat Y(n, n);
    for (int j = 0; j < n; ++j) Y.col(j) = cols_[j].eval_x(log_q);
    return Y;
}

CMat QHypSolution::deriv(cplx log_q) const {
    int n = this->n();
    CMat Y(n, n);
    for (int j = 0; j < n; ++j) Y.col(j) = cols_[j].deriv_x(log_q);
    return Y;
}

QHypSolution psi_J_solution(const NumericContext& ctx, int N) {
    auto data = std::make_shared<const ResidueSeries>(residue_series(ctx, N));
    std::vector<SolutionSeries> cols;
    for (int J = 0; J < ctx.n(); ++J) {
        std::vector<cplx> w(ctx.n(), 0.0);
        w[J] = 1.0;
        cols.push_back(combine(data, w, "Psi_" + std::to_string(J + 1)));
    }
    return QHypSolution(std::move(cols));
}

QHypSolution psi_k_solution(int k, const NumericContext& ctx, int N) {
    int n = ctx.n();
    auto data = std::make_shared<const ResidueSeries>(residue_series(ctx, N));
    std::vector<SolutionSeries> cols;
    for (int m = 0; m < n; ++m) {
        int e = k + n - 1 - m;
        std::vector<cplx> w;
        for (auto& z : ctx.z) w.push_back(std::exp(2.0 * pi * I1 * double(e) * z));
        cols.push_back(combine(data, w, "Psi^" + std::to_string(e)));
    }
    return QHypSolution(std::move(cols));
}

CMat connection_matrix_tv(int k, const NumericContext& ctx) {
    int n = ctx.n();
    CMat V(n, n);
    for (int J = 0; J < n; ++J)
        for (int m = 0; m < n; ++m) V(J, m) = std::exp(2.0 * pi * I1 * double(k + n - 1 - m) * ctx.z[J]);
    return connection_matrix_C(ctx) * V;
}

BCheckReport b_theorem_check(int k, const NumericContext& ctx, int N, const std::vector<cplx>& log_q_samples) {
    if (log_q_samples.empty()) throw std::invalid_argument("at least one q sample is required");
    int n = ctx.n(), S = static_cast<int>(log_q_samples.size());
    TopologicalSolution top(ctx, N);
    auto qh = psi_k_solution(k, ctx, N);
    CMat A(n * S, n), B(n * S, n);
    for (int s = 0; s < S; ++s) {
        A.block(s * n, 0, n, n) = top.eval(log_q_samples[s]);
        B.block(s * n, 0, n, n) = qh.eval(log_q_samples[s]);
    }
    Eigen::BDCSVD<CMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    auto sv = svd.singularValues();
    BCheckReport rep;
    rep.condition = sv(0) / sv(sv.size() - 1);
    if (!std::isfinite(rep.condition) || rep.condition > 1e12)
        throw std::runtime_error("ill-conditioned least-squares system; spread the q samples");
    rep.recovered = svd.solve(B);
    rep.predicted = connection_matrix_tv(k, ctx);
    double scale = rep.predicted.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double den = std::abs(rep.predicted(i, j));
            if (den < 1e-12 * scale) den = scale;
            rep.max_rel_dev = std::max(rep.max_rel_dev, std::abs(rep.recovered(i, j) - rep.predicted(i, j)) / den);
        }
    return rep;
}

}  // namespace kq
