#include "kqde/kernels.hpp"

#include <numbers>
#include <stdexcept>

#include <omp.h>

namespace kq {

namespace {

// f(i) for i in [0, count), serially or with a static OpenMP schedule; results
// land in distinct slots so the two variants agree bit for bit
template <class T, class F>
std::vector<T> map_samples(int count, Exec exec, F f) {
    std::vector<T> out(static_cast<size_t>(count));
    if (exec == Exec::serial) {
        for (int i = 0; i < count; ++i) out[i] = f(i);
        return out;
    }
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (int i = 0; i < count; ++i) {
        try {
            out[i] = f(i);
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace

std::vector<CMat> evaluate_batch(const SolutionEvaluator& Y, const std::vector<cplx>& log_q, Exec exec) {
    return map_samples<CMat>(static_cast<int>(log_q.size()), exec, [&](int i) { return Y.eval(log_q[i]); });
}

std::vector<double> residual_batch(const SolutionEvaluator& Y, const NumericContext& ctx, const std::vector<cplx>& log_q,
                                   Exec exec) {
    return map_samples<double>(static_cast<int>(log_q.size()), exec,
                               [&](int i) { return ode_residual(Y, ctx, log_q[i]); });
}

std::vector<CVec> evaluate_series_batch(const SolutionSeries& psi, const std::vector<cplx>& log_q, Exec exec) {
    return map_samples<CVec>(static_cast<int>(log_q.size()), exec, [&](int i) { return CVec(psi.eval_x(log_q[i])); });
}

std::vector<cplx> circle_samples(double r, int count) {
    if (r <= 0.0 || count <= 0) throw std::invalid_argument("need a positive radius and sample count");
    std::vector<cplx> s;
    for (int i = 0; i < count; ++i)
        s.emplace_back(std::log(r), 2.0 * std::numbers::pi * (double(i) + 0.5) / double(count));
    return s;
}

int openmp_threads() { return omp_get_max_threads(); }

}  // namespace kq
