#pragma once
// Batched evaluation of series solutions at many q-points: a serial reference
// and an OpenMP variant over the same immutable series data.

#include "kqde/hypergeom.hpp"
#include "kqde/qde.hpp"

#include <vector>

namespace kq {

enum class Exec { serial, openmp };

// Y(q_i) for every sample log q_i
std::vector<CMat> evaluate_batch(const SolutionEvaluator& Y, const std::vector<cplx>& log_q, Exec exec);
// ||dY/dq - A Y|| / ||Y|| for every sample
std::vector<double> residual_batch(const SolutionEvaluator& Y, const NumericContext& ctx, const std::vector<cplx>& log_q,
                                   Exec exec);
// x-coordinates of a residue-series solution for every sample
std::vector<CVec> evaluate_series_batch(const SolutionSeries& psi, const std::vector<cplx>& log_q, Exec exec);

// log q_i = log(r) + i theta_i on a circle, theta_i spread over [0, 2 pi)
std::vector<cplx> circle_samples(double r, int count);

int openmp_threads();

}  // namespace kq
