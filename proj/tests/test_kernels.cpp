#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kqde/kernels.hpp"

#include <stdexcept>

using namespace kq;

namespace {

// throws on one designated sample
class Faulty : public SolutionEvaluator {
public:
    int n() const override { return 2; }
    CMat eval(cplx log_q) const override {
        if (log_q.imag() > 2.7 && log_q.imag() < 2.8) throw std::domain_error("bad sample");
        return CMat::Identity(2, 2) * std::exp(log_q);
    }
    CMat deriv(cplx) const override { return CMat::Zero(2, 2); }
};

}  // namespace

TEST_CASE("serial and OpenMP batches agree exactly") {
    NumericContext ctx{{0.13, 0.41, -0.27}};
    auto samples = circle_samples(0.3, 64);
    LeveltSolution lev(ctx, 30);
    TopologicalSolution top(ctx, 30);
    for (const SolutionEvaluator* Y : {static_cast<const SolutionEvaluator*>(&lev), static_cast<const SolutionEvaluator*>(&top)}) {
        auto a = evaluate_batch(*Y, samples, Exec::serial);
        auto b = evaluate_batch(*Y, samples, Exec::openmp);
        REQUIRE(a.size() == samples.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == b[i]);
            // the serial reference is the plain evaluation
            CHECK(a[i] == Y->eval(samples[i]));
        }
        auto ra = residual_batch(*Y, ctx, samples, Exec::serial);
        auto rb = residual_batch(*Y, ctx, samples, Exec::openmp);
        CHECK(ra == rb);
        for (double r : ra) CHECK(r < 1e-9);
    }
    auto psi = psi_J_series(1, ctx, 40);
    auto pa = evaluate_series_batch(psi, samples, Exec::serial);
    auto pb = evaluate_series_batch(psi, samples, Exec::openmp);
    for (size_t i = 0; i < pa.size(); ++i) CHECK(pa[i] == pb[i]);
}

TEST_CASE("errors inside the parallel loop propagate") {
    Faulty f;
    auto samples = circle_samples(0.5, 8);
    CHECK_THROWS_AS(evaluate_batch(f, samples, Exec::serial), std::domain_error);
    CHECK_THROWS_AS(evaluate_batch(f, samples, Exec::openmp), std::domain_error);
    CHECK_THROWS_AS(circle_samples(-1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(circle_samples(1.0, 0), std::invalid_argument);
    CHECK(openmp_threads() >= 1);
}
