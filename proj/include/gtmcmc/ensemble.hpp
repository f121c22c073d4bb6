#pragma once

#include <vector>

#include "gtmcmc/density.hpp"

namespace gtmcmc {

/// Cached log values for one point: evaluated once, reused for every
/// weight computation and MH acceptance at later stages.
struct CachedLogs {
    double log_prior = 0.0;
    double log_like = 0.0;
    double log_importance = 0.0;
};

/// Immutable snapshot of n points with their cached density logs.
struct Ensemble {
    std::vector<Point> points;
    std::vector<CachedLogs> logs;

    std::size_t size() const { return points.size(); }
    int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
};

/// Draw n points from the problem's importance density and fill all caches.
/// Draws consume the orchestration stream sequentially; cache evaluation is
/// a pure per-point fill (parallelizable, order-independent).
Ensemble initial_ensemble(const ProblemSpec& p, std::size_t n, RandomStream& rng, int workers = 1);

struct LogWeights {
    std::vector<double> values; // -inf allowed; never all -inf
};

/// w_l = (beta_next - beta_k) * (log_prior + log_like - log_importance), in
/// log space. Throws AllWeightsZero when every point has left the support.
LogWeights log_weights(const Ensemble& e, double beta_k, double beta_next);

/// Population coefficient of variation of exp(weights), shift-invariant.
double cov_of_weights(const LogWeights& lw);

/// log[(1/n) sum exp(values)] via max-shift.
double log_mean_exp(const LogWeights& lw);

/// Probabilities proportional to exp(values); -inf entries map to exact 0.
std::vector<double> normalized_weights(const LogWeights& lw);

Point weighted_mean(const Ensemble& e, const std::vector<double>& w);

/// Unscaled sum w_l (x_l - mean)(x_l - mean)^T; the proposal scale gamma^2
/// is applied by the mutation step, not here.
Matrix weighted_cov(const Ensemble& e, const std::vector<double>& w);

double effective_sample_size(const std::vector<double>& w);

} // namespace gtmcmc
