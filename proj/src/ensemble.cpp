#include "gtmcmc/ensemble.hpp"

#include <algorithm>
#include <cmath>

#include "gtmcmc/parallel.hpp"

namespace gtmcmc {

Ensemble initial_ensemble(const ProblemSpec& p, std::size_t n, RandomStream& rng, int workers) {
    if (n < 2) throw ConfigError("ensemble size must be at least 2");
    Ensemble e;
    e.points.resize(n);
    e.logs.resize(n);
    for (std::size_t i = 0; i < n; ++i) e.points[i] = p.importance.draw(rng);
    parallel_for(n, workers, [&](std::size_t i) {
        const Point& x = e.points[i];
        e.logs[i] = {p.prior(x), p.log_likelihood(x), p.importance.base(x)};
    });
    return e;
}

LogWeights log_weights(const Ensemble& e, double beta_k, double beta_next) {
    if (!(beta_next > beta_k)) throw ConfigError("log_weights: beta_next must exceed beta_k");
    double db = beta_next - beta_k;
    LogWeights lw;
    lw.values.resize(e.size());
    bool any_finite = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const auto& c = e.logs[i];
        if (std::isinf(c.log_prior) || std::isinf(c.log_like)) {
            lw.values[i] = neg_inf;
        } else {
            lw.values[i] = db * (c.log_prior + c.log_like - c.log_importance);
            any_finite = true;
        }
    }
    if (!any_finite)
        throw AllWeightsZero("log_weights: ensemble has left the posterior support entirely");
    return lw;
}

double cov_of_weights(const LogWeights& lw) {
    double shift = neg_inf;
    for (double v : lw.values) shift = std::max(shift, v);
    double s1 = 0.0, s2 = 0.0;
    for (double v : lw.values) {
        if (std::isinf(v)) continue;
        double w = std::exp(v - shift);
        s1 += w;
        s2 += w * w;
    }
    double n = static_cast<double>(lw.values.size());
    double radicand = n * s2 / (s1 * s1) - 1.0;
    return std::sqrt(std::max(radicand, 0.0));
}

double log_mean_exp(const LogWeights& lw) {
    double shift = neg_inf;
    for (double v : lw.values) shift = std::max(shift, v);
    double s = 0.0;
    for (double v : lw.values)
        if (!std::isinf(v)) s += std::exp(v - shift);
    return shift + std::log(s / static_cast<double>(lw.values.size()));
}

std::vector<double> normalized_weights(const LogWeights& lw) {
    double shift = neg_inf;
    for (double v : lw.values) shift = std::max(shift, v);
    std::vector<double> w(lw.values.size());
    double total = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::isinf(lw.values[i]) ? 0.0 : std::exp(lw.values[i] - shift);
        total += w[i];
    }
    for (double& x : w) x /= total;
    return w;
}

Point weighted_mean(const Ensemble& e, const std::vector<double>& w) {
    Point m = Point::Zero(e.dim());
    for (std::size_t i = 0; i < e.size(); ++i) m += w[i] * e.points[i];
    return m;
}

Matrix weighted_cov(const Ensemble& e, const std::vector<double>& w) {
    Point m = weighted_mean(e, w);
    Matrix cov = Matrix::Zero(e.dim(), e.dim());
    for (std::size_t i = 0; i < e.size(); ++i) {
        Point d = e.points[i] - m;
        cov += w[i] * (d * d.transpose());
    }
    // symmetrize round-off
    return 0.5 * (cov + cov.transpose());
}

double effective_sample_size(const std::vector<double>& w) {
    double s = 0.0;
    for (double x : w) s += x * x;
    return 1.0 / s;
}

} // namespace gtmcmc
