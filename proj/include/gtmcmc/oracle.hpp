#pragma once

#include <utility>
#include <vector>

#include "gtmcmc/density.hpp"

namespace gtmcmc {
namespace oracle {

struct GaussianParams {
    Point mean;
    Matrix cov;

    GaussianParams() = default;
    GaussianParams(Point m, Matrix c);

    int dim() const { return static_cast<int>(mean.size()); }
};

/// Closed-form tempered Gaussian: precision combines as
/// beta * (prior + likelihood precisions) + (1 - beta) * importance precision.
GaussianParams gaussian_tempered(double beta, const GaussianParams& prior,
                                 const GaussianParams& like, const GaussianParams& q);

double gaussian_kl(const GaussianParams& a, const GaussianParams& b);

/// log Z = log N(mu_like; mu_prior, Sigma_prior + Sigma_like).
double gaussian_evidence(const GaussianParams& prior, const GaussianParams& like);

struct MixtureEvidence {
    double log_evidence = 0.0;
    std::vector<double> posterior_weights;
    std::vector<GaussianParams> posterior_components;
};

MixtureEvidence mixture_evidence(const GaussianParams& prior,
                                 const std::vector<MixtureComponent>& components);

struct GridPosterior {
    std::vector<double> density; // normalized cell probabilities, row-major
    double log_evidence = 0.0;
    std::vector<int> cells;      // cells per dimension
    Point lo, hi;
};

/// Midpoint-rule brute-force posterior for dim <= 3. Errors with GridTooSmall
/// when boundary cells carry non-negligible mass.
GridPosterior grid_posterior(const ProblemSpec& p, const Point& lo, const Point& hi,
                             int cells_per_dim);

/// D_KL(posterior || p_beta) at each beta on the grid; Lemma-1 oracle.
std::vector<double> kl_monotonicity_trace(const GaussianParams& prior,
                                          const GaussianParams& like,
                                          const GaussianParams& q,
                                          const std::vector<double>& betas);

} // namespace oracle
} // namespace gtmcmc
