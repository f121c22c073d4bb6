#include "gtmcmc/oracle.hpp"

#include <cmath>

namespace gtmcmc {
namespace oracle {

GaussianParams::GaussianParams(Point m, Matrix c) : mean(std::move(m)), cov(std::move(c)) {
    CholeskyFactor check(cov); // SPD verified on construction
    if (mean.size() != cov.rows()) throw ConfigError("GaussianParams: dimension mismatch");
}

namespace {

Matrix precision(const GaussianParams& g) {
    return g.cov.llt().solve(Matrix::Identity(g.dim(), g.dim()));
}

} // namespace

GaussianParams gaussian_tempered(double beta, const GaussianParams& prior,
                                 const GaussianParams& like, const GaussianParams& q) {
    if (!(beta >= 0.0 && beta <= 1.0))
        throw ConfigError("gaussian_tempered: beta must lie in [0, 1]");
    if (beta == 0.0) return q;
    Matrix lp = precision(prior), ll = precision(like), lq = precision(q);
    Matrix lam = beta * (lp + ll) + (1.0 - beta) * lq;
    Point rhs = beta * (lp * prior.mean + ll * like.mean) + (1.0 - beta) * (lq * q.mean);
    Eigen::LLT<Matrix> llt(lam);
    if (llt.info() != Eigen::Success)
        throw ConfigError("gaussian_tempered: combined precision not SPD");
    Point mean = llt.solve(rhs);
    Matrix cov = llt.solve(Matrix::Identity(lam.rows(), lam.cols()));
    return GaussianParams(std::move(mean), 0.5 * (cov + cov.transpose()));
}

double gaussian_kl(const GaussianParams& a, const GaussianParams& b) {
    if (a.dim() != b.dim()) throw ConfigError("gaussian_kl: dimension mismatch");
    double d = static_cast<double>(a.dim());
    CholeskyFactor cb(b.cov), ca(a.cov);
    Matrix binv_a = b.cov.llt().solve(a.cov);
    Point diff = b.mean - a.mean;
    return 0.5 * (binv_a.trace() + cb.quad_form(diff) - d + cb.log_det() - ca.log_det());
}

double gaussian_evidence(const GaussianParams& prior, const GaussianParams& like) {
    CholeskyFactor chol(prior.cov + like.cov);
    return log_gaussian_full(like.mean, prior.mean, chol);
}

MixtureEvidence mixture_evidence(const GaussianParams& prior,
                                 const std::vector<MixtureComponent>& components) {
    if (components.empty()) throw ConfigError("mixture_evidence: empty component list");
    MixtureEvidence out;
    std::vector<double> terms;
    Matrix lp = precision(prior);
    for (const auto& c : components) {
        GaussianParams comp_like(c.mean, c.cov);
        terms.push_back(std::log(c.weight) + gaussian_evidence(prior, comp_like));

        // per-component conjugate posterior
        Matrix lc = precision(comp_like);
        Matrix lam = lp + lc;
        Eigen::LLT<Matrix> llt(lam);
        Point mean = llt.solve(lp * prior.mean + lc * c.mean);
        Matrix cov = llt.solve(Matrix::Identity(lam.rows(), lam.cols()));
        out.posterior_components.emplace_back(std::move(mean), 0.5 * (cov + cov.transpose()));
    }
    double best = *std::max_element(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += std::exp(t - best);
    out.log_evidence = best + std::log(s);
    for (double t : terms) out.posterior_weights.push_back(std::exp(t - out.log_evidence));
    return out;
}

GridPosterior grid_posterior(const ProblemSpec& p, const Point& lo, const Point& hi,
                             int cells_per_dim) {
    int d = p.dim;
    if (d < 1 || d > 3) throw ConfigError("grid_posterior: dimension must be 1..3");
    if (cells_per_dim < 3) throw ConfigError("grid_posterior: need at least 3 cells per dim");

    std::size_t total = 1;
    for (int k = 0; k < d; ++k) total *= static_cast<std::size_t>(cells_per_dim);

    Point width = (hi - lo) / static_cast<double>(cells_per_dim);
    double cell_vol = width.prod();

    std::vector<double> logv(total);
    double shift = neg_inf;
    std::vector<int> ix(d);
    Point x(d);
    for (std::size_t cell = 0; cell < total; ++cell) {
        std::size_t rem = cell;
        for (int k = d - 1; k >= 0; --k) {
            ix[k] = static_cast<int>(rem % cells_per_dim);
            rem /= cells_per_dim;
        }
        for (int k = 0; k < d; ++k) x[k] = lo[k] + (ix[k] + 0.5) * width[k];
        double lp = p.prior(x);
        logv[cell] = std::isinf(lp) ? neg_inf : lp + p.log_likelihood(x);
        shift = std::max(shift, logv[cell]);
    }
    if (std::isinf(shift)) throw GridTooSmall("grid_posterior: grid carries zero mass");

    // compensated sums: total mass and boundary-cell mass
    double sum = 0.0, comp = 0.0;
    double boundary = 0.0;
    for (std::size_t cell = 0; cell < total; ++cell) {
        double v = std::isinf(logv[cell]) ? 0.0 : std::exp(logv[cell] - shift);
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        std::size_t rem = cell;
        bool on_boundary = false;
        for (int k = d - 1; k >= 0; --k) {
            int c = static_cast<int>(rem % cells_per_dim);
            rem /= cells_per_dim;
            if (c == 0 || c == cells_per_dim - 1) on_boundary = true;
        }
        if (on_boundary) boundary += v;
    }
    if (boundary / sum > 1e-9)
        throw GridTooSmall("grid_posterior: boundary cells carry non-negligible mass");

    GridPosterior out;
    out.log_evidence = shift + std::log(sum) + std::log(cell_vol);
    out.cells.assign(static_cast<std::size_t>(d), cells_per_dim);
    out.lo = lo;
    out.hi = hi;
    out.density.resize(total);
    for (std::size_t cell = 0; cell < total; ++cell)
        out.density[cell] = std::isinf(logv[cell]) ? 0.0 : std::exp(logv[cell] - shift) / sum;
    return out;
}

std::vector<double> kl_monotonicity_trace(const GaussianParams& prior,
                                          const GaussianParams& like,
                                          const GaussianParams& q,
                                          const std::vector<double>& betas) {
    GaussianParams posterior = gaussian_tempered(1.0, prior, like, q);
    std::vector<double> out;
    out.reserve(betas.size());
    for (double b : betas)
        out.push_back(gaussian_kl(posterior, gaussian_tempered(b, prior, like, q)));
    return out;
}

} // namespace oracle
} // namespace gtmcmc
