#include "gtmcmc/mutate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "gtmcmc/parallel.hpp"

namespace gtmcmc {

double TemperedTarget::log_target(const CachedLogs& c) const {
    if (std::isinf(c.log_prior) || std::isinf(c.log_like)) return neg_inf;
    if (beta < 1.0 && std::isinf(c.log_importance)) return neg_inf;
    double lt = beta * (c.log_prior + c.log_like);
    if (beta < 1.0) lt += (1.0 - beta) * c.log_importance;
    return lt;
}

CachedLogs TemperedTarget::evaluate(const Point& x) const {
    CachedLogs c;
    c.log_prior = problem->prior(x);
    if (std::isinf(c.log_prior)) {
        c.log_like = neg_inf;
        c.log_importance = neg_inf;
        return c;
    }
    c.log_like = problem->log_likelihood(x);
    c.log_importance = problem->importance.base(x);
    return c;
}

std::vector<std::size_t> resample_multinomial(const std::vector<double>& w,
                                              std::size_t n, RandomStream& rng) {
    std::vector<double> cum(w.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        cum[i] = acc;
    }
    cum.back() = 1.0;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.uniform01();
        idx[i] = static_cast<std::size_t>(
            std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    }
    return idx;
}

ChainResult mh_chain(const Point& start, const CachedLogs& start_logs,
                     const TemperedTarget& target, const CholeskyFactor& proposal_chol,
                     std::size_t steps, RandomStream& rng) {
    if (steps < 1) throw ConfigError("mh_chain: chain length must be at least 1");
    ChainResult r{start, start_logs, 0};
    double log_cur = target.log_target(r.logs);
    Point z(start.size());
    for (std::size_t i = 0; i < steps; ++i) {
        for (Eigen::Index k = 0; k < z.size(); ++k) z[k] = rng.normal();
        Point proposal = r.point + proposal_chol.lower() * z;
        CachedLogs plogs = target.evaluate(proposal);
        double log_prop = target.log_target(plogs);
        if (std::isinf(log_prop)) continue; // rejected; no uniform consumed
        double u = rng.uniform01();
        if (std::log(u) < log_prop - log_cur) {
            r.point = std::move(proposal);
            r.logs = plogs;
            log_cur = log_prop;
            ++r.accepted;
        }
    }
    return r;
}

ProposalState adapt_gamma(ProposalState ps, double observed_acceptance) {
    double factor = std::exp(ps.feedback_gain * (observed_acceptance - ps.target_acceptance));
    ps.gamma_sq = std::clamp(ps.gamma_sq * factor, ps.gamma_sq_min, ps.gamma_sq_max);
    return ps;
}

CholeskyFactor regularize_cov(const Matrix& m, int dim) {
    try {
        return CholeskyFactor(m);
    } catch (const DegenerateCovariance&) {
    }
    double eps = std::max(1e-12, 1e-10 * m.trace() / static_cast<double>(dim));
    Matrix eye = Matrix::Identity(dim, dim);
    for (int attempt = 0; attempt < 40; ++attempt, eps *= 2.0) {
        try {
            return CholeskyFactor(m + eps * eye);
        } catch (const DegenerateCovariance&) {
        }
    }
    throw DegenerateCovariance("regularize_cov: matrix still singular after jitter retries");
}

MutateResult mutate_stage(const Ensemble& e, const std::vector<double>& w,
                          const TemperedTarget& target, const ProposalState& ps,
                          std::size_t chain_steps, RandomStream& rng,
                          std::uint64_t stage_tag, int workers, bool adapt) {
    if (chain_steps < 1) throw ConfigError("mutate_stage: chain length must be at least 1");
    const std::size_t n = e.size();
    if (w.size() != n) throw ConfigError("mutate_stage: weight/ensemble size mismatch");

    Matrix base_cov = weighted_cov(e, w);
    CholeskyFactor proposal_chol = regularize_cov(ps.gamma_sq * base_cov, e.dim());

    std::vector<std::size_t> idx = resample_multinomial(w, n, rng);

    MutateResult out;
    out.ensemble.points.resize(n);
    out.ensemble.logs.resize(n);
    std::vector<std::size_t> accepted(n, 0);
    parallel_for(n, workers, [&](std::size_t l) {
        RandomStream chain_rng = rng.substream(stage_tag, l);
        ChainResult r = mh_chain(e.points[idx[l]], e.logs[idx[l]], target,
                                 proposal_chol, chain_steps, chain_rng);
        out.ensemble.points[l] = std::move(r.point);
        out.ensemble.logs[l] = r.logs;
        accepted[l] = r.accepted;
    });

    std::size_t total_accepted = 0;
    for (std::size_t a : accepted) total_accepted += a;
    out.acceptance_rate = static_cast<double>(total_accepted) /
                          static_cast<double>(n * chain_steps);
    out.proposal = adapt ? adapt_gamma(ps, out.acceptance_rate) : ps;
    return out;
}

} // namespace gtmcmc
