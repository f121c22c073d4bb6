#include "gtmcmc/schedule.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace gtmcmc {

std::pair<double, LogWeights> next_beta(const Ensemble& e, double beta_k,
                                        const ScheduleConfig& cfg) {
    if (!(beta_k >= 0.0 && beta_k < 1.0))
        throw ConfigError("next_beta: beta_k must lie in [0, 1)");
    if (!(cfg.target_cov > 0.0))
        throw ConfigError("next_beta: target_cov must be positive");

    LogWeights lw_full = log_weights(e, beta_k, 1.0);
    double cov_full = cov_of_weights(lw_full);
    if (cov_full <= cfg.target_cov) return {1.0, std::move(lw_full)};

    // cov is 0 at beta_k+ and exceeds the target at 1; Lemma 3 guarantees
    // monotonicity in between, so bisection brackets the root.
    double lo = beta_k, hi = 1.0;
    double cov_lo = 0.0, cov_hi = cov_full;
    for (int it = 0; it < cfg.max_bisection_iters && (hi - lo) > cfg.bisection_tol; ++it) {
        if (cov_lo > cov_hi + 1e-9)
            throw NonMonotoneCov("next_beta: weight CoV decreased across the bracket");
        double mid = 0.5 * (lo + hi);
        double cov_mid = cov_of_weights(log_weights(e, beta_k, mid));
        if (cov_mid < cfg.target_cov) {
            lo = mid;
            cov_lo = cov_mid;
        } else {
            hi = mid;
            cov_hi = cov_mid;
        }
    }
    double beta = 0.5 * (lo + hi);
    return {beta, log_weights(e, beta_k, beta)};
}

double stage_evidence(const LogWeights& lw) { return log_mean_exp(lw); }

double total_log_evidence(const EvidenceAccumulator& acc) {
    if (acc.log_terms.empty())
        throw std::logic_error("total_log_evidence: no stages recorded");
    return std::accumulate(acc.log_terms.begin(), acc.log_terms.end(), 0.0);
}

} // namespace gtmcmc
