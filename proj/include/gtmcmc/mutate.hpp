#pragma once

#include <cstddef>
#include <vector>

#include "gtmcmc/ensemble.hpp"

namespace gtmcmc {

/// Feedback-adapted scale for the MH proposal covariance gamma^2 * base_cov.
struct ProposalState {
    double gamma_sq = 0.04;
    double target_acceptance = 0.234;
    double feedback_gain = 2.0;
    double gamma_sq_min = 1e-8;
    double gamma_sq_max = 1e2;
};

/// Stage target p_beta propto (prior * likelihood)^beta * importance^(1-beta),
/// evaluated from cached logs with -inf propagation.
struct TemperedTarget {
    double beta = 1.0;
    const ProblemSpec* problem = nullptr;

    double log_target(const CachedLogs& c) const;

    /// Evaluate all three densities at x and the tempered target from them.
    CachedLogs evaluate(const Point& x) const;
};

/// i.i.d. categorical draws with probabilities w; expected multiplicity of
/// index i is n * w_i.
std::vector<std::size_t> resample_multinomial(const std::vector<double>& w,
                                              std::size_t n, RandomStream& rng);

struct ChainResult {
    Point point;
    CachedLogs logs;
    std::size_t accepted = 0;
};

/// N Metropolis-Hastings steps with symmetric Gaussian proposal. Proposals
/// with -inf target are rejected without drawing the accept uniform; every
/// proposal consumes exactly one multivariate normal draw. This stream
/// contract defines bit-reproducibility.
ChainResult mh_chain(const Point& start, const CachedLogs& start_logs,
                     const TemperedTarget& target, const CholeskyFactor& proposal_chol,
                     std::size_t steps, RandomStream& rng);

/// gamma^2 <- clamp(gamma^2 * exp(gain * (observed - target)), bounds).
/// Fixed point exactly at the target acceptance rate.
ProposalState adapt_gamma(ProposalState ps, double observed_acceptance);

/// Jittered Cholesky repair: adds eps*I and doubles eps (up to 40 times)
/// until the matrix factors. Throws DegenerateCovariance when it never does.
CholeskyFactor regularize_cov(const Matrix& m, int dim);

struct MutateResult {
    Ensemble ensemble;
    double acceptance_rate = 0.0;
    ProposalState proposal;
};

/// One SIR + mutation pass: resample indices, run n independent MH chains of
/// length N with proposal covariance gamma^2 * base_cov (regularized), pool
/// the acceptance rate, and adapt gamma^2 once. Chain l draws from the
/// substream (rng key, stage tag, l), so output is invariant to worker count.
MutateResult mutate_stage(const Ensemble& e, const std::vector<double>& w,
                          const TemperedTarget& target, const ProposalState& ps,
                          std::size_t chain_steps, RandomStream& rng,
                          std::uint64_t stage_tag, int workers = 1, bool adapt = true);

} // namespace gtmcmc
