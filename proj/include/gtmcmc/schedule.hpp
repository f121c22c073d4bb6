#pragma once

#include <utility>
#include <vector>

#include "gtmcmc/ensemble.hpp"

namespace gtmcmc {

struct ScheduleConfig {
    double target_cov = 0.2;
    double bisection_tol = 1e-10;
    int max_bisection_iters = 200;
};

/// Product-form evidence estimate S = prod S_j, kept in log space.
struct EvidenceAccumulator {
    std::vector<double> log_terms;

    void add(double log_s) { log_terms.push_back(log_s); }
};

/// Select the next tempering parameter by bisection on the weight CoV.
/// Returns beta = 1 when the target is unreachable (which also terminates
/// the run), otherwise the root of cov(beta) - target on (beta_k, 1].
/// The log-weights at the chosen beta are returned so the caller never
/// recomputes them. Deterministic: no randomness enters the schedule.
std::pair<double, LogWeights> next_beta(const Ensemble& e, double beta_k,
                                        const ScheduleConfig& cfg);

/// Per-stage evidence contribution, log of the mean weight.
double stage_evidence(const LogWeights& lw);

double total_log_evidence(const EvidenceAccumulator& acc);

} // namespace gtmcmc
