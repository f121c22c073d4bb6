#include "gtmcmc/sampler.hpp"

#include <cmath>

namespace gtmcmc {

RunResult run_gtmcmc(const ProblemSpec& p, const SamplerConfig& cfg) {
    if (cfg.n < 2) throw ConfigError("run_gtmcmc: n must be at least 2");
    if (cfg.chain_steps < 1) throw ConfigError("run_gtmcmc: chain length must be at least 1");
    if (!(cfg.target_cov > 0.0)) throw ConfigError("run_gtmcmc: target_cov must be positive");

    RandomStream rng(cfg.seed);
    p.validate(rng);

    RunResult result;
    result.final_ensemble = initial_ensemble(p, cfg.n, rng, cfg.workers);
    result.total_density_evaluations = cfg.n;

    ScheduleConfig sched{cfg.target_cov, cfg.bisection_tol, 200};
    EvidenceAccumulator evidence;
    ProposalState ps;
    ps.gamma_sq = cfg.gamma_sq_init;
    ps.feedback_gain = cfg.feedback_gain;

    double beta = 0.0;
    std::size_t stage = 0;
    while (beta < 1.0) {
        if (stage >= cfg.max_stages)
            throw MaxStagesExceeded("run_gtmcmc: stage cap exceeded", result.stage_records);
        ++stage;

        auto wrap = [&result](SamplerError& err) {
            err.stage_trace = result.stage_records;
        };
        try {
            auto [beta_next, lw] = next_beta(result.final_ensemble, beta, sched);
            double log_s = stage_evidence(lw);
            evidence.add(log_s);
            std::vector<double> w = normalized_weights(lw);

            StageRecord rec;
            rec.stage_index = static_cast<int>(stage);
            rec.beta = beta_next;
            rec.achieved_cov = cov_of_weights(lw);
            rec.log_stage_evidence = log_s;
            rec.ess = effective_sample_size(w);
            rec.gamma_sq = ps.gamma_sq;

            TemperedTarget target{beta_next, &p};
            MutateResult mr = mutate_stage(result.final_ensemble, w, target, ps,
                                           cfg.chain_steps, rng, stage, cfg.workers,
                                           cfg.adapt);
            result.total_density_evaluations += cfg.n * cfg.chain_steps;
            rec.acceptance_rate = mr.acceptance_rate;
            result.stage_records.push_back(rec);

            result.final_ensemble = std::move(mr.ensemble);
            ps = mr.proposal;
            beta = beta_next;
        } catch (SamplerError& err) {
            wrap(err);
            throw;
        }
    }
    result.log_evidence = total_log_evidence(evidence);
    return result;
}

RunResult run_tmcmc(const SampleableDensity& prior, const LogDensity& log_likelihood,
                    const SamplerConfig& cfg) {
    ProblemSpec p;
    p.dim = prior.base.dim;
    p.prior = prior.base;
    p.log_likelihood = log_likelihood;
    p.importance = prior;
    return run_gtmcmc(p, cfg);
}

SampleableDensity fit_gaussian_importance(const Ensemble& e, double inflation) {
    if (inflation < 1.0) throw ConfigError("fit_gaussian_importance: inflation must be >= 1");
    if (e.size() < static_cast<std::size_t>(e.dim() + 2))
        throw ConfigError("fit_gaussian_importance: need n >= dim + 2 samples");
    std::vector<double> w(e.size(), 1.0 / static_cast<double>(e.size()));
    Point mean = weighted_mean(e, w);
    Matrix cov = weighted_cov(e, w) * (inflation * inflation);
    CholeskyFactor chol = regularize_cov(cov, e.dim());
    Matrix repaired = chol.lower() * chol.lower().transpose();
    return make_gaussian_full(mean, repaired);
}

SequenceResult run_sequence(const std::vector<ChainedProblem>& problems,
                            const SamplerConfig& cfg, double inflation) {
    if (problems.empty()) throw ConfigError("run_sequence: empty problem list");
    if (!problems.front().sampleable_prior)
        throw ConfigError("run_sequence: first problem needs a sampleable prior");

    SequenceResult out;
    SampleableDensity importance = *problems.front().sampleable_prior;
    for (std::size_t i = 0; i < problems.size(); ++i) {
        ProblemSpec p;
        p.dim = problems[i].prior.dim;
        p.prior = problems[i].prior;
        p.log_likelihood = problems[i].log_likelihood;
        p.importance = importance;

        SamplerConfig run_cfg = cfg;
        // first entry runs with the base seed so a single-problem sequence
        // is identical to a plain run
        if (i > 0) run_cfg.seed = RandomStream(cfg.seed).substream(0x736571ULL, i).key();
        try {
            out.runs.push_back(run_gtmcmc(p, run_cfg));
        } catch (const std::exception& ex) {
            out.completed = false;
            out.failure = ex.what();
            return out;
        }
        if (i + 1 < problems.size())
            importance = fit_gaussian_importance(out.runs.back().final_ensemble, inflation);
    }
    return out;
}

std::uint64_t replicate_seed(std::uint64_t base_seed, std::size_t replicate_index) {
    return RandomStream(base_seed).substream(0x726570ULL, replicate_index).key();
}

ReplicateSummary run_replicates(const ProblemSpec& p, const SamplerConfig& cfg,
                                std::size_t replicates, const ReplicateTruth& truth) {
    if (replicates < 2) throw ConfigError("run_replicates: need at least 2 replicates");

    ReplicateSummary out;
    for (std::size_t r = 0; r < replicates; ++r) {
        SamplerConfig run_cfg = cfg;
        run_cfg.seed = replicate_seed(cfg.seed, r);
        out.seeds.push_back(run_cfg.seed);
        try {
            RunResult res = run_gtmcmc(p, run_cfg);
            out.stage_counts.push_back(res.stages());
            out.log_evidences.push_back(res.log_evidence);
            std::vector<double> w(res.final_ensemble.size(),
                                  1.0 / static_cast<double>(res.final_ensemble.size()));
            out.posterior_means.push_back(weighted_mean(res.final_ensemble, w));
            ++out.completed;
        } catch (const SamplerError&) {
            ++out.failed;
        }
    }
    if (out.completed == 0)
        throw SamplerError("run_replicates: every replicate failed");

    double s = 0.0;
    for (std::size_t c : out.stage_counts) s += static_cast<double>(c);
    out.mean_stage_count = s / static_cast<double>(out.completed);

    if (truth.posterior_mean) {
        double se = 0.0;
        std::size_t terms = 0;
        for (const Point& m : out.posterior_means) {
            Point d = m - *truth.posterior_mean;
            se += d.squaredNorm();
            terms += static_cast<std::size_t>(d.size());
        }
        out.mean_rmse = std::sqrt(se / static_cast<double>(terms));
    }
    if (truth.log_evidence) {
        double z_true = std::exp(*truth.log_evidence);
        double se = 0.0;
        for (double lz : out.log_evidences) {
            double d = std::exp(lz) - z_true;
            se += d * d;
        }
        out.evidence_nrmse =
            std::sqrt(se / static_cast<double>(out.log_evidences.size())) / z_true;
    }
    return out;
}

} // namespace gtmcmc
