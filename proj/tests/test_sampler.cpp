#include <doctest.h>

#include <cmath>
#include <set>

#include "gtmcmc/problems.hpp"
#include "gtmcmc/sampler.hpp"

using namespace gtmcmc;
using problems::Gauss4d;

namespace {

SamplerConfig small_cfg(std::uint64_t seed, std::size_t n = 1000, double cov = 0.5) {
    SamplerConfig cfg;
    cfg.n = n;
    cfg.target_cov = cov;
    cfg.seed = seed;
    return cfg;
}

Point ensemble_mean(const Ensemble& e) {
    std::vector<double> w(e.size(), 1.0 / static_cast<double>(e.size()));
    return weighted_mean(e, w);
}

} // namespace

TEST_CASE("posterior importance finishes in one stage with the exact evidence") {
    ProblemSpec p = Gauss4d::spec(Gauss4d::posterior_importance());
    RunResult r = run_gtmcmc(p, small_cfg(1));
    CHECK(r.stages() == 1);
    CHECK(r.stage_records[0].beta == 1.0);
    CHECK(r.log_evidence == doctest::Approx(Gauss4d::log_evidence()).epsilon(1e-6));
    CHECK(r.total_density_evaluations == 1000 + 1000 * 1);
}

TEST_CASE("stage records are well formed and evidence terms telescope") {
    ProblemSpec p = Gauss4d::spec(Gauss4d::prior());
    SamplerConfig cfg = small_cfg(2, 1500, 1.0);
    RunResult r = run_gtmcmc(p, cfg);
    REQUIRE(r.stages() >= 2);
    double beta_prev = 0.0, log_z = 0.0;
    for (std::size_t k = 0; k < r.stages(); ++k) {
        const StageRecord& rec = r.stage_records[k];
        CHECK(rec.stage_index == static_cast<int>(k) + 1);
        CHECK(rec.beta > beta_prev);
        beta_prev = rec.beta;
        CHECK(rec.ess > 0.0);
        CHECK(rec.ess <= static_cast<double>(cfg.n) + 1e-9);
        CHECK(rec.acceptance_rate >= 0.0);
        CHECK(rec.acceptance_rate <= 1.0);
        CHECK(rec.gamma_sq >= 1e-8);
        CHECK(rec.gamma_sq <= 1e2);
        if (k + 1 < r.stages())
            CHECK(rec.achieved_cov == doctest::Approx(cfg.target_cov).epsilon(1e-4));
        log_z += rec.log_stage_evidence;
    }
    CHECK(r.stage_records.back().beta == 1.0);
    CHECK(log_z == doctest::Approx(r.log_evidence).epsilon(1e-12));
    CHECK(r.total_density_evaluations == cfg.n * (1 + r.stages() * cfg.chain_steps));
}

TEST_CASE("tmcmc is bit-identical to gtmcmc with the prior as importance") {
    for (std::uint64_t seed : {3u, 17u, 250u}) {
        SamplerConfig cfg = small_cfg(seed, 600, 1.0);
        RunResult a = run_tmcmc(Gauss4d::prior(), Gauss4d::likelihood(), cfg);
        RunResult b = run_gtmcmc(Gauss4d::spec(Gauss4d::prior()), cfg);
        REQUIRE(a.stages() == b.stages());
        CHECK(a.log_evidence == b.log_evidence);
        for (std::size_t i = 0; i < a.final_ensemble.size(); ++i)
            CHECK(a.final_ensemble.points[i] == b.final_ensemble.points[i]);
    }
}

TEST_CASE("runs are invariant to the worker count") {
    ProblemSpec p = Gauss4d::spec(Gauss4d::importance(3.0));
    SamplerConfig base = small_cfg(5, 500, 0.8);
    RunResult ref = run_gtmcmc(p, base);
    for (int workers : {2, 4, 8}) {
        SamplerConfig cfg = base;
        cfg.workers = workers;
        RunResult r = run_gtmcmc(p, cfg);
        REQUIRE(r.stages() == ref.stages());
        CHECK(r.log_evidence == ref.log_evidence);
        for (std::size_t i = 0; i < ref.final_ensemble.size(); ++i)
            CHECK(r.final_ensemble.points[i] == ref.final_ensemble.points[i]);
    }
}

TEST_CASE("posterior moments land on the conjugate answer") {
    ProblemSpec p = Gauss4d::spec(Gauss4d::prior());
    SamplerConfig cfg = small_cfg(7, 4000, 0.5);
    cfg.chain_steps = 3;
    RunResult r = run_gtmcmc(p, cfg);
    Point mean = ensemble_mean(r.final_ensemble);
    // per-dim standard error ~ sqrt(25/26/4000) ~ 0.0155; allow correlation slack
    for (int k = 0; k < 4; ++k) CHECK(std::abs(mean[k] - 1.0 / 26.0) < 0.08);

    std::vector<double> w(r.final_ensemble.size(), 1.0 / static_cast<double>(r.final_ensemble.size()));
    Matrix cov = weighted_cov(r.final_ensemble, w);
    for (int k = 0; k < 4; ++k) CHECK(cov(k, k) == doctest::Approx(25.0 / 26.0).epsilon(0.25));
    CHECK(std::abs(r.log_evidence - Gauss4d::log_evidence()) < 0.6);
}

TEST_CASE("stage cap failure carries the partial trace") {
    ProblemSpec p = Gauss4d::spec(Gauss4d::prior());
    SamplerConfig cfg = small_cfg(9, 400, 0.3);
    cfg.max_stages = 2;
    try {
        run_gtmcmc(p, cfg);
        FAIL("expected MaxStagesExceeded");
    } catch (const MaxStagesExceeded& ex) {
        CHECK(ex.stage_trace.size() == 2);
        CHECK(ex.stage_trace.back().beta < 1.0);
    }
}

TEST_CASE("invalid sampler configuration is rejected up front") {
    ProblemSpec p = Gauss4d::spec(Gauss4d::prior());
    SamplerConfig cfg = small_cfg(1);
    cfg.n = 1;
    CHECK_THROWS_AS(run_gtmcmc(p, cfg), ConfigError);
    cfg = small_cfg(1);
    cfg.chain_steps = 0;
    CHECK_THROWS_AS(run_gtmcmc(p, cfg), ConfigError);
    cfg = small_cfg(1);
    cfg.target_cov = 0.0;
    CHECK_THROWS_AS(run_gtmcmc(p, cfg), ConfigError);
}

TEST_CASE("fit_gaussian_importance matches inflated sample moments") {
    RandomStream rng(13);
    Ensemble e;
    for (int i = 0; i < 4000; ++i) {
        Point x(2);
        x << 2.0 + rng.normal(), -1.0 + 3.0 * rng.normal();
        e.points.push_back(x);
        e.logs.push_back({0, 0, 0});
    }
    SampleableDensity fit = fit_gaussian_importance(e, 1.2);
    RandomStream draw_rng(14);
    double s0 = 0, s1 = 0, q0 = 0, q1 = 0;
    const int m = 20000;
    for (int i = 0; i < m; ++i) {
        Point x = fit.draw(draw_rng);
        s0 += x[0];
        s1 += x[1];
        q0 += x[0] * x[0];
        q1 += x[1] * x[1];
    }
    CHECK(std::abs(s0 / m - 2.0) < 0.05);
    CHECK(std::abs(s1 / m + 1.0) < 0.15);
    // inflated variances: 1.44 and 9 * 1.44
    CHECK(q0 / m - (s0 / m) * (s0 / m) == doctest::Approx(1.44).epsilon(0.05));
    CHECK(q1 / m - (s1 / m) * (s1 / m) == doctest::Approx(12.96).epsilon(0.05));

    CHECK_THROWS_AS(fit_gaussian_importance(e, 0.9), ConfigError);
    Ensemble tiny;
    tiny.points.push_back(Point::Zero(2));
    tiny.logs.push_back({0, 0, 0});
    CHECK_THROWS_AS(fit_gaussian_importance(tiny, 1.2), ConfigError);
}

TEST_CASE("a single-problem sequence is identical to a plain tmcmc run") {
    auto chain = problems::DriftingSequence::make(1);
    SamplerConfig cfg = small_cfg(21, 500, 1.0);
    SequenceResult seq = run_sequence(chain, cfg);
    REQUIRE(seq.completed);
    REQUIRE(seq.runs.size() == 1);

    ProblemSpec p0 = problems::DriftingSequence::standalone(0);
    RunResult direct = run_gtmcmc(p0, cfg);
    CHECK(seq.runs[0].log_evidence == direct.log_evidence);
    CHECK(seq.runs[0].stages() == direct.stages());
    for (std::size_t i = 0; i < direct.final_ensemble.size(); ++i)
        CHECK(seq.runs[0].final_ensemble.points[i] == direct.final_ensemble.points[i]);
}

TEST_CASE("importance chaining cuts the later stage counts") {
    auto chain = problems::DriftingSequence::make(4);
    SamplerConfig cfg = small_cfg(23, 800, 0.5);
    SequenceResult seq = run_sequence(chain, cfg);
    REQUIRE(seq.completed);
    REQUIRE(seq.runs.size() == 4);
    // first entry tempers from the diffuse prior, later ones start from a
    // fitted importance sitting on the (slowly drifting) posterior
    for (std::size_t i = 1; i < 4; ++i)
        CHECK(seq.runs[i].stages() < seq.runs[0].stages());

    ProblemSpec p3 = problems::DriftingSequence::standalone(3);
    RunResult cold = run_gtmcmc(p3, cfg);
    CHECK(seq.runs[3].stages() < cold.stages());
}

TEST_CASE("sequence rejects an unsampleable first entry") {
    auto chain = problems::DriftingSequence::make(2);
    chain[0].sampleable_prior.reset();
    CHECK_THROWS_AS(run_sequence(chain, small_cfg(1)), ConfigError);
    CHECK_THROWS_AS(run_sequence({}, small_cfg(1)), ConfigError);
}

TEST_CASE("replicate seeds are distinct and reproducible") {
    std::set<std::uint64_t> seen;
    for (std::size_t r = 0; r < 1000; ++r) seen.insert(replicate_seed(42, r));
    CHECK(seen.size() == 1000);
    CHECK(replicate_seed(42, 7) == replicate_seed(42, 7));
    CHECK(replicate_seed(42, 7) != replicate_seed(43, 7));
}

TEST_CASE("replicate summary statistics") {
    ProblemSpec p = Gauss4d::spec(Gauss4d::prior());
    SamplerConfig cfg = small_cfg(31, 500, 1.0);
    ReplicateTruth truth;
    truth.posterior_mean = Gauss4d::posterior_mean();
    truth.log_evidence = Gauss4d::log_evidence();
    ReplicateSummary s = run_replicates(p, cfg, 5, truth);
    CHECK(s.completed == 5);
    CHECK(s.failed == 0);
    CHECK(s.stage_counts.size() == 5);
    CHECK(s.mean_stage_count > 1.0);
    REQUIRE(s.mean_rmse.has_value());
    CHECK(*s.mean_rmse < 0.25);
    REQUIRE(s.evidence_nrmse.has_value());
    CHECK(*s.evidence_nrmse < 1.5);
    CHECK_THROWS_AS(run_replicates(p, cfg, 1), ConfigError);
}
