#include <doctest.h>

#include <cmath>
#include <limits>

#include "gtmcmc/io.hpp"
#include "gtmcmc/problems.hpp"
#include "gtmcmc/rng.hpp"

using namespace gtmcmc;

TEST_CASE("format_double is shortest round-trip") {
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(-neg_inf) == "inf");
    CHECK(io::format_double(neg_inf) == "-inf");

    RandomStream rng(1);
    for (int i = 0; i < 2000; ++i) {
        double v = std::exp(40.0 * (rng.uniform01() - 0.5)) * (rng.uniform01() < 0.5 ? -1 : 1);
        CHECK(std::stod(io::format_double(v)) == v);
    }
    double third = 1.0 / 3.0;
    CHECK(std::stod(io::format_double(third)) == third);
}

TEST_CASE("stages csv layout") {
    StageRecord r;
    r.stage_index = 1;
    r.beta = 0.25;
    r.achieved_cov = 1.0;
    r.log_stage_evidence = -2.5;
    r.ess = 640.0;
    r.acceptance_rate = 0.3;
    r.gamma_sq = 0.04;
    std::string csv = io::stages_csv({r});
    CHECK(csv ==
          "stage_index,beta,achieved_cov,log_stage_evidence,ess,acceptance_rate,gamma_sq\n"
          "1,0.25,1,-2.5,640,0.3,0.04\n");
    CHECK(io::stages_csv({}) ==
          "stage_index,beta,achieved_cov,log_stage_evidence,ess,acceptance_rate,gamma_sq\n");
}

TEST_CASE("samples csv round-trips the ensemble exactly") {
    using problems::Gauss4d;
    ProblemSpec p = Gauss4d::spec(Gauss4d::prior());
    RandomStream rng(3);
    Ensemble e = initial_ensemble(p, 50, rng);
    std::string csv = io::samples_csv(e);
    CHECK(csv.rfind("x0,x1,x2,x3,log_prior,log_like,log_importance\n", 0) == 0);
    Ensemble back = io::parse_samples_csv(csv, 4);
    REQUIRE(back.size() == e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        CHECK(back.points[i] == e.points[i]);
        CHECK(back.logs[i].log_prior == e.logs[i].log_prior);
        CHECK(back.logs[i].log_like == e.logs[i].log_like);
        CHECK(back.logs[i].log_importance == e.logs[i].log_importance);
    }
}

TEST_CASE("replicates csv layout") {
    ReplicateSummary s;
    s.completed = 2;
    s.seeds = {11, 22};
    s.stage_counts = {3, 4};
    s.log_evidences = {-10.0, -10.5};
    s.posterior_means = {Point::Constant(2, 0.5), Point::Constant(2, 0.25)};
    std::string csv = io::replicates_csv(s);
    CHECK(csv ==
          "replicate,seed,stages,log_evidence,mean0,mean1\n"
          "0,11,3,-10,0.5,0.5\n"
          "1,22,4,-10.5,0.25,0.25\n");
}
