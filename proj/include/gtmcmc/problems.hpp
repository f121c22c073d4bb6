#pragma once

#include "gtmcmc/oracle.hpp"
#include "gtmcmc/sampler.hpp"

namespace gtmcmc {
namespace problems {

/// 4D conjugate Gaussian: prior N(1, 5^2) per dim, standard normal
/// likelihood; posterior mean 1/26, variance 25/26 per dim.
struct Gauss4d {
    static constexpr int dim = 4;
    static SampleableDensity prior();
    static LogDensity likelihood();
    /// Importance N(1, std^2 I); std = 5 coincides with the prior.
    static SampleableDensity importance(double std_dev);
    static SampleableDensity posterior_importance();
    static oracle::GaussianParams prior_params();
    static oracle::GaussianParams likelihood_params();
    static Point posterior_mean();
    static double posterior_variance();
    static double log_evidence();
    static ProblemSpec spec(const SampleableDensity& importance);
};

/// 2D bimodal: prior N(0, 10^2 I2), likelihood 0.25 N((10,0), I) +
/// 0.75 N((0,10), I); posterior peaks near (9.9, 0) and (0, 9.9).
struct Bimodal2d {
    static constexpr int dim = 2;
    static SampleableDensity prior();
    static LogDensity likelihood();
    static std::vector<MixtureComponent> likelihood_components();
    static oracle::GaussianParams prior_params();
    static oracle::MixtureEvidence evidence();
    static ProblemSpec spec(const SampleableDensity& importance);
};

/// 3D Rosenbrock likelihood with prior N(0, 5^2 I3); the GTMCMC importance
/// is N((1,1,1), 2^2 I3).
struct Rosenbrock3d {
    static constexpr int dim = 3;
    static SampleableDensity prior();
    static LogDensity likelihood();
    static SampleableDensity gtmcmc_importance();
    static ProblemSpec spec(const SampleableDensity& importance);
};

/// Sequence of 2D conjugate Gaussian problems whose likelihood mean drifts
/// by a fixed step per entry; stand-in for chained inversion along a
/// measurement traverse.
struct DriftingSequence {
    static constexpr int dim = 2;
    static std::vector<ChainedProblem> make(std::size_t length, double drift_per_step = 0.2);
    static ProblemSpec standalone(std::size_t index, double drift_per_step = 0.2);
};

} // namespace problems
} // namespace gtmcmc
