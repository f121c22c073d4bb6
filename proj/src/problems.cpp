#include "gtmcmc/problems.hpp"

#include <cmath>

namespace gtmcmc {
namespace problems {

namespace {
Point constant(int dim, double v) { return Point::Constant(dim, v); }
} // namespace

SampleableDensity Gauss4d::prior() {
    return make_gaussian_diag(constant(dim, 1.0), constant(dim, 25.0));
}

LogDensity Gauss4d::likelihood() {
    LogDensity d;
    d.dim = dim;
    Point mean = constant(dim, 0.0), var = constant(dim, 1.0);
    d.eval = [mean, var](const Point& x) { return log_gaussian_diag(x, mean, var); };
    return d;
}

SampleableDensity Gauss4d::importance(double std_dev) {
    return make_gaussian_diag(constant(dim, 1.0), constant(dim, std_dev * std_dev));
}

SampleableDensity Gauss4d::posterior_importance() {
    return make_gaussian_diag(posterior_mean(), constant(dim, posterior_variance()));
}

oracle::GaussianParams Gauss4d::prior_params() {
    return {constant(dim, 1.0), Matrix::Identity(dim, dim) * 25.0};
}

oracle::GaussianParams Gauss4d::likelihood_params() {
    return {constant(dim, 0.0), Matrix::Identity(dim, dim)};
}

Point Gauss4d::posterior_mean() { return constant(dim, 1.0 / 26.0); }

double Gauss4d::posterior_variance() { return 25.0 / 26.0; }

double Gauss4d::log_evidence() {
    return oracle::gaussian_evidence(prior_params(), likelihood_params());
}

ProblemSpec Gauss4d::spec(const SampleableDensity& importance) {
    ProblemSpec p;
    p.dim = dim;
    p.prior = prior().base;
    p.log_likelihood = likelihood();
    p.importance = importance;
    return p;
}

SampleableDensity Bimodal2d::prior() {
    return make_gaussian_diag(constant(dim, 0.0), constant(dim, 100.0));
}

std::vector<MixtureComponent> Bimodal2d::likelihood_components() {
    Matrix eye = Matrix::Identity(dim, dim);
    Point m1(dim), m2(dim);
    m1 << 10.0, 0.0;
    m2 << 0.0, 10.0;
    return {{0.25, m1, eye}, {0.75, m2, eye}};
}

LogDensity Bimodal2d::likelihood() {
    return make_gaussian_mixture_density(likelihood_components());
}

oracle::GaussianParams Bimodal2d::prior_params() {
    return {constant(dim, 0.0), Matrix::Identity(dim, dim) * 100.0};
}

oracle::MixtureEvidence Bimodal2d::evidence() {
    return oracle::mixture_evidence(prior_params(), likelihood_components());
}

ProblemSpec Bimodal2d::spec(const SampleableDensity& importance) {
    ProblemSpec p;
    p.dim = dim;
    p.prior = prior().base;
    p.log_likelihood = likelihood();
    p.importance = importance;
    return p;
}

SampleableDensity Rosenbrock3d::prior() {
    return make_gaussian_diag(constant(dim, 0.0), constant(dim, 25.0));
}

LogDensity Rosenbrock3d::likelihood() { return make_rosenbrock3d_density(); }

SampleableDensity Rosenbrock3d::gtmcmc_importance() {
    return make_gaussian_diag(constant(dim, 1.0), constant(dim, 4.0));
}

ProblemSpec Rosenbrock3d::spec(const SampleableDensity& importance) {
    ProblemSpec p;
    p.dim = dim;
    p.prior = prior().base;
    p.log_likelihood = likelihood();
    p.importance = importance;
    return p;
}

namespace {

Point drift_mean(std::size_t index, double drift) {
    Point m(DriftingSequence::dim);
    double v = drift * static_cast<double>(index);
    m << v, v;
    return m;
}

} // namespace

std::vector<ChainedProblem> DriftingSequence::make(std::size_t length, double drift_per_step) {
    std::vector<ChainedProblem> problems;
    SampleableDensity prior = make_gaussian_diag(constant(dim, 0.0), constant(dim, 100.0));
    for (std::size_t i = 0; i < length; ++i) {
        ChainedProblem cp;
        cp.prior = prior.base;
        Point mean = drift_mean(i, drift_per_step);
        Point var = constant(dim, 1.0);
        LogDensity like;
        like.dim = dim;
        like.eval = [mean, var](const Point& x) { return log_gaussian_diag(x, mean, var); };
        cp.log_likelihood = like;
        if (i == 0) cp.sampleable_prior = prior;
        problems.push_back(std::move(cp));
    }
    return problems;
}

ProblemSpec DriftingSequence::standalone(std::size_t index, double drift_per_step) {
    SampleableDensity prior = make_gaussian_diag(constant(dim, 0.0), constant(dim, 100.0));
    ProblemSpec p;
    p.dim = dim;
    p.prior = prior.base;
    Point mean = drift_mean(index, drift_per_step);
    Point var = constant(dim, 1.0);
    LogDensity like;
    like.dim = dim;
    like.eval = [mean, var](const Point& x) { return log_gaussian_diag(x, mean, var); };
    p.log_likelihood = like;
    p.importance = prior;
    return p;
}

} // namespace problems
} // namespace gtmcmc
