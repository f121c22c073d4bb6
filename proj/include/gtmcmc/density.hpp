#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "gtmcmc/errors.hpp"
#include "gtmcmc/rng.hpp"

namespace gtmcmc {

using Point = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

/// Log density up to an additive constant. Returns -inf for zero-density
/// points; +inf and NaN are never produced.
struct LogDensity {
    int dim = 0;
    std::function<double(const Point&)> eval;

    double operator()(const Point& x) const { return eval(x); }
};

/// A log density paired with an exact sampler. draw() never returns a point
/// where the base density is -inf.
struct SampleableDensity {
    LogDensity base;
    std::function<Point(RandomStream&)> draw;
};

struct ProblemSpec {
    int dim = 0;
    LogDensity prior;
    LogDensity log_likelihood;
    SampleableDensity importance;

    /// Empirical feasibility check: at least one importance draw must land
    /// where prior and likelihood are both finite.
    void validate(RandomStream& rng, int attempts = 256) const;
};

/// Cached lower-triangular factor of an SPD matrix. Construction throws
/// DegenerateCovariance when the matrix fails to factor or is numerically
/// singular (condition number of order 1e16 or worse).
class CholeskyFactor {
public:
    explicit CholeskyFactor(const Matrix& cov);

    const Matrix& lower() const { return lower_; }
    double log_det() const { return log_det_; }
    int dim() const { return static_cast<int>(lower_.rows()); }

    /// (x - mean)^T cov^{-1} (x - mean) via one triangular solve.
    double quad_form(const Point& diff) const;

private:
    Matrix lower_;
    double log_det_ = 0.0;
};

double log_gaussian_diag(const Point& x, const Point& mean, const Point& variances);
double log_gaussian_full(const Point& x, const Point& mean, const CholeskyFactor& chol);
double log_uniform_box(const Point& x, const Point& lo, const Point& hi, bool normalized = false);

struct MixtureComponent {
    double weight = 0.0;
    Point mean;
    Matrix cov;
};

double rosenbrock3d_loglike(double x, double y, double z);

/// mean + L z with z consumed coordinate-by-coordinate from the stream.
Point draw_gaussian(const Point& mean, const CholeskyFactor& chol, RandomStream& rng);

// Built-in sampleable densities.
SampleableDensity make_gaussian_diag(const Point& mean, const Point& variances);
SampleableDensity make_gaussian_full(const Point& mean, const Matrix& cov);
SampleableDensity make_uniform_box(const Point& lo, const Point& hi, bool normalized = false);
SampleableDensity make_gaussian_mixture(const std::vector<MixtureComponent>& components);

LogDensity make_gaussian_mixture_density(const std::vector<MixtureComponent>& components);
LogDensity make_rosenbrock3d_density();

} // namespace gtmcmc
