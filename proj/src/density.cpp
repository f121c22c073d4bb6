#include "gtmcmc/density.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace gtmcmc {

namespace {
constexpr double log_two_pi = 1.8378770664093454835606594728112;
}

void ProblemSpec::validate(RandomStream& rng, int attempts) const {
    if (dim <= 0) throw ConfigError("ProblemSpec: dimension must be positive");
    if (prior.dim != dim || log_likelihood.dim != dim || importance.base.dim != dim)
        throw ConfigError("ProblemSpec: density dimensions disagree");
    RandomStream probe = rng.substream(0x70726f6265ULL, 0);
    for (int i = 0; i < attempts; ++i) {
        Point x = importance.draw(probe);
        if (std::isfinite(prior(x)) && std::isfinite(log_likelihood(x))) return;
    }
    throw ConfigError("ProblemSpec: no importance draw hit finite prior*likelihood support");
}

CholeskyFactor::CholeskyFactor(const Matrix& cov) {
    if (cov.rows() != cov.cols() || cov.rows() == 0)
        throw DegenerateCovariance("covariance must be square and non-empty");
    Eigen::LLT<Matrix> llt(cov);
    if (llt.info() != Eigen::Success)
        throw DegenerateCovariance("covariance is not positive definite");
    lower_ = llt.matrixL();
    double dmin = lower_.diagonal().minCoeff();
    double dmax = lower_.diagonal().maxCoeff();
    if (!(dmin > 0.0) || dmin < dmax * 1e-8)
        throw DegenerateCovariance("covariance is numerically singular");
    log_det_ = 2.0 * lower_.diagonal().array().log().sum();
}

double CholeskyFactor::quad_form(const Point& diff) const {
    Point y = lower_.triangularView<Eigen::Lower>().solve(diff);
    return y.squaredNorm();
}

double log_gaussian_diag(const Point& x, const Point& mean, const Point& variances) {
    if (x.size() != mean.size() || x.size() != variances.size())
        throw ConfigError("log_gaussian_diag: dimension mismatch");
    if ((variances.array() <= 0.0).any())
        throw ConfigError("log_gaussian_diag: variances must be strictly positive");
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        double d = x[i] - mean[i];
        s += -0.5 * (log_two_pi + std::log(variances[i])) - d * d / (2.0 * variances[i]);
    }
    return s;
}

double log_gaussian_full(const Point& x, const Point& mean, const CholeskyFactor& chol) {
    if (x.size() != mean.size() || x.size() != chol.dim())
        throw ConfigError("log_gaussian_full: dimension mismatch");
    double d = static_cast<double>(x.size());
    return -0.5 * (d * log_two_pi + chol.log_det() + chol.quad_form(x - mean));
}

double log_uniform_box(const Point& x, const Point& lo, const Point& hi, bool normalized) {
    if (x.size() != lo.size() || x.size() != hi.size())
        throw ConfigError("log_uniform_box: dimension mismatch");
    if ((lo.array() >= hi.array()).any())
        throw ConfigError("log_uniform_box: lo must be elementwise below hi");
    if ((x.array() < lo.array()).any() || (x.array() > hi.array()).any()) return neg_inf;
    if (!normalized) return 0.0;
    return -(hi - lo).array().log().sum();
}

double rosenbrock3d_loglike(double x, double y, double z) {
    double a = y - x * x;
    double b = z - y * y;
    double c = 1.0 - x;
    double d = 1.0 - y;
    return -(100.0 * a * a + c * c + 100.0 * b * b + d * d);
}

Point draw_gaussian(const Point& mean, const CholeskyFactor& chol, RandomStream& rng) {
    Point z(mean.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
    return mean + chol.lower() * z;
}

SampleableDensity make_gaussian_diag(const Point& mean, const Point& variances) {
    if (mean.size() != variances.size())
        throw ConfigError("gaussian_diag: dimension mismatch");
    if ((variances.array() <= 0.0).any())
        throw ConfigError("gaussian_diag: variances must be strictly positive");
    Point m = mean, v = variances;
    Point sd = variances.array().sqrt();
    SampleableDensity d;
    d.base.dim = static_cast<int>(mean.size());
    d.base.eval = [m, v](const Point& x) { return log_gaussian_diag(x, m, v); };
    d.draw = [m, sd](RandomStream& rng) {
        Point x(m.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = m[i] + sd[i] * rng.normal();
        return x;
    };
    return d;
}

SampleableDensity make_gaussian_full(const Point& mean, const Matrix& cov) {
    auto chol = std::make_shared<CholeskyFactor>(cov);
    Point m = mean;
    SampleableDensity d;
    d.base.dim = static_cast<int>(mean.size());
    d.base.eval = [m, chol](const Point& x) { return log_gaussian_full(x, m, *chol); };
    d.draw = [m, chol](RandomStream& rng) { return draw_gaussian(m, *chol, rng); };
    return d;
}

SampleableDensity make_uniform_box(const Point& lo, const Point& hi, bool normalized) {
    if (lo.size() != hi.size() || (lo.array() >= hi.array()).any())
        throw ConfigError("uniform_box: lo must be elementwise below hi");
    Point l = lo, h = hi;
    SampleableDensity d;
    d.base.dim = static_cast<int>(lo.size());
    d.base.eval = [l, h, normalized](const Point& x) { return log_uniform_box(x, l, h, normalized); };
    d.draw = [l, h](RandomStream& rng) {
        Point x(l.size());
        for (Eigen::Index i = 0; i < x.size(); ++i)
            x[i] = l[i] + (h[i] - l[i]) * rng.uniform01();
        return x;
    };
    return d;
}

LogDensity make_gaussian_mixture_density(const std::vector<MixtureComponent>& components) {
    if (components.empty())
        throw ConfigError("gaussian_mixture: component list is empty");
    double wsum = 0.0;
    for (const auto& c : components) {
        if (c.weight <= 0.0) throw ConfigError("gaussian_mixture: weights must be positive");
        wsum += c.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw ConfigError("gaussian_mixture: weights must sum to 1");

    struct Prepared {
        double log_w;
        Point mean;
        std::shared_ptr<CholeskyFactor> chol;
    };
    auto prepared = std::make_shared<std::vector<Prepared>>();
    for (const auto& c : components)
        prepared->push_back({std::log(c.weight), c.mean, std::make_shared<CholeskyFactor>(c.cov)});

    LogDensity d;
    d.dim = static_cast<int>(components.front().mean.size());
    d.eval = [prepared](const Point& x) {
        // shifted exponential sum over component log densities
        double best = neg_inf;
        std::vector<double> terms(prepared->size());
        for (std::size_t c = 0; c < prepared->size(); ++c) {
            const auto& p = (*prepared)[c];
            terms[c] = p.log_w + log_gaussian_full(x, p.mean, *p.chol);
            best = std::max(best, terms[c]);
        }
        if (!std::isfinite(best)) return neg_inf;
        double s = 0.0;
        for (double t : terms) s += std::exp(t - best);
        return best + std::log(s);
    };
    return d;
}

SampleableDensity make_gaussian_mixture(const std::vector<MixtureComponent>& components) {
    SampleableDensity d;
    d.base = make_gaussian_mixture_density(components);

    struct Sampler {
        double cum;
        Point mean;
        std::shared_ptr<CholeskyFactor> chol;
    };
    auto samplers = std::make_shared<std::vector<Sampler>>();
    double cum = 0.0;
    for (const auto& c : components) {
        cum += c.weight;
        samplers->push_back({cum, c.mean, std::make_shared<CholeskyFactor>(c.cov)});
    }
    d.draw = [samplers](RandomStream& rng) {
        double u = rng.uniform01();
        for (const auto& s : *samplers)
            if (u <= s.cum) return draw_gaussian(s.mean, *s.chol, rng);
        const auto& last = samplers->back();
        return draw_gaussian(last.mean, *last.chol, rng);
    };
    return d;
}

LogDensity make_rosenbrock3d_density() {
    LogDensity d;
    d.dim = 3;
    d.eval = [](const Point& x) { return rosenbrock3d_loglike(x[0], x[1], x[2]); };
    return d;
}

} // namespace gtmcmc
