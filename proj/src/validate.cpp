#include "gtmcmc/validate.hpp"

#include <cmath>
#include <sstream>

#include "gtmcmc/oracle.hpp"
#include "gtmcmc/problems.hpp"
#include "gtmcmc/rng.hpp"

namespace gtmcmc {

namespace {

using oracle::GaussianParams;

GaussianParams random_gaussian(RandomStream& rng, int dim) {
    Point mean(dim);
    for (int i = 0; i < dim; ++i) mean[i] = 4.0 * (rng.uniform01() - 0.5);
    Matrix a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = rng.normal();
    Matrix cov = a * a.transpose() + 0.05 * Matrix::Identity(dim, dim);
    return GaussianParams(std::move(mean), std::move(cov));
}

PropertyResult kl_monotonicity_property(std::uint64_t seed, int cases) {
    RandomStream rng(seed);
    std::vector<double> betas(101);
    for (int i = 0; i <= 100; ++i) betas[static_cast<std::size_t>(i)] = i / 100.0;

    int violations = 0;
    double worst = 0.0;
    for (int c = 0; c < cases; ++c) {
        int dim = 1 + static_cast<int>(rng.uniform_index(4));
        auto prior = random_gaussian(rng, dim);
        auto like = random_gaussian(rng, dim);
        auto q = random_gaussian(rng, dim);
        auto trace = oracle::kl_monotonicity_trace(prior, like, q, betas);
        for (std::size_t i = 1; i < trace.size(); ++i) {
            double rise = trace[i] - trace[i - 1];
            worst = std::max(worst, rise);
            if (rise > 1e-12) ++violations;
        }
    }
    std::ostringstream detail;
    detail << cases << " triples, max KL rise " << worst;
    return {"kl_monotonicity", violations == 0, detail.str()};
}

PropertyResult cov_monotonicity_property(std::uint64_t seed, int cases, bool corrupt) {
    RandomStream rng(seed);
    int violations = 0;
    double worst = 0.0;
    for (int c = 0; c < cases; ++c) {
        // fixed ensemble of log(prior*like/importance) values
        std::size_t n = 1000;
        double scale = 0.5 + 5.0 * rng.uniform01();
        std::vector<double> log_ratio(n);
        for (auto& v : log_ratio) v = scale * rng.normal();

        double prev = -1.0;
        for (int i = 1; i <= 100; ++i) {
            double db = i / 100.0;
            double shift = neg_inf;
            for (double v : log_ratio) shift = std::max(shift, db * v);
            double s1 = 0.0, s2 = 0.0;
            for (double v : log_ratio) {
                double w = std::exp(db * v - shift);
                s1 += w;
                s2 += w * w;
            }
            double kappa =
                std::sqrt(std::max(static_cast<double>(n) * s2 / (s1 * s1) - 1.0, 0.0));
            if (corrupt && i == 50) kappa *= 0.5; // test hook
            if (prev >= 0.0) {
                double drop = prev - kappa;
                worst = std::max(worst, drop);
                if (drop > 1e-12) ++violations;
            }
            prev = kappa;
        }
    }
    std::ostringstream detail;
    detail << cases << " ensembles, max CoV drop " << worst;
    return {"cov_monotonicity", violations == 0, detail.str()};
}

PropertyResult conjugate_evidence_property() {
    using problems::Gauss4d;
    double analytic = Gauss4d::log_evidence();
    double per_dim = oracle::gaussian_evidence(
        GaussianParams(Point::Constant(1, 1.0), Matrix::Constant(1, 1, 25.0)),
        GaussianParams(Point::Constant(1, 0.0), Matrix::Constant(1, 1, 1.0)));
    double rel = std::abs(analytic - 4.0 * per_dim) / std::abs(analytic);
    std::ostringstream detail;
    detail << "4D vs 4x 1D relative error " << rel;
    return {"conjugate_evidence_factorization", rel < 1e-12, detail.str()};
}

PropertyResult grid_vs_analytic_property() {
    // 1D conjugate Gaussian, quadrature vs closed form
    SampleableDensity prior = make_gaussian_diag(Point::Constant(1, 1.0), Point::Constant(1, 25.0));
    LogDensity like;
    like.dim = 1;
    like.eval = [](const Point& x) {
        return log_gaussian_diag(x, Point::Zero(1), Point::Ones(1));
    };
    ProblemSpec p;
    p.dim = 1;
    p.prior = prior.base;
    p.log_likelihood = like;
    p.importance = prior;

    double analytic = oracle::gaussian_evidence(
        GaussianParams(Point::Constant(1, 1.0), Matrix::Constant(1, 1, 25.0)),
        GaussianParams(Point::Constant(1, 0.0), Matrix::Constant(1, 1, 1.0)));
    auto grid = oracle::grid_posterior(p, Point::Constant(1, -12.0), Point::Constant(1, 12.0), 4001);
    double rel = std::abs(std::exp(grid.log_evidence - analytic) - 1.0);
    std::ostringstream detail;
    detail << "grid evidence relative error " << rel;
    return {"grid_vs_analytic_evidence", rel < 1e-8, detail.str()};
}

PropertyResult bimodal_mode_mass_property() {
    using problems::Bimodal2d;
    ProblemSpec p = Bimodal2d::spec(Bimodal2d::prior());
    Point lo(2), hi(2);
    lo << -15.0, -15.0;
    hi << 25.0, 25.0;
    auto grid = oracle::grid_posterior(p, lo, hi, 800);

    Point peak1(2), peak2(2);
    peak1 << 9.9, 0.0;
    peak2 << 0.0, 9.9;
    double mass1 = 0.0, mass2 = 0.0;
    Point width = (hi - lo) / 800.0;
    for (int i = 0; i < 800; ++i) {
        for (int j = 0; j < 800; ++j) {
            Point x(2);
            x << lo[0] + (i + 0.5) * width[0], lo[1] + (j + 0.5) * width[1];
            double v = grid.density[static_cast<std::size_t>(i) * 800 + j];
            if ((x - peak1).norm() < (x - peak2).norm())
                mass1 += v;
            else
                mass2 += v;
        }
    }
    double ratio = mass2 / mass1;
    std::ostringstream detail;
    detail << "mode mass ratio " << ratio << " (expected 3)";
    return {"bimodal_mode_mass_ratio", std::abs(ratio - 3.0) < 3e-6, detail.str()};
}

} // namespace

std::vector<PropertyResult> run_validation(std::uint64_t seed, int cases, bool corrupt_cov) {
    std::vector<PropertyResult> out;
    out.push_back(kl_monotonicity_property(seed, cases));
    out.push_back(cov_monotonicity_property(seed ^ 0x1234ULL, cases, corrupt_cov));
    out.push_back(conjugate_evidence_property());
    out.push_back(grid_vs_analytic_property());
    out.push_back(bimodal_mode_mass_property());
    return out;
}

} // namespace gtmcmc
