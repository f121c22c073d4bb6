#include <doctest.h>

#include <cmath>

#include "gtmcmc/oracle.hpp"
#include "gtmcmc/problems.hpp"

using namespace gtmcmc;
using namespace gtmcmc::oracle;

namespace {
constexpr double pi = 3.14159265358979323846;

GaussianParams g1(double mean, double var) {
    return GaussianParams(Point::Constant(1, mean), Matrix::Constant(1, 1, var));
}
} // namespace

TEST_CASE("gaussian params reject non-SPD covariance") {
    CHECK_THROWS_AS(g1(0.0, 0.0), DegenerateCovariance);
    CHECK_THROWS_AS(GaussianParams(Point::Zero(1), Matrix::Identity(2, 2)), ConfigError);
}

TEST_CASE("tempered gaussian endpoints") {
    GaussianParams prior = g1(1.0, 25.0), like = g1(0.0, 1.0), q = g1(2.0, 9.0);

    GaussianParams at0 = gaussian_tempered(0.0, prior, like, q);
    CHECK(at0.mean[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(at0.cov(0, 0) == doctest::Approx(9.0).epsilon(1e-12));

    // beta = 1: conjugate posterior mean 1/26, variance 25/26
    GaussianParams at1 = gaussian_tempered(1.0, prior, like, q);
    CHECK(at1.mean[0] == doctest::Approx(1.0 / 26.0).epsilon(1e-12));
    CHECK(at1.cov(0, 0) == doctest::Approx(25.0 / 26.0).epsilon(1e-12));
}

TEST_CASE("tempered gaussian interpolates the precisions") {
    GaussianParams prior = g1(1.0, 25.0), like = g1(0.0, 1.0), q = g1(0.0, 4.0);
    double beta = 0.3;
    GaussianParams mid = gaussian_tempered(beta, prior, like, q);
    double lam = beta * (1.0 / 25.0 + 1.0) + (1.0 - beta) * 0.25;
    CHECK(mid.cov(0, 0) == doctest::Approx(1.0 / lam).epsilon(1e-12));
    double eta = beta * (1.0 / 25.0 * 1.0 + 1.0 * 0.0) + (1.0 - beta) * 0.0;
    CHECK(mid.mean[0] == doctest::Approx(eta / lam).epsilon(1e-12));
}

TEST_CASE("gaussian KL hand values") {
    CHECK(gaussian_kl(g1(0, 1), g1(0, 1)) == doctest::Approx(0.0));
    CHECK(gaussian_kl(g1(0, 1), g1(1, 1)) == doctest::Approx(0.5).epsilon(1e-12));
    // KL(N(0, s) || N(0, 1)) = (s - 1 - ln s) / 2
    double s = 2.5;
    CHECK(gaussian_kl(g1(0, s), g1(0, 1)) ==
          doctest::Approx(0.5 * (s - 1.0 - std::log(s))).epsilon(1e-12));

    GaussianParams a(Point::Zero(3), Matrix::Identity(3, 3));
    GaussianParams b(Point::Ones(3), 2.0 * Matrix::Identity(3, 3));
    // 0.5 * (tr + quad - d + logdet) = 0.5 * (1.5 + 1.5 - 3 + 3 ln 2)
    CHECK(gaussian_kl(a, b) == doctest::Approx(1.5 * std::log(2.0)).epsilon(1e-12));
    CHECK(gaussian_kl(a, b) >= 0.0);
    CHECK(gaussian_kl(b, a) >= 0.0);
}

TEST_CASE("gaussian evidence convolution identity") {
    // 1D: Z = N(0; 1, 25 + 1)
    double expected = -0.5 * std::log(2 * pi * 26.0) - 1.0 / 52.0;
    CHECK(gaussian_evidence(g1(1.0, 25.0), g1(0.0, 1.0)) ==
          doctest::Approx(expected).epsilon(1e-12));

    // 4D product structure
    using problems::Gauss4d;
    CHECK(gaussian_evidence(Gauss4d::prior_params(), Gauss4d::likelihood_params()) ==
          doctest::Approx(4.0 * expected).epsilon(1e-12));
    CHECK(Gauss4d::log_evidence() == doctest::Approx(4.0 * expected).epsilon(1e-12));
    CHECK(Gauss4d::log_evidence() == doctest::Approx(-10.2689).epsilon(1e-4));
}

TEST_CASE("evidence cross-check against brute-force quadrature") {
    GaussianParams prior = g1(0.7, 4.0), like = g1(-0.4, 0.5);
    double z = 0.0;
    const int cells = 200000;
    const double lo = -20.0, hi = 20.0, h = (hi - lo) / cells;
    for (int i = 0; i < cells; ++i) {
        double x = lo + (i + 0.5) * h;
        double lp = -0.5 * std::log(2 * pi * 4.0) - 0.5 * (x - 0.7) * (x - 0.7) / 4.0;
        double ll = -0.5 * std::log(2 * pi * 0.5) - 0.5 * (x + 0.4) * (x + 0.4) / 0.5;
        z += std::exp(lp + ll) * h;
    }
    CHECK(gaussian_evidence(prior, like) == doctest::Approx(std::log(z)).epsilon(1e-9));
}

TEST_CASE("bimodal mixture evidence matches the closed form") {
    using problems::Bimodal2d;
    MixtureEvidence ev = Bimodal2d::evidence();
    // both modes sit at distance 10 from the prior mean, so the posterior
    // mode weights stay 0.25 / 0.75 and Z = exp(-100/202) / (2 pi 101)
    double expected_logz = -100.0 / 202.0 - std::log(2 * pi * 101.0);
    CHECK(ev.log_evidence == doctest::Approx(expected_logz).epsilon(1e-12));
    REQUIRE(ev.posterior_weights.size() == 2);
    CHECK(ev.posterior_weights[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(ev.posterior_weights[1] == doctest::Approx(0.75).epsilon(1e-12));

    // posterior component means contract toward the origin by 100/101
    REQUIRE(ev.posterior_components.size() == 2);
    CHECK(ev.posterior_components[0].mean[0] == doctest::Approx(1000.0 / 101.0).epsilon(1e-12));
    CHECK(ev.posterior_components[0].mean[1] == doctest::Approx(0.0));
    CHECK(ev.posterior_components[1].mean[1] == doctest::Approx(1000.0 / 101.0).epsilon(1e-12));
    CHECK(ev.posterior_components[0].cov(0, 0) == doctest::Approx(100.0 / 101.0).epsilon(1e-12));
    CHECK(ev.posterior_components[0].cov(0, 1) == doctest::Approx(0.0));
}

TEST_CASE("grid posterior agrees with the analytic 1d answer") {
    ProblemSpec p;
    p.dim = 1;
    p.prior = make_gaussian_diag(Point::Constant(1, 1.0), Point::Constant(1, 25.0)).base;
    p.log_likelihood = make_gaussian_diag(Point::Zero(1), Point::Ones(1)).base;
    p.importance = make_gaussian_diag(Point::Constant(1, 1.0), Point::Constant(1, 25.0));

    GridPosterior g = grid_posterior(p, Point::Constant(1, -8.0), Point::Constant(1, 8.0), 4001);
    double expected = -0.5 * std::log(2 * pi * 26.0) - 1.0 / 52.0;
    CHECK(g.log_evidence == doctest::Approx(expected).epsilon(1e-8));

    double total = 0.0, mean = 0.0;
    const double h = 16.0 / 4001.0;
    for (int i = 0; i < 4001; ++i) {
        double x = -8.0 + (i + 0.5) * h;
        total += g.density[static_cast<std::size_t>(i)];
        mean += x * g.density[static_cast<std::size_t>(i)];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean == doctest::Approx(1.0 / 26.0).epsilon(1e-6));
}

TEST_CASE("grid posterior rejects a box that clips the mass") {
    ProblemSpec p;
    p.dim = 1;
    p.prior = make_gaussian_diag(Point::Zero(1), Point::Ones(1)).base;
    p.log_likelihood = LogDensity{1, [](const Point&) { return 0.0; }};
    p.importance = make_gaussian_diag(Point::Zero(1), Point::Ones(1));
    CHECK_THROWS_AS(grid_posterior(p, Point::Constant(1, -2.0), Point::Constant(1, 2.0), 500),
                    GridTooSmall);
    CHECK_NOTHROW(grid_posterior(p, Point::Constant(1, -8.0), Point::Constant(1, 8.0), 500));
    CHECK_THROWS_AS(grid_posterior(p, Point::Constant(1, -8.0), Point::Constant(1, 8.0), 1),
                    ConfigError);
}

TEST_CASE("2d grid posterior evidence matches the conjugate identity") {
    ProblemSpec p;
    p.dim = 2;
    p.prior = make_gaussian_diag(Point::Zero(2), Point::Constant(2, 4.0)).base;
    p.log_likelihood = make_gaussian_diag(Point::Constant(2, 0.5), Point::Ones(2)).base;
    p.importance = make_gaussian_diag(Point::Zero(2), Point::Constant(2, 4.0));
    GridPosterior g = grid_posterior(p, Point::Constant(2, -9.0), Point::Constant(2, 9.0), 600);
    GaussianParams prior(Point::Zero(2), 4.0 * Matrix::Identity(2, 2));
    GaussianParams like(Point::Constant(2, 0.5), Matrix::Identity(2, 2));
    CHECK(g.log_evidence == doctest::Approx(gaussian_evidence(prior, like)).epsilon(1e-7));
}

TEST_CASE("KL trace to the posterior decreases in beta") {
    GaussianParams prior = g1(1.0, 25.0), like = g1(0.0, 1.0);
    for (double qstd : {0.6, 1.0, 3.0, 5.0}) {
        GaussianParams q = g1(1.0, qstd * qstd);
        std::vector<double> betas;
        for (int i = 0; i <= 100; ++i) betas.push_back(i / 100.0);
        std::vector<double> trace = kl_monotonicity_trace(prior, like, q, betas);
        REQUIRE(trace.size() == betas.size());
        CHECK(trace.back() == doctest::Approx(0.0));
        for (std::size_t i = 1; i < trace.size(); ++i)
            CHECK(trace[i] <= trace[i - 1] + 1e-12);
    }
}
