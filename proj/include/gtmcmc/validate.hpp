#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gtmcmc {

struct PropertyResult {
    std::string name;
    bool passed = false;
    std::string detail; // observed extrema / comparison values
};

/// Analytic-oracle property suites: KL monotonicity over randomized SPD
/// Gaussian triples, discrete weight-CoV monotonicity over random ensembles,
/// conjugate-evidence cross-checks, and grid-vs-analytic comparison.
/// `corrupt_cov` is a test hook that perturbs the CoV curve to exercise the
/// failure path.
std::vector<PropertyResult> run_validation(std::uint64_t seed, int cases = 1000,
                                           bool corrupt_cov = false);

} // namespace gtmcmc
