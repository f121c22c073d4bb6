#pragma once

#include <string>

#include "gtmcmc/sampler.hpp"

namespace gtmcmc {
namespace io {

/// Shortest round-trip decimal rendering (up to 17 significant digits),
/// dot decimal separator regardless of locale.
std::string format_double(double v);

/// stage_index,beta,achieved_cov,log_stage_evidence,ess,acceptance_rate,gamma_sq
std::string stages_csv(const std::vector<StageRecord>& records);

/// One row per point: coordinates, then log_prior, log_like, log_importance.
std::string samples_csv(const Ensemble& e);

Ensemble parse_samples_csv(const std::string& text, int dim);

std::string replicates_csv(const ReplicateSummary& summary);

void write_file(const std::string& path, const std::string& content);

} // namespace io
} // namespace gtmcmc
