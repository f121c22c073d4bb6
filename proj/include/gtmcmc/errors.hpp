#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gtmcmc {

struct StageRecord {
    int stage_index = 0;
    double beta = 0.0;
    double achieved_cov = 0.0;
    double log_stage_evidence = 0.0;
    double ess = 0.0;
    double acceptance_rate = 0.0;
    double gamma_sq = 0.0;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Base for sampler failures that carry the partial stage trace.
class SamplerError : public std::runtime_error {
public:
    SamplerError(const std::string& msg, std::vector<StageRecord> trace = {})
        : std::runtime_error(msg), stage_trace(std::move(trace)) {}
    std::vector<StageRecord> stage_trace;
};

class AllWeightsZero : public SamplerError {
public:
    using SamplerError::SamplerError;
};

class DegenerateCovariance : public SamplerError {
public:
    using SamplerError::SamplerError;
};

class MaxStagesExceeded : public SamplerError {
public:
    using SamplerError::SamplerError;
};

class NonMonotoneCov : public SamplerError {
public:
    using SamplerError::SamplerError;
};

class GridTooSmall : public std::runtime_error {
public:
    explicit GridTooSmall(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace gtmcmc
