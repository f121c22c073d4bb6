#pragma once

#include <optional>
#include <string>

#include "gtmcmc/problems.hpp"
#include "gtmcmc/sampler.hpp"

namespace gtmcmc {

enum class Mode { Run, Replicate, Sequence, Validate };

struct OutputConfig {
    std::string dir = "out";
    bool csv = true;
    bool json = true;
};

struct ExperimentConfig {
    Mode mode = Mode::Run;
    std::string builtin; // empty for fully custom problems

    std::optional<ProblemSpec> problem;          // run / replicate
    std::vector<ChainedProblem> sequence;        // sequence mode
    std::vector<ProblemSpec> sequence_baselines; // independent TMCMC per entry

    SamplerConfig sampler;
    OutputConfig output;
    std::size_t replicates = 100;
    ReplicateTruth truth;
    double inflation = 1.2;
};

/// Strict parse of the versioned JSON config schema ("schema": "v1").
/// Unknown keys are rejected; error messages name the offending key.
/// mode_override comes from the CLI subcommand and must agree with the
/// config's own "mode" field when both are present.
ExperimentConfig parse_config(const std::string& text,
                              std::optional<Mode> mode_override = std::nullopt);

} // namespace gtmcmc
