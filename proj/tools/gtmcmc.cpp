#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gtmcmc/config.hpp"
#include "gtmcmc/io.hpp"
#include "gtmcmc/validate.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gtmcmc;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_config = 2;
constexpr int exit_all_weights_zero = 3;
constexpr int exit_degenerate_cov = 4;
constexpr int exit_max_stages = 5;
constexpr int exit_validation = 6;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Guards an output directory against concurrent writers.
class DirLock {
public:
    explicit DirLock(const fs::path& dir) : lock_(dir / ".lock") {
        fs::create_directories(dir);
        if (fs::exists(lock_))
            throw ConfigError("output directory is locked: " + dir.string());
        std::ofstream probe(lock_);
        if (!probe) throw ConfigError("cannot create lockfile in: " + dir.string());
        held_ = true;
    }
    ~DirLock() {
        if (held_) {
            std::error_code ec;
            fs::remove(lock_, ec);
        }
    }
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    fs::path lock_;
    bool held_ = false;
};

json sampler_echo(const SamplerConfig& cfg) {
    return json{{"n", cfg.n},
                {"target_cov", cfg.target_cov},
                {"chain_steps", cfg.chain_steps},
                {"seed", cfg.seed},
                {"max_stages", cfg.max_stages},
                {"gamma_sq_init", cfg.gamma_sq_init},
                {"adapt", cfg.adapt},
                {"feedback_gain", cfg.feedback_gain},
                {"workers", cfg.workers}};
}

void write_summary(const fs::path& dir, json body, double wall_sec) {
    body["meta"] = json{{"wall_time_sec", wall_sec}};
    io::write_file((dir / "summary.json").string(), body.dump(2) + "\n");
}

void write_run_outputs(const fs::path& dir, const ExperimentConfig& cfg,
                       const RunResult& res, double wall_sec) {
    if (cfg.output.csv) {
        io::write_file((dir / "stages.csv").string(), io::stages_csv(res.stage_records));
        io::write_file((dir / "samples.csv").string(), io::samples_csv(res.final_ensemble));
    }
    if (cfg.output.json) {
        json body{{"log_evidence", res.log_evidence},
                  {"stages", res.stages()},
                  {"density_evaluations", res.total_density_evaluations},
                  {"seed", cfg.sampler.seed},
                  {"builtin", cfg.builtin},
                  {"config", {{"sampler", sampler_echo(cfg.sampler)}}}};
        write_summary(dir, std::move(body), wall_sec);
    }
}

int map_error(const std::exception& ex, const fs::path* dir) {
    std::cerr << "error: " << ex.what() << "\n";
    if (auto* se = dynamic_cast<const SamplerError*>(&ex); se && dir) {
        // partial stage trace still written
        std::error_code ec;
        fs::create_directories(*dir, ec);
        io::write_file((*dir / "stages.csv").string(), io::stages_csv(se->stage_trace));
    }
    if (dynamic_cast<const AllWeightsZero*>(&ex)) return exit_all_weights_zero;
    if (dynamic_cast<const DegenerateCovariance*>(&ex)) return exit_degenerate_cov;
    if (dynamic_cast<const MaxStagesExceeded*>(&ex)) return exit_max_stages;
    if (dynamic_cast<const ConfigError*>(&ex)) return exit_config;
    return exit_config;
}

int cmd_run(ExperimentConfig cfg) {
    fs::path dir(cfg.output.dir);
    DirLock lock(dir);
    auto t0 = std::chrono::steady_clock::now();
    try {
        RunResult res = run_gtmcmc(*cfg.problem, cfg.sampler);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_run_outputs(dir, cfg, res, wall);
    } catch (const std::exception& ex) {
        return map_error(ex, &dir);
    }
    return exit_ok;
}

int cmd_replicate(ExperimentConfig cfg) {
    fs::path dir(cfg.output.dir);
    DirLock lock(dir);
    auto t0 = std::chrono::steady_clock::now();
    try {
        ReplicateSummary summary =
            run_replicates(*cfg.problem, cfg.sampler, cfg.replicates, cfg.truth);
        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        bool seeds_distinct = true;
        for (std::size_t i = 0; i < summary.seeds.size(); ++i)
            for (std::size_t j = i + 1; j < summary.seeds.size(); ++j)
                if (summary.seeds[i] == summary.seeds[j]) seeds_distinct = false;

        if (cfg.output.csv)
            io::write_file((dir / "replicates.csv").string(), io::replicates_csv(summary));
        if (cfg.output.json) {
            json body{{"replicates", cfg.replicates},
                      {"completed", summary.completed},
                      {"failed", summary.failed},
                      {"seeds_distinct", seeds_distinct},
                      {"mean_stage_count", summary.mean_stage_count},
                      {"seed", cfg.sampler.seed},
                      {"config", {{"sampler", sampler_echo(cfg.sampler)}}}};
            if (summary.mean_rmse) body["posterior_mean_rmse"] = *summary.mean_rmse;
            if (summary.evidence_nrmse) body["evidence_nrmse"] = *summary.evidence_nrmse;
            write_summary(dir, std::move(body), wall);
        }
    } catch (const std::exception& ex) {
        return map_error(ex, &dir);
    }
    return exit_ok;
}

int cmd_sequence(ExperimentConfig cfg, bool baseline_tmcmc) {
    fs::path dir(cfg.output.dir);
    DirLock lock(dir);
    auto t0 = std::chrono::steady_clock::now();

    std::vector<std::size_t> baseline_stages;
    try {
        SequenceResult seq = run_sequence(cfg.sequence, cfg.sampler, cfg.inflation);

        if (baseline_tmcmc) {
            for (std::size_t i = 0; i < cfg.sequence_baselines.size(); ++i) {
                SamplerConfig bc = cfg.sampler;
                bc.seed = RandomStream(cfg.sampler.seed).substream(0x62617365ULL, i).key();
                baseline_stages.push_back(
                    run_gtmcmc(cfg.sequence_baselines[i], bc).stages());
            }
        }

        std::ostringstream csv;
        csv << "problem_index,stages,log_evidence,cumulative_density_evaluations";
        if (baseline_tmcmc) csv << ",baseline_tmcmc_stages";
        csv << '\n';
        std::size_t cumulative = 0;
        for (std::size_t i = 0; i < seq.runs.size(); ++i) {
            const RunResult& r = seq.runs[i];
            char sub[32];
            std::snprintf(sub, sizeof(sub), "problem_%03zu", i);
            fs::path pdir = dir / sub;
            fs::create_directories(pdir);
            SamplerConfig echo_cfg = cfg.sampler;
            ExperimentConfig per = cfg;
            per.sampler = echo_cfg;
            write_run_outputs(pdir, per, r, 0.0);

            cumulative += r.total_density_evaluations;
            csv << i << ',' << r.stages() << ',' << io::format_double(r.log_evidence) << ','
                << cumulative;
            if (baseline_tmcmc) csv << ',' << baseline_stages[i];
            csv << '\n';
        }
        io::write_file((dir / "sequence_summary.csv").string(), csv.str());

        double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t total_stages = 0;
        for (const auto& r : seq.runs) total_stages += r.stages();
        json body{{"problems", cfg.sequence.size()},
                  {"completed", seq.runs.size()},
                  {"total_stages", total_stages},
                  {"seed", cfg.sampler.seed},
                  {"config", {{"sampler", sampler_echo(cfg.sampler)}}}};
        if (baseline_tmcmc) {
            std::size_t bt = 0;
            for (std::size_t s : baseline_stages) bt += s;
            body["baseline_tmcmc_total_stages"] = bt;
        }
        if (!seq.completed) body["failure"] = seq.failure;
        write_summary(dir, std::move(body), wall);
        if (!seq.completed) return exit_config;
    } catch (const std::exception& ex) {
        return map_error(ex, &dir);
    }
    return exit_ok;
}

int cmd_validate(std::uint64_t seed, int cases, bool corrupt) {
    bool all_ok = true;
    for (const auto& r : run_validation(seed, cases, corrupt)) {
        std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
        all_ok = all_ok && r.passed;
    }
    return all_ok ? exit_ok : exit_validation;
}

int default_workers() {
    if (const char* env = std::getenv("GTMCMC_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) return w;
    }
    return 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized transitional MCMC experiment harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false, out_set = false;
    std::size_t replicates = 0;
    int workers = default_workers();
    std::string baseline;
    int validate_cases = 1000;
    bool corrupt_cov = false;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* copt = sub->add_option("--config", config_path, "experiment config file (JSON, schema v1)");
        if (needs_config) copt->required();
        sub->add_option("--seed", seed, "override the sampler seed")->each([&](const std::string&) { seed_set = true; });
        sub->add_option("--out", out_dir, "override the output directory")->each([&](const std::string&) { out_set = true; });
        sub->add_option("--workers", workers, "parallel evaluator count");
    };

    auto* run = app.add_subcommand("run", "single sampling run");
    add_common(run, true);
    auto* repl = app.add_subcommand("replicate", "repeated runs with derived seeds");
    add_common(repl, true);
    repl->add_option("--replicates", replicates, "replicate count override");
    auto* seq = app.add_subcommand("sequence", "importance-chained problem sequence");
    add_common(seq, true);
    seq->add_option("--baseline", baseline, "also run an independent baseline (tmcmc)");
    auto* val = app.add_subcommand("validate", "analytic-oracle property suites");
    val->add_option("--seed", seed, "randomization seed");
    val->add_option("--cases", validate_cases, "randomized cases per property");
    val->add_flag("--corrupt-cov", corrupt_cov, "test hook: corrupt the CoV curve")
        ->group(""); // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        if (val->parsed()) return cmd_validate(seed, validate_cases, corrupt_cov);

        std::optional<Mode> mode;
        if (run->parsed()) mode = Mode::Run;
        if (repl->parsed()) mode = Mode::Replicate;
        if (seq->parsed()) mode = Mode::Sequence;

        ExperimentConfig cfg = parse_config(read_file(config_path), mode);
        if (seed_set) cfg.sampler.seed = seed;
        if (out_set) cfg.output.dir = out_dir;
        cfg.sampler.workers = workers;
        if (replicates > 0) cfg.replicates = replicates;

        if (run->parsed()) return cmd_run(std::move(cfg));
        if (repl->parsed()) return cmd_replicate(std::move(cfg));
        if (seq->parsed()) {
            if (!baseline.empty() && baseline != "tmcmc") {
                std::cerr << "error: --baseline only supports \"tmcmc\"\n";
                return exit_config;
            }
            return cmd_sequence(std::move(cfg), baseline == "tmcmc");
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return exit_config;
    }
    return exit_config;
}
