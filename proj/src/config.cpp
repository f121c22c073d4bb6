#include "gtmcmc/config.hpp"

#include <json.hpp>

namespace gtmcmc {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) fail("unknown key \"" + it.key() + "\" in " + where);
    }
}

double get_number(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) fail(where + " requires numeric key \"" + key + "\"");
    if (!obj[key].is_number()) fail(where + "." + key + " must be a number");
    return obj[key].get<double>();
}

Point get_vector(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key) || !obj[key].is_array())
        fail(where + " requires array key \"" + key + "\"");
    const auto& arr = obj[key];
    Point v(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        if (!arr[i].is_number()) fail(where + "." + key + " must contain numbers");
        v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
    }
    return v;
}

Matrix get_matrix(const json& obj, const std::string& where, const char* key) {
    if (!obj.contains(key) || !obj[key].is_array())
        fail(where + " requires matrix key \"" + key + "\"");
    const auto& rows = obj[key];
    Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != static_cast<std::size_t>(m.cols()))
            fail(where + "." + key + " must be a rectangular array of arrays");
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                rows[i][j].get<double>();
    }
    return m;
}

LogDensity parse_density(const json& d, const std::string& where);

SampleableDensity parse_sampleable(const json& d, const std::string& where) {
    if (!d.is_object() || !d.contains("kind")) fail(where + " must be an object with \"kind\"");
    std::string kind = d["kind"].get<std::string>();
    if (kind == "gaussian_diag") {
        check_keys(d, where, {"kind", "mean", "variances", "std"});
        Point mean = get_vector(d, where, "mean");
        Point var;
        if (d.contains("variances")) {
            var = get_vector(d, where, "variances");
        } else if (d.contains("std")) {
            var = get_vector(d, where, "std").array().square();
        } else {
            fail(where + " gaussian_diag needs \"variances\" or \"std\"");
        }
        return make_gaussian_diag(mean, var);
    }
    if (kind == "gaussian_full") {
        check_keys(d, where, {"kind", "mean", "cov"});
        return make_gaussian_full(get_vector(d, where, "mean"), get_matrix(d, where, "cov"));
    }
    if (kind == "uniform_box") {
        check_keys(d, where, {"kind", "lo", "hi", "normalized"});
        bool normalized = d.value("normalized", false);
        return make_uniform_box(get_vector(d, where, "lo"), get_vector(d, where, "hi"),
                                normalized);
    }
    if (kind == "gaussian_mixture") {
        check_keys(d, where, {"kind", "components"});
        if (!d.contains("components") || !d["components"].is_array())
            fail(where + " gaussian_mixture needs a \"components\" array");
        std::vector<MixtureComponent> comps;
        for (const auto& c : d["components"]) {
            check_keys(c, where + ".components", {"weight", "mean", "cov"});
            comps.push_back({get_number(c, where, "weight"), get_vector(c, where, "mean"),
                             get_matrix(c, where, "cov")});
        }
        return make_gaussian_mixture(comps);
    }
    fail(where + ": density kind \"" + kind + "\" is not sampleable or unknown");
}

LogDensity parse_density(const json& d, const std::string& where) {
    if (!d.is_object() || !d.contains("kind")) fail(where + " must be an object with \"kind\"");
    std::string kind = d["kind"].get<std::string>();
    if (kind == "rosenbrock3d") {
        check_keys(d, where, {"kind"});
        return make_rosenbrock3d_density();
    }
    return parse_sampleable(d, where).base;
}

void parse_sampler(const json& j, SamplerConfig& cfg) {
    check_keys(j, "sampler",
               {"n", "target_cov", "chain_steps", "seed", "max_stages", "gamma_sq_init",
                "adapt", "feedback_gain", "bisection_tol"});
    if (j.contains("n")) cfg.n = j["n"].get<std::size_t>();
    if (j.contains("target_cov")) cfg.target_cov = j["target_cov"].get<double>();
    if (j.contains("chain_steps")) cfg.chain_steps = j["chain_steps"].get<std::size_t>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("max_stages")) cfg.max_stages = j["max_stages"].get<std::size_t>();
    if (j.contains("gamma_sq_init")) cfg.gamma_sq_init = j["gamma_sq_init"].get<double>();
    if (j.contains("adapt")) cfg.adapt = j["adapt"].get<bool>();
    if (j.contains("feedback_gain")) cfg.feedback_gain = j["feedback_gain"].get<double>();
    if (j.contains("bisection_tol")) cfg.bisection_tol = j["bisection_tol"].get<double>();
    if (cfg.n < 2) fail("sampler.n must be at least 2");
    if (!(cfg.target_cov > 0.0)) fail("sampler.target_cov must be positive");
    if (cfg.chain_steps < 1) fail("sampler.chain_steps must be at least 1");
}

SampleableDensity builtin_importance(const std::string& builtin, const json& spec_json) {
    using namespace problems;
    json imp = spec_json.contains("importance") ? spec_json["importance"] : json("prior");
    if (imp.is_string()) {
        std::string name = imp.get<std::string>();
        if (name == "prior") {
            if (builtin == "gauss4d") return Gauss4d::prior();
            if (builtin == "bimodal2d") return Bimodal2d::prior();
            if (builtin == "rosenbrock3d") return Rosenbrock3d::prior();
        }
        if (name == "posterior" && builtin == "gauss4d") return Gauss4d::posterior_importance();
        if (name == "gtmcmc" && builtin == "rosenbrock3d") return Rosenbrock3d::gtmcmc_importance();
        fail("problem.importance \"" + name + "\" is not defined for builtin " + builtin);
    }
    if (imp.is_number() && builtin == "gauss4d")
        return Gauss4d::importance(imp.get<double>());
    return parse_sampleable(imp, "problem.importance");
}

ProblemSpec builtin_problem(const std::string& builtin, const json& spec_json) {
    using namespace problems;
    SampleableDensity imp = builtin_importance(builtin, spec_json);
    if (builtin == "gauss4d") return Gauss4d::spec(imp);
    if (builtin == "bimodal2d") return Bimodal2d::spec(imp);
    if (builtin == "rosenbrock3d") return Rosenbrock3d::spec(imp);
    fail("unknown builtin problem \"" + builtin + "\"");
}

void parse_truth(const json& j, const std::string& builtin, ReplicateTruth& truth) {
    if (j.is_string()) {
        if (j.get<std::string>() != "analytic")
            fail("truth must be an object or the string \"analytic\"");
        if (builtin == "gauss4d") {
            truth.posterior_mean = problems::Gauss4d::posterior_mean();
            truth.log_evidence = problems::Gauss4d::log_evidence();
            return;
        }
        if (builtin == "bimodal2d") {
            truth.log_evidence = problems::Bimodal2d::evidence().log_evidence;
            return;
        }
        fail("analytic truth is only available for gauss4d and bimodal2d");
    }
    check_keys(j, "truth", {"mean", "log_evidence"});
    if (j.contains("mean")) truth.posterior_mean = get_vector(j, "truth", "mean");
    if (j.contains("log_evidence")) truth.log_evidence = j["log_evidence"].get<double>();
}

Mode parse_mode(const std::string& s) {
    if (s == "run") return Mode::Run;
    if (s == "replicate") return Mode::Replicate;
    if (s == "sequence") return Mode::Sequence;
    if (s == "validate") return Mode::Validate;
    fail("mode must be run, replicate, sequence, or validate (got \"" + s + "\")");
}

} // namespace

ExperimentConfig parse_config(const std::string& text, std::optional<Mode> mode_override) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("parse error: ") + e.what());
    }
    if (!root.is_object()) fail("top level must be an object");
    check_keys(root, "top level",
               {"schema", "mode", "problem", "sampler", "output", "replicates", "truth",
                "sequence", "inflation"});
    if (!root.contains("schema") || root["schema"] != "v1")
        fail("schema version field \"schema\": \"v1\" is required");

    ExperimentConfig cfg;
    if (root.contains("mode")) {
        cfg.mode = parse_mode(root["mode"].get<std::string>());
        if (mode_override && *mode_override != cfg.mode)
            fail("config mode disagrees with the CLI subcommand");
    } else if (mode_override) {
        cfg.mode = *mode_override;
    } else {
        fail("mode is required (in the config or via the subcommand)");
    }

    if (root.contains("sampler")) parse_sampler(root["sampler"], cfg.sampler);
    if (root.contains("replicates")) {
        cfg.replicates = root["replicates"].get<std::size_t>();
        if (cfg.replicates < 2) fail("replicates must be at least 2");
    }
    if (root.contains("inflation")) {
        cfg.inflation = root["inflation"].get<double>();
        if (cfg.inflation < 1.0) fail("inflation must be >= 1");
    }
    if (root.contains("output")) {
        const auto& out = root["output"];
        check_keys(out, "output", {"dir", "formats"});
        if (out.contains("dir")) cfg.output.dir = out["dir"].get<std::string>();
        if (out.contains("formats")) {
            cfg.output.csv = cfg.output.json = false;
            for (const auto& f : out["formats"]) {
                std::string name = f.get<std::string>();
                if (name == "csv") cfg.output.csv = true;
                else if (name == "json") cfg.output.json = true;
                else fail("output.formats entries must be \"csv\" or \"json\"");
            }
        }
    }

    if (cfg.mode == Mode::Sequence) {
        if (!root.contains("sequence")) fail("sequence mode requires a \"sequence\" block");
        const auto& seq = root["sequence"];
        check_keys(seq, "sequence", {"builtin", "length", "drift", "problems"});
        if (seq.contains("builtin")) {
            if (seq["builtin"] != "drifting_sequence")
                fail("unknown sequence builtin");
            std::size_t length = seq.value("length", std::size_t{20});
            double drift = seq.value("drift", 0.2);
            cfg.builtin = "drifting_sequence";
            cfg.sequence = problems::DriftingSequence::make(length, drift);
            for (std::size_t i = 0; i < length; ++i)
                cfg.sequence_baselines.push_back(
                    problems::DriftingSequence::standalone(i, drift));
        } else if (seq.contains("problems")) {
            for (std::size_t i = 0; i < seq["problems"].size(); ++i) {
                const auto& pj = seq["problems"][i];
                std::string where = "sequence.problems[" + std::to_string(i) + "]";
                check_keys(pj, where, {"prior", "likelihood"});
                ChainedProblem cp;
                SampleableDensity prior = parse_sampleable(pj["prior"], where + ".prior");
                cp.prior = prior.base;
                cp.sampleable_prior = prior;
                cp.log_likelihood = parse_density(pj["likelihood"], where + ".likelihood");

                ProblemSpec base;
                base.dim = cp.prior.dim;
                base.prior = cp.prior;
                base.log_likelihood = cp.log_likelihood;
                base.importance = prior;
                cfg.sequence_baselines.push_back(std::move(base));
                cfg.sequence.push_back(std::move(cp));
            }
            if (cfg.sequence.empty()) fail("sequence.problems must be non-empty");
        } else {
            fail("sequence block needs \"builtin\" or \"problems\"");
        }
    } else if (cfg.mode != Mode::Validate) {
        if (!root.contains("problem")) fail("\"problem\" is required for this mode");
        const auto& pj = root["problem"];
        if (pj.contains("builtin")) {
            check_keys(pj, "problem", {"builtin", "importance"});
            cfg.builtin = pj["builtin"].get<std::string>();
            cfg.problem = builtin_problem(cfg.builtin, pj);
        } else {
            check_keys(pj, "problem", {"dim", "prior", "likelihood", "importance"});
            ProblemSpec p;
            p.dim = static_cast<int>(get_number(pj, "problem", "dim"));
            p.prior = parse_density(pj["prior"], "problem.prior");
            p.log_likelihood = parse_density(pj["likelihood"], "problem.likelihood");
            if (!pj.contains("importance")) fail("problem.importance is required");
            p.importance = parse_sampleable(pj["importance"], "problem.importance");
            if (p.prior.dim != p.dim || p.log_likelihood.dim != p.dim ||
                p.importance.base.dim != p.dim)
                fail("problem densities disagree with problem.dim");
            cfg.problem = std::move(p);
        }
    }

    if (root.contains("truth")) parse_truth(root["truth"], cfg.builtin, cfg.truth);
    return cfg;
}

} // namespace gtmcmc
