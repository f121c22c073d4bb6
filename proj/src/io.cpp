#include "gtmcmc/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace gtmcmc {
namespace io {

std::string format_double(double v) {
    char best[40];
    std::snprintf(best, sizeof(best), "%.17g", v);
    // round-trip check: prefer the shortest representation that survives
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == v && std::strlen(buf) < std::strlen(best))
            std::memcpy(best, buf, sizeof(buf));
    }
    return best;
}

std::string stages_csv(const std::vector<StageRecord>& records) {
    std::ostringstream out;
    out << "stage_index,beta,achieved_cov,log_stage_evidence,ess,acceptance_rate,gamma_sq\n";
    for (const auto& r : records) {
        out << r.stage_index << ',' << format_double(r.beta) << ','
            << format_double(r.achieved_cov) << ',' << format_double(r.log_stage_evidence)
            << ',' << format_double(r.ess) << ',' << format_double(r.acceptance_rate) << ','
            << format_double(r.gamma_sq) << '\n';
    }
    return out.str();
}

std::string samples_csv(const Ensemble& e) {
    std::ostringstream out;
    for (int k = 0; k < e.dim(); ++k) out << "x" << k << ',';
    out << "log_prior,log_like,log_importance\n";
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (Eigen::Index k = 0; k < e.points[i].size(); ++k)
            out << format_double(e.points[i][k]) << ',';
        out << format_double(e.logs[i].log_prior) << ',' << format_double(e.logs[i].log_like)
            << ',' << format_double(e.logs[i].log_importance) << '\n';
    }
    return out.str();
}

Ensemble parse_samples_csv(const std::string& text, int dim) {
    Ensemble e;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        Point x(dim);
        for (int k = 0; k < dim; ++k) {
            std::getline(row, cell, ',');
            x[k] = std::stod(cell);
        }
        CachedLogs logs;
        std::getline(row, cell, ',');
        logs.log_prior = std::stod(cell);
        std::getline(row, cell, ',');
        logs.log_like = std::stod(cell);
        std::getline(row, cell, ',');
        logs.log_importance = std::stod(cell);
        e.points.push_back(std::move(x));
        e.logs.push_back(logs);
    }
    return e;
}

std::string replicates_csv(const ReplicateSummary& s) {
    std::ostringstream out;
    int dim = s.posterior_means.empty() ? 0 : static_cast<int>(s.posterior_means.front().size());
    out << "replicate,seed,stages,log_evidence";
    for (int k = 0; k < dim; ++k) out << ",mean" << k;
    out << '\n';
    for (std::size_t r = 0; r < s.stage_counts.size(); ++r) {
        out << r << ',' << s.seeds[r] << ',' << s.stage_counts[r] << ','
            << format_double(s.log_evidences[r]);
        for (Eigen::Index k = 0; k < s.posterior_means[r].size(); ++k)
            out << ',' << format_double(s.posterior_means[r][k]);
        out << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

} // namespace io
} // namespace gtmcmc
