// Command-line front end: Monte Carlo experiments (pf, pd, compare, gitc),
// closed-form threshold calibration, and a Tracy-Widom table check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "specsense/harness.hpp"
#include "specsense/rmt.hpp"
#include "specsense/tracy_widom.hpp"

namespace {

using namespace specsense;

struct CommonFlags {
    std::string config_path;
    int M = 0, K = 0, L = 0, N = 0;
    int trials = 0, workers = 0;
    std::uint64_t seed = 0;
    std::string snr;  // start:step:stop
    std::string detectors;
    std::string out;
    std::string format;
    std::string mode;
    double rolloff = -1.0;
    double analytic_bias = -1.0;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file (flags override it)");
    cmd->add_option("--M", f.M, "samples per observation window");
    cmd->add_option("--K", f.K, "antennas / over-sampling factor");
    cmd->add_option("--L", f.L, "channel taps");
    cmd->add_option("--N", f.N, "observations per trial");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--snr", f.snr, "SNR grid in dB as start:step:stop");
    cmd->add_option("--detectors", f.detectors, "comma-separated detector list");
    cmd->add_option("--out", f.out, "report path (default: stdout)");
    cmd->add_option("--format", f.format, "csv or json");
    cmd->add_option("--mode", f.mode, "multi-antenna or over-sampling");
    cmd->add_option("--rolloff", f.rolloff, "over-sampling filter roll-off");
    cmd->add_option("--workers", f.workers, "parallel trial workers");
    cmd->add_option("--analytic-bias", f.analytic_bias, "bias added to gitc targets");
}

std::vector<double> parse_snr_range(const std::string& text) {
    double start = 0, step = 0, stop = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &step, &stop, &extra) != 3 ||
        step == 0.0)
        throw std::invalid_argument("config: --snr must be start:step:stop with step != 0");
    std::vector<double> grid;
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n < 1 || n > 10000)
        throw std::invalid_argument("config: --snr range is empty or too large");
    for (int i = 0; i < n; ++i) grid.push_back(start + i * step);
    return grid;
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

ExperimentConfig build_config(const CLI::App* cmd, const CommonFlags& f,
                              const ExperimentConfig& defaults) {
    ExperimentConfig cfg = defaults;
    if (cmd->count("--config")) {
        std::ifstream in(f.config_path);
        if (!in)
            throw std::invalid_argument("config: cannot open config file " + f.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = config_from_json_string(buf.str());
    }
    int M = cfg.dims.M(), K = cfg.dims.K(), L = cfg.dims.L(), N = cfg.dims.N();
    if (cmd->count("--M")) M = f.M;
    if (cmd->count("--K")) K = f.K;
    if (cmd->count("--L")) L = f.L;
    if (cmd->count("--N")) N = f.N;
    try {
        cfg.dims = ModelDims(M, K, L, N);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string(e.what()) + " (key: dims)");
    }
    if (cmd->count("--trials")) cfg.trials = f.trials;
    if (cmd->count("--seed")) cfg.master_seed = f.seed;
    if (cmd->count("--snr")) cfg.snr_grid_db = parse_snr_range(f.snr);
    if (cmd->count("--detectors")) {
        cfg.detectors.clear();
        for (const auto& name : split_commas(f.detectors))
            cfg.detectors.push_back(DetectorSpec::parse(name));
    }
    if (cmd->count("--out")) cfg.out_path = f.out;
    if (cmd->count("--format")) {
        if (f.format == "csv") cfg.format = ReportFormat::Csv;
        else if (f.format == "json") cfg.format = ReportFormat::Json;
        else throw std::invalid_argument("config: format must be csv or json (key: format)");
    }
    if (cmd->count("--mode")) {
        if (f.mode == "multi-antenna") cfg.over_sampling.reset();
        else if (f.mode == "over-sampling") cfg.over_sampling = OverSamplingConfig{};
        else throw std::invalid_argument("config: mode must be multi-antenna or over-sampling (key: mode)");
    }
    if (cmd->count("--rolloff")) {
        if (!cfg.over_sampling)
            throw std::invalid_argument("config: --rolloff requires over-sampling mode (key: mode)");
        cfg.over_sampling->rolloff = f.rolloff;
    }
    if (cmd->count("--workers")) cfg.workers = f.workers;
    if (cmd->count("--analytic-bias")) cfg.analytic_bias = f.analytic_bias;
    cfg.validate();
    return cfg;
}

void emit_report(const ExperimentReport& report) {
    const std::string text =
        report.config.format == ReportFormat::Csv ? report.to_csv() : report.to_json_string();
    if (report.config.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(report.config.out_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report to " + report.config.out_path);
        out << text;
    }
    for (const auto& s : report.summaries) {
        std::cerr << s.detector << ": P_f = " << s.pf_hat() << " (" << s.h0_decisions << "/"
                  << s.h0_trials << ")";
        if (s.pf_analytic) std::cerr << ", analytic " << *s.pf_analytic;
        std::cerr << "\n";
    }
    for (const auto& t : report.thresholds)
        std::cerr << t.detector << ": threshold " << t.threshold << " for target P_f "
                  << t.target_pf << "\n";
}

std::vector<DetectorSpec> detector_list(std::initializer_list<const char*> names) {
    std::vector<DetectorSpec> out;
    for (const char* n : names) out.push_back(DetectorSpec::parse(n));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind eigenvalue-based spectrum sensing experiments"};
    app.require_subcommand(1);

    CommonFlags pf_flags, pd_flags, cmp_flags, gitc_flags;
    auto* pf_cmd = app.add_subcommand("pf", "false-alarm experiment (noise-only trials)");
    auto* pd_cmd = app.add_subcommand("pd", "detection experiment over an SNR grid");
    auto* cmp_cmd = app.add_subcommand("compare", "ITC vs baseline detectors at matched P_f");
    auto* gitc_cmd = app.add_subcommand("gitc", "threshold-calibrated experiment");
    add_common_flags(pf_cmd, pf_flags);
    add_common_flags(pd_cmd, pd_flags);
    add_common_flags(cmp_cmd, cmp_flags);
    add_common_flags(gitc_cmd, gitc_flags);

    std::string gitc_targets = "0.1,0.05,0.01";
    gitc_cmd->add_option("--targets", gitc_targets, "comma-separated target P_f values");

    auto* cal_cmd = app.add_subcommand("calibrate", "solve the closed form for gamma");
    int cal_p = 20, cal_n = 1000;
    double cal_target = 0.1;
    cal_cmd->add_option("--p", cal_p, "observation dimension p = M*K")->required();
    cal_cmd->add_option("--N", cal_n, "observations")->required();
    cal_cmd->add_option("--target-pf", cal_target, "target false-alarm probability")->required();

    auto* tw_cmd = app.add_subcommand("tw-check", "print Tracy-Widom table checksum and spot values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (pf_cmd->parsed()) {
            ExperimentConfig defaults;
            defaults.snr_grid_db = {-20.0, -16.0, -12.0, -8.0};
            defaults.detectors = detector_list({"sitc-aic", "sitc-mdl", "oitc-aic", "oitc-mdl"});
            emit_report(run_pf_experiment(build_config(pf_cmd, pf_flags, defaults)));
        } else if (pd_cmd->parsed()) {
            ExperimentConfig defaults;
            defaults.snr_grid_db = {-20.0, -18.0, -16.0, -14.0, -12.0, -10.0};
            defaults.detectors = detector_list({"sitc-aic", "sitc-mdl"});
            emit_report(run_pd_experiment(build_config(pd_cmd, pd_flags, defaults)));
        } else if (cmp_cmd->parsed()) {
            ExperimentConfig defaults;
            defaults.snr_grid_db = {-18.0, -16.0, -14.0, -12.0};
            defaults.detectors = detector_list({"sitc-aic", "sitc-mdl", "ed", "ed-unc@1.5dB",
                                                "ev-mme", "ev-eme", "ev-bced", "ev-agm"});
            emit_report(run_comparison(build_config(cmp_cmd, cmp_flags, defaults)));
        } else if (gitc_cmd->parsed()) {
            ExperimentConfig defaults;
            defaults.dims = ModelDims(5, 4, 10, 1000);
            defaults.snr_grid_db = {-14.0, -12.0, -10.0, -8.0};
            defaults.detectors = detector_list({"sitc-aic"});  // replaced by gitc entries
            std::vector<double> targets;
            for (const auto& t : split_commas(gitc_targets)) targets.push_back(std::stod(t));
            emit_report(run_gitc_threshold_experiment(build_config(gitc_cmd, gitc_flags, defaults),
                                                      targets));
        } else if (cal_cmd->parsed()) {
            try {
                const double gamma = calibrate_gamma(cal_target, cal_p, cal_n);
                std::printf("gamma %.10f\n", gamma);
                std::printf("pf_analytic %.6g\n", pf_analytic(cal_p, cal_n, gamma));
            } catch (const CalibrationRangeError& e) {
                std::cerr << "error: " << e.what() << "\n";
                std::cerr << "attainable P_f range: [" << e.attainable_min << ", "
                          << e.attainable_max << "]\n";
                return 2;
            }
        } else if (tw_cmd->parsed()) {
            const Tw2Table& table = Tw2Table::instance();
            std::printf("checksum fnv1a64 %016llx\n",
                        static_cast<unsigned long long>(table.file_checksum()));
            std::printf("grid [%g, %g], %zu points, accuracy %g\n", table.s_min(), table.s_max(),
                        table.size(), table.accuracy());
            for (double s : {-3.0, -2.0, -1.0, 0.0})
                std::printf("F2(%5.2f) = %.10f\n", s, table.cdf(s));
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
