#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specsense/baselines.hpp"
#include "specsense/model.hpp"
#include "specsense/whitening.hpp"

namespace specsense {

/// One detector entry of an experiment: the three ITC families (with
/// criterion or explicit threshold) plus the reference detectors.
struct DetectorSpec {
    enum class Kind {
        SITC_AIC,
        SITC_MDL,
        OITC_AIC,
        OITC_MDL,
        GITC,
        ED,
        ED_UNCERTAIN,
        EV_MME,
        EV_EME,
        EV_BCED,
        EV_AGM
    };
    Kind kind = Kind::SITC_AIC;
    double gamma = 0.0;           // GITC only
    double uncertainty_db = 0.0;  // ED_UNCERTAIN only

    /// Stable display name, e.g. "sitc-aic", "gitc@1.0372", "ed-unc@1.5dB".
    std::string name() const;
    /// Inverse of name(); throws std::invalid_argument on unknown names.
    static DetectorSpec parse(const std::string& text);

    bool is_itc() const;
    bool is_baseline() const { return !is_itc(); }

    bool operator==(const DetectorSpec&) const = default;
};

// Default roll-off 1.0: a K-times over-sampled raised-cosine ACF induces a
// correlation matrix of numerical rank ~ p(1+rolloff)/K, so narrow filters
// under heavy over-sampling are rejected as singular by whitening_matrix.
struct OverSamplingConfig {
    double rolloff = 1.0;
    bool operator==(const OverSamplingConfig&) const = default;
};

enum class ReportFormat { Csv, Json };

struct ExperimentConfig {
    ModelDims dims{5, 4, 10, 10000};
    std::vector<double> snr_grid_db;
    int trials = 1000;
    std::vector<DetectorSpec> detectors;
    std::uint64_t master_seed = 1;
    std::optional<OverSamplingConfig> over_sampling;  // absent = multi-antenna mode
    double analytic_bias = 0.02;  // added to GITC calibration targets
    int workers = 1;
    std::string out_path;  // empty = stdout
    ReportFormat format = ReportFormat::Csv;

    /// Throws std::invalid_argument naming the offending key.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

struct ReportRow {
    std::string detector;
    Hypothesis hypothesis = Hypothesis::H0;
    double snr_db = 0.0;
    int trials = 0;
    int decisions_h1 = 0;
    std::optional<double> analytic;           // pf_analytic or averaged Q(rho)
    std::optional<double> analytic_lower;     // averaged Q(delta_p)
    std::optional<double> analytic_upper;     // averaged Q(delta_1)

    double p_hat() const { return trials ? static_cast<double>(decisions_h1) / trials : 0.0; }
    double std_err() const;
};

/// Binomial standard error of a difference of two proportion estimates.
double se_diff(const ReportRow& a, const ReportRow& b);

struct DetectorSummary {
    std::string detector;
    int h0_trials = 0;
    int h0_decisions = 0;  // false alarms, aggregated over the SNR grid
    std::optional<double> pf_analytic;

    double pf_hat() const { return h0_trials ? static_cast<double>(h0_decisions) / h0_trials : 0.0; }
};

struct AgreementCount {
    std::string detector_a, detector_b;
    int agree = 0;
    int total = 0;
};

struct ThresholdRecord {
    std::string detector;
    double threshold = 0.0;
    double target_pf = 0.0;  // requested operating point
};

struct ExperimentReport {
    std::string experiment;
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    std::vector<DetectorSummary> summaries;
    std::vector<AgreementCount> agreements;
    std::vector<ThresholdRecord> thresholds;
    std::string seed_derivation = "fnv1a64(master_seed, experiment_id, index) -> splitmix64";

    std::string to_csv() const;
    std::string to_json_string() const;

    const ReportRow* find_row(const std::string& detector, Hypothesis hyp, double snr_db) const;
    const DetectorSummary* find_summary(const std::string& detector) const;
};

/// Noise-only trials across the SNR grid: per-detector false-alarm rows,
/// aggregate P_f summaries, closed-form overlays and SITC/OITC agreement
/// counts. Baselines are not allowed here (no threshold); use
/// run_comparison.
ExperimentReport run_pf_experiment(const ExperimentConfig& cfg);

/// Signal-present trials, fresh channel per trial, per SNR grid point;
/// attaches channel-averaged conditional-P_d overlays with bounds.
ExperimentReport run_pd_experiment(const ExperimentConfig& cfg);

/// Calibrates every baseline to SITC-AIC's empirical false-alarm rate,
/// then measures the joint P_f and P_d of all detectors at the matched
/// operating point.
ExperimentReport run_comparison(const ExperimentConfig& cfg);

/// For each target P_f: calibrates a GITC threshold through the closed
/// form (with the configured analytic bias added), then measures
/// empirical P_f and P_d at that threshold.
ExperimentReport run_gitc_threshold_experiment(const ExperimentConfig& cfg,
                                               const std::vector<double>& targets);

/// JSON config <-> struct converters used by the CLI and the report echo.
ExperimentConfig config_from_json_string(const std::string& text);
std::string config_to_json_string(const ExperimentConfig& cfg);

}  // namespace specsense
