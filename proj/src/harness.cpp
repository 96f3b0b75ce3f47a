#include "specsense/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "specsense/rmt.hpp"
#include "specsense/rng.hpp"

namespace specsense {

using nlohmann::json;

// ---------------------------------------------------------------- detectors

namespace {

std::string format_double(const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

}  // namespace

std::string DetectorSpec::name() const {
    switch (kind) {
        case Kind::SITC_AIC: return "sitc-aic";
        case Kind::SITC_MDL: return "sitc-mdl";
        case Kind::OITC_AIC: return "oitc-aic";
        case Kind::OITC_MDL: return "oitc-mdl";
        case Kind::GITC: return "gitc@" + format_double("%.6g", gamma);
        case Kind::ED: return "ed";
        case Kind::ED_UNCERTAIN: return "ed-unc@" + format_double("%.4g", uncertainty_db) + "dB";
        case Kind::EV_MME: return "ev-mme";
        case Kind::EV_EME: return "ev-eme";
        case Kind::EV_BCED: return "ev-bced";
        case Kind::EV_AGM: return "ev-agm";
    }
    return "?";
}

DetectorSpec DetectorSpec::parse(const std::string& text) {
    DetectorSpec d;
    if (text == "sitc-aic") d.kind = Kind::SITC_AIC;
    else if (text == "sitc-mdl") d.kind = Kind::SITC_MDL;
    else if (text == "oitc-aic") d.kind = Kind::OITC_AIC;
    else if (text == "oitc-mdl") d.kind = Kind::OITC_MDL;
    else if (text == "ed") d.kind = Kind::ED;
    else if (text == "ev-mme") d.kind = Kind::EV_MME;
    else if (text == "ev-eme") d.kind = Kind::EV_EME;
    else if (text == "ev-bced") d.kind = Kind::EV_BCED;
    else if (text == "ev-agm") d.kind = Kind::EV_AGM;
    else if (text.rfind("gitc@", 0) == 0) {
        d.kind = Kind::GITC;
        d.gamma = std::stod(text.substr(5));
        if (!(d.gamma >= 1.0))
            throw std::invalid_argument("config: gitc threshold must be >= 1 (key: detectors)");
    } else if (text.rfind("ed-unc@", 0) == 0) {
        d.kind = Kind::ED_UNCERTAIN;
        auto body = text.substr(7);
        if (body.size() >= 2 && body.substr(body.size() - 2) == "dB")
            body = body.substr(0, body.size() - 2);
        d.uncertainty_db = std::stod(body);
        if (d.uncertainty_db < 0.0)
            throw std::invalid_argument("config: ed-unc dB must be >= 0 (key: detectors)");
    } else {
        throw std::invalid_argument("config: unknown detector '" + text + "' (key: detectors)");
    }
    return d;
}

bool DetectorSpec::is_itc() const {
    return kind == Kind::SITC_AIC || kind == Kind::SITC_MDL || kind == Kind::OITC_AIC ||
           kind == Kind::OITC_MDL || kind == Kind::GITC;
}

void ExperimentConfig::validate() const {
    if (trials < 1) throw std::invalid_argument("config: trials must be >= 1 (key: trials)");
    if (detectors.empty())
        throw std::invalid_argument("config: detector list is empty (key: detectors)");
    for (double s : snr_grid_db)
        if (!std::isfinite(s))
            throw std::invalid_argument("config: SNR grid has non-finite entry (key: snr_grid_db)");
    if (workers < 1) throw std::invalid_argument("config: workers must be >= 1 (key: workers)");
    if (!(analytic_bias >= 0.0 && analytic_bias < 1.0))
        throw std::invalid_argument("config: analytic_bias must be in [0, 1) (key: analytic_bias)");
    if (over_sampling && (over_sampling->rolloff < 0.0 || over_sampling->rolloff > 1.0))
        throw std::invalid_argument("config: rolloff must be in [0, 1] (key: mode)");
}

// ------------------------------------------------------------------ report

double ReportRow::std_err() const {
    if (trials == 0) return 0.0;
    const double p = p_hat();
    return std::sqrt(p * (1.0 - p) / trials);
}

double se_diff(const ReportRow& a, const ReportRow& b) {
    const double se = std::sqrt(a.std_err() * a.std_err() + b.std_err() * b.std_err());
    const double floor = 1.0 / std::max(1, std::min(a.trials, b.trials));
    return std::max(se, floor);
}

namespace {

const char* hyp_name(Hypothesis h) { return h == Hypothesis::H0 ? "H0" : "H1"; }

}  // namespace

std::string ExperimentReport::to_csv() const {
    std::string out = "detector,hypothesis,snr_db,trials,decisions_h1,p_hat,std_err,analytic\n";
    for (const auto& r : rows) {
        out += r.detector;
        out += ',';
        out += hyp_name(r.hypothesis);
        out += ',';
        out += format_double("%.6g", r.snr_db);
        out += ',';
        out += std::to_string(r.trials);
        out += ',';
        out += std::to_string(r.decisions_h1);
        out += ',';
        out += format_double("%.10g", r.p_hat());
        out += ',';
        out += format_double("%.10g", r.std_err());
        out += ',';
        if (r.analytic) out += format_double("%.10g", *r.analytic);
        out += '\n';
    }
    return out;
}

const ReportRow* ExperimentReport::find_row(const std::string& detector, Hypothesis hyp,
                                            double snr_db) const {
    for (const auto& r : rows)
        if (r.detector == detector && r.hypothesis == hyp && r.snr_db == snr_db) return &r;
    return nullptr;
}

const DetectorSummary* ExperimentReport::find_summary(const std::string& detector) const {
    for (const auto& s : summaries)
        if (s.detector == detector) return &s;
    return nullptr;
}

// ------------------------------------------------------------- config JSON

namespace {

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["schema"] = 1;
    j["dims"] = {{"M", cfg.dims.M()}, {"K", cfg.dims.K()}, {"L", cfg.dims.L()}, {"N", cfg.dims.N()}};
    j["snr_grid_db"] = cfg.snr_grid_db;
    j["trials"] = cfg.trials;
    json dets = json::array();
    for (const auto& d : cfg.detectors) {
        if (d.kind == DetectorSpec::Kind::GITC)
            dets.push_back(json{{"gitc", d.gamma}});
        else if (d.kind == DetectorSpec::Kind::ED_UNCERTAIN)
            dets.push_back(json{{"ed-unc", d.uncertainty_db}});
        else
            dets.push_back(d.name());
    }
    j["detectors"] = dets;
    j["master_seed"] = cfg.master_seed;
    if (cfg.over_sampling)
        j["mode"] = {{"over-sampling", {{"rolloff", cfg.over_sampling->rolloff}}}};
    else
        j["mode"] = "multi-antenna";
    j["analytic_bias"] = cfg.analytic_bias;
    j["workers"] = cfg.workers;
    j["out"] = cfg.out_path;
    j["format"] = cfg.format == ReportFormat::Csv ? "csv" : "json";
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    static const std::vector<std::string> known = {
        "schema", "dims",          "snr_grid_db", "trials", "detectors",
        "master_seed", "mode",     "analytic_bias", "workers", "out",
        "format"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const auto& k : known) ok = ok || it.key() == k;
        if (!ok) throw std::invalid_argument("config: unknown key '" + it.key() + "'");
    }
    if (j.contains("schema") && j["schema"].get<int>() != 1)
        throw std::invalid_argument("config: unsupported schema version (key: schema)");

    ExperimentConfig cfg;
    if (j.contains("dims")) {
        const auto& d = j["dims"];
        for (const char* k : {"M", "K", "L", "N"})
            if (!d.contains(k))
                throw std::invalid_argument(std::string("config: dims missing (key: dims.") + k + ")");
        try {
            cfg.dims = ModelDims(d["M"].get<int>(), d["K"].get<int>(), d["L"].get<int>(),
                                 d["N"].get<int>());
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(std::string(e.what()) + " (key: dims)");
        }
    }
    if (j.contains("snr_grid_db")) cfg.snr_grid_db = j["snr_grid_db"].get<std::vector<double>>();
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("detectors")) {
        cfg.detectors.clear();
        for (const auto& item : j["detectors"]) {
            if (item.is_string()) {
                cfg.detectors.push_back(DetectorSpec::parse(item.get<std::string>()));
            } else if (item.is_object() && item.contains("gitc")) {
                DetectorSpec d;
                d.kind = DetectorSpec::Kind::GITC;
                d.gamma = item["gitc"].get<double>();
                cfg.detectors.push_back(d);
            } else if (item.is_object() && item.contains("ed-unc")) {
                DetectorSpec d;
                d.kind = DetectorSpec::Kind::ED_UNCERTAIN;
                d.uncertainty_db = item["ed-unc"].get<double>();
                cfg.detectors.push_back(d);
            } else {
                throw std::invalid_argument("config: malformed detector entry (key: detectors)");
            }
        }
    }
    if (j.contains("master_seed")) cfg.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("mode")) {
        const auto& m = j["mode"];
        if (m.is_string() && m.get<std::string>() == "multi-antenna") {
            cfg.over_sampling.reset();
        } else if (m.is_object() && m.contains("over-sampling")) {
            OverSamplingConfig os;
            if (m["over-sampling"].contains("rolloff"))
                os.rolloff = m["over-sampling"]["rolloff"].get<double>();
            cfg.over_sampling = os;
        } else {
            throw std::invalid_argument("config: malformed mode (key: mode)");
        }
    }
    if (j.contains("analytic_bias")) cfg.analytic_bias = j["analytic_bias"].get<double>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("out")) cfg.out_path = j["out"].get<std::string>();
    if (j.contains("format")) {
        const auto f = j["format"].get<std::string>();
        if (f == "csv") cfg.format = ReportFormat::Csv;
        else if (f == "json") cfg.format = ReportFormat::Json;
        else throw std::invalid_argument("config: format must be csv or json (key: format)");
    }
    cfg.validate();
    return cfg;
}

}  // namespace

ExperimentConfig config_from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    return config_from_json(j);
}

std::string config_to_json_string(const ExperimentConfig& cfg) {
    return config_to_json(cfg).dump(2);
}

std::string ExperimentReport::to_json_string() const {
    json j;
    j["schema"] = 1;
    j["experiment"] = experiment;
    j["config"] = config_to_json(config);
    j["seed_derivation"] = seed_derivation;
    json rws = json::array();
    for (const auto& r : rows) {
        json o{{"detector", r.detector},      {"hypothesis", hyp_name(r.hypothesis)},
               {"snr_db", r.snr_db},          {"trials", r.trials},
               {"decisions_h1", r.decisions_h1}, {"p_hat", r.p_hat()},
               {"std_err", r.std_err()}};
        if (r.analytic) o["analytic"] = *r.analytic;
        if (r.analytic_lower) o["analytic_lower"] = *r.analytic_lower;
        if (r.analytic_upper) o["analytic_upper"] = *r.analytic_upper;
        rws.push_back(o);
    }
    j["rows"] = rws;
    json sums = json::array();
    for (const auto& s : summaries) {
        json o{{"detector", s.detector},
               {"h0_trials", s.h0_trials},
               {"h0_decisions", s.h0_decisions},
               {"pf_hat", s.pf_hat()}};
        if (s.pf_analytic) o["pf_analytic"] = *s.pf_analytic;
        sums.push_back(o);
    }
    j["summaries"] = sums;
    json ags = json::array();
    for (const auto& a : agreements)
        ags.push_back(json{{"detector_a", a.detector_a},
                           {"detector_b", a.detector_b},
                           {"agree", a.agree},
                           {"total", a.total}});
    j["agreements"] = ags;
    json ths = json::array();
    for (const auto& t : thresholds)
        ths.push_back(json{{"detector", t.detector},
                           {"threshold", t.threshold},
                           {"target_pf", t.target_pf}});
    j["thresholds"] = ths;
    return j.dump(2) + "\n";
}

// ------------------------------------------------------------ trial engine

namespace {

struct TrialSetup {
    ModelDims dims;
    ReceiveMode mode = ReceiveMode::MultiAntenna;
    std::optional<Eigen::MatrixXd> coloring;  // Q^(1/2), over-sampling only
    std::optional<Eigen::MatrixXd> whitener;  // Q^(-1/2)
};

TrialSetup make_setup(const ExperimentConfig& cfg) {
    TrialSetup s{cfg.dims};
    if (cfg.over_sampling) {
        s.mode = ReceiveMode::OverSampling;
        const FilterAcf acf =
            FilterAcf::raised_cosine(cfg.over_sampling->rolloff, cfg.dims.K(), cfg.dims.p());
        s.coloring = correlation_sqrt(acf, cfg.dims);
        s.whitener = whitening_matrix(acf, cfg.dims);
    }
    return s;
}

void parallel_for(int n, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

// Evaluates every configured detector on one freshly generated trial.
// `thresholds[i]` holds the calibrated threshold for baseline entries
// (ignored by ITC entries). Returns one H1/H0 bit per detector and, when
// `analytics` is non-null, the per-detector conditional-P_d estimates of
// the ITC entries.
std::vector<std::uint8_t> run_trial(const ExperimentConfig& cfg, const TrialSetup& setup,
                                    const std::vector<double>& thresholds, double snr_db,
                                    Hypothesis hyp, std::uint64_t seed,
                                    std::vector<PdEstimate>* analytics) {
    Rng rng(seed);
    const ChannelRealization ch = sample_channel(setup.dims, rng, setup.mode);
    ObservationBlock block = generate_observations(
        ch, setup.dims, snr_db, hyp, rng, setup.coloring ? &*setup.coloring : nullptr);
    if (setup.whitener) block = whiten(block, *setup.whitener);
    const EigSpectrum spec = spectrum_of(block);
    const double energy = block_energy(block);

    std::vector<std::uint8_t> decisions(cfg.detectors.size(), 0);
    for (size_t i = 0; i < cfg.detectors.size(); ++i) {
        const DetectorSpec& d = cfg.detectors[i];
        bool h1 = false;
        switch (d.kind) {
            case DetectorSpec::Kind::SITC_AIC:
                h1 = sitc_decide(spec, Criterion::AIC).hypothesis == Hypothesis::H1;
                break;
            case DetectorSpec::Kind::SITC_MDL:
                h1 = sitc_decide(spec, Criterion::MDL).hypothesis == Hypothesis::H1;
                break;
            case DetectorSpec::Kind::OITC_AIC:
                h1 = oitc_estimate(spec, Criterion::AIC) > 0;
                break;
            case DetectorSpec::Kind::OITC_MDL:
                h1 = oitc_estimate(spec, Criterion::MDL) > 0;
                break;
            case DetectorSpec::Kind::GITC:
                h1 = gitc_decide(spec, d.gamma).hypothesis == Hypothesis::H1;
                break;
            case DetectorSpec::Kind::ED_UNCERTAIN:
                h1 = ed_uncertain_decide(block, d.uncertainty_db, thresholds[i], rng)
                         .hypothesis == Hypothesis::H1;
                break;
            case DetectorSpec::Kind::ED:
            case DetectorSpec::Kind::EV_MME:
            case DetectorSpec::Kind::EV_EME:
            case DetectorSpec::Kind::EV_BCED:
            case DetectorSpec::Kind::EV_AGM: {
                BaselineKind kind = BaselineKind::ed();
                if (d.kind == DetectorSpec::Kind::EV_MME) kind = BaselineKind::mme();
                if (d.kind == DetectorSpec::Kind::EV_EME) kind = BaselineKind::eme();
                if (d.kind == DetectorSpec::Kind::EV_BCED) kind = BaselineKind::bced();
                if (d.kind == DetectorSpec::Kind::EV_AGM) kind = BaselineKind::agm();
                h1 = baseline_statistic(kind, spec, energy, block.noise_power) > thresholds[i];
                break;
            }
        }
        decisions[i] = h1 ? 1 : 0;
    }

    if (analytics) {
        analytics->assign(cfg.detectors.size(), PdEstimate{});
        const AnalyticContext ctx = make_analytic_context(ch, setup.dims, block.noise_power, 1.0);
        for (size_t i = 0; i < cfg.detectors.size(); ++i) {
            const DetectorSpec& d = cfg.detectors[i];
            if (!d.is_itc()) continue;
            CriterionOrGamma cg = Criterion::AIC;
            if (d.kind == DetectorSpec::Kind::SITC_MDL || d.kind == DetectorSpec::Kind::OITC_MDL)
                cg = Criterion::MDL;
            else if (d.kind == DetectorSpec::Kind::GITC)
                cg = d.gamma;
            (*analytics)[i] = pd_conditional(ctx, cg);
        }
    }
    return decisions;
}

double effective_gamma(const DetectorSpec& d, const ModelDims& dims) {
    switch (d.kind) {
        case DetectorSpec::Kind::SITC_AIC:
        case DetectorSpec::Kind::OITC_AIC:
            return criterion_threshold(Criterion::AIC, dims.p(), dims.N());
        case DetectorSpec::Kind::SITC_MDL:
        case DetectorSpec::Kind::OITC_MDL:
            return criterion_threshold(Criterion::MDL, dims.p(), dims.N());
        case DetectorSpec::Kind::GITC:
            return d.gamma;
        default:
            return 0.0;
    }
}

double snr_for_trial(const ExperimentConfig& cfg, int t) {
    if (cfg.snr_grid_db.empty()) return 0.0;
    return cfg.snr_grid_db[static_cast<size_t>(t) % cfg.snr_grid_db.size()];
}

void count_agreements(const ExperimentConfig& cfg,
                      const std::vector<std::vector<std::uint8_t>>& decisions,
                      ExperimentReport& report) {
    auto find_detector = [&](DetectorSpec::Kind k) -> int {
        for (size_t i = 0; i < cfg.detectors.size(); ++i)
            if (cfg.detectors[i].kind == k) return static_cast<int>(i);
        return -1;
    };
    const std::pair<DetectorSpec::Kind, DetectorSpec::Kind> pairs[] = {
        {DetectorSpec::Kind::SITC_AIC, DetectorSpec::Kind::OITC_AIC},
        {DetectorSpec::Kind::SITC_MDL, DetectorSpec::Kind::OITC_MDL}};
    for (const auto& [ka, kb] : pairs) {
        const int a = find_detector(ka), b = find_detector(kb);
        if (a < 0 || b < 0) continue;
        const std::string name_a = cfg.detectors[static_cast<size_t>(a)].name();
        const std::string name_b = cfg.detectors[static_cast<size_t>(b)].name();
        AgreementCount* ac = nullptr;
        for (auto& existing : report.agreements)
            if (existing.detector_a == name_a && existing.detector_b == name_b) ac = &existing;
        if (!ac) {
            report.agreements.push_back({name_a, name_b, 0, 0});
            ac = &report.agreements.back();
        }
        ac->total += static_cast<int>(decisions.size());
        for (const auto& dec : decisions)
            if (dec[static_cast<size_t>(a)] == dec[static_cast<size_t>(b)]) ac->agree++;
    }
}

// Noise-only phase: one row per (detector, snr), plus aggregate false-alarm
// summaries and SITC/OITC agreement counts.
void pf_phase(const ExperimentConfig& cfg, const TrialSetup& setup,
              const std::vector<double>& thresholds, const std::string& stream_id,
              ExperimentReport& report) {
    std::vector<std::vector<std::uint8_t>> decisions(static_cast<size_t>(cfg.trials));
    parallel_for(cfg.trials, cfg.workers, [&](int t) {
        decisions[static_cast<size_t>(t)] =
            run_trial(cfg, setup, thresholds, snr_for_trial(cfg, t), Hypothesis::H0,
                      derive_seed(cfg.master_seed, stream_id, static_cast<std::uint64_t>(t)),
                      nullptr);
    });

    std::vector<double> grid = cfg.snr_grid_db;
    if (grid.empty()) grid.push_back(0.0);
    for (size_t i = 0; i < cfg.detectors.size(); ++i) {
        const DetectorSpec& d = cfg.detectors[i];
        std::optional<double> analytic;
        if (d.is_itc()) analytic = pf_analytic(cfg.dims.p(), cfg.dims.N(), effective_gamma(d, cfg.dims));
        DetectorSummary sum{d.name(), 0, 0, analytic};
        for (size_t g = 0; g < grid.size(); ++g) {
            ReportRow row{d.name(), Hypothesis::H0, grid[g], 0, 0, analytic, {}, {}};
            for (int t = static_cast<int>(g); t < cfg.trials;
                 t += static_cast<int>(grid.size())) {
                row.trials++;
                row.decisions_h1 += decisions[static_cast<size_t>(t)][i];
            }
            sum.h0_trials += row.trials;
            sum.h0_decisions += row.decisions_h1;
            report.rows.push_back(std::move(row));
        }
        report.summaries.push_back(std::move(sum));
    }

    // agreement between the simplified and full-argmin rules, same trials
    count_agreements(cfg, decisions, report);
}

// Signal-present phase: cfg.trials per SNR grid point; optional
// channel-averaged conditional-P_d overlays on ITC rows.
void pd_phase(const ExperimentConfig& cfg, const TrialSetup& setup,
              const std::vector<double>& thresholds, const std::string& stream_prefix,
              bool with_overlays, ExperimentReport& report) {
    if (cfg.snr_grid_db.empty())
        throw std::invalid_argument("config: P_d experiment needs an SNR grid (key: snr_grid_db)");

    for (size_t g = 0; g < cfg.snr_grid_db.size(); ++g) {
        const double snr = cfg.snr_grid_db[g];
        const std::string stream_id = stream_prefix + ":g=" + std::to_string(g);
        std::vector<std::vector<std::uint8_t>> decisions(static_cast<size_t>(cfg.trials));
        std::vector<std::vector<PdEstimate>> overlays(
            with_overlays ? static_cast<size_t>(cfg.trials) : 0);
        parallel_for(cfg.trials, cfg.workers, [&](int t) {
            decisions[static_cast<size_t>(t)] = run_trial(
                cfg, setup, thresholds, snr, Hypothesis::H1,
                derive_seed(cfg.master_seed, stream_id, static_cast<std::uint64_t>(t)),
                with_overlays ? &overlays[static_cast<size_t>(t)] : nullptr);
        });

        for (size_t i = 0; i < cfg.detectors.size(); ++i) {
            ReportRow row{cfg.detectors[i].name(), Hypothesis::H1, snr, cfg.trials, 0, {}, {}, {}};
            for (const auto& dec : decisions) row.decisions_h1 += dec[i];
            if (with_overlays && cfg.detectors[i].is_itc()) {
                double est = 0.0, lo = 0.0, hi = 0.0;
                for (const auto& ov : overlays) {
                    est += ov[i].estimate;
                    lo += ov[i].lower;
                    hi += ov[i].upper;
                }
                row.analytic = est / cfg.trials;
                row.analytic_lower = lo / cfg.trials;
                row.analytic_upper = hi / cfg.trials;
            }
            report.rows.push_back(std::move(row));
        }
        count_agreements(cfg, decisions, report);
    }
}

void require_no_baselines(const ExperimentConfig& cfg, const char* experiment) {
    for (const auto& d : cfg.detectors)
        if (d.is_baseline())
            throw std::invalid_argument(std::string("config: baseline detectors need calibrated "
                                                    "thresholds; use the compare experiment (got ") +
                                        d.name() + " in " + experiment + ", key: detectors)");
}

// Canonical statistic name so e.g. ed and ed-unc share one calibration
// stream (equal nominal thresholds).
std::string calibration_stream_key(const DetectorSpec& d) {
    switch (d.kind) {
        case DetectorSpec::Kind::ED:
        case DetectorSpec::Kind::ED_UNCERTAIN: return "ed";
        case DetectorSpec::Kind::EV_MME: return "ev-mme";
        case DetectorSpec::Kind::EV_EME: return "ev-eme";
        case DetectorSpec::Kind::EV_BCED: return "ev-bced";
        case DetectorSpec::Kind::EV_AGM: return "ev-agm";
        default: return "";
    }
}

BaselineKind baseline_kind_of(const DetectorSpec& d) {
    switch (d.kind) {
        case DetectorSpec::Kind::ED: return BaselineKind::ed();
        case DetectorSpec::Kind::ED_UNCERTAIN: return BaselineKind::ed_uncertain(d.uncertainty_db);
        case DetectorSpec::Kind::EV_MME: return BaselineKind::mme();
        case DetectorSpec::Kind::EV_EME: return BaselineKind::eme();
        case DetectorSpec::Kind::EV_BCED: return BaselineKind::bced();
        case DetectorSpec::Kind::EV_AGM: return BaselineKind::agm();
        default: throw std::logic_error("not a baseline");
    }
}

}  // namespace

ExperimentReport run_pf_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    require_no_baselines(cfg, "pf");
    ExperimentReport report;
    report.experiment = "pf";
    report.config = cfg;
    const TrialSetup setup = make_setup(cfg);
    pf_phase(cfg, setup, std::vector<double>(cfg.detectors.size(), 0.0), "pf", report);
    return report;
}

ExperimentReport run_pd_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    require_no_baselines(cfg, "pd");
    ExperimentReport report;
    report.experiment = "pd";
    report.config = cfg;
    const TrialSetup setup = make_setup(cfg);
    pd_phase(cfg, setup, std::vector<double>(cfg.detectors.size(), 0.0), "pd", true, report);
    return report;
}

ExperimentReport run_comparison(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentReport report;
    report.experiment = "compare";
    report.config = cfg;
    const TrialSetup setup = make_setup(cfg);

    // operating point: SITC-AIC's own empirical false-alarm rate
    ExperimentConfig probe = cfg;
    probe.detectors = {DetectorSpec{DetectorSpec::Kind::SITC_AIC}};
    ExperimentReport probe_report;
    probe_report.config = probe;
    pf_phase(probe, setup, {0.0}, "compare:match", probe_report);
    const double matched_pf =
        std::max(probe_report.summaries.front().pf_hat(), 20.0 / cfg.trials);

    // calibrate each distinct baseline statistic at that operating point
    std::vector<double> thresholds(cfg.detectors.size(), 0.0);
    std::vector<int> to_calibrate;
    for (size_t i = 0; i < cfg.detectors.size(); ++i)
        if (cfg.detectors[i].is_baseline()) to_calibrate.push_back(static_cast<int>(i));
    parallel_for(static_cast<int>(to_calibrate.size()), cfg.workers, [&](int idx) {
        const size_t i = static_cast<size_t>(to_calibrate[static_cast<size_t>(idx)]);
        const DetectorSpec& d = cfg.detectors[i];
        Rng rng(derive_seed(cfg.master_seed, "compare:cal:" + calibration_stream_key(d), 0));
        thresholds[i] =
            empirical_threshold(baseline_kind_of(d), cfg.dims, matched_pf, cfg.trials, rng);
    });
    for (int i : to_calibrate)
        report.thresholds.push_back({cfg.detectors[static_cast<size_t>(i)].name(),
                                     thresholds[static_cast<size_t>(i)], matched_pf});

    pf_phase(cfg, setup, thresholds, "compare:pf", report);
    pd_phase(cfg, setup, thresholds, "compare:pd", true, report);
    return report;
}

ExperimentReport run_gitc_threshold_experiment(const ExperimentConfig& cfg,
                                               const std::vector<double>& targets) {
    cfg.validate();
    if (targets.empty())
        throw std::invalid_argument("config: gitc experiment needs targets (key: targets)");

    ExperimentConfig effective = cfg;
    effective.detectors.clear();
    ExperimentReport report;
    report.experiment = "gitc";
    for (double target : targets) {
        if (!(target > 0.0 && target < 1.0))
            throw std::invalid_argument("config: targets must be in (0, 1) (key: targets)");
        DetectorSpec d;
        d.kind = DetectorSpec::Kind::GITC;
        d.gamma = calibrate_gamma(target + cfg.analytic_bias, cfg.dims.p(), cfg.dims.N());
        effective.detectors.push_back(d);
        report.thresholds.push_back({d.name(), d.gamma, target});
    }
    report.config = effective;
    const TrialSetup setup = make_setup(effective);
    const std::vector<double> no_thresholds(effective.detectors.size(), 0.0);
    pf_phase(effective, setup, no_thresholds, "gitc:pf", report);
    if (!effective.snr_grid_db.empty())
        pd_phase(effective, setup, no_thresholds, "gitc:pd", true, report);
    return report;
}

}  // namespace specsense
