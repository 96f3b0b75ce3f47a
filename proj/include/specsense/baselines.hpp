#pragma once

#include "specsense/itc.hpp"
#include "specsense/spectrum.hpp"

namespace specsense {

/// Reference detectors used for comparison runs. Statistics follow the
/// conventional definitions:
///   ED      block energy per sample over the nominal noise power
///   EV-MME  l_1 / l_p
///   EV-EME  block energy per sample over l_p
///   EV-BCED l_1 over the average eigenvalue (leading-direction energy ratio)
///   EV-AGM  arithmetic over geometric mean of the spectrum
/// ED_Uncertain is ED whose noise-power estimate is off by a per-trial
/// uniform dB error.
struct BaselineKind {
    enum class Tag { ED, ED_Uncertain, EV_MME, EV_EME, EV_BCED, EV_AGM } tag;
    double uncertainty_db = 0.0;  // ED_Uncertain only

    static BaselineKind ed() { return {Tag::ED, 0.0}; }
    static BaselineKind ed_uncertain(double x_db);
    static BaselineKind mme() { return {Tag::EV_MME, 0.0}; }
    static BaselineKind eme() { return {Tag::EV_EME, 0.0}; }
    static BaselineKind bced() { return {Tag::EV_BCED, 0.0}; }
    static BaselineKind agm() { return {Tag::EV_AGM, 0.0}; }

    bool needs_energy() const { return tag == Tag::ED || tag == Tag::ED_Uncertain || tag == Tag::EV_EME; }
};

/// Total energy sum_i ||x_i||^2 of a block, the non-spectral input some
/// baselines need.
double block_energy(const ObservationBlock& block);

double baseline_statistic(const BaselineKind& kind, const EigSpectrum& spec,
                          double block_energy, double sigma2_nominal);

/// (1 - target_pf) empirical quantile of the noise-only statistic over
/// `trials` draws; requires trials >= 20/target_pf.
double empirical_threshold(const BaselineKind& kind, const ModelDims& dims, double target_pf,
                           int trials, Rng& rng);

/// Energy detector with x-dB noise uncertainty: the detector's noise
/// power estimate is off by 10^(U/10), U ~ Uniform[-x_db, x_db] drawn per
/// trial, so its normalized energy statistic is scaled by that factor.
SensingDecision ed_uncertain_decide(const ObservationBlock& block, double x_db,
                                    double threshold, Rng& rng);

}  // namespace specsense
