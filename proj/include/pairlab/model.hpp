#pragma once

#include <cstdint>
#include <string>

namespace pairlab {

inline constexpr double kSpeedOfLightMps = 299792458.0;

// Microring resonance. FWHM and lifetime are derived, not stored: the type
// cannot go out of sync with (Q, lambda).
struct ResonatorParams {
    double loaded_q = 9.2e4;
    double intrinsic_q = 9.0e5;
    double center_wavelength_nm = 1554.9;

    double fwhm_ghz() const;
    double lifetime_tau_ps() const;
    void validate() const;
};

struct ResonanceDerived {
    double fwhm_ghz;
    double lifetime_ps;
};
ResonanceDerived resonance_derived(double loaded_q, double center_wavelength_nm);

// Pump/signal/idler wavelengths. Energy conservation 2/lp = 1/ls + 1/li must
// hold to within one resonator linewidth; idler_nm <= 0 requests the
// energy-exact value.
struct WavelengthPlan {
    double pump_nm = 1554.9;
    double signal_nm = 1535.5;
    double idler_nm = -1.0;

    static double energy_matched_idler_nm(double pump_nm, double signal_nm);
    double resolved_idler_nm() const;
    // frequency mismatch |2*nu_p - nu_s - nu_i| in GHz
    double energy_mismatch_ghz() const;
    void validate(double linewidth_ghz) const;
};

struct ChannelLossBudget {
    double coupling_db = 3.5;
    double filter_db = 5.0;
    double detector_efficiency = 0.9;

    double optical_transmittance() const;  // filters + coupling only
    double total_transmittance() const;    // including the detector
    void validate() const;
};

// Source strength plus the uncorrelated-background model. Noise coefficients
// are rates at the filter output (before the detector): the same photons pass
// whatever detector/splitter sits downstream in a given experiment.
struct SourceParams {
    double pgr_coefficient_hz_per_mw2 = 149e6;  // PGR = R * P^2
    double pump_power_mw = 0.0106;
    double dark_count_rate_hz = 10.0;  // per detector
    double correlation_sigma_ps = 133.8;  // Gaussian sigma of the fitted coincidence peak
    double noise_linear_signal_hz_per_mw = 0.0;
    double noise_linear_idler_hz_per_mw = 0.0;
    double noise_quad_signal_hz_per_mw2 = 2.6285e6;
    double noise_quad_idler_hz_per_mw2 = 3.4669e7;

    void validate() const;
};

struct JitterModel {
    double sigma_per_detector_ps = 53.7;
    void validate() const;
};

struct TimingParams {
    double acquisition_s = 30.0;
    std::int64_t stop_delay_ps = 50'000;      // cable delay on the stop (idler) channel
    std::int64_t cable_delay_bc_ps = 2'500;   // centers true pairs in the coincidence gate
    std::int64_t coincidence_window_ps = 5'000;
    std::int64_t hardware_resolution_ps = 80;
    std::int64_t histogram_bin_ps = 160;
    std::int64_t histogram_span_ps = 100'000;
    std::int64_t dead_time_ps = 0;
    std::int64_t min_pair_gap_ps = 0;  // test hook: >0 suppresses multi-pair emission

    void validate() const;
};

struct ExperimentConfig {
    ResonatorParams resonator;
    WavelengthPlan wavelengths;
    ChannelLossBudget signal_loss;
    ChannelLossBudget idler_loss{3.5, 7.2, 0.9};
    ChannelLossBudget herald_split_b_loss{3.5, 7.2, 0.65};
    ChannelLossBudget herald_split_c_loss{3.5, 7.2, 0.65};
    SourceParams source;
    JitterModel jitter;
    TimingParams timing;
    std::uint64_t rng_seed = 20240917;
    std::uint64_t max_events = 100'000'000;

    void validate() const;
    std::int64_t duration_ps() const;
};

// standard decibel conversion; rejects negative loss
double db_to_transmittance(double loss_db);

double pair_generation_rate_hz(const SourceParams& source);

struct Brightness {
    double pairs_per_s_ghz;
    double spectral_pairs_per_s_ghz_mw2;
};
Brightness brightness(double pgr_hz, double fwhm_ghz, double pump_power_mw);

// ---- closed-form expected rates (the sim's size guard and the analytic
// oracles both read these) ----

double noise_rate_at_filter_signal_hz(const SourceParams& source);
double noise_rate_at_filter_idler_hz(const SourceParams& source);

struct PairExperimentRates {
    double mu_hz;               // on-chip pair rate
    double signal_hz;           // total detected singles, signal channel
    double idler_hz;
    double signal_pair_hz;      // pair-photon part only
    double idler_pair_hz;
    double coincidence_hz;      // detected true-pair coincidence rate
};
PairExperimentRates expected_pair_rates(const ExperimentConfig& cfg);

struct G2ExperimentRates {
    double mu_hz;
    double herald_hz;        // channel A total
    double herald_pair_hz;
    double arm_b_hz;         // channel B total
    double arm_c_hz;
    double arm_pair_each_hz; // pair-photon rate per arm
};
G2ExperimentRates expected_g2_rates(const ExperimentConfig& cfg);

}  // namespace pairlab
