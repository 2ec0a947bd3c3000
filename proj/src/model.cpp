#include "pairlab/model.hpp"

#include "pairlab/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace pairlab {

namespace {
void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
}
}  // namespace

double db_to_transmittance(double loss_db) {
    if (!(loss_db >= 0.0)) {
        throw ConfigError("db_to_transmittance: loss must be >= 0 dB, got " +
                          std::to_string(loss_db));
    }
    return std::pow(10.0, -loss_db / 10.0);
}

ResonanceDerived resonance_derived(double loaded_q, double center_wavelength_nm) {
    require(loaded_q > 0, "resonator: loaded_q must be positive");
    require(center_wavelength_nm > 0, "resonator: wavelength must be positive");
    const double nu_hz = kSpeedOfLightMps / (center_wavelength_nm * 1e-9);
    const double fwhm_hz = nu_hz / loaded_q;
    return {fwhm_hz / 1e9, 1e12 / (2.0 * std::numbers::pi * fwhm_hz)};
}

double ResonatorParams::fwhm_ghz() const {
    return resonance_derived(loaded_q, center_wavelength_nm).fwhm_ghz;
}

double ResonatorParams::lifetime_tau_ps() const {
    return resonance_derived(loaded_q, center_wavelength_nm).lifetime_ps;
}

void ResonatorParams::validate() const {
    require(loaded_q > 0 && intrinsic_q > 0, "resonator: quality factors must be positive");
    require(loaded_q <= intrinsic_q, "resonator: loaded_q must not exceed intrinsic_q");
    require(center_wavelength_nm > 0, "resonator: wavelength must be positive");
}

double WavelengthPlan::energy_matched_idler_nm(double pump_nm, double signal_nm) {
    return 1.0 / (2.0 / pump_nm - 1.0 / signal_nm);
}

double WavelengthPlan::resolved_idler_nm() const {
    return idler_nm > 0 ? idler_nm : energy_matched_idler_nm(pump_nm, signal_nm);
}

double WavelengthPlan::energy_mismatch_ghz() const {
    const double li = resolved_idler_nm();
    // (1/nm) * (1e9 nm/m) * c (m/s) / (1e9 Hz/GHz) = c numerically
    const double per_nm = 2.0 / pump_nm - 1.0 / signal_nm - 1.0 / li;
    return std::abs(per_nm) * kSpeedOfLightMps;
}

void WavelengthPlan::validate(double linewidth_ghz) const {
    require(pump_nm > 0 && signal_nm > 0, "wavelengths: must be positive");
    require(resolved_idler_nm() > 0, "wavelengths: idler must be positive");
    const double mismatch = energy_mismatch_ghz();
    if (mismatch > linewidth_ghz) {
        std::ostringstream os;
        os << "wavelengths: 2/pump - 1/signal - 1/idler off by " << mismatch
           << " GHz, more than one resonator linewidth (" << linewidth_ghz
           << " GHz); set idler_nm = auto for the energy-matched value";
        throw ConfigError(os.str());
    }
}

double ChannelLossBudget::optical_transmittance() const {
    return db_to_transmittance(coupling_db) * db_to_transmittance(filter_db);
}

double ChannelLossBudget::total_transmittance() const {
    return optical_transmittance() * detector_efficiency;
}

void ChannelLossBudget::validate() const {
    require(coupling_db >= 0 && filter_db >= 0, "loss budget: dB losses must be >= 0");
    require(detector_efficiency > 0 && detector_efficiency <= 1,
            "loss budget: detector efficiency must be in (0, 1]");
    const double t = total_transmittance();
    require(t > 0 && t <= 1, "loss budget: total transmittance out of range");
}

void SourceParams::validate() const {
    require(pgr_coefficient_hz_per_mw2 >= 0, "source: R must be >= 0");
    require(pump_power_mw >= 0, "source: pump power must be >= 0");
    require(dark_count_rate_hz >= 0, "source: dark rate must be >= 0");
    require(correlation_sigma_ps > 0, "source: correlation sigma must be positive");
    require(noise_linear_signal_hz_per_mw >= 0 && noise_linear_idler_hz_per_mw >= 0 &&
                noise_quad_signal_hz_per_mw2 >= 0 && noise_quad_idler_hz_per_mw2 >= 0,
            "source: noise coefficients must be >= 0");
}

void JitterModel::validate() const {
    require(sigma_per_detector_ps >= 0, "jitter: sigma must be >= 0");
}

void TimingParams::validate() const {
    require(acquisition_s > 0, "timing: acquisition time must be positive");
    require(coincidence_window_ps > 0, "timing: coincidence window must be positive");
    require(hardware_resolution_ps > 0, "timing: hardware resolution must be positive");
    require(histogram_bin_ps > 0 && histogram_bin_ps % hardware_resolution_ps == 0,
            "timing: histogram bin must be a positive multiple of the hardware resolution");
    require(histogram_span_ps >= histogram_bin_ps, "timing: histogram span too small");
    require(dead_time_ps >= 0 && min_pair_gap_ps >= 0, "timing: delays must be >= 0");
}

void ExperimentConfig::validate() const {
    resonator.validate();
    wavelengths.validate(resonator.fwhm_ghz());
    signal_loss.validate();
    idler_loss.validate();
    herald_split_b_loss.validate();
    herald_split_c_loss.validate();
    source.validate();
    jitter.validate();
    timing.validate();
    require(max_events > 0, "max_events must be positive");
}

std::int64_t ExperimentConfig::duration_ps() const {
    return static_cast<std::int64_t>(std::llround(timing.acquisition_s * 1e12));
}

double pair_generation_rate_hz(const SourceParams& source) {
    return source.pgr_coefficient_hz_per_mw2 * source.pump_power_mw * source.pump_power_mw;
}

Brightness brightness(double pgr_hz, double fwhm_ghz, double pump_power_mw) {
    if (!(fwhm_ghz > 0)) throw ConfigError("brightness: fwhm must be positive");
    Brightness b{};
    b.pairs_per_s_ghz = pgr_hz / fwhm_ghz;
    if (pgr_hz == 0.0) {
        b.spectral_pairs_per_s_ghz_mw2 = 0.0;
        return b;
    }
    if (!(pump_power_mw > 0)) {
        throw ConfigError("brightness: spectral brightness needs pump power > 0");
    }
    b.spectral_pairs_per_s_ghz_mw2 = b.pairs_per_s_ghz / (pump_power_mw * pump_power_mw);
    return b;
}

double noise_rate_at_filter_signal_hz(const SourceParams& s) {
    return s.noise_linear_signal_hz_per_mw * s.pump_power_mw +
           s.noise_quad_signal_hz_per_mw2 * s.pump_power_mw * s.pump_power_mw;
}

double noise_rate_at_filter_idler_hz(const SourceParams& s) {
    return s.noise_linear_idler_hz_per_mw * s.pump_power_mw +
           s.noise_quad_idler_hz_per_mw2 * s.pump_power_mw * s.pump_power_mw;
}

PairExperimentRates expected_pair_rates(const ExperimentConfig& cfg) {
    PairExperimentRates r{};
    r.mu_hz = pair_generation_rate_hz(cfg.source);
    const double ts = cfg.signal_loss.total_transmittance();
    const double ti = cfg.idler_loss.total_transmittance();
    r.signal_pair_hz = r.mu_hz * ts;
    r.idler_pair_hz = r.mu_hz * ti;
    r.signal_hz = r.signal_pair_hz +
                  noise_rate_at_filter_signal_hz(cfg.source) * cfg.signal_loss.detector_efficiency +
                  cfg.source.dark_count_rate_hz;
    r.idler_hz = r.idler_pair_hz +
                 noise_rate_at_filter_idler_hz(cfg.source) * cfg.idler_loss.detector_efficiency +
                 cfg.source.dark_count_rate_hz;
    r.coincidence_hz = r.mu_hz * ts * ti;
    return r;
}

G2ExperimentRates expected_g2_rates(const ExperimentConfig& cfg) {
    G2ExperimentRates r{};
    r.mu_hz = pair_generation_rate_hz(cfg.source);
    r.herald_pair_hz = r.mu_hz * cfg.signal_loss.total_transmittance();
    r.herald_hz = r.herald_pair_hz +
                  noise_rate_at_filter_signal_hz(cfg.source) * cfg.signal_loss.detector_efficiency +
                  cfg.source.dark_count_rate_hz;
    r.arm_pair_each_hz = 0.5 * r.mu_hz * cfg.herald_split_b_loss.total_transmittance();
    const double noise_i = noise_rate_at_filter_idler_hz(cfg.source);
    r.arm_b_hz = 0.5 * r.mu_hz * cfg.herald_split_b_loss.total_transmittance() +
                 0.5 * noise_i * cfg.herald_split_b_loss.detector_efficiency +
                 cfg.source.dark_count_rate_hz;
    r.arm_c_hz = 0.5 * r.mu_hz * cfg.herald_split_c_loss.total_transmittance() +
                 0.5 * noise_i * cfg.herald_split_c_loss.detector_efficiency +
                 cfg.source.dark_count_rate_hz;
    return r;
}

}  // namespace pairlab
