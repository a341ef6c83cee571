#pragma once

// System parameters for the unified OFDM + AFDM block, the backscatter
// channel model and the detector. A SystemConfig can only be obtained through
// validate_config(), so every instance satisfies the invariants below and is
// safe to share read-only between Monte-Carlo workers.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace isabc {

using ParamMap = std::map<std::string, std::string, std::less<>>;

// Direction of the quadratic phase of the AFDM chirp.
//   down: phase -2*pi*c1*n^2. A delay of l samples moves the pilot from affine
//         index i to i + c1'*l, and dechirping maps it to FFT bin +c1'*l.
//   up:   phase +2*pi*c1*n^2. The same delay lands on i - c1'*l.
enum class ChirpOrientation { down, up };

// How multi-tap links are normalized after drawing Rayleigh taps.
//   average:  the power-delay profile sums to one, E[sum |h|^2] = 1.
//   per_draw: every realization is rescaled so sum |h|^2 = 1 exactly.
enum class TapNormalization { average, per_draw };

// Interpolation of the pilot-bin channel estimate onto the data bins.
enum class ChannelInterp { dft, linear };

class SystemConfig {
public:
    // Block / AFDM
    int n() const noexcept { return n_; }
    int c1_prime() const noexcept { return c1_prime_; }
    int m() const noexcept { return n_ / c1_prime_; }
    double c1() const noexcept { return static_cast<double>(c1_prime_) / (2.0 * n_); }
    double c2() const noexcept { return c2_; }
    int pilot_index() const noexcept { return pilot_index_; }
    int cp_len() const noexcept { return cp_len_; }
    int chirp_repetitions() const noexcept { return c1_prime_; }
    ChirpOrientation orientation() const noexcept { return orientation_; }
    // +1 when a delay moves energy to higher affine index (down-chirp).
    int shift_sign() const noexcept { return orientation_ == ChirpOrientation::down ? 1 : -1; }
    bool strict_pow2() const noexcept { return strict_pow2_; }

    // OFDM data and power
    int mod_order() const noexcept { return mod_order_; }
    double p_pilot_db() const noexcept { return p_pilot_db_; }
    double p_data_db() const noexcept { return p_data_db_; }
    double p_pilot() const noexcept;  // linear, total pilot energy per block
    double p_data() const noexcept;   // linear, per data symbol
    double noise_var() const noexcept { return noise_var_; }
    double snr_db() const noexcept;   // 10 log10(p_data / noise_var)

    // Backscatter and detection
    double alpha() const noexcept { return alpha_; }
    double p_fa_target() const noexcept { return p_fa_target_; }
    int delta_tau() const noexcept { return delta_tau_; }
    int num_bds() const noexcept { return num_bds_; }

    // Channel model
    int direct_taps() const noexcept { return direct_taps_; }
    int forward_taps() const noexcept { return forward_taps_; }
    double pdp_decay() const noexcept { return pdp_decay_; }
    double bd_path_gain_db() const noexcept { return bd_path_gain_db_; }
    double bd_path_gain() const noexcept;  // linear power gain of the BS-BD-Rx cascade
    TapNormalization tap_normalization() const noexcept { return tap_normalization_; }
    ChannelInterp channel_interp() const noexcept { return channel_interp_; }

    // Physical mapping
    double sample_rate_hz() const noexcept { return sample_rate_hz_; }
    double bandwidth_hz() const noexcept { return bandwidth_hz_; }

    // Canonical parameter map; validate_config(to_map()) == *this.
    ParamMap to_map() const;

    // Copy with one parameter replaced, re-validated.
    SystemConfig with(std::string_view key, std::string_view value) const;
    SystemConfig with(std::string_view key, double value) const;

    bool operator==(const SystemConfig&) const = default;

private:
    friend SystemConfig validate_config(const ParamMap& raw);
    SystemConfig() = default;

    int n_ = 0;
    int c1_prime_ = 0;
    double c2_ = 0.0;
    int pilot_index_ = 0;
    int cp_len_ = 0;
    int mod_order_ = 4;
    double p_pilot_db_ = 0.0;
    double p_data_db_ = 0.0;
    double alpha_ = 1.0;
    double p_fa_target_ = 1e-3;
    double noise_var_ = 1.0;
    double sample_rate_hz_ = 0.0;
    double bandwidth_hz_ = 0.0;
    int delta_tau_ = 1;
    int num_bds_ = 0;
    int direct_taps_ = 1;
    int forward_taps_ = 1;
    double pdp_decay_ = 1.0;
    double bd_path_gain_db_ = 0.0;
    TapNormalization tap_normalization_ = TapNormalization::average;
    ChannelInterp channel_interp_ = ChannelInterp::dft;
    ChirpOrientation orientation_ = ChirpOrientation::down;
    bool strict_pow2_ = false;
};

// Builds a frozen config. Throws MissingKey or InvalidValue.
//
// Required keys: N, c1_prime, cp_len, mod_order, alpha, p_fa_target,
// pilot_index. Everything else falls back to the documented default; the
// noise level may be given either as noise_var or as snr_db (not both).
SystemConfig validate_config(const ParamMap& raw);

// Reference configuration (N=256, c1'=8, CP=N/4, 4-QAM, i=1,
// alpha=1, P_FA=1e-3) with the default channel model.
SystemConfig default_config();

// R_t = 2 c1 = c1'/N, in cycles per sample^2.
double derived_chirp_rate(const SystemConfig& cfg) noexcept;
// Same rate in Hz/s: R_t * fs^2.
double chirp_rate_hz_per_s(const SystemConfig& cfg) noexcept;

// `key = value` text, one per line, '#' starts a comment.
ParamMap parse_params(std::string_view text);
ParamMap read_params_file(const std::string& path);
std::string serialize(const SystemConfig& cfg);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace isabc
