#pragma once

// Pilot dechirping, delay / range estimation and the bistatic probe that
// measures the direct-path delay spread before BD delays are planned.

#include <span>
#include <vector>

#include "isabc/channel.hpp"
#include "isabc/complex_block.hpp"
#include "isabc/config.hpp"
#include "isabc/rng.hpp"

namespace isabc::sensing {

inline constexpr double kSpeedOfLight = 299'792'458.0;

enum class RangeMode { monostatic, bistatic };

struct DelayEstimate {
    double tau_samples = 0.0;
    double tau_s = 0.0;
    double range_m = 0.0;
    int peak_bin = 0;
    double peak_mag = 0.0;
};

struct SensingResult {
    std::vector<DelayEstimate> targets;  // ascending delay
    double rmse_m = 0.0;
};

struct ProbeResult {
    int ell_dmax = 0;
    std::vector<int> detected;  // every delay whose peak crossed the threshold
    double threshold = 0.0;
    // Detection probability of the weakest reported path at its measured
    // SNR; low values mean the spread may be under-reported.
    double confidence = 1.0;
};

// y * conj(p) / |p| per sample. Throws DimensionMismatch.
ComplexBlock dechirp(const ComplexBlock& y_s, const ComplexBlock& pilot);

// Monostatic echo of the pilot: sum_z amp_z * p delayed by delays[z]
// (circularly, i.e. after CP removal) plus CN(0, noise_var) noise.
ComplexBlock sensing_echo(const ComplexBlock& pilot, std::span<const int> delays, std::span<const double> amps,
                          double noise_var, Rng& rng);

// Picks the `expected_count` strongest FFT bins of the dechirped block that
// lie at least c1' bins apart (circularly; ties go to the lower bin) and
// converts each to a delay bin / (R_t N) = bin / c1'. Result is sorted by
// delay. Throws TooFewPeaks.
std::vector<DelayEstimate> estimate_delays(const ComplexBlock& dechirped, const SystemConfig& cfg,
                                           int expected_count, RangeMode mode = RangeMode::monostatic);

// monostatic: c tau / 2, bistatic: c tau.
double to_range(double tau_s, RangeMode mode);

// Root mean squared difference. Throws EmptyInput / DimensionMismatch.
double rmse(std::span<const double> estimates, std::span<const double> truths);

// Pilot-only block through the direct link (BDs silent). Delays whose
// dechirped peak exceeds the Bonferroni-corrected threshold
// (sigma2/2) F^{-1}_{chi2_2}(1 - p_fa/N) are reported. Throws NoPathDetected.
ProbeResult probe_environment(const SystemConfig& cfg, const channel::ChannelRealization& chan, double sigma2,
                              Rng& rng);

// Accumulates delay and range errors side by side; range_rmse() must equal
// range_factor * delay_rmse().
class RmseAccumulator {
public:
    explicit RmseAccumulator(RangeMode mode) : mode_(mode) {}
    void add(double tau_hat_s, double tau_true_s);
    std::size_t count() const noexcept { return n_; }
    double delay_rmse_s() const;
    double range_rmse_m() const;
    // c for bistatic, c/2 for monostatic.
    double range_factor() const noexcept;
    // |range_rmse - factor * delay_rmse| / range_rmse (0 when both are 0).
    double consistency_gap() const;
    void merge(const RmseAccumulator& other);

private:
    RangeMode mode_;
    std::size_t n_ = 0;
    double sq_tau_ = 0.0;
    double sq_range_ = 0.0;
};

}  // namespace isabc::sensing
