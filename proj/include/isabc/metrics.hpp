#pragma once

// Rates, power split and complexity accounting.

#include <cstdint>
#include <span>
#include <vector>

#include "isabc/config.hpp"

namespace isabc::metrics {

// W log2(1 + s_energy / sigma2).
double bd_rate(double s_energy, double sigma2, double bandwidth_hz);
// W log2(1 + gamma_p).
double primary_rate(double gamma_p, double bandwidth_hz);

struct RateReport {
    double r_primary_bps = 0.0;
    std::vector<double> r_bd_bps;
    double r_sum_bps = 0.0;
    double snr_primary = 0.0;
    std::vector<double> snr_bd;
    double bandwidth_hz = 0.0;
};

// gamma_p is the post-equalization symbol SNR; bd_energy holds the
// fading-averaged deterministic BD energy E|S_z|^2 (conditioned on bit 1).
RateReport rate_report(double gamma_p, std::span<const double> bd_energy, double sigma2, double bandwidth_hz);

struct PowerSplit {
    double eta_db = 0.0;
    double gamma_rmse = 0.0;  // E_pilot / N0
};

// eta = 10 log10(P_pilot / P_data), P_pilot being the pilot block energy and
// P_data the power of one data symbol; also the sensing SNR P_pilot / N0.
PowerSplit power_ratio_eta(double p_pilot, double p_data, double n0);

// Splits a fixed block energy P_pilot + n_data * P_data = total so that
// P_pilot / P_data = 10^(eta/10). Returns {P_pilot, P_data}.
std::pair<double, double> split_energy(double eta_db, double total, double n_data);

// Pairwise (cascade) summation; the result depends only on the order of `x`.
double pairwise_sum(std::span<const double> x);

struct ComplexityReport {
    int n = 0;
    int z = 0;
    // Transmit side per block: OFDM IFFT + AFDM IDAFT (FFT plus two chirp
    // multiplications).
    std::uint64_t fft_butterflies = 0;
    std::uint64_t chirp_multiplies = 0;
    std::uint64_t tx_ops = 0;
    // Device side: one switch decision per BD per block.
    std::uint64_t bd_ops = 0;
    std::uint64_t total_ops = 0;
};

ComplexityReport complexity_counters(const SystemConfig& cfg, int z);

struct TimingFit {
    std::vector<int> sizes;
    std::vector<double> seconds;   // best-of-reps synthesis time per block
    double coefficient = 0.0;      // minimax relative fit of t = a N log2 N
    double max_rel_deviation = 0.0;
};

// Times block synthesis (data grid, OFDM, pilot, CP) for each N and fits
// t = a N log2 N.
TimingFit fit_synthesis_timing(std::span<const int> sizes, int reps);

}  // namespace isabc::metrics
