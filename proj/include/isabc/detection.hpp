#pragma once

// Non-coherent energy detection of BD bits in the affine domain and
// pilot-aided coherent recovery of the OFDM data.
//
// Noise convention: W ~ CN(0, sigma2), E|W|^2 = sigma2. Under H0 an energy
// statistic over K bins is (sigma2/2) chi2_{2K}; under H1 it is
// (sigma2/2) chi2_{2K}(2 Lambda / sigma2) with Lambda = sum |S[k]|^2.

#include <cstdint>
#include <span>
#include <vector>

#include "isabc/channel.hpp"
#include "isabc/complex_block.hpp"
#include "isabc/config.hpp"
#include "isabc/qam.hpp"
#include "isabc/waveform.hpp"

namespace isabc::detection {

struct BdObservation {
    int z = 0;
    std::vector<int> bin_set;
    double energy = 0.0;
    double threshold = 0.0;
    std::uint8_t decision = 0;
};

struct DetectorCalibration {
    double sigma2 = 0.0;
    int k = 1;          // bins per BD; 2K degrees of freedom
    double p_fa = 0.0;
    double xi = 0.0;
};

// daft() of a CP-free received block. Throws DimensionMismatch if len != N.
ComplexBlock afdm_demodulate(const ComplexBlock& y_no_cp, const SystemConfig& cfg);

// Affine bins of BD z (0-based): one per forward tap, at the pilot index
// shifted by l_fmax + l_BD,z + f. Throws OverlapDetected if any two BDs of
// the plan share a bin.
std::vector<int> bd_bin_set(std::size_t z, const channel::DelayPlan& plan, const SystemConfig& cfg);

double energy_statistic(const ComplexBlock& y_affine, std::span<const int> bins);

// xi = (sigma2/2) F^{-1}_{chi2_{2K}}(1 - p_fa).
DetectorCalibration calibrate_threshold(double sigma2, int k, double p_fa);

// Missed-detection probability for signal-to-noise ratio
// lambda = sum |S[k]|^2 / sigma2 (so lambda = 0 gives 1 - p_fa):
// F_{chi2_{2K}(2 lambda)}(F^{-1}_{chi2_{2K}}(1 - p_fa)).
double analytical_pmd(double lambda, int k, double p_fa);

// b_z = 1 iff E_z > xi.
std::vector<BdObservation> detect_bits(const ComplexBlock& y_affine, const channel::DelayPlan& plan,
                                       const SystemConfig& cfg, const DetectorCalibration& cal);

// Deterministic BD energy Lambda_z = sum_{k in I_z} |S[k]|^2 implied by the
// channel draw (direct-path leakage excluded): alpha^2 g |h_b|^2 sum|h_f|^2 P.
double bd_signal_energy(const channel::ChannelRealization& chan, std::size_t z, double alpha,
                        const SystemConfig& cfg);

// Least-squares H = Y/P on the pilot subcarriers, interpolated to every bin
// according to cfg.channel_interp(). Returns N gains. Throws SingularPilot
// if a pilot bin is numerically zero.
std::vector<cd> estimate_h_eff(const ComplexBlock& y_freq, const waveform::PilotAnalysis& pilot,
                               const SystemConfig& cfg);

struct DemapResult {
    std::vector<cd> equalized;      // per active bin, scaled back to unit energy
    std::vector<std::uint8_t> bits;
    std::uint64_t bit_errors = 0;
    std::uint64_t erasures = 0;     // symbols skipped because |H| was zero
};

// S = Y/H on the active bins, then nearest-neighbour demapping. Data symbols
// are assumed to be `amplitude` times unit-energy constellation points.
// `ref_bits` (bits_per_symbol per active bin) may be empty.
DemapResult ofdm_equalize_demap(const ComplexBlock& y_no_cp, std::span<const cd> h_eff,
                                const waveform::OfdmGrid& grid, const qam::Constellation& qam,
                                double amplitude, std::span<const std::uint8_t> ref_bits);

}  // namespace isabc::detection
