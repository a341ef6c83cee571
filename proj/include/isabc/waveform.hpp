#pragma once

// Synthesis and analysis of the unified OFDM + AFDM block.
//
// Both the DFT and the discrete affine Fourier transform use the symmetric
// 1/sqrt(N) normalization, so every transform here is unitary:
//
//   idaft: s[n] = 1/sqrt(N) sum_k x[k] exp(j2pi(s c1 n^2 + n k / N + c2 k^2))
//   daft:  x[k] = 1/sqrt(N) sum_n s[n] exp(-j2pi(s c1 n^2 + n k / N + c2 k^2))
//
// with s = -1 for the default down-chirp and +1 for the up-chirp (see
// ChirpOrientation). The fast path is chirp * DFT * chirp.

#include <span>
#include <vector>

#include "isabc/complex_block.hpp"
#include "isabc/config.hpp"

namespace isabc::waveform {

struct OfdmGrid {
    std::vector<cd> data_symbols;
    std::vector<int> active_bins;  // ascending, disjoint from the AFDM bins
};

struct PilotSpec {
    int index = 0;                 // active affine index i
    double amplitude = 0.0;        // sqrt(P_pilot)
    std::vector<int> afdm_bins;    // ascending subcarriers carrying the pilot
};

struct PilotAnalysis {
    PilotSpec spec;
    ComplexBlock freq;
};

ComplexBlock ofdm_modulate(const OfdmGrid& grid, const SystemConfig& cfg);

ComplexBlock idaft(const ComplexBlock& affine_vec, const SystemConfig& cfg);
ComplexBlock daft(const ComplexBlock& time_vec, const SystemConfig& cfg);

// O(N^2) kernel sums of the same transforms. Reference implementations for
// tests and for the complexity report; `c1` is the signed quadratic coefficient.
std::vector<cd> idaft_direct(std::span<const cd> x, double c1, double c2);
std::vector<cd> daft_direct(std::span<const cd> s, double c1, double c2);

// Signed quadratic-phase coefficient used by the transforms (+-c1).
double signed_c1(const SystemConfig& cfg) noexcept;

ComplexBlock generate_pilot_time(const SystemConfig& cfg);
// Same chirp with an arbitrary (possibly off-grid) quadratic coefficient.
ComplexBlock generate_pilot_time(const SystemConfig& cfg, double c1);

// DFT of the pilot and its support. Throws SparsityViolation unless M bins
// spaced c1' apart hold at least 1 - 1e-10 of the energy.
PilotAnalysis pilot_to_frequency(const ComplexBlock& pilot, const SystemConfig& cfg);

// Subcarriers left for OFDM data: the complement of the pilot support.
std::vector<int> complementary_bins(const PilotSpec& pilot, int n);

// Grid on the complementary bins; throws DimensionMismatch if the symbol
// count does not match.
OfdmGrid make_data_grid(std::vector<cd> symbols, const PilotSpec& pilot, int n);

ComplexBlock compose(const ComplexBlock& s_ofdm, const ComplexBlock& pilot);
ComplexBlock add_cp(const ComplexBlock& block, int cp_len);
ComplexBlock remove_cp(const ComplexBlock& block, int cp_len, int n);

// |sum_m P[m] X[m]|
double verify_orthogonality(const ComplexBlock& pilot_freq, const ComplexBlock& ofdm_freq);

// Affine index where a pilot delayed by `delay` samples concentrates.
int shifted_affine_index(const SystemConfig& cfg, int delay) noexcept;

}  // namespace isabc::waveform
