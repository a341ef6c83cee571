#pragma once

// Multipath links, backscatter reflection and BD delay planning.
//
// All delays are integer sample counts. A block is simulated in isolation:
// linear convolutions run over the CP-extended block and every path delay is
// kept below the CP length, so after CP removal each path is a circular shift.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "isabc/complex_block.hpp"
#include "isabc/config.hpp"
#include "isabc/rng.hpp"

namespace isabc::channel {

struct Tap {
    cd gain;
    int delay = 0;
};

using TapList = std::vector<Tap>;

struct ChannelRealization {
    TapList direct;                 // BS -> Rx, D taps
    std::vector<TapList> forward;   // BS -> BD z, L_f taps each
    std::vector<Tap> backward;      // BD z -> Rx, single tap
    double bd_amplitude = 1.0;      // sqrt of the large-scale BS-BD-Rx power gain

    int max_direct_delay() const;
    int max_forward_delay(std::size_t z) const;
};

struct BdDevice {
    int z = 0;
    int ell_bd = 0;  // intentional delay l_BD,z
    double alpha = 1.0;
    std::vector<std::uint8_t> bits;
};

struct DelayPlan {
    std::vector<int> delays;  // l_BD,z for z = 1..Z
    int delta_min = 0;
    int z_max = 0;
    int ell_dmax = 0;
    int ell_fmax = 0;         // max forward delay, L_f - 1
    int forward_taps = 1;

    // l_fmax + l_BD,z, the shift that places BD z in the affine domain.
    int total_delay(std::size_t z) const { return ell_fmax + delays.at(z); }
};

// Rayleigh taps with an exponential power-delay profile at delays 0..taps-1.
TapList draw_taps(int taps, double pdp_decay, TapNormalization norm, Rng& rng);

// Draws direct (D taps), forward (L_f taps per BD) and backward links.
// Throws InvalidSpread if D - 1 >= cp_len.
ChannelRealization draw_channel(const SystemConfig& cfg, int direct_taps, int forward_taps, int num_bds,
                                Rng& rng);

// Delta l_min = delta_tau + L_f + 1.
int min_delay_spacing(int delta_tau, int forward_taps) noexcept;

// BD capacity: the smaller of floor((CP - l_dmax)/Delta l_min),
// floor((N/c1' - D + 1)/(L_f + 1)) and the number of slots whose full
// reflection path (2 l_fmax + l_BD) still fits strictly inside the CP.
int max_bds(const SystemConfig& cfg, int ell_dmax, int forward_taps, int direct_taps);

// Number of leading plan slots whose affine clusters stay disjoint from each
// other and from the direct-path cluster once indices wrap modulo N.
int alias_free_bds(const SystemConfig& cfg, int ell_dmax, int forward_taps, int direct_taps);

// Assigns l_BD,z = l_dmax + z * Delta l_min for z = 1..Z.
// Throws CapacityExceeded if Z > z_max, CpOverflow if l_dmax >= cp_len.
DelayPlan plan_delays(const SystemConfig& cfg, int ell_dmax, int forward_taps, int direct_taps, int z_requested);

// Independent checker used by tests: returns a description of every
// violated rule (empty when the plan is valid).
std::vector<std::string> validate_plan(const DelayPlan& plan, const SystemConfig& cfg, int direct_taps);

// x_z[n]: zero for bit 0, otherwise alpha * (s * forward) delayed by
// l_fmax + l_BD. Output has the input length. Throws CpOverflow if the
// longest reflected path reaches the CP length.
ComplexBlock bd_reflect(const ComplexBlock& s_with_cp, const BdDevice& dev, const TapList& forward, int bit,
                        const SystemConfig& cfg, int backward_delay = 0);

// y = h_d * s + sum_z h_b,z * x_z + w over the CP-extended block. `bits`
// holds the current bit of each BD. noise_var = 0 disables the noise draw.
ComplexBlock propagate(const ComplexBlock& s_with_cp, std::span<const BdDevice> bds,
                       const ChannelRealization& chan, std::span<const std::uint8_t> bits, double noise_var,
                       Rng& rng, const SystemConfig& cfg);

// Linear convolution truncated to the input length.
std::vector<cd> convolve(std::span<const cd> x, const TapList& taps);

// `link,tap,delay,re,im` rows (link = direct | forward<z> | backward<z>).
std::string to_csv(const ChannelRealization& chan);

}  // namespace isabc::channel
