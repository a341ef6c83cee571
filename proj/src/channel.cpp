#include "isabc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "isabc/errors.hpp"

namespace isabc::channel {

int ChannelRealization::max_direct_delay() const { return direct.empty() ? 0 : direct.back().delay; }

int ChannelRealization::max_forward_delay(std::size_t z) const {
    const auto& f = forward.at(z);
    return f.empty() ? 0 : f.back().delay;
}

TapList draw_taps(int taps, double pdp_decay, TapNormalization norm, Rng& rng) {
    std::vector<double> pdp(static_cast<std::size_t>(taps));
    double sum = 0.0;
    for (int d = 0; d < taps; ++d) sum += pdp[static_cast<std::size_t>(d)] = std::exp(-d / pdp_decay);
    TapList out(static_cast<std::size_t>(taps));
    double drawn = 0.0;
    for (int d = 0; d < taps; ++d) {
        out[static_cast<std::size_t>(d)] = {rng.cn(pdp[static_cast<std::size_t>(d)] / sum), d};
        drawn += std::norm(out[static_cast<std::size_t>(d)].gain);
    }
    if (norm == TapNormalization::per_draw && drawn > 0.0) {
        const double s = 1.0 / std::sqrt(drawn);
        for (auto& t : out) t.gain *= s;
    }
    return out;
}

ChannelRealization draw_channel(const SystemConfig& cfg, int direct_taps, int forward_taps, int num_bds,
                                Rng& rng) {
    if (direct_taps < 1 || forward_taps < 1) throw InvalidSpread("draw_channel: need at least one tap per link");
    if (direct_taps - 1 >= cfg.cp_len()) throw InvalidSpread("draw_channel: direct delay spread exceeds CP");
    if (2 * (forward_taps - 1) >= cfg.cp_len())
        throw InvalidSpread("draw_channel: forward delay spread exceeds CP");
    ChannelRealization ch;
    ch.direct = draw_taps(direct_taps, cfg.pdp_decay(), cfg.tap_normalization(), rng);
    ch.forward.reserve(static_cast<std::size_t>(num_bds));
    ch.backward.reserve(static_cast<std::size_t>(num_bds));
    for (int z = 0; z < num_bds; ++z) {
        ch.forward.push_back(draw_taps(forward_taps, cfg.pdp_decay(), cfg.tap_normalization(), rng));
        // Single line-of-sight tap of unit power.
        ch.backward.push_back({std::polar(1.0, rng.phase()), 0});
    }
    ch.bd_amplitude = std::sqrt(cfg.bd_path_gain());
    return ch;
}

int min_delay_spacing(int delta_tau, int forward_taps) noexcept { return delta_tau + forward_taps + 1; }

int max_bds(const SystemConfig& cfg, int ell_dmax, int forward_taps, int direct_taps) {
    const int spacing = min_delay_spacing(cfg.delta_tau(), forward_taps);
    const int ell_fmax = forward_taps - 1;
    const int by_cp = (cfg.cp_len() - ell_dmax) / spacing;
    const int by_affine = std::max(0, cfg.m() - direct_taps + 1) / (forward_taps + 1);
    int by_path = 0;
    while (ell_dmax + (by_path + 1) * spacing + 2 * ell_fmax < cfg.cp_len()) ++by_path;
    return std::max(0, std::min({by_cp, by_affine, by_path}));
}

int alias_free_bds(const SystemConfig& cfg, int ell_dmax, int forward_taps, int direct_taps) {
    const int m = cfg.m();
    const int spacing = min_delay_spacing(cfg.delta_tau(), forward_taps);
    const int ell_fmax = forward_taps - 1;
    // Affine index i + c1' l depends on l only modulo M.
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    for (int l = 0; l <= std::max(ell_dmax, direct_taps - 1); ++l) used[static_cast<std::size_t>(l % m)] = true;
    const int cap = max_bds(cfg, ell_dmax, forward_taps, direct_taps);
    for (int z = 1; z <= cap; ++z) {
        const int base = ell_dmax + z * spacing + ell_fmax;
        for (int f = 0; f < forward_taps; ++f)
            if (used[static_cast<std::size_t>((base + f) % m)]) return z - 1;
        for (int f = 0; f < forward_taps; ++f) used[static_cast<std::size_t>((base + f) % m)] = true;
    }
    return cap;
}

DelayPlan plan_delays(const SystemConfig& cfg, int ell_dmax, int forward_taps, int direct_taps, int z_requested) {
    if (ell_dmax < 0 || ell_dmax >= cfg.cp_len()) throw CpOverflow("plan_delays: l_dmax must lie in [0, CP)");
    if (forward_taps < 1 || direct_taps < 1) throw InvalidSpread("plan_delays: need at least one tap per link");
    DelayPlan plan;
    plan.delta_min = min_delay_spacing(cfg.delta_tau(), forward_taps);
    plan.z_max = max_bds(cfg, ell_dmax, forward_taps, direct_taps);
    plan.ell_dmax = ell_dmax;
    plan.ell_fmax = forward_taps - 1;
    plan.forward_taps = forward_taps;
    if (z_requested > plan.z_max)
        throw CapacityExceeded("plan_delays: " + std::to_string(z_requested) + " BDs requested, at most " +
                               std::to_string(plan.z_max) + " fit");
    for (int z = 1; z <= z_requested; ++z) plan.delays.push_back(ell_dmax + z * plan.delta_min);
    return plan;
}

std::vector<std::string> validate_plan(const DelayPlan& plan, const SystemConfig& cfg, int direct_taps) {
    std::vector<std::string> bad;
    const int spacing = cfg.delta_tau() + plan.forward_taps + 1;
    if (plan.delta_min != spacing) bad.push_back("delta_min differs from delta_tau + L_f + 1");

    const int first = (cfg.cp_len() - plan.ell_dmax) / spacing;
    const int second = (cfg.n() / cfg.c1_prime() - direct_taps + 1) / (plan.forward_taps + 1);
    if (static_cast<int>(plan.delays.size()) > std::min(first, second))
        bad.push_back("more BDs than the capacity bound allows");
    for (std::size_t z = 0; z < plan.delays.size(); ++z) {
        const int d = plan.delays[z];
        if (!(plan.ell_dmax < d)) bad.push_back("delay " + std::to_string(d) + " not beyond l_dmax");
        if (!(d < cfg.cp_len())) bad.push_back("delay " + std::to_string(d) + " not inside the CP");
        // Longest path: last forward tap + guard + BD delay.
        if (!(2 * plan.ell_fmax + d < cfg.cp_len()))
            bad.push_back("reflected path of BD " + std::to_string(z + 1) + " overflows the CP");
        if (z > 0 && d - plan.delays[z - 1] < spacing)
            bad.push_back("BDs " + std::to_string(z) + " and " + std::to_string(z + 1) + " closer than delta_min");
    }
    return bad;
}

std::vector<cd> convolve(std::span<const cd> x, const TapList& taps) {
    std::vector<cd> y(x.size());
    for (const auto& t : taps) {
        if (t.delay < 0) throw InvalidSpread("convolve: negative delay");
        const auto d = static_cast<std::size_t>(t.delay);
        for (std::size_t n = d; n < x.size(); ++n) y[n] += t.gain * x[n - d];
    }
    return y;
}

ComplexBlock bd_reflect(const ComplexBlock& s_with_cp, const BdDevice& dev, const TapList& forward, int bit,
                        const SystemConfig& cfg, int backward_delay) {
    const int ell_fmax = forward.empty() ? 0 : forward.back().delay;
    const int shift = ell_fmax + dev.ell_bd;
    if (shift + ell_fmax + backward_delay >= cfg.cp_len())
        throw CpOverflow("bd_reflect: reflected path of " + std::to_string(shift + ell_fmax + backward_delay) +
                         " samples does not fit in CP of " + std::to_string(cfg.cp_len()));
    ComplexBlock out(Domain::time, s_with_cp.len());
    if (bit == 0 || dev.alpha == 0.0) return out;
    const auto incident = convolve(s_with_cp.samples, forward);
    for (std::size_t n = static_cast<std::size_t>(shift); n < out.len(); ++n)
        out[n] = dev.alpha * incident[n - static_cast<std::size_t>(shift)];
    return out;
}

ComplexBlock propagate(const ComplexBlock& s_with_cp, std::span<const BdDevice> bds,
                       const ChannelRealization& chan, std::span<const std::uint8_t> bits, double noise_var,
                       Rng& rng, const SystemConfig& cfg) {
    if (bits.size() != bds.size()) throw DimensionMismatch("propagate: one bit per BD required");
    if (chan.forward.size() < bds.size() || chan.backward.size() < bds.size())
        throw DimensionMismatch("propagate: channel has fewer BD links than devices");
    if (chan.max_direct_delay() >= cfg.cp_len()) throw CpOverflow("propagate: direct delay spread exceeds CP");

    ComplexBlock y(Domain::time, convolve(s_with_cp.samples, chan.direct));
    for (std::size_t z = 0; z < bds.size(); ++z) {
        const auto& back = chan.backward[z];
        const auto x = bd_reflect(s_with_cp, bds[z], chan.forward[z], bits[z], cfg, back.delay);
        if (bits[z] == 0) continue;
        const cd g = chan.bd_amplitude * back.gain;
        const auto d = static_cast<std::size_t>(back.delay);
        for (std::size_t n = d; n < y.len(); ++n) y[n] += g * x[n - d];
    }
    if (noise_var > 0.0)
        for (auto& v : y.samples) v += rng.cn(noise_var);
    return y;
}

std::string to_csv(const ChannelRealization& chan) {
    std::ostringstream out;
    out.precision(17);
    out << "link,tap,delay,re,im\n";
    auto emit = [&](const std::string& link, const TapList& taps) {
        for (std::size_t k = 0; k < taps.size(); ++k)
            out << link << ',' << k << ',' << taps[k].delay << ',' << taps[k].gain.real() << ','
                << taps[k].gain.imag() << '\n';
    };
    emit("direct", chan.direct);
    for (std::size_t z = 0; z < chan.forward.size(); ++z) emit("forward" + std::to_string(z + 1), chan.forward[z]);
    for (std::size_t z = 0; z < chan.backward.size(); ++z)
        emit("backward" + std::to_string(z + 1), TapList{chan.backward[z]});
    return out.str();
}

}  // namespace isabc::channel
