#include "isabc/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "isabc/chi_square.hpp"
#include "isabc/errors.hpp"
#include "isabc/fft.hpp"

namespace isabc::detection {

ComplexBlock afdm_demodulate(const ComplexBlock& y_no_cp, const SystemConfig& cfg) {
    if (static_cast<int>(y_no_cp.len()) != cfg.n())
        throw DimensionMismatch("afdm_demodulate: expected " + std::to_string(cfg.n()) + " samples, got " +
                                std::to_string(y_no_cp.len()));
    return waveform::daft(y_no_cp, cfg);
}

std::vector<int> bd_bin_set(std::size_t z, const channel::DelayPlan& plan, const SystemConfig& cfg) {
    auto bins_of = [&](std::size_t w) {
        std::vector<int> b;
        for (int f = 0; f < plan.forward_taps; ++f)
            b.push_back(waveform::shifted_affine_index(cfg, plan.total_delay(w) + f));
        return b;
    };
    std::set<int> seen;
    for (std::size_t w = 0; w < plan.delays.size(); ++w)
        for (int k : bins_of(w))
            if (!seen.insert(k).second)
                throw OverlapDetected("bd_bin_set: affine bin " + std::to_string(k) + " claimed by two BDs");
    return bins_of(z);
}

double energy_statistic(const ComplexBlock& y_affine, std::span<const int> bins) {
    double e = 0.0;
    for (int k : bins) e += std::norm(y_affine.samples.at(static_cast<std::size_t>(k)));
    return e;
}

DetectorCalibration calibrate_threshold(double sigma2, int k, double p_fa) {
    if (!(sigma2 > 0.0)) throw DomainError("calibrate_threshold: sigma2 must be > 0");
    if (k < 1) throw DomainError("calibrate_threshold: K must be >= 1");
    if (!(p_fa > 0.0 && p_fa < 1.0)) throw DomainError("calibrate_threshold: p_fa must lie in (0, 1)");
    const double q = stats::chi2_quantile_upper(p_fa, 2.0 * k);
    return {sigma2, k, p_fa, 0.5 * sigma2 * q};
}

double analytical_pmd(double lambda, int k, double p_fa) {
    const double x = stats::chi2_quantile_upper(p_fa, 2.0 * k);
    return stats::noncentral_chi2_cdf(x, 2.0 * k, 2.0 * std::max(lambda, 0.0));
}

std::vector<BdObservation> detect_bits(const ComplexBlock& y_affine, const channel::DelayPlan& plan,
                                       const SystemConfig& cfg, const DetectorCalibration& cal) {
    std::vector<BdObservation> out;
    out.reserve(plan.delays.size());
    for (std::size_t z = 0; z < plan.delays.size(); ++z) {
        BdObservation o;
        o.z = static_cast<int>(z) + 1;
        o.bin_set = bd_bin_set(z, plan, cfg);
        o.energy = energy_statistic(y_affine, o.bin_set);
        o.threshold = cal.xi;
        o.decision = o.energy > cal.xi ? 1 : 0;
        out.push_back(std::move(o));
    }
    return out;
}

double bd_signal_energy(const channel::ChannelRealization& chan, std::size_t z, double alpha,
                        const SystemConfig& cfg) {
    double fwd = 0.0;
    for (const auto& t : chan.forward.at(z)) fwd += std::norm(t.gain);
    return alpha * alpha * chan.bd_amplitude * chan.bd_amplitude * std::norm(chan.backward.at(z).gain) * fwd *
           cfg.p_pilot();
}

namespace {

std::vector<cd> interp_dft(const std::vector<cd>& hp, int first_bin, int n) {
    // Pilot bins m = first + c1' k sample H at M points, which fixes the
    // first M taps of the impulse response: g = IDFT_M(hp), h[t] = g[t] e^{+j2pi first t/N}.
    const std::size_t m = hp.size();
    std::vector<cd> g(hp);
    fft::transform(g, +1);
    std::vector<cd> h(static_cast<std::size_t>(n));
    for (std::size_t t = 0; t < m; ++t) {
        const double ph = 2.0 * std::numbers::pi * static_cast<double>(first_bin) * static_cast<double>(t) / n;
        h[t] = g[t] / static_cast<double>(m) * std::polar(1.0, ph);
    }
    fft::transform(h, -1);
    return h;
}

std::vector<cd> interp_linear(const std::vector<cd>& hp, const std::vector<int>& bins, int n) {
    std::vector<cd> h(static_cast<std::size_t>(n));
    const std::size_t m = bins.size();
    for (std::size_t k = 0; k < m; ++k) {
        const int a = bins[k];
        const int b = bins[(k + 1) % m];
        const int gap = ((b - a) % n + n) % n;
        const cd ha = hp[k], hb = hp[(k + 1) % m];
        for (int d = 0; d < std::max(gap, 1); ++d) {
            const double t = gap > 0 ? static_cast<double>(d) / gap : 0.0;
            h[static_cast<std::size_t>((a + d) % n)] = ha + t * (hb - ha);
        }
    }
    return h;
}

}  // namespace

std::vector<cd> estimate_h_eff(const ComplexBlock& y_freq, const waveform::PilotAnalysis& pilot,
                               const SystemConfig& cfg) {
    const int n = cfg.n();
    if (static_cast<int>(y_freq.len()) != n || static_cast<int>(pilot.freq.len()) != n)
        throw DimensionMismatch("estimate_h_eff: blocks must have N samples");
    const auto& bins = pilot.spec.afdm_bins;
    if (bins.empty()) throw SingularPilot("estimate_h_eff: pilot has no support");
    double peak = 0.0;
    for (int m : bins) peak = std::max(peak, std::abs(pilot.freq[static_cast<std::size_t>(m)]));
    std::vector<cd> hp;
    hp.reserve(bins.size());
    for (int m : bins) {
        const cd p = pilot.freq[static_cast<std::size_t>(m)];
        if (!(std::abs(p) > 1e-12 * peak) || std::abs(p) < std::numeric_limits<double>::min())
            throw SingularPilot("estimate_h_eff: pilot amplitude vanishes on bin " + std::to_string(m));
        hp.push_back(y_freq[static_cast<std::size_t>(m)] / p);
    }
    if (cfg.channel_interp() == ChannelInterp::linear) return interp_linear(hp, bins, n);
    return interp_dft(hp, bins.front(), n);
}

DemapResult ofdm_equalize_demap(const ComplexBlock& y_no_cp, std::span<const cd> h_eff,
                                const waveform::OfdmGrid& grid, const qam::Constellation& qam,
                                double amplitude, std::span<const std::uint8_t> ref_bits) {
    const auto y = fft::forward(y_no_cp.samples);
    if (h_eff.size() != y.size()) throw DimensionMismatch("ofdm_equalize_demap: channel length differs from block");
    const auto bps = static_cast<std::size_t>(qam.bits_per_symbol());
    if (!ref_bits.empty() && ref_bits.size() != grid.active_bins.size() * bps)
        throw DimensionMismatch("ofdm_equalize_demap: reference bit count mismatch");
    if (!(amplitude > 0.0)) throw DomainError("ofdm_equalize_demap: amplitude must be > 0");

    DemapResult r;
    r.equalized.resize(grid.active_bins.size());
    r.bits.resize(grid.active_bins.size() * bps);
    for (std::size_t k = 0; k < grid.active_bins.size(); ++k) {
        const auto m = static_cast<std::size_t>(grid.active_bins[k]);
        const std::span<std::uint8_t> out(r.bits.data() + k * bps, bps);
        if (std::abs(h_eff[m]) == 0.0) {
            // ZeroGainBin: no decision possible, every bit counts as wrong.
            ++r.erasures;
            std::fill(out.begin(), out.end(), std::uint8_t{2});
            if (!ref_bits.empty()) r.bit_errors += bps;
            continue;
        }
        r.equalized[k] = y[m] / h_eff[m] / amplitude;
        qam.demap(r.equalized[k], out);
        if (!ref_bits.empty())
            for (std::size_t b = 0; b < bps; ++b) r.bit_errors += out[b] != ref_bits[k * bps + b];
    }
    return r;
}

}  // namespace isabc::detection
