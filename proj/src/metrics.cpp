#include "isabc/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "isabc/errors.hpp"
#include "isabc/fft.hpp"
#include "isabc/qam.hpp"
#include "isabc/rng.hpp"
#include "isabc/waveform.hpp"

namespace isabc::metrics {

double bd_rate(double s_energy, double sigma2, double bandwidth_hz) {
    if (!(sigma2 > 0.0)) throw DomainError("bd_rate: sigma2 must be > 0");
    return bandwidth_hz * std::log2(1.0 + std::max(s_energy, 0.0) / sigma2);
}

double primary_rate(double gamma_p, double bandwidth_hz) {
    if (!(gamma_p >= 0.0)) throw DomainError("primary_rate: gamma_p must be >= 0");
    return bandwidth_hz * std::log2(1.0 + gamma_p);
}

RateReport rate_report(double gamma_p, std::span<const double> bd_energy, double sigma2, double bandwidth_hz) {
    RateReport r;
    r.bandwidth_hz = bandwidth_hz;
    r.snr_primary = gamma_p;
    r.r_primary_bps = primary_rate(gamma_p, bandwidth_hz);
    std::vector<double> parts{r.r_primary_bps};
    for (double e : bd_energy) {
        r.snr_bd.push_back(e / sigma2);
        r.r_bd_bps.push_back(bd_rate(e, sigma2, bandwidth_hz));
        parts.push_back(r.r_bd_bps.back());
    }
    r.r_sum_bps = pairwise_sum(parts);
    return r;
}

PowerSplit power_ratio_eta(double p_pilot, double p_data, double n0) {
    if (!(p_pilot > 0.0) || !(p_data > 0.0)) throw DomainError("power_ratio_eta: powers must be > 0");
    if (!(n0 > 0.0)) throw DomainError("power_ratio_eta: N0 must be > 0");
    return {10.0 * std::log10(p_pilot / p_data), p_pilot / n0};
}

std::pair<double, double> split_energy(double eta_db, double total, double n_data) {
    if (!(total > 0.0) || !(n_data > 0.0)) throw DomainError("split_energy: total and n_data must be > 0");
    const double r = std::pow(10.0, eta_db / 10.0);
    const double data = total / (r + n_data);
    return {r * data, data};
}

double pairwise_sum(std::span<const double> x) {
    if (x.size() <= 8) {
        double s = 0.0;
        for (double v : x) s += v;
        return s;
    }
    const std::size_t h = x.size() / 2;
    return pairwise_sum(x.first(h)) + pairwise_sum(x.subspan(h));
}

ComplexityReport complexity_counters(const SystemConfig& cfg, int z) {
    ComplexityReport r;
    r.n = cfg.n();
    r.z = z;
    const auto n = static_cast<std::uint64_t>(cfg.n());
    r.fft_butterflies = 2 * fft::butterfly_count(n);
    r.chirp_multiplies = 2 * n;
    r.tx_ops = r.fft_butterflies + r.chirp_multiplies;
    r.bd_ops = static_cast<std::uint64_t>(std::max(z, 0));
    r.total_ops = r.tx_ops + r.bd_ops;
    return r;
}

TimingFit fit_synthesis_timing(std::span<const int> sizes, int reps) {
    using clock = std::chrono::steady_clock;
    struct Case {
        SystemConfig cfg;
        waveform::PilotSpec pilot;
        std::vector<cd> symbols;
    };
    const qam::Constellation q(4);
    std::vector<Case> cases;
    for (int n : sizes) {
        auto cfg = default_config().with("N", static_cast<double>(n));
        auto pilot = waveform::pilot_to_frequency(waveform::generate_pilot_time(cfg), cfg).spec;
        const auto bins = waveform::complementary_bins(pilot, n);
        Rng rng(static_cast<std::uint64_t>(n));
        std::vector<std::uint8_t> bits(bins.size() * 2);
        for (auto& b : bits) b = rng.bit();
        cases.push_back({std::move(cfg), std::move(pilot), q.map_all(bits)});
    }

    // Round-robin over sizes so a transient slowdown hits all of them alike;
    // the best time per size is kept. Round 0 only warms caches.
    TimingFit fit;
    fit.sizes.assign(sizes.begin(), sizes.end());
    fit.seconds.assign(sizes.size(), 1e300);
    volatile double sink = 0.0;  // keeps the work observable
    for (int r = -1; r < reps; ++r) {
        for (std::size_t k = 0; k < cases.size(); ++k) {
            const auto& c = cases[k];
            const auto t0 = clock::now();
            const auto grid = waveform::make_data_grid(c.symbols, c.pilot, c.cfg.n());
            const auto s = waveform::compose(waveform::ofdm_modulate(grid, c.cfg), waveform::generate_pilot_time(c.cfg));
            const auto tx = waveform::add_cp(s, c.cfg.cp_len());
            const auto t1 = clock::now();
            sink = sink + tx[0].real();
            if (r >= 0) fit.seconds[k] = std::min(fit.seconds[k], std::chrono::duration<double>(t1 - t0).count());
        }
    }
    // Minimax relative fit: a sits midway between the extreme ratios t/(N log2 N).
    double lo = 1e300, hi = 0.0;
    for (std::size_t k = 0; k < fit.sizes.size(); ++k) {
        const double r = fit.seconds[k] / (fit.sizes[k] * std::log2(static_cast<double>(fit.sizes[k])));
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    fit.coefficient = fit.sizes.empty() ? 0.0 : 0.5 * (lo + hi);
    for (std::size_t k = 0; k < fit.sizes.size(); ++k) {
        const double model = fit.coefficient * fit.sizes[k] * std::log2(static_cast<double>(fit.sizes[k]));
        fit.max_rel_deviation = std::max(fit.max_rel_deviation, std::abs(fit.seconds[k] - model) / model);
    }
    return fit;
}

}  // namespace isabc::metrics
