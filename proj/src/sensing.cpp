#include "isabc/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isabc/chi_square.hpp"
#include "isabc/detection.hpp"
#include "isabc/errors.hpp"
#include "isabc/fft.hpp"
#include "isabc/waveform.hpp"

namespace isabc::sensing {

ComplexBlock dechirp(const ComplexBlock& y_s, const ComplexBlock& pilot) {
    if (y_s.len() != pilot.len()) throw DimensionMismatch("dechirp: lengths differ");
    ComplexBlock out(Domain::time, y_s.len());
    for (std::size_t n = 0; n < y_s.len(); ++n) {
        const double mag = std::abs(pilot[n]);
        out[n] = mag > 0.0 ? y_s[n] * std::conj(pilot[n]) / mag : cd{};
    }
    return out;
}

ComplexBlock sensing_echo(const ComplexBlock& pilot, std::span<const int> delays, std::span<const double> amps,
                          double noise_var, Rng& rng) {
    if (delays.size() != amps.size()) throw DimensionMismatch("sensing_echo: one amplitude per delay");
    const std::size_t n = pilot.len();
    ComplexBlock y(Domain::time, n);
    for (std::size_t z = 0; z < delays.size(); ++z) {
        const auto d = static_cast<std::size_t>(((delays[z] % static_cast<long>(n)) + static_cast<long>(n)) %
                                                static_cast<long>(n));
        for (std::size_t t = 0; t < n; ++t) y[t] += amps[z] * pilot[(t + n - d) % n];
    }
    if (noise_var > 0.0)
        for (auto& v : y.samples) v += rng.cn(noise_var);
    return y;
}

double to_range(double tau_s, RangeMode mode) {
    return mode == RangeMode::monostatic ? kSpeedOfLight * tau_s / 2.0 : kSpeedOfLight * tau_s;
}

std::vector<DelayEstimate> estimate_delays(const ComplexBlock& dechirped, const SystemConfig& cfg,
                                           int expected_count, RangeMode mode) {
    if (expected_count < 1) throw TooFewPeaks("estimate_delays: expected_count must be >= 1");
    const int n = cfg.n();
    if (static_cast<int>(dechirped.len()) != n) throw DimensionMismatch("estimate_delays: block must have N samples");
    const auto spec = fft::forward(dechirped.samples);
    std::vector<double> mag(spec.size());
    for (std::size_t k = 0; k < spec.size(); ++k) mag[k] = std::abs(spec[k]);

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return mag[static_cast<std::size_t>(a)] > mag[static_cast<std::size_t>(b)]; });

    const int sep = cfg.c1_prime();
    std::vector<int> picked;
    for (int k : order) {
        if (static_cast<int>(picked.size()) == expected_count) break;
        if (!(mag[static_cast<std::size_t>(k)] > 0.0)) break;
        const bool clear = std::all_of(picked.begin(), picked.end(), [&](int p) {
            const int d = std::abs(k - p);
            return std::min(d, n - d) >= sep;
        });
        if (clear) picked.push_back(k);
    }
    if (static_cast<int>(picked.size()) < expected_count)
        throw TooFewPeaks("estimate_delays: found " + std::to_string(picked.size()) + " of " +
                          std::to_string(expected_count) + " peaks");

    const double rt = derived_chirp_rate(cfg);  // cycles per sample^2
    std::vector<DelayEstimate> out;
    for (int k : picked) {
        DelayEstimate e;
        e.peak_bin = k;
        e.peak_mag = mag[static_cast<std::size_t>(k)];
        // An up-chirp pilot puts delay tau at the negative frequency -R_t tau.
        const int beat = cfg.shift_sign() > 0 ? k : (n - k) % n;
        e.tau_samples = beat / (rt * n);
        e.tau_s = e.tau_samples / cfg.sample_rate_hz();
        e.range_m = to_range(e.tau_s, mode);
        out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.tau_samples < b.tau_samples; });
    return out;
}

double rmse(std::span<const double> estimates, std::span<const double> truths) {
    if (estimates.empty()) throw EmptyInput("rmse: no samples");
    if (estimates.size() != truths.size()) throw DimensionMismatch("rmse: lengths differ");
    double s = 0.0;
    for (std::size_t k = 0; k < estimates.size(); ++k) {
        const double e = estimates[k] - truths[k];
        s += e * e;
    }
    return std::sqrt(s / static_cast<double>(estimates.size()));
}

ProbeResult probe_environment(const SystemConfig& cfg, const channel::ChannelRealization& chan, double sigma2,
                              Rng& rng) {
    const auto pilot = waveform::generate_pilot_time(cfg);
    const auto tx = waveform::add_cp(pilot, cfg.cp_len());
    const std::vector<std::uint8_t> none;
    const auto rx = channel::propagate(tx, {}, chan, none, sigma2, rng, cfg);
    const auto y = waveform::remove_cp(rx, cfg.cp_len(), cfg.n());
    const auto spec = fft::forward(dechirp(y, pilot).samples);

    const int n = cfg.n();
    const double p_fa = cfg.p_fa_target() / n;
    double peak = 0.0;
    for (const auto& v : spec) peak = std::max(peak, std::norm(v));
    ProbeResult r;
    r.threshold = sigma2 > 0.0 ? 0.5 * sigma2 * stats::chi2_quantile_upper(p_fa, 2.0) : 1e-12 * peak;

    const int span = std::min(cfg.cp_len(), cfg.m());
    double weakest = -1.0;
    for (int l = 0; l < span; ++l) {
        const int bin = ((cfg.shift_sign() * cfg.c1_prime() * l) % n + n) % n;
        const double e = std::norm(spec[static_cast<std::size_t>(bin)]);
        if (e > r.threshold && e > 0.0) {
            r.detected.push_back(l);
            weakest = weakest < 0.0 ? e : std::min(weakest, e);
        }
    }
    if (r.detected.empty()) throw NoPathDetected("probe_environment: no path above the noise floor");
    r.ell_dmax = r.detected.back();
    if (sigma2 > 0.0) {
        const double lambda = std::max(weakest / sigma2 - 1.0, 0.0);
        r.confidence = 1.0 - detection::analytical_pmd(lambda, 1, p_fa);
    }
    return r;
}

void RmseAccumulator::add(double tau_hat_s, double tau_true_s) {
    const double e = tau_hat_s - tau_true_s;
    const double er = to_range(tau_hat_s, mode_) - to_range(tau_true_s, mode_);
    sq_tau_ += e * e;
    sq_range_ += er * er;
    ++n_;
}

double RmseAccumulator::delay_rmse_s() const {
    if (n_ == 0) throw EmptyInput("RmseAccumulator: no samples");
    return std::sqrt(sq_tau_ / static_cast<double>(n_));
}

double RmseAccumulator::range_rmse_m() const {
    if (n_ == 0) throw EmptyInput("RmseAccumulator: no samples");
    return std::sqrt(sq_range_ / static_cast<double>(n_));
}

double RmseAccumulator::range_factor() const noexcept {
    return mode_ == RangeMode::monostatic ? kSpeedOfLight / 2.0 : kSpeedOfLight;
}

double RmseAccumulator::consistency_gap() const {
    const double r = range_rmse_m();
    const double t = range_factor() * delay_rmse_s();
    if (r == 0.0 && t == 0.0) return 0.0;
    return std::abs(r - t) / std::max(r, t);
}

void RmseAccumulator::merge(const RmseAccumulator& other) {
    if (other.mode_ != mode_) throw DimensionMismatch("RmseAccumulator: range modes differ");
    n_ += other.n_;
    sq_tau_ += other.sq_tau_;
    sq_range_ += other.sq_range_;
}

}  // namespace isabc::sensing
