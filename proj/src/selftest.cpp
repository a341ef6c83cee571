#include "isabc/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "isabc/channel.hpp"
#include "isabc/detection.hpp"
#include "isabc/errors.hpp"
#include "isabc/fft.hpp"
#include "isabc/harness.hpp"
#include "isabc/rng.hpp"
#include "isabc/sensing.hpp"
#include "isabc/waveform.hpp"

namespace isabc {

namespace {

std::string num(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

CheckResult transform_roundtrip() {
    const auto cfg = default_config();
    Rng rng(7);
    ComplexBlock x(Domain::affine, static_cast<std::size_t>(cfg.n()));
    for (auto& v : x.samples) v = rng.cn(1.0);
    const auto s = waveform::idaft(x, cfg);
    const auto back = waveform::daft(s, cfg);
    double err = 0.0, norm = 0.0;
    for (std::size_t k = 0; k < x.len(); ++k) {
        err += std::norm(back[k] - x[k]);
        norm += std::norm(x[k]);
    }
    const double rel = std::sqrt(err / norm);
    const double energy_gap = std::abs(s.energy() - x.energy()) / x.energy();
    return {"daft/idaft round trip and energy", rel < 1e-10 && energy_gap < 1e-10,
            "rel err " + num(rel) + ", energy gap " + num(energy_gap)};
}

CheckResult pilot_orthogonality() {
    const auto cfg = default_config();
    const auto pilot = waveform::generate_pilot_time(cfg);
    const auto info = waveform::pilot_to_frequency(pilot, cfg);
    const bool count_ok = static_cast<int>(info.spec.afdm_bins.size()) == cfg.m();
    const auto bins = waveform::complementary_bins(info.spec, cfg.n());
    Rng rng(3);
    std::vector<cd> sym(bins.size());
    for (auto& v : sym) v = rng.cn(1.0);
    const auto grid = waveform::make_data_grid(sym, info.spec, cfg.n());
    const auto ofdm = waveform::ofdm_modulate(grid, cfg);
    const ComplexBlock of(Domain::frequency, fft::forward(ofdm.samples));
    const double leak = waveform::verify_orthogonality(info.freq, of);
    return {"pilot occupies N/c1' bins orthogonal to data", count_ok && leak < 1e-9,
            std::to_string(info.spec.afdm_bins.size()) + " pilot bins, leakage " + num(leak)};
}

CheckResult delay_shift() {
    const auto cfg = default_config();
    const auto pilot = waveform::generate_pilot_time(cfg);
    const int n = cfg.n();
    bool ok = true;
    std::string detail;
    for (int ell : {0, 1, 5, 17}) {
        ComplexBlock d(Domain::time, static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) d[static_cast<std::size_t>(t)] = pilot[static_cast<std::size_t>((t - ell + n) % n)];
        const auto a = waveform::daft(d, cfg);
        std::size_t best = 0;
        for (std::size_t k = 1; k < a.len(); ++k)
            if (std::abs(a[k]) > std::abs(a[best])) best = k;
        const int want = waveform::shifted_affine_index(cfg, ell);
        if (static_cast<int>(best) != want) {
            ok = false;
            detail += "delay " + std::to_string(ell) + " -> " + std::to_string(best) + " (want " +
                      std::to_string(want) + ") ";
        }
    }
    return {"cyclic delay moves the pilot by c1' affine bins per sample", ok, ok ? "4 delays" : detail};
}

CheckResult detector_limits() {
    const double p0 = detection::analytical_pmd(0.0, 2, 1e-3);
    const double pbig = detection::analytical_pmd(1e4, 2, 1e-3);
    const bool ok = std::abs(p0 - (1.0 - 1e-3)) < 1e-9 && pbig < 1e-100;
    return {"miss probability limits", ok, "lambda=0 -> " + num(p0) + ", lambda=1e4 -> " + num(pbig)};
}

CheckResult plan_valid() {
    const auto cfg = default_config();
    const int d = cfg.direct_taps(), lf = cfg.forward_taps();
    const auto plan = channel::plan_delays(cfg, d - 1, lf, d, cfg.num_bds());
    const auto issues = channel::validate_plan(plan, cfg, d);
    return {"default BD delay plan is valid", issues.empty(),
            issues.empty() ? "z_max " + std::to_string(plan.z_max) : issues.front()};
}

CheckResult noiseless_sensing() {
    const auto cfg = default_config();
    const auto pilot = waveform::generate_pilot_time(cfg);
    const std::vector<int> delays{3, 9, 20};
    const std::vector<double> amps{1.0, 0.5, 0.25};
    Rng rng(1);
    const auto echo = sensing::sensing_echo(pilot, delays, amps, 0.0, rng);
    const auto est = sensing::estimate_delays(sensing::dechirp(echo, pilot), cfg, 3);
    bool ok = est.size() == 3;
    for (std::size_t k = 0; ok && k < 3; ++k) ok = std::abs(est[k].tau_samples - delays[k]) < 1e-12;
    return {"noiseless delay estimates are exact", ok, ok ? "3 targets" : "mismatch"};
}

CheckResult worker_determinism() {
    auto cfg = default_config().with("snr_db", 10.0);
    harness::RunOptions a{harness::Experiment::all, 64, 99, 1, false};
    auto b = a;
    b.workers = 3;
    const harness::SweepPoint p{0, "snr_db", "10", cfg};
    const auto ra = harness::format_rows(p, harness::run_point(cfg, a, 0), 99);
    const auto rb = harness::format_rows(p, harness::run_point(cfg, b, 0), 99);
    return {"results independent of worker count", ra == rb, ra == rb ? "1 vs 3 workers" : "rows differ"};
}

}  // namespace

std::vector<CheckResult> run_selftest() {
    const std::vector<std::function<CheckResult()>> checks{transform_roundtrip, pilot_orthogonality, delay_shift,
                                                           detector_limits,     plan_valid,          noiseless_sensing,
                                                           worker_determinism};
    std::vector<CheckResult> out;
    for (const auto& c : checks) {
        try {
            out.push_back(c());
        } catch (const std::exception& e) {
            out.push_back({"check threw", false, e.what()});
        }
    }
    return out;
}

}  // namespace isabc
