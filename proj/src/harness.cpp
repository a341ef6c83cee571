#include "isabc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "isabc/channel.hpp"
#include "isabc/chi_square.hpp"
#include "isabc/detection.hpp"
#include "isabc/errors.hpp"
#include "isabc/fft.hpp"
#include "isabc/metrics.hpp"
#include "isabc/qam.hpp"
#include "isabc/rng.hpp"
#include "isabc/sensing.hpp"
#include "isabc/waveform.hpp"

namespace isabc::harness {

namespace {

constexpr double kZ99 = 2.5758293035489004;  // two-sided 99% normal quantile
constexpr std::uint64_t kChunk = 2048;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto pos = s.find(sep, start);
        const auto piece = trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (!piece.empty()) out.push_back(piece);
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

struct Flags {
    bool detect = false, ofdm = false, sense = false;
};

Flags flags_for(Experiment e) {
    switch (e) {
        case Experiment::pmd: return {true, false, false};
        case Experiment::ber: return {false, true, false};
        case Experiment::sumrate: return {false, true, false};
        case Experiment::rmse: return {false, false, true};
        case Experiment::eta: return {true, false, true};
        case Experiment::all: return {true, true, true};
    }
    return {};
}

// Everything a trial needs that does not depend on the trial index.
struct Context {
    SystemConfig cfg;
    Experiment experiment;
    Flags flags;
    ComplexBlock pilot;
    waveform::PilotAnalysis pilot_info;
    std::vector<int> data_bins;
    qam::Constellation qam;
    double amplitude;
    channel::DelayPlan plan;
    detection::DetectorCalibration cal;
    double chi2_threshold;  // 2 xi / sigma2
    std::vector<int> target_delays;

    Context(const SystemConfig& c, Experiment e)
        : cfg(c),
          experiment(e),
          flags(flags_for(e)),
          pilot(waveform::generate_pilot_time(c)),
          pilot_info(waveform::pilot_to_frequency(pilot, c)),
          data_bins(waveform::complementary_bins(pilot_info.spec, c.n())),
          qam(c.mod_order()),
          amplitude(std::sqrt(c.p_data())) {
        const int d = c.direct_taps(), lf = c.forward_taps(), z = c.num_bds();
        plan = channel::plan_delays(c, d - 1, lf, d, z);
        if ((flags.detect || flags.sense) && z > channel::alias_free_bds(c, d - 1, lf, d))
            throw CapacityExceeded("run_point: " + std::to_string(z) +
                                   " BDs requested but their affine clusters alias beyond " +
                                   std::to_string(channel::alias_free_bds(c, d - 1, lf, d)));
        cal = detection::calibrate_threshold(c.noise_var(), lf, c.p_fa_target());
        chi2_threshold = 2.0 * cal.xi / c.noise_var();
        for (std::size_t k = 0; k < plan.delays.size(); ++k) target_delays.push_back(plan.total_delay(k));
    }
};

TrialRecord simulate(const Context& ctx, std::uint64_t master, std::uint64_t point, std::uint64_t trial) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    const auto& cfg = ctx.cfg;
    TrialRecord rec;
    rec.point_id = point;
    rec.trial = trial;
    rec.seed = master;
    Rng rng(master, point, trial);

    const int z_count = cfg.num_bds();
    const auto chan = channel::draw_channel(cfg, cfg.direct_taps(), cfg.forward_taps(), z_count, rng);
    rec.bd_bits.resize(static_cast<std::size_t>(z_count));
    for (auto& b : rec.bd_bits) b = rng.bit();

    std::vector<std::uint8_t> data_bits(ctx.data_bins.size() * static_cast<std::size_t>(ctx.qam.bits_per_symbol()));
    for (auto& b : data_bits) b = rng.bit();
    auto symbols = ctx.qam.map_all(data_bits);
    for (auto& s : symbols) s *= ctx.amplitude;
    const auto grid = waveform::make_data_grid(std::move(symbols), ctx.pilot_info.spec, cfg.n());
    const auto tx = waveform::add_cp(waveform::compose(waveform::ofdm_modulate(grid, cfg), ctx.pilot), cfg.cp_len());

    std::vector<channel::BdDevice> bds;
    for (int z = 0; z < z_count; ++z)
        bds.push_back({z + 1, ctx.plan.delays[static_cast<std::size_t>(z)], cfg.alpha(), {}});
    const auto rx = channel::propagate(tx, bds, chan, rec.bd_bits, cfg.noise_var(), rng, cfg);
    const auto y = waveform::remove_cp(rx, cfg.cp_len(), cfg.n());

    if (ctx.flags.detect && z_count > 0) {
        const auto ya = detection::afdm_demodulate(y, cfg);
        rec.xi = ctx.cal.xi;
        for (const auto& o : detection::detect_bits(ya, ctx.plan, cfg, ctx.cal)) {
            const auto z = static_cast<std::size_t>(o.z - 1);
            rec.bd_decisions.push_back(o.decision);
            rec.energy.push_back(o.energy);
            const double lambda = detection::bd_signal_energy(chan, z, cfg.alpha(), cfg) / cfg.noise_var();
            rec.lambda.push_back(lambda);
            rec.pmd_analytic.push_back(
                stats::noncentral_chi2_cdf(ctx.chi2_threshold, 2.0 * cfg.forward_taps(), 2.0 * lambda));
        }
    } else if (ctx.experiment == Experiment::sumrate) {
        for (int z = 0; z < z_count; ++z)
            rec.lambda.push_back(detection::bd_signal_energy(chan, static_cast<std::size_t>(z), cfg.alpha(), cfg) /
                                 cfg.noise_var());
    }

    if (ctx.flags.ofdm) {
        const ComplexBlock yf(Domain::frequency, fft::forward(y.samples));
        const auto h = detection::estimate_h_eff(yf, ctx.pilot_info, cfg);
        const auto r = detection::ofdm_equalize_demap(y, h, grid, ctx.qam, ctx.amplitude, data_bits);
        rec.bit_errors = r.bit_errors;
        rec.bit_count = data_bits.size();
        rec.erasures = r.erasures;
        for (std::size_t k = 0; k < r.equalized.size(); ++k) {
            if (r.bits[k * static_cast<std::size_t>(ctx.qam.bits_per_symbol())] > 1) continue;  // erased
            const cd ref = grid.data_symbols[k] / ctx.amplitude;
            rec.symbol_power += std::norm(r.equalized[k]);
            rec.error_power += std::norm(r.equalized[k] - ref);
            ++rec.symbols;
        }
    }

    if (ctx.flags.sense && z_count > 0) {
        const std::vector<double> amps(static_cast<std::size_t>(z_count), cfg.alpha());
        const auto echo = sensing::sensing_echo(ctx.pilot, ctx.target_delays, amps, cfg.noise_var(), rng);
        const auto est = sensing::estimate_delays(sensing::dechirp(echo, ctx.pilot), cfg, z_count);
        for (std::size_t k = 0; k < est.size(); ++k) {
            rec.tau_hat_s.push_back(est[k].tau_s);
            rec.tau_true_s.push_back(ctx.target_delays[k] / cfg.sample_rate_hz());
        }
    }
    rec.elapsed_s = std::chrono::duration<double>(clock::now() - t0).count();
    return rec;
}

void accumulate(PointStats& st, const TrialRecord& r) {
    ++st.trials;
    if (r.failed) {
        ++st.failed;
        return;
    }
    for (std::size_t z = 0; z < r.bd_decisions.size(); ++z) {
        const double p = r.pmd_analytic[z];
        ++st.bd_instances;
        st.pmd_all_sum += p;
        st.pmd_all_sq += p * p;
        if (r.bd_bits[z]) {
            ++st.ones;
            st.misses += r.bd_decisions[z] == 0;
            st.pmd_sum += p;
            st.pmd_var_sum += p * (1.0 - p);
        } else {
            ++st.zeros;
            st.false_alarms += r.bd_decisions[z] == 1;
        }
    }
    if (st.lambda_sum.size() < r.lambda.size()) st.lambda_sum.resize(r.lambda.size());
    for (std::size_t z = 0; z < r.lambda.size(); ++z) st.lambda_sum[z] += r.lambda[z];
    if (r.bit_count > 0) {
        st.bit_errors += r.bit_errors;
        st.bit_count += r.bit_count;
        st.erasures += r.erasures;
        const double f = static_cast<double>(r.bit_errors) / static_cast<double>(r.bit_count);
        st.ber_trial_sq += f * f;
        st.symbol_power += r.symbol_power;
        st.error_power += r.error_power;
        st.symbol_power_sq += r.symbol_power * r.symbol_power;
        st.error_power_sq += r.error_power * r.error_power;
        st.cross += r.symbol_power * r.error_power;
        if (r.error_power > 0.0) {
            const double lr = std::log2(1.0 + r.symbol_power / r.error_power);
            st.log_rate_sum += lr;
            st.log_rate_sq += lr * lr;
        }
    }
    for (std::size_t k = 0; k < r.tau_hat_s.size(); ++k) {
        const double dt = r.tau_hat_s[k] - r.tau_true_s[k];
        const double dr = sensing::to_range(r.tau_hat_s[k], sensing::RangeMode::monostatic) -
                          sensing::to_range(r.tau_true_s[k], sensing::RangeMode::monostatic);
        ++st.ranges;
        st.exact_ranges += dt == 0.0;
        st.range_sq += dr * dr;
        st.range_sq_sq += dr * dr * dr * dr;
        st.tau_sq += dt * dt;
    }
}

// Binomial proportion with a 99% half-width; with no events the half-width
// is the exact one-sided 99% upper bound 1 - 0.01^(1/n); likewise when every
// trial is an event.
Metric proportion(std::string name, std::uint64_t k, std::uint64_t n) {
    Metric m{std::move(name), 0.0, 0.0, n};
    if (n == 0) return m;
    const double p = static_cast<double>(k) / static_cast<double>(n);
    m.value = p;
    m.ci99 = k == 0 || k == n ? 1.0 - std::pow(0.01, 1.0 / static_cast<double>(n))
                    : kZ99 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return m;
}

Metric mean_metric(std::string name, double sum, double sq, std::uint64_t n) {
    Metric m{std::move(name), 0.0, 0.0, n};
    if (n == 0) return m;
    const double nn = static_cast<double>(n);
    m.value = sum / nn;
    const double var = n > 1 ? std::max(0.0, (sq - sum * sum / nn) / (nn - 1.0)) : 0.0;
    m.ci99 = kZ99 * std::sqrt(var / nn);
    return m;
}

std::vector<Metric> summarize(const PointStats& st, const SystemConfig& cfg, Experiment e) {
    const Flags f = flags_for(e);
    std::vector<Metric> out;
    const double sigma2 = cfg.noise_var();
    const std::uint64_t ok = st.trials - st.failed;

    if (f.detect && st.bd_instances > 0) {
        out.push_back(proportion("pmd", st.misses, st.ones));
        out.push_back(proportion("pfa", st.false_alarms, st.zeros));
        out.push_back(mean_metric("pmd_analytic", st.pmd_all_sum, st.pmd_all_sq, st.bd_instances));
        double lam = 0.0;
        for (double v : st.lambda_sum) lam += v;
        lam /= static_cast<double>(st.bd_instances);
        out.push_back({"pmd_analytic_mean_lambda", detection::analytical_pmd(lam, cfg.forward_taps(), cfg.p_fa_target()),
                       0.0, st.bd_instances});
        out.push_back({"xi", detection::calibrate_threshold(sigma2, cfg.forward_taps(), cfg.p_fa_target()).xi, 0.0,
                       ok});
    }
    if (f.ofdm && st.bit_count > 0) {
        const double n = static_cast<double>(ok);
        Metric ber{"ber", static_cast<double>(st.bit_errors) / static_cast<double>(st.bit_count), 0.0, ok};
        // Trial-clustered: per-trial error fractions are the i.i.d. units.
        const double mf = ber.value;
        const double var = ok > 1 ? std::max(0.0, (st.ber_trial_sq - n * mf * mf) / (n - 1.0)) : 0.0;
        ber.ci99 = kZ99 * std::sqrt(var / n);
        out.push_back(ber);
        out.push_back({"erasures", static_cast<double>(st.erasures), 0.0, ok});

        // gamma_p = sum |S_hat|^2 / sum |S_hat - S|^2, delta-method interval.
        const double mx = st.symbol_power / n, my = st.error_power / n;
        const double gamma = my > 0.0 ? mx / my : 0.0;
        double gci = 0.0;
        if (ok > 1 && my > 0.0) {
            const double vx = (st.symbol_power_sq - n * mx * mx) / (n - 1.0);
            const double vy = (st.error_power_sq - n * my * my) / (n - 1.0);
            const double cxy = (st.cross - n * mx * my) / (n - 1.0);
            const double v = std::max(0.0, (vx - 2.0 * gamma * cxy + gamma * gamma * vy) / (my * my * n));
            gci = kZ99 * std::sqrt(v);
        }
        out.push_back({"gamma_p", gamma, gci, ok});
        if (e == Experiment::sumrate || e == Experiment::all) {
            const double w = cfg.bandwidth_hz();
            std::vector<double> bd_energy;
            for (double v : st.lambda_sum) bd_energy.push_back(v / n * sigma2);
            // The primary rate is ergodic: W log2(1 + gamma) averaged over
            // blocks. The pooled gamma_p above is dominated by deep fades.
            const auto lr = mean_metric("", st.log_rate_sum, st.log_rate_sq, ok);
            const double gamma_erg = std::exp2(lr.value) - 1.0;
            const auto rep = metrics::rate_report(gamma_erg, bd_energy, sigma2, w);
            out.push_back({"r_primary_bps", rep.r_primary_bps, w * lr.ci99, ok});
            out.push_back({"r_bd_bps", rep.r_sum_bps - rep.r_primary_bps, 0.0, ok});
            out.push_back({"r_sum_bps", rep.r_sum_bps, w * lr.ci99, ok});
        }
    }
    if (f.sense && st.ranges > 0) {
        const double n = static_cast<double>(st.ranges);
        const double mse = st.range_sq / n;
        const double rm = std::sqrt(mse);
        const double var = st.ranges > 1 ? std::max(0.0, (st.range_sq_sq - n * mse * mse) / (n - 1.0)) : 0.0;
        const double mse_ci = kZ99 * std::sqrt(var / n);
        out.push_back({"rmse_m", rm, rm > 0.0 ? mse_ci / (2.0 * rm) : std::sqrt(mse_ci), st.ranges});
        out.push_back({"rmse_tau_s", std::sqrt(st.tau_sq / n), 0.0, st.ranges});
        out.push_back(proportion("range_exact", st.exact_ranges, st.ranges));
        out.push_back({"gamma_rmse_db", 10.0 * std::log10(cfg.p_pilot() / sigma2), 0.0, st.ranges});
    }
    if (e == Experiment::eta) {
        out.push_back({"eta_db", metrics::power_ratio_eta(cfg.p_pilot(), cfg.p_data(), sigma2).eta_db, 0.0, ok});
    }
    out.push_back({"trial_errors", static_cast<double>(st.failed), 0.0, st.trials});
    return out;
}

}  // namespace

Experiment parse_experiment(std::string_view name) {
    if (name == "pmd") return Experiment::pmd;
    if (name == "ber") return Experiment::ber;
    if (name == "sumrate") return Experiment::sumrate;
    if (name == "rmse") return Experiment::rmse;
    if (name == "eta") return Experiment::eta;
    if (name == "all") return Experiment::all;
    throw InvalidValue("experiment", "unknown experiment '" + std::string(name) + "'");
}

const char* to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::pmd: return "pmd";
        case Experiment::ber: return "ber";
        case Experiment::sumrate: return "sumrate";
        case Experiment::rmse: return "rmse";
        case Experiment::eta: return "eta";
        case Experiment::all: return "all";
    }
    return "?";
}

const Metric& PointResult::metric(std::string_view name) const {
    for (const auto& m : metrics)
        if (m.name == name) return m;
    throw InvalidValue("metric", "no metric named '" + std::string(name) + "'");
}

TrialRecord run_trial(const SystemConfig& cfg, Experiment experiment, std::uint64_t master_seed,
                      std::uint64_t point_id, std::uint64_t trial) {
    const Context ctx(cfg, experiment);
    return simulate(ctx, master_seed, point_id, trial);
}

PointResult run_point(const SystemConfig& cfg, const RunOptions& opts, std::uint64_t point_id,
                      std::vector<TrialRecord>* records) {
    if (opts.trials == 0) throw InvalidValue("trials", "must be >= 1");
    const Context ctx(cfg, opts.experiment);
    const int workers = std::max(1, opts.workers);

    PointResult result;
    result.stats.z = cfg.num_bds();
    std::vector<TrialRecord> chunk;
    for (std::uint64_t base = 0; base < opts.trials; base += kChunk) {
        const std::uint64_t count = std::min(kChunk, opts.trials - base);
        chunk.assign(count, {});
        std::atomic<std::uint64_t> next{0};
        auto work = [&] {
            for (std::uint64_t k; (k = next.fetch_add(1)) < count;) {
                try {
                    chunk[k] = simulate(ctx, opts.seed, point_id, base + k);
                } catch (const Error& e) {
                    chunk[k].point_id = point_id;
                    chunk[k].trial = base + k;
                    chunk[k].seed = opts.seed;
                    chunk[k].failed = true;
                    chunk[k].error = e.what();
                }
            }
        };
        if (workers == 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int w = 0; w < workers; ++w) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }
        for (auto& r : chunk) {
            accumulate(result.stats, r);
            if (records) records->push_back(std::move(r));
        }
        if (result.stats.failed * 100 > opts.trials)
            throw Error("run_point: more than 1% of trials failed (last error: " +
                        std::find_if(chunk.rbegin(), chunk.rend(), [](const auto& r) { return r.failed; })->error +
                        ")");
    }
    result.metrics = summarize(result.stats, cfg, opts.experiment);
    return result;
}

SystemConfig apply_param(const SystemConfig& cfg, std::string_view key, std::string_view value) {
    if (key == "eta_db") {
        // Fixed block energy: E_pilot + N_data * P_data stays at its current value.
        const double n_data = static_cast<double>(cfg.n() - cfg.m());
        const double total = cfg.p_pilot() + n_data * cfg.p_data();
        double eta = 0.0;
        try {
            eta = std::stod(std::string(value));
        } catch (const std::exception&) {
            throw InvalidValue("eta_db", "not a number: '" + std::string(value) + "'");
        }
        const auto [p_pilot, p_data] = metrics::split_energy(eta, total, n_data);
        return cfg.with("p_pilot_db", 10.0 * std::log10(p_pilot)).with("p_data_db", 10.0 * std::log10(p_data));
    }
    return cfg.with(key, value);
}

namespace {

// `value[:k=v;k=v]`
SystemConfig apply_entry(const SystemConfig& cfg, const std::string& key, const std::string& entry,
                         std::string& shown) {
    const auto colon = entry.find(':');
    shown = trim(entry.substr(0, colon));
    SystemConfig out = cfg;
    if (colon != std::string::npos) {
        for (const auto& kv : split(entry.substr(colon + 1), ';')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw InvalidValue(key, "bad override '" + kv + "'");
            out = out.with(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
        }
    }
    return apply_param(out, key, shown);
}

}  // namespace

std::vector<SweepPoint> SweepSpec::points() const {
    if (trials < 1) throw InvalidValue("trials", "must be >= 1");
    if (param.empty() || values.empty()) throw InvalidValue("param", "sweep needs a parameter and values");
    std::vector<SweepPoint> out;
    const std::vector<std::string> outer = series.empty() ? std::vector<std::string>{""} : series_values;
    for (const auto& s : outer) {
        SystemConfig c = base;
        std::string ignored;
        if (!series.empty()) c = apply_entry(c, series, s, ignored);
        for (const auto& v : values) {
            SweepPoint p;
            p.id = out.size();
            p.param_name = param;
            p.cfg = apply_entry(c, param, v, p.param_value);
            out.push_back(std::move(p));
        }
    }
    return out;
}

SweepSpec parse_sweep(const ParamMap& raw, const SystemConfig& base) {
    SweepSpec spec;
    ParamMap overrides;
    for (const auto& [k, v] : raw) {
        if (k == "experiment") spec.experiment = parse_experiment(v);
        else if (k == "param") spec.param = v;
        else if (k == "values") spec.values = split(v, ',');
        else if (k == "series") spec.series = v;
        else if (k == "series_values") spec.series_values = split(v, ',');
        else if (k == "trials") {
            try {
                const long long t = std::stoll(v);
                if (t < 1) throw InvalidValue("trials", "must be >= 1");
                spec.trials = static_cast<std::uint64_t>(t);
            } catch (const std::logic_error&) {
                throw InvalidValue("trials", "not an integer: '" + v + "'");
            }
        } else if (k.rfind("set.", 0) == 0) overrides[k.substr(4)] = v;
        else throw InvalidValue(k, "unknown sweep key");
    }
    if (spec.param.empty()) throw MissingKey("param");
    if (spec.values.empty()) throw MissingKey("values");
    if (!spec.series.empty() && spec.series_values.empty()) throw MissingKey("series_values");
    auto m = base.to_map();
    for (const auto& [k, v] : overrides) {
        if (k == "snr_db") m.erase("noise_var");
        m[k] = v;
    }
    spec.base = validate_config(m);
    return spec;
}

std::string format_rows(const SweepPoint& point, const PointResult& result, std::uint64_t seed) {
    std::ostringstream out;
    const auto& c = point.cfg;
    for (const auto& m : result.metrics) {
        out << point.id << ',' << point.param_name << ',' << point.param_value << ',' << format_double(c.snr_db())
            << ',' << format_double(c.alpha()) << ',' << format_double(c.p_pilot_db()) << ',' << c.n() << ','
            << c.num_bds() << ',' << m.name << ',' << format_double(m.value) << ',' << format_double(m.ci99) << ','
            << m.trials << ',' << seed << '\n';
    }
    return out.str();
}

void run_sweep(const SweepSpec& spec) {
    const auto points = spec.points();
    namespace fs = std::filesystem;

    // Resume: keep every point that was written completely.
    std::map<std::uint64_t, std::string> done;
    if (fs::exists(spec.out)) {
        std::ifstream in(spec.out);
        if (!in) throw IoError("cannot read " + spec.out);
        std::string line;
        if (std::getline(in, line) && line != kCsvHeader)
            throw ResumeMismatch("existing file " + spec.out + " has a different header");
        std::map<std::uint64_t, std::string> rows;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const auto cells = split(line, ',');
            if (cells.size() != 13) break;  // torn final line
            const auto id = std::stoull(cells[0]);
            if (id >= points.size() || cells[1] != points[id].param_name || cells[2] != points[id].param_value ||
                cells[12] != std::to_string(spec.seed))
                throw ResumeMismatch("row for point " + cells[0] + " does not match the sweep");
            rows[id] += line + '\n';
            if (cells[8] == "trial_errors") done[id] = rows[id];
        }
    }

    const auto tmp = spec.out + ".partial";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out << kCsvHeader << '\n';
        for (const auto& [id, text] : done) out << text;
    }
    fs::rename(tmp, spec.out);

    std::ofstream out(spec.out, std::ios::app);
    if (!out) throw IoError("cannot write " + spec.out);
    RunOptions opts{spec.experiment, spec.trials, spec.seed, spec.workers, false};
    for (const auto& p : points) {
        if (done.count(p.id)) continue;
        const auto result = run_point(p.cfg, opts, p.id);
        out << format_rows(p, result, spec.seed);
        out.flush();
        if (!out) throw IoError("write failed for " + spec.out);
    }
}

}  // namespace isabc::harness
