#pragma once

// Monte-Carlo experiment engine.
//
// Every trial draws from its own random stream seeded by
// (master seed, point id, trial index), trials of a point run on a pool of
// workers in fixed-size chunks, and results are reduced in trial order, so
// output is identical for any worker count.

#include <cstdint>
#include <string>
#include <vector>

#include "isabc/config.hpp"

namespace isabc::harness {

enum class Experiment { pmd, ber, sumrate, rmse, eta, all };

Experiment parse_experiment(std::string_view name);
const char* to_string(Experiment e) noexcept;

struct TrialRecord {
    std::uint64_t point_id = 0;
    std::uint64_t trial = 0;
    std::uint64_t seed = 0;
    // BD detection
    std::vector<std::uint8_t> bd_bits;
    std::vector<std::uint8_t> bd_decisions;
    std::vector<double> energy;        // E_z
    std::vector<double> lambda;        // Lambda_z / sigma2 of this channel draw
    std::vector<double> pmd_analytic;  // miss probability given this draw
    double xi = 0.0;
    // Primary link
    std::uint64_t bit_errors = 0;
    std::uint64_t bit_count = 0;
    std::uint64_t erasures = 0;
    double symbol_power = 0.0;  // sum |S_hat|^2
    double error_power = 0.0;   // sum |S_hat - S|^2
    std::uint64_t symbols = 0;
    // Sensing
    std::vector<double> tau_hat_s;
    std::vector<double> tau_true_s;
    // Bookkeeping
    double elapsed_s = 0.0;
    bool failed = false;
    std::string error;
};

struct Metric {
    std::string name;
    double value = 0.0;
    double ci99 = 0.0;  // half-width of the 99% confidence interval
    std::uint64_t trials = 0;
};

// Raw sums behind the reported metrics.
struct PointStats {
    std::uint64_t trials = 0;
    std::uint64_t failed = 0;
    int z = 0;
    // Detection, over BD instances
    std::uint64_t ones = 0, misses = 0;
    std::uint64_t zeros = 0, false_alarms = 0;
    double pmd_sum = 0.0, pmd_var_sum = 0.0;   // sum p, sum p(1-p) over bit-1 instances
    double pmd_all_sum = 0.0, pmd_all_sq = 0.0; // over every BD instance
    std::uint64_t bd_instances = 0;
    std::vector<double> lambda_sum;             // per BD
    // Primary link
    std::uint64_t bit_errors = 0, bit_count = 0, erasures = 0;
    double ber_trial_sq = 0.0;                  // sum of squared per-trial error fractions
    double symbol_power = 0.0, error_power = 0.0;
    double symbol_power_sq = 0.0, error_power_sq = 0.0, cross = 0.0;
    double log_rate_sum = 0.0, log_rate_sq = 0.0;  // per-block log2(1 + gamma)
    // Sensing
    std::uint64_t ranges = 0, exact_ranges = 0;
    double range_sq = 0.0, range_sq_sq = 0.0;   // monostatic squared range errors
    double tau_sq = 0.0;
};

struct PointResult {
    std::vector<Metric> metrics;
    PointStats stats;

    const Metric& metric(std::string_view name) const;
};

struct RunOptions {
    Experiment experiment = Experiment::all;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
    bool keep_records = false;  // return every TrialRecord (memory heavy)
};

// Runs `opts.trials` independent trials of `cfg`. Throws InvalidValue if
// trials == 0, CapacityExceeded if the BD plan does not fit, and Error if
// more than 1% of trials fail.
PointResult run_point(const SystemConfig& cfg, const RunOptions& opts, std::uint64_t point_id,
                      std::vector<TrialRecord>* records = nullptr);

// One trial, exposed for tests.
TrialRecord run_trial(const SystemConfig& cfg, Experiment experiment, std::uint64_t master_seed,
                      std::uint64_t point_id, std::uint64_t trial);

// Sweep description, read from a `key = value` file:
//
//   experiment    = pmd | ber | sumrate | rmse | eta | all
//   param         = config key swept on the x-axis (or eta_db)
//   values        = comma-separated list; an entry may carry extra
//                   overrides, e.g. `128:c1_prime=4`
//   series        = optional second key (one curve per value)
//   series_values = comma-separated list
//   trials        = trials per point
//   set.<key>     = override applied to the base config
struct SweepPoint {
    std::uint64_t id = 0;
    std::string param_name;
    std::string param_value;
    SystemConfig cfg = default_config();
};

struct SweepSpec {
    SystemConfig base = default_config();
    Experiment experiment = Experiment::all;
    std::string param;
    std::vector<std::string> values;
    std::string series;
    std::vector<std::string> series_values;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out;

    // Enumerates points series-major; validates every point config.
    std::vector<SweepPoint> points() const;
};

SweepSpec parse_sweep(const ParamMap& raw, const SystemConfig& base);

// Applies one sweep coordinate to a config. `eta_db` re-splits the block
// energy between pilot and data at fixed total; everything else is a
// config key.
SystemConfig apply_param(const SystemConfig& cfg, std::string_view key, std::string_view value);

inline constexpr const char* kCsvHeader =
    "point_id,param_name,param_value,snr_db,alpha,p_pilot_db,n,z,metric,value,ci99,trials,seed";

// CSV rows (no header) for one finished point.
std::string format_rows(const SweepPoint& point, const PointResult& result, std::uint64_t seed);

// Runs every point and writes the CSV, flushing after each point. An
// existing file with the same header is resumed: completed points are kept
// and skipped. Throws IoError, ResumeMismatch.
void run_sweep(const SweepSpec& spec);

}  // namespace isabc::harness
