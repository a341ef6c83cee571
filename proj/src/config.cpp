#include "isabc/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "isabc/errors.hpp"

namespace isabc {

namespace {

constexpr double kDefaultSubcarrierSpacingHz = 30e3;

bool is_pow2(long v) { return v > 0 && (v & (v - 1)) == 0; }

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

class Reader {
public:
    explicit Reader(const ParamMap& raw) : raw_(raw) {}

    const std::string* find(std::string_view key) const {
        auto it = raw_.find(key);
        return it == raw_.end() ? nullptr : &it->second;
    }

    const std::string& require(std::string_view key) const {
        if (const auto* v = find(key)) return *v;
        throw MissingKey(std::string(key));
    }

    long as_int(std::string_view key, const std::string& text) const {
        long v = 0;
        const auto s = trim(text);
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size())
            throw InvalidValue(std::string(key), "not an integer: '" + text + "'");
        return v;
    }

    double as_real(std::string_view key, const std::string& text) const {
        double v = 0;
        const auto s = trim(text);
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
            throw InvalidValue(std::string(key), "not a finite real: '" + text + "'");
        return v;
    }

    long int_req(std::string_view key) const { return as_int(key, require(key)); }
    double real_req(std::string_view key) const { return as_real(key, require(key)); }
    long int_or(std::string_view key, long def) const {
        const auto* v = find(key);
        return v ? as_int(key, *v) : def;
    }
    double real_or(std::string_view key, double def) const {
        const auto* v = find(key);
        return v ? as_real(key, *v) : def;
    }
    std::string word_or(std::string_view key, std::string def) const {
        const auto* v = find(key);
        return v ? std::string(trim(*v)) : def;
    }

private:
    const ParamMap& raw_;
};

int to_int(std::string_view key, long v) {
    if (v < -(1L << 30) || v > (1L << 30)) throw InvalidValue(std::string(key), "out of range");
    return static_cast<int>(v);
}

}  // namespace

double SystemConfig::p_pilot() const noexcept { return std::pow(10.0, p_pilot_db_ / 10.0); }
double SystemConfig::p_data() const noexcept { return std::pow(10.0, p_data_db_ / 10.0); }
double SystemConfig::snr_db() const noexcept { return 10.0 * std::log10(p_data() / noise_var_); }
double SystemConfig::bd_path_gain() const noexcept { return std::pow(10.0, bd_path_gain_db_ / 10.0); }

SystemConfig validate_config(const ParamMap& raw) {
    Reader r(raw);
    SystemConfig c;

    c.n_ = to_int("N", r.int_req("N"));
    c.c1_prime_ = to_int("c1_prime", r.int_req("c1_prime"));
    c.cp_len_ = to_int("cp_len", r.int_req("cp_len"));
    c.mod_order_ = to_int("mod_order", r.int_req("mod_order"));
    c.alpha_ = r.real_req("alpha");
    c.p_fa_target_ = r.real_req("p_fa_target");
    c.pilot_index_ = to_int("pilot_index", r.int_req("pilot_index"));

    if (c.n_ <= 0) throw InvalidValue("N", "must be positive");
    if (c.c1_prime_ <= 0) throw InvalidValue("c1_prime", "must be positive");
    if (c.c1_prime_ % 2 != 0) throw InvalidValue("c1_prime", "must be even");
    if (c.n_ % c.c1_prime_ != 0) throw InvalidValue("N", "not a multiple of c1_prime");
    if (c.cp_len_ <= 0 || c.cp_len_ >= c.n_) throw InvalidValue("cp_len", "must satisfy 0 < cp_len < N");
    if (c.pilot_index_ < 0 || c.pilot_index_ >= c.n_)
        throw InvalidValue("pilot_index", "must lie in [0, N)");
    if (c.mod_order_ != 4 && c.mod_order_ != 16 && c.mod_order_ != 64)
        throw InvalidValue("mod_order", "must be 4, 16 or 64");
    if (!(c.alpha_ >= 0.0 && c.alpha_ <= 1.0)) throw InvalidValue("alpha", "must lie in [0, 1]");
    if (!(c.p_fa_target_ > 0.0 && c.p_fa_target_ < 1.0))
        throw InvalidValue("p_fa_target", "must lie in (0, 1)");

    c.strict_pow2_ = r.word_or("strict_pow2", "false") == "true";
    if (c.strict_pow2_ && !(is_pow2(c.c1_prime_) && is_pow2(c.n_ / c.c1_prime_)))
        throw InvalidValue("c1_prime", "strict mode requires c1_prime and M to be powers of 2");

    c.c2_ = r.real_or("c2", 0.0);
    c.p_pilot_db_ = r.real_or("p_pilot_db", 21.1);
    c.p_data_db_ = r.real_or("p_data_db", 0.0);

    const auto* nv = r.find("noise_var");
    const auto* snr = r.find("snr_db");
    if (nv && snr) throw InvalidValue("noise_var", "give either noise_var or snr_db, not both");
    if (nv) {
        c.noise_var_ = r.as_real("noise_var", *nv);
    } else {
        const double snr_db = snr ? r.as_real("snr_db", *snr) : 25.0;
        c.noise_var_ = c.p_data() / std::pow(10.0, snr_db / 10.0);
    }
    if (!(c.noise_var_ > 0.0)) throw InvalidValue("noise_var", "must be positive");

    c.sample_rate_hz_ = r.real_or("sample_rate_hz", 7.68e6);
    c.bandwidth_hz_ = r.real_or("bandwidth_hz", c.n_ * kDefaultSubcarrierSpacingHz);
    if (!(c.sample_rate_hz_ > 0.0)) throw InvalidValue("sample_rate_hz", "must be positive");
    if (!(c.bandwidth_hz_ > 0.0)) throw InvalidValue("bandwidth_hz", "must be positive");

    c.delta_tau_ = to_int("delta_tau", r.int_or("delta_tau", 1));
    if (c.delta_tau_ < 1) throw InvalidValue("delta_tau", "must be a positive integer");
    c.num_bds_ = to_int("num_bds", r.int_or("num_bds", 3));
    if (c.num_bds_ < 0) throw InvalidValue("num_bds", "must be non-negative");

    c.direct_taps_ = to_int("direct_taps", r.int_or("direct_taps", 3));
    c.forward_taps_ = to_int("forward_taps", r.int_or("forward_taps", 2));
    if (c.direct_taps_ < 1) throw InvalidValue("direct_taps", "must be >= 1");
    if (c.direct_taps_ - 1 >= c.cp_len_) throw InvalidValue("direct_taps", "delay spread exceeds CP");
    if (c.forward_taps_ < 1) throw InvalidValue("forward_taps", "must be >= 1");
    c.pdp_decay_ = r.real_or("pdp_decay", 4.0);
    if (!(c.pdp_decay_ > 0.0)) throw InvalidValue("pdp_decay", "must be positive");
    c.bd_path_gain_db_ = r.real_or("bd_path_gain_db", -15.0);

    const auto norm = r.word_or("tap_normalization", "average");
    if (norm == "average") c.tap_normalization_ = TapNormalization::average;
    else if (norm == "per_draw") c.tap_normalization_ = TapNormalization::per_draw;
    else throw InvalidValue("tap_normalization", "expected average or per_draw");

    const auto interp = r.word_or("channel_interp", "dft");
    if (interp == "dft") c.channel_interp_ = ChannelInterp::dft;
    else if (interp == "linear") c.channel_interp_ = ChannelInterp::linear;
    else throw InvalidValue("channel_interp", "expected dft or linear");

    const auto orient = r.word_or("chirp_orientation", "down");
    if (orient == "down") c.orientation_ = ChirpOrientation::down;
    else if (orient == "up") c.orientation_ = ChirpOrientation::up;
    else throw InvalidValue("chirp_orientation", "expected down or up");

    return c;
}

ParamMap SystemConfig::to_map() const {
    ParamMap m;
    m["N"] = std::to_string(n_);
    m["c1_prime"] = std::to_string(c1_prime_);
    m["c2"] = format_double(c2_);
    m["pilot_index"] = std::to_string(pilot_index_);
    m["cp_len"] = std::to_string(cp_len_);
    m["mod_order"] = std::to_string(mod_order_);
    m["p_pilot_db"] = format_double(p_pilot_db_);
    m["p_data_db"] = format_double(p_data_db_);
    m["alpha"] = format_double(alpha_);
    m["p_fa_target"] = format_double(p_fa_target_);
    m["noise_var"] = format_double(noise_var_);
    m["sample_rate_hz"] = format_double(sample_rate_hz_);
    m["bandwidth_hz"] = format_double(bandwidth_hz_);
    m["delta_tau"] = std::to_string(delta_tau_);
    m["num_bds"] = std::to_string(num_bds_);
    m["direct_taps"] = std::to_string(direct_taps_);
    m["forward_taps"] = std::to_string(forward_taps_);
    m["pdp_decay"] = format_double(pdp_decay_);
    m["bd_path_gain_db"] = format_double(bd_path_gain_db_);
    m["tap_normalization"] = tap_normalization_ == TapNormalization::average ? "average" : "per_draw";
    m["channel_interp"] = channel_interp_ == ChannelInterp::dft ? "dft" : "linear";
    m["chirp_orientation"] = orientation_ == ChirpOrientation::down ? "down" : "up";
    m["strict_pow2"] = strict_pow2_ ? "true" : "false";
    return m;
}

SystemConfig SystemConfig::with(std::string_view key, std::string_view value) const {
    auto m = to_map();
    if (key == "snr_db") {
        m.erase("noise_var");
    } else if (key == "noise_var") {
        m.erase("snr_db");
    } else if (key == "N") {
        // Dependent defaults follow the block size.
        const auto n = Reader(m).as_int("N", std::string(value));
        m["cp_len"] = std::to_string(n / 4);
        m["bandwidth_hz"] = format_double(static_cast<double>(n) * kDefaultSubcarrierSpacingHz);
    }
    m[std::string(key)] = std::string(value);
    return validate_config(m);
}

SystemConfig SystemConfig::with(std::string_view key, double value) const {
    return with(key, format_double(value));
}

SystemConfig default_config() {
    return validate_config({{"N", "256"},
                            {"c1_prime", "8"},
                            {"cp_len", "64"},
                            {"mod_order", "4"},
                            {"alpha", "1"},
                            {"p_fa_target", "0.001"},
                            {"pilot_index", "1"}});
}

double derived_chirp_rate(const SystemConfig& cfg) noexcept {
    return static_cast<double>(cfg.c1_prime()) / cfg.n();
}

double chirp_rate_hz_per_s(const SystemConfig& cfg) noexcept {
    return derived_chirp_rate(cfg) * cfg.sample_rate_hz() * cfg.sample_rate_hz();
}

ParamMap parse_params(std::string_view text) {
    ParamMap out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw InvalidValue("line " + std::to_string(line_no), "expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key.empty()) throw InvalidValue("line " + std::to_string(line_no), "empty key");
        out[std::string(key)] = std::string(value);
    }
    return out;
}

ParamMap read_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_params(ss.str());
}

std::string serialize(const SystemConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : cfg.to_map()) out += k + " = " + v + "\n";
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

}  // namespace isabc
