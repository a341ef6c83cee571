#include "isabc/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "isabc/errors.hpp"
#include "isabc/fft.hpp"

namespace isabc::waveform {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cd unit_phasor(double cycles) {
    cycles -= std::floor(cycles);
    return std::polar(1.0, kTwoPi * cycles);
}

// exp(j2pi * s * c1 * n^2) on the grid c1 = c1'/(2N), reduced exactly in
// integers so large n does not lose phase precision. Tables are cached per
// thread since every block of a run uses the same few.
const std::vector<cd>& grid_chirp(const SystemConfig& cfg, int sign) {
    struct Key {
        int n, c1p, orient, sign;
        bool operator==(const Key&) const = default;
    };
    thread_local std::vector<std::pair<Key, std::vector<cd>>> cache;
    const Key key{cfg.n(), cfg.c1_prime(), cfg.shift_sign(), sign};
    for (const auto& [k, table] : cache)
        if (k == key) return table;

    const long long n = cfg.n();
    const long long two_n = 2 * n;
    std::vector<cd> out(static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) {
        const long long r = (static_cast<long long>(cfg.c1_prime()) * ((k * k) % two_n)) % two_n;
        out[static_cast<std::size_t>(k)] =
            unit_phasor(sign * static_cast<double>(cfg.shift_sign() == 1 ? -r : r) / static_cast<double>(two_n));
    }
    if (cache.size() >= 16) cache.erase(cache.begin());
    cache.emplace_back(key, std::move(out));
    return cache.back().second;
}

cd c2_phasor(double c2, long long k, int sign) {
    return unit_phasor(sign * std::fmod(c2 * static_cast<double>(k * k), 1.0));
}

void require_len(const ComplexBlock& b, int n, const char* what) {
    if (static_cast<int>(b.len()) != n)
        throw DimensionMismatch(std::string(what) + ": expected length " + std::to_string(n) + ", got " +
                                std::to_string(b.len()));
}

}  // namespace

double signed_c1(const SystemConfig& cfg) noexcept { return cfg.shift_sign() == 1 ? -cfg.c1() : cfg.c1(); }

ComplexBlock ofdm_modulate(const OfdmGrid& grid, const SystemConfig& cfg) {
    if (grid.data_symbols.size() != grid.active_bins.size())
        throw DimensionMismatch("ofdm_modulate: symbol count differs from active bin count");
    std::vector<cd> freq(static_cast<std::size_t>(cfg.n()));
    for (std::size_t k = 0; k < grid.active_bins.size(); ++k) {
        const int m = grid.active_bins[k];
        if (m < 0 || m >= cfg.n()) throw DimensionMismatch("ofdm_modulate: bin index out of range");
        freq[static_cast<std::size_t>(m)] = grid.data_symbols[k];
    }
    return {Domain::time, fft::inverse(freq)};
}

ComplexBlock idaft(const ComplexBlock& affine_vec, const SystemConfig& cfg) {
    require_len(affine_vec, cfg.n(), "idaft");
    std::vector<cd> tmp(affine_vec.samples);
    if (cfg.c2() != 0.0)
        for (std::size_t k = 0; k < tmp.size(); ++k) tmp[k] *= c2_phasor(cfg.c2(), static_cast<long long>(k), +1);
    auto s = fft::inverse(tmp);
    const auto& chirp = grid_chirp(cfg, +1);
    for (std::size_t n = 0; n < s.size(); ++n) s[n] *= chirp[n];
    return {Domain::time, std::move(s)};
}

ComplexBlock daft(const ComplexBlock& time_vec, const SystemConfig& cfg) {
    require_len(time_vec, cfg.n(), "daft");
    const auto& chirp = grid_chirp(cfg, -1);
    std::vector<cd> tmp(time_vec.samples);
    for (std::size_t n = 0; n < tmp.size(); ++n) tmp[n] *= chirp[n];
    auto x = fft::forward(tmp);
    if (cfg.c2() != 0.0)
        for (std::size_t k = 0; k < x.size(); ++k) x[k] *= c2_phasor(cfg.c2(), static_cast<long long>(k), -1);
    return {Domain::affine, std::move(x)};
}

std::vector<cd> idaft_direct(std::span<const cd> x, double c1, double c2) {
    const auto n_len = x.size();
    const double n_d = static_cast<double>(n_len);
    std::vector<cd> s(n_len);
    for (std::size_t n = 0; n < n_len; ++n) {
        cd acc{};
        for (std::size_t k = 0; k < n_len; ++k) {
            const double nn = static_cast<double>(n), kk = static_cast<double>(k);
            acc += x[k] * std::polar(1.0, kTwoPi * (c1 * nn * nn + nn * kk / n_d + c2 * kk * kk));
        }
        s[n] = acc / std::sqrt(n_d);
    }
    return s;
}

std::vector<cd> daft_direct(std::span<const cd> s, double c1, double c2) {
    const auto n_len = s.size();
    const double n_d = static_cast<double>(n_len);
    std::vector<cd> x(n_len);
    for (std::size_t k = 0; k < n_len; ++k) {
        cd acc{};
        for (std::size_t n = 0; n < n_len; ++n) {
            const double nn = static_cast<double>(n), kk = static_cast<double>(k);
            acc += s[n] * std::polar(1.0, -kTwoPi * (c1 * nn * nn + nn * kk / n_d + c2 * kk * kk));
        }
        x[k] = acc / std::sqrt(n_d);
    }
    return x;
}

ComplexBlock generate_pilot_time(const SystemConfig& cfg) {
    ComplexBlock affine(Domain::affine, static_cast<std::size_t>(cfg.n()));
    affine[static_cast<std::size_t>(cfg.pilot_index())] = std::sqrt(cfg.p_pilot());
    return idaft(affine, cfg);
}

ComplexBlock generate_pilot_time(const SystemConfig& cfg, double c1) {
    const long long n = cfg.n();
    const long long i = cfg.pilot_index();
    const double amp = std::sqrt(cfg.p_pilot() / static_cast<double>(n));
    const cd c2_term = c2_phasor(cfg.c2(), i, +1);
    ComplexBlock out(Domain::time, static_cast<std::size_t>(n));
    for (long long k = 0; k < n; ++k) {
        const double quad = std::fmod(c1 * static_cast<double>(k * k), 1.0);
        const double lin = static_cast<double>((k * i) % n) / static_cast<double>(n);
        out[static_cast<std::size_t>(k)] = amp * unit_phasor(quad + lin) * c2_term;
    }
    return out;
}

PilotAnalysis pilot_to_frequency(const ComplexBlock& pilot, const SystemConfig& cfg) {
    require_len(pilot, cfg.n(), "pilot_to_frequency");
    ComplexBlock freq(Domain::frequency, fft::forward(pilot.samples));
    const double total = freq.energy();
    if (!(total > 0.0)) throw SparsityViolation("pilot_to_frequency: pilot has no energy");

    std::vector<int> order(static_cast<std::size_t>(cfg.n()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return std::norm(freq[a]) > std::norm(freq[b]); });
    const int m = cfg.m();
    std::vector<int> bins(order.begin(), order.begin() + m);
    std::sort(bins.begin(), bins.end());

    double captured = 0.0;
    for (int b : bins) captured += std::norm(freq[b]);
    if (captured < (1.0 - 1e-10) * total)
        throw SparsityViolation("pilot_to_frequency: " + std::to_string(1.0 - captured / total) +
                                " of the pilot energy leaks outside the strongest M bins");
    for (std::size_t k = 1; k < bins.size(); ++k)
        if (bins[k] - bins[k - 1] != cfg.c1_prime())
            throw SparsityViolation("pilot_to_frequency: pilot bins are not spaced c1' apart");

    PilotSpec spec{cfg.pilot_index(), std::sqrt(cfg.p_pilot()), std::move(bins)};
    return {std::move(spec), std::move(freq)};
}

std::vector<int> complementary_bins(const PilotSpec& pilot, int n) {
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (int b : pilot.afdm_bins) used[static_cast<std::size_t>(b)] = true;
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n) - pilot.afdm_bins.size());
    for (int m = 0; m < n; ++m)
        if (!used[static_cast<std::size_t>(m)]) out.push_back(m);
    return out;
}

OfdmGrid make_data_grid(std::vector<cd> symbols, const PilotSpec& pilot, int n) {
    auto bins = complementary_bins(pilot, n);
    if (symbols.size() != bins.size())
        throw DimensionMismatch("make_data_grid: need " + std::to_string(bins.size()) + " symbols, got " +
                                std::to_string(symbols.size()));
    return {std::move(symbols), std::move(bins)};
}

ComplexBlock compose(const ComplexBlock& s_ofdm, const ComplexBlock& pilot) {
    if (s_ofdm.len() != pilot.len()) throw DimensionMismatch("compose: length mismatch");
    ComplexBlock out(Domain::time, s_ofdm.len());
    for (std::size_t n = 0; n < out.len(); ++n) out[n] = s_ofdm[n] + pilot[n];
    return out;
}

ComplexBlock add_cp(const ComplexBlock& block, int cp_len) {
    if (cp_len < 0 || static_cast<std::size_t>(cp_len) > block.len())
        throw DimensionMismatch("add_cp: CP longer than block");
    ComplexBlock out(Domain::time, block.len() + static_cast<std::size_t>(cp_len));
    std::copy(block.samples.end() - cp_len, block.samples.end(), out.samples.begin());
    std::copy(block.samples.begin(), block.samples.end(), out.samples.begin() + cp_len);
    return out;
}

ComplexBlock remove_cp(const ComplexBlock& block, int cp_len, int n) {
    if (block.len() < static_cast<std::size_t>(cp_len + n)) throw DimensionMismatch("remove_cp: block too short");
    return {Domain::time, std::vector<cd>(block.samples.begin() + cp_len, block.samples.begin() + cp_len + n)};
}

double verify_orthogonality(const ComplexBlock& pilot_freq, const ComplexBlock& ofdm_freq) {
    if (pilot_freq.len() != ofdm_freq.len()) throw DimensionMismatch("verify_orthogonality: length mismatch");
    cd acc{};
    for (std::size_t m = 0; m < pilot_freq.len(); ++m) acc += pilot_freq[m] * ofdm_freq[m];
    return std::abs(acc);
}

int shifted_affine_index(const SystemConfig& cfg, int delay) noexcept {
    const long long n = cfg.n();
    long long k = cfg.pilot_index() + static_cast<long long>(cfg.shift_sign()) * cfg.c1_prime() * delay;
    k %= n;
    if (k < 0) k += n;
    return static_cast<int>(k);
}

}  // namespace isabc::waveform
