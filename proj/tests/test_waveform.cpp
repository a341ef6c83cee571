#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "isabc/errors.hpp"
#include "isabc/fft.hpp"
#include "isabc/qam.hpp"
#include "isabc/rng.hpp"
#include "isabc/waveform.hpp"

using namespace isabc;
using namespace isabc::waveform;

namespace {

SystemConfig cfg_for(int n, int c1p, int i = 1, double p_pilot_db = 21.1) {
    return default_config()
        .with("direct_taps", 1.0)
        .with("c1_prime", 2.0)
        .with("N", static_cast<double>(n))
        .with("c1_prime", static_cast<double>(c1p))
        .with("pilot_index", static_cast<double>(i))
        .with("p_pilot_db", p_pilot_db);
}

std::vector<cd> random_vec(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<cd> v(n);
    for (auto& x : v) x = rng.cn(1.0);
    return v;
}

double max_abs_diff(std::span<const cd> a, std::span<const cd> b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

// O(N^2) DFT with the same unitary scaling.
std::vector<cd> dft_direct(std::span<const cd> x, int sign) {
    const auto n = x.size();
    std::vector<cd> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cd acc{};
        for (std::size_t t = 0; t < n; ++t)
            acc += x[t] * std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>((k * t) % n) /
                                              static_cast<double>(n));
        out[k] = acc / std::sqrt(static_cast<double>(n));
    }
    return out;
}

}  // namespace

TEST_CASE("fft matches the DFT matrix for power-of-two and odd lengths") {
    for (std::size_t n : {1u, 2u, 8u, 64u, 3u, 12u, 100u, 97u}) {
        const auto x = random_vec(n, n);
        CHECK(max_abs_diff(fft::forward(x), dft_direct(x, -1)) < 1e-11);
        CHECK(max_abs_diff(fft::inverse(x), dft_direct(x, +1)) < 1e-11);
    }
}

TEST_CASE("ofdm_modulate") {
    const auto cfg4 = default_config().with("direct_taps", 1.0).with("c1_prime", 2.0).with("N", 4.0);
    const auto s = ofdm_modulate({{1.0}, {0}}, cfg4);
    for (const auto& v : s.samples) CHECK(std::abs(v - cd{0.5, 0.0}) < 1e-15);
    const auto zero = ofdm_modulate({{0.0, 0.0}, {1, 2}}, cfg4);
    for (const auto& v : zero.samples) CHECK(v == cd{});

    const auto cfg = default_config();
    const auto pilot = pilot_to_frequency(generate_pilot_time(cfg), cfg).spec;
    const auto bins = complementary_bins(pilot, cfg.n());
    Rng rng(7);
    std::vector<std::uint8_t> bits(bins.size() * 2);
    for (auto& b : bits) b = rng.bit();
    const auto grid = make_data_grid(qam::Constellation(4).map_all(bits), pilot, cfg.n());
    const auto t = ofdm_modulate(grid, cfg);
    double want = 0.0;
    for (const auto& x : grid.data_symbols) want += std::norm(x);
    std::vector<cd> full(static_cast<std::size_t>(cfg.n()));
    for (std::size_t k = 0; k < bins.size(); ++k) full[static_cast<std::size_t>(bins[k])] = grid.data_symbols[k];
    CHECK(max_abs_diff(t.samples, dft_direct(full, +1)) < 1e-12);
    CHECK(std::abs(t.energy() - want) < 1e-12 * want);
}

TEST_CASE("daft/idaft: fast equals direct kernel, round trip, unitarity") {
    for (int n : {8, 16, 32, 64}) {
        for (int c1p : {2, 4, 8}) {
            if (n % c1p != 0 || n / c1p < 1) continue;
            for (const char* orient : {"down", "up"}) {
                const auto cfg = cfg_for(n, c1p).with("chirp_orientation", orient).with("c2", 0.137);
                const auto x = random_vec(static_cast<std::size_t>(n), static_cast<std::uint64_t>(n * 10 + c1p));
                const auto fast = idaft({Domain::affine, x}, cfg);
                CHECK(max_abs_diff(fast.samples, idaft_direct(x, signed_c1(cfg), cfg.c2())) < 1e-9);
                const auto back = daft(fast, cfg);
                CHECK(max_abs_diff(back.samples, daft_direct(fast.samples, signed_c1(cfg), cfg.c2())) < 1e-9);
                CHECK(max_abs_diff(back.samples, x) < 1e-10);
            }
        }
    }
    for (int n : {8, 64, 256, 512}) {
        const auto cfg = cfg_for(n, 2);
        const auto x = random_vec(static_cast<std::size_t>(n), 99);
        const double e = energy(x);
        CHECK(std::abs(daft({Domain::time, x}, cfg).energy() - e) < 1e-10 * e);
        CHECK(std::abs(idaft({Domain::affine, x}, cfg).energy() - e) < 1e-10 * e);
    }
    const auto cfg = cfg_for(256, 8);
    const auto x = random_vec(256, 5);
    const auto rt = daft(idaft({Domain::affine, x}, cfg), cfg);
    CHECK(max_abs_diff(rt.samples, x) < 1e-10);
}

TEST_CASE("idaft with c1 = c2 = 0 is the IDFT") {
    const auto x = random_vec(16, 3);
    const auto d = idaft_direct(x, 0.0, 0.0);
    CHECK(max_abs_diff(d, fft::inverse(x)) < 1e-12);
}

TEST_CASE("pilot: constant envelope, energy, periodicity") {
    const auto cfg = default_config();
    const auto p = generate_pilot_time(cfg);
    double lo = 1e300, hi = 0.0;
    for (const auto& v : p.samples) {
        lo = std::min(lo, std::abs(v));
        hi = std::max(hi, std::abs(v));
    }
    CHECK(hi - lo < 1e-12);
    CHECK(std::abs(p.energy() - cfg.p_pilot()) < 1e-10 * cfg.p_pilot());

    // N = 8, c1' = 2, i = 0: period M = 4 in time.
    const auto small = cfg_for(8, 2, 0, 0.0).with("cp_len", 2.0);
    const auto q = generate_pilot_time(small);
    for (int n = 0; n < 4; ++n) CHECK(std::abs(q[static_cast<std::size_t>(n)] - q[static_cast<std::size_t>(n + 4)]) < 1e-14);
    // Against the closed form of a single affine impulse.
    const double c1 = signed_c1(small);
    for (int n = 0; n < 8; ++n) {
        const cd want = std::polar(1.0 / std::sqrt(8.0), 2.0 * std::numbers::pi * c1 * n * n);
        CHECK(std::abs(q[static_cast<std::size_t>(n)] - want) < 1e-14);
    }
}

TEST_CASE("pilot frequency support") {
    const auto cfg = default_config();
    const auto pa = pilot_to_frequency(generate_pilot_time(cfg), cfg);
    REQUIRE(pa.spec.afdm_bins.size() == 32);
    for (std::size_t k = 1; k < pa.spec.afdm_bins.size(); ++k)
        CHECK(pa.spec.afdm_bins[k] - pa.spec.afdm_bins[k - 1] == 8);
    double on = 0.0;
    for (int m : pa.spec.afdm_bins) on += std::norm(pa.freq[static_cast<std::size_t>(m)]);
    CHECK(on >= (1.0 - 1e-10) * pa.freq.energy());

    const auto small = cfg_for(8, 2).with("cp_len", 2.0);
    const auto ps = pilot_to_frequency(generate_pilot_time(small), small);
    CHECK(ps.spec.afdm_bins.size() == 4);
    CHECK(ps.spec.afdm_bins[1] - ps.spec.afdm_bins[0] == 2);

    CHECK_THROWS_AS(pilot_to_frequency(generate_pilot_time(cfg, signed_c1(cfg) * 1.01), cfg), SparsityViolation);
}

TEST_CASE("compose, CP and orthogonality") {
    const auto cfg = default_config();
    const auto pilot = generate_pilot_time(cfg);
    const auto pa = pilot_to_frequency(pilot, cfg);
    const ComplexBlock zero(Domain::time, static_cast<std::size_t>(cfg.n()));
    CHECK(max_abs_diff(compose(zero, pilot).samples, pilot.samples) == 0.0);

    const auto bins = complementary_bins(pa.spec, cfg.n());
    CHECK(bins.size() == 224);
    Rng rng(11);
    std::vector<std::uint8_t> bits(bins.size() * 2);
    for (auto& b : bits) b = rng.bit();
    const auto grid = make_data_grid(qam::Constellation(4).map_all(bits), pa.spec, cfg.n());
    const auto s_ofdm = ofdm_modulate(grid, cfg);
    const auto s = compose(s_ofdm, pilot);
    CHECK(s.len() == 256);
    const double sum = s_ofdm.energy() + pilot.energy();
    CHECK(std::abs(s.energy() - sum) < 1e-10 * sum);
    const auto with_cp = add_cp(s, cfg.cp_len());
    CHECK(with_cp.len() == 320);
    CHECK(max_abs_diff(remove_cp(with_cp, cfg.cp_len(), cfg.n()).samples, s.samples) == 0.0);

    const ComplexBlock f_ofdm(Domain::frequency, fft::forward(s_ofdm.samples));
    const double res = verify_orthogonality(pa.freq, f_ofdm);
    CHECK(res < 1e-10 * std::sqrt(pa.freq.energy() * f_ofdm.energy()));
    CHECK(verify_orthogonality(pa.freq, ComplexBlock(Domain::frequency, 256)) == 0.0);
    auto leaky = f_ofdm;
    leaky[static_cast<std::size_t>(pa.spec.afdm_bins[3])] = 1.0;
    CHECK(verify_orthogonality(pa.freq, leaky) > 0.1);
    CHECK_THROWS_AS(make_data_grid({1.0}, pa.spec, cfg.n()), DimensionMismatch);
}

TEST_CASE("delay-shift theorem") {
    for (const char* orient : {"down", "up"}) {
        const auto cfg = default_config().with("chirp_orientation", orient);
        const auto p = generate_pilot_time(cfg);
        const auto n = static_cast<std::size_t>(cfg.n());
        for (int l = 0; l < cfg.cp_len(); ++l) {
            ComplexBlock shifted(Domain::time, n);
            for (std::size_t t = 0; t < n; ++t) shifted[t] = p[(t + n - static_cast<std::size_t>(l)) % n];
            const auto y = daft(shifted, cfg);
            const auto want = static_cast<std::size_t>(shifted_affine_index(cfg, l));
            const long long expect = (1 + cfg.shift_sign() * 8LL * l) % 256;
            CHECK(static_cast<long long>(want) == (expect + 256) % 256);
            CHECK(std::norm(y[want]) >= 0.9999 * y.energy());
        }
    }
    CHECK(shifted_affine_index(default_config(), 5) == 41);
}
