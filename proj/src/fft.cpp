#include "isabc/fft.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <string>
#include <unordered_map>

#include <fftw3.h>

#include "isabc/errors.hpp"

namespace isabc {

const char* to_string(Domain d) noexcept {
    switch (d) {
        case Domain::time: return "time";
        case Domain::frequency: return "frequency";
        case Domain::affine: return "affine";
    }
    return "?";
}

double energy(std::span<const cd> x) noexcept {
    double e = 0.0;
    for (const auto& v : x) e += std::norm(v);
    return e;
}

double ComplexBlock::energy() const noexcept { return isabc::energy(samples); }

void dump_csv(const ComplexBlock& block, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out.precision(17);
    out << "index,re,im\n";
    for (std::size_t k = 0; k < block.len(); ++k)
        out << k << ',' << block[k].real() << ',' << block[k].imag() << '\n';
}

}  // namespace isabc

namespace isabc::fft {

namespace {

bool is_pow2(std::size_t n) { return n && !(n & (n - 1)); }

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// The FFTW planner is not thread-safe; execution with new arrays is. Plans
// are in-place and unaligned so any std::complex buffer can be fed to them,
// and FFTW_ESTIMATE keeps the chosen algorithm (hence the rounding) identical
// across runs and threads.
fftw_plan plan_for(std::size_t n, int sign) {
    thread_local std::unordered_map<std::size_t, fftw_plan> local;
    const std::size_t key = 2 * n + (sign > 0 ? 1 : 0);
    if (const auto it = local.find(key); it != local.end()) return it->second;
    static std::mutex mu;
    static std::unordered_map<std::size_t, fftw_plan> shared;
    std::lock_guard lock(mu);
    auto& p = shared[key];
    if (!p) {
        std::vector<cd> scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        p = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!p) throw DomainError("fft: no plan for length " + std::to_string(n));
    }
    local[key] = p;
    return p;
}

}  // namespace

void transform(std::span<cd> x, int sign) {
    if (x.size() <= 1) return;
    auto* buf = reinterpret_cast<fftw_complex*>(x.data());
    fftw_execute_dft(plan_for(x.size(), sign), buf, buf);
}

std::vector<cd> forward(std::span<const cd> x) {
    std::vector<cd> out(x.begin(), x.end());
    transform(out, -1);
    const double s = 1.0 / std::sqrt(static_cast<double>(out.size()));
    for (auto& v : out) v *= s;
    return out;
}

std::vector<cd> inverse(std::span<const cd> x) {
    std::vector<cd> out(x.begin(), x.end());
    transform(out, +1);
    const double s = 1.0 / std::sqrt(static_cast<double>(out.size()));
    for (auto& v : out) v *= s;
    return out;
}

std::uint64_t butterfly_count(std::size_t n) {
    if (n <= 1) return 0;
    auto pow2_count = [](std::size_t m) {
        std::uint64_t stages = 0;
        for (std::size_t l = 1; l < m; l <<= 1) ++stages;
        return static_cast<std::uint64_t>(m / 2) * stages;
    };
    if (is_pow2(n)) return pow2_count(n);
    return 2 * pow2_count(next_pow2(2 * n - 1));
}

}  // namespace isabc::fft
