#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace isabc {

using cd = std::complex<double>;

enum class Domain { time, frequency, affine };

const char* to_string(Domain d) noexcept;

// A block of complex baseband samples tagged with the domain it lives in.
struct ComplexBlock {
    Domain domain = Domain::time;
    std::vector<cd> samples;

    ComplexBlock() = default;
    ComplexBlock(Domain d, std::vector<cd> s) : domain(d), samples(std::move(s)) {}
    ComplexBlock(Domain d, std::size_t len) : domain(d), samples(len) {}

    std::size_t len() const noexcept { return samples.size(); }
    cd& operator[](std::size_t k) { return samples[k]; }
    const cd& operator[](std::size_t k) const { return samples[k]; }
    std::span<const cd> view() const noexcept { return samples; }
    std::span<cd> view() noexcept { return samples; }

    double energy() const noexcept;
};

double energy(std::span<const cd> x) noexcept;

// Writes `index,re,im` rows.
void dump_csv(const ComplexBlock& block, const std::string& path);

}  // namespace isabc
