#include "isabc/qam.hpp"

#include <cmath>

#include "isabc/errors.hpp"

namespace isabc::qam {

namespace {

int gray_encode(int v) { return v ^ (v >> 1); }

int gray_decode(int g) {
    int v = 0;
    for (; g; g >>= 1) v ^= g;
    return v;
}

}  // namespace

Constellation::Constellation(int order) : order_(order) {
    if (order != 4 && order != 16 && order != 64) throw InvalidValue("mod_order", "must be 4, 16 or 64");
    bits_ = 0;
    for (int o = order; o > 1; o >>= 1) ++bits_;
    side_ = 1 << (bits_ / 2);
    // Average energy of the grid {+-1, +-3, ...}^2 is 2 (side^2 - 1) / 3.
    scale_ = 1.0 / std::sqrt(2.0 * (side_ * side_ - 1) / 3.0);
}

double Constellation::level(int gray_index) const {
    const int natural = gray_decode(gray_index);
    return (2 * natural - (side_ - 1)) * scale_;
}

int Constellation::decide(double v) const {
    int natural = static_cast<int>(std::lround((v / scale_ + (side_ - 1)) / 2.0));
    if (natural < 0) natural = 0;
    if (natural > side_ - 1) natural = side_ - 1;
    return gray_encode(natural);
}

cd Constellation::map(std::span<const std::uint8_t> bits) const {
    if (static_cast<int>(bits.size()) != bits_) throw DimensionMismatch("qam: wrong number of bits");
    const int half = bits_ / 2;
    int gi = 0, gq = 0;
    for (int b = 0; b < half; ++b) gi = (gi << 1) | (bits[b] & 1);
    for (int b = half; b < bits_; ++b) gq = (gq << 1) | (bits[b] & 1);
    return {level(gi), level(gq)};
}

std::vector<cd> Constellation::map_all(std::span<const std::uint8_t> bits) const {
    if (bits.size() % bits_ != 0) throw DimensionMismatch("qam: bit count not a multiple of bits/symbol");
    std::vector<cd> out(bits.size() / bits_);
    for (std::size_t s = 0; s < out.size(); ++s) out[s] = map(bits.subspan(s * bits_, bits_));
    return out;
}

void Constellation::demap(cd y, std::span<std::uint8_t> out) const {
    if (static_cast<int>(out.size()) != bits_) throw DimensionMismatch("qam: wrong output size");
    const int half = bits_ / 2;
    const int gi = decide(y.real());
    const int gq = decide(y.imag());
    for (int b = 0; b < half; ++b) out[b] = static_cast<std::uint8_t>((gi >> (half - 1 - b)) & 1);
    for (int b = 0; b < half; ++b) out[half + b] = static_cast<std::uint8_t>((gq >> (half - 1 - b)) & 1);
}

cd Constellation::nearest(cd y) const { return {level(decide(y.real())), level(decide(y.imag()))}; }

double qpsk_ber_awgn(double es_over_n0) { return 0.5 * std::erfc(std::sqrt(es_over_n0 / 2.0)); }

}  // namespace isabc::qam
