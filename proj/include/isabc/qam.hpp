#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isabc/complex_block.hpp"

namespace isabc::qam {

// Square Gray-coded QAM with unit average symbol energy.
class Constellation {
public:
    explicit Constellation(int order);

    int order() const noexcept { return order_; }
    int bits_per_symbol() const noexcept { return bits_; }

    // `bits` holds bits_per_symbol() entries per symbol, MSB first, values 0/1.
    cd map(std::span<const std::uint8_t> bits) const;
    std::vector<cd> map_all(std::span<const std::uint8_t> bits) const;

    // Nearest-neighbour decision; writes bits_per_symbol() bits to `out`.
    void demap(cd y, std::span<std::uint8_t> out) const;
    cd nearest(cd y) const;

private:
    int order_;
    int bits_;
    int side_;
    double scale_;  // 1/sqrt(average energy of the integer grid)

    double level(int gray_index) const;   // PAM level for a Gray-coded index
    int decide(double v) const;          // PAM slicer, returns Gray-coded index
};

// 4-QAM over AWGN with unit symbol energy: Q(sqrt(Es/N0)).
double qpsk_ber_awgn(double es_over_n0);

}  // namespace isabc::qam
