#pragma once

// Unitary discrete Fourier transforms of arbitrary length (FFTW).

#include <cstdint>
#include <span>
#include <vector>

#include "isabc/complex_block.hpp"

namespace isabc::fft {

// X[k] = (1/sqrt(N)) sum_n x[n] e^{-j 2 pi n k / N}
std::vector<cd> forward(std::span<const cd> x);
// x[n] = (1/sqrt(N)) sum_k X[k] e^{+j 2 pi n k / N}
std::vector<cd> inverse(std::span<const cd> x);

// Unnormalized in-place transform; `sign` is the exponent sign (-1 forward).
void transform(std::span<cd> x, int sign);

// Butterfly count of a radix-2 transform of length n (Bluestein for other
// lengths), the operation model used by the complexity report.
std::uint64_t butterfly_count(std::size_t n);

}  // namespace isabc::fft
