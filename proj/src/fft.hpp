#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace efrep::detail {

// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n) noexcept;

// Linear self-convolution of `a` via a real transform; returns the first
// `out_len` coefficients of a*a as unrounded doubles.
std::vector<double> fft_self_convolve(std::span<const double> a, std::size_t out_len);

}  // namespace efrep::detail
