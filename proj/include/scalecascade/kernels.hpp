#pragma once

// Coefficient-convolution kernels shared by Poly and Jet multiplication.
//
// out[i] = sum_j a[j] * b[i - j] for i in [0, out.size()). Output entries are
// independent, so the parallel kernel distributes them over OpenMP threads;
// the serial kernel is the reference the tests and benchmarks compare against.
// Both produce bit-identical (exact) results.

#include <cstddef>
#include <span>

#include "scalecascade/ratio.hpp"

namespace scalecascade::kernels {

/// Output length at which `convolve` switches to the parallel kernel.
inline constexpr std::size_t parallel_threshold = 48;

void convolve_serial(std::span<const Ratio> a, std::span<const Ratio> b, std::span<Ratio> out);
void convolve_parallel(std::span<const Ratio> a, std::span<const Ratio> b, std::span<Ratio> out);

/// Dispatches on output length.
void convolve(std::span<const Ratio> a, std::span<const Ratio> b, std::span<Ratio> out);

/// Number of threads the parallel kernels will use.
int max_threads();

}  // namespace scalecascade::kernels
