#include "scalecascade/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <vector>

namespace scalecascade::kernels {

namespace {

// Indices of nonzero entries; cascade polynomials are sparse (only multiples
// of 2^k carry weight), so skipping zeros pays for the scan.
std::vector<std::size_t> support(std::span<const Ratio> v) {
  std::vector<std::size_t> idx;
  idx.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) idx.push_back(i);
  }
  return idx;
}

void convolve_one(std::span<const Ratio> a, const std::vector<std::size_t>& a_support,
                  std::span<const Ratio> b, std::size_t i, mpq_class& acc, mpq_class& tmp) {
  acc = 0;
  for (std::size_t j : a_support) {
    if (j > i) break;
    const std::size_t k = i - j;
    if (k >= b.size() || b[k].is_zero()) continue;
    mpq_mul(tmp.get_mpq_t(), a[j].get_mpq().get_mpq_t(), b[k].get_mpq().get_mpq_t());
    mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), tmp.get_mpq_t());
  }
}

}  // namespace

void convolve_serial(std::span<const Ratio> a, std::span<const Ratio> b, std::span<Ratio> out) {
  const auto a_support = support(a);
  mpq_class acc;
  mpq_class tmp;
  for (std::size_t i = 0; i < out.size(); ++i) {
    convolve_one(a, a_support, b, i, acc, tmp);
    out[i] = Ratio(acc);
  }
}

void convolve_parallel(std::span<const Ratio> a, std::span<const Ratio> b, std::span<Ratio> out) {
  const auto a_support = support(a);
  const auto n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel
  {
    mpq_class acc;
    mpq_class tmp;
    // Late coefficients have longer sums; dynamic scheduling balances that.
#pragma omp for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      convolve_one(a, a_support, b, static_cast<std::size_t>(i), acc, tmp);
      out[static_cast<std::size_t>(i)] = Ratio(acc);
    }
  }
}

void convolve(std::span<const Ratio> a, std::span<const Ratio> b, std::span<Ratio> out) {
  if (out.size() >= parallel_threshold && max_threads() > 1) {
    convolve_parallel(a, b, out);
  } else {
    convolve_serial(a, b, out);
  }
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace scalecascade::kernels
