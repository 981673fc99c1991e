#include <doctest.h>

#include <omp.h>

#include "generators.hpp"
#include "scalecascade/kernels.hpp"

namespace sk = scalecascade::kernels;
using scalecascade::Ratio;

TEST_CASE("parallel convolution matches the serial reference") {
  scalecascade::testing::Gen gen(5);
  for (std::size_t n : {1u, 7u, 48u, 130u}) {
    std::vector<Ratio> a(n), b(n / 2 + 1);
    for (auto& v : a) v = gen.ratio();
    for (auto& v : b) v = gen.ratio();
    // sparse entries exercise the zero skipping
    for (std::size_t i = 0; i < a.size(); i += 3) a[i] = Ratio(0);
    std::vector<Ratio> serial(a.size() + b.size() - 1), parallel(serial.size()), dispatch(serial.size());
    sk::convolve_serial(a, b, serial);
    sk::convolve_parallel(a, b, parallel);
    sk::convolve(a, b, dispatch);
    CHECK(serial == parallel);
    CHECK(serial == dispatch);
  }
}

TEST_CASE("parallel convolution with several threads") {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(4);
  scalecascade::testing::Gen gen(9);
  std::vector<Ratio> a(200), b(200);
  for (auto& v : a) v = gen.ratio();
  for (auto& v : b) v = gen.ratio();
  std::vector<Ratio> serial(200), parallel(200);  // truncated output
  sk::convolve_serial(a, b, serial);
  sk::convolve_parallel(a, b, parallel);
  CHECK(serial == parallel);
  omp_set_num_threads(saved);
}

TEST_CASE("convolution brute force") {
  const std::vector<Ratio> a{Ratio(1), Ratio(2), Ratio(3)};
  const std::vector<Ratio> b{Ratio(4), Ratio(5)};
  std::vector<Ratio> out(4);
  sk::convolve_serial(a, b, out);
  CHECK(out == std::vector<Ratio>{Ratio(4), Ratio(13), Ratio(22), Ratio(15)});
}
