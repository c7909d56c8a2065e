// Compares the OpenMP kernels against their serial reference
// implementations on synthetic inputs of growing size: extreme-point
// enumeration and the convex indicator. Outputs agree exactly; only the
// wall time differs.

#include <chrono>
#include <iostream>
#include <vector>

#include "moca/generators.hpp"
#include "moca/quality.hpp"
#include "moca/weightspace.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace moca;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<ObjectiveVector> random_images(int count, int d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ObjectiveVector> images;
  images.reserve(count);
  for (int k = 0; k < count; ++k) {
    std::vector<Rational> v(d);
    for (int i = 0; i < d; ++i) v[i] = Rational(rng.uniform(0, 100000));
    images.emplace_back(std::move(v));
  }
  return images;
}

void bench_vertex_enumeration() {
  std::cout << "== extreme-point enumeration (d=3) ==\n";
  std::cout << "images   serial_ms   parallel_ms   speedup   vertices\n";
  for (int m : {20, 40, 80, 120}) {
    auto images = random_images(m, 3, 42 + m);
    auto t0 = Clock::now();
    auto serial = enumerate_extreme_points_serial(images, Sense::minimize);
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    auto parallel = enumerate_extreme_points(images, Sense::minimize);
    double parallel_ms = ms_since(t0);
    bool match = serial.size() == parallel.size();
    for (std::size_t i = 0; match && i < serial.size(); ++i)
      match = serial[i].weight == parallel[i].weight && serial[i].z == parallel[i].z;
    std::printf("%6d %11.1f %13.1f %9.2f %10zu %s\n", m, serial_ms, parallel_ms,
                serial_ms / (parallel_ms > 0 ? parallel_ms : 1e-9), parallel.size(),
                match ? "" : "MISMATCH");
  }
}

void bench_indicator() {
  std::cout << "== convex indicator (d=3) ==\n";
  std::cout << "images   serial_ms   parallel_ms   speedup   candidates\n";
  for (int m : {8, 16, 24, 32}) {
    auto s = random_images(m, 3, 7 * m);
    auto ref = random_images(m, 3, 7 * m + 1);
    auto t0 = Clock::now();
    auto serial = convex_indicator_serial(s, ref, Sense::minimize, 3);
    double serial_ms = ms_since(t0);
    t0 = Clock::now();
    auto parallel = convex_indicator(s, ref, Sense::minimize, 3);
    double parallel_ms = ms_since(t0);
    bool match = serial.value == parallel.value && serial.argmax_weight == parallel.argmax_weight;
    std::printf("%6d %11.1f %13.1f %9.2f %11llu %s\n", 2 * m, serial_ms, parallel_ms,
                serial_ms / (parallel_ms > 0 ? parallel_ms : 1e-9),
                static_cast<unsigned long long>(parallel.candidate_count), match ? "" : "MISMATCH");
  }
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (OpenMP disabled)\n";
#endif
  bench_vertex_enumeration();
  bench_indicator();
  return 0;
}
