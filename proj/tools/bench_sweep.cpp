// Compares the serial reference census against the OpenMP kernel and reports
// timings; both must produce identical counts.
#include "kolportrait/sweep.hpp"

#include <chrono>
#include <cstdio>

using namespace kolportrait;

int main(int argc, char** argv) {
  SweepSpec spec;
  spec.random = true;
  spec.n = argc > 1 ? std::atol(argv[1]) : 200000;
  spec.seed = 7;

  auto t0 = std::chrono::steady_clock::now();
  SweepResult serial = sweep_serial(spec);
  auto t1 = std::chrono::steady_clock::now();
  SweepResult parallel = sweep(spec);
  auto t2 = std::chrono::steady_clock::now();

  const double ms_serial = std::chrono::duration<double, std::milli>(t1 - t0).count();
  const double ms_parallel = std::chrono::duration<double, std::milli>(t2 - t1).count();

  const bool same = serial.g_counts == parallel.g_counts && serial.r_counts == parallel.r_counts &&
                    serial.failures == parallel.failures;
  std::printf("samples          %ld\n", spec.n);
  std::printf("serial           %.1f ms\n", ms_serial);
  std::printf("openmp           %.1f ms\n", ms_parallel);
  std::printf("speedup          %.2fx\n", ms_serial / ms_parallel);
  std::printf("results equal    %s\n", same ? "yes" : "NO");
  return same ? 0 : 1;
}
