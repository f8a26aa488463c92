// Serial reference kernels against their OpenMP counterparts, plus a
// harness suite run both ways. The reference kernels are plain index loops,
// so kernel rows mix algorithmic and thread speedup; the suite row is the
// same code with and without OpenMP. Usage: corrkit_bench [repeats]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <vector>

#include <omp.h>

#include "corrkit/harness.hpp"
#include "corrkit/kernels.hpp"
#include "corrkit/registry.hpp"
#include "corrkit/rng.hpp"

namespace {

double seconds(const std::function<void()>& fn, int repeats) {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) fn();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return elapsed.count() / repeats;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-36s %13.6f %12.6f %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace corrkit;
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-36s %13s %12s %9s\n", "kernel", "reference [s]", "openmp [s]", "speedup");

  Rng rng(1);
  {
    const std::vector<int> dims{4, 4, 4, 4};
    const std::vector<int> keep{0, 2};
    const Matrix m = rng.ginibre(256, 256);
    volatile double sink = 0.0;
    const double s = seconds([&] { sink = sink + kernels::partial_trace_reference(m, dims, keep)(0, 0).real(); }, repeats);
    const double p = seconds([&] { sink = sink + kernels::partial_trace(m, dims, keep)(0, 0).real(); }, repeats);
    row("partial_trace [4,4,4,4] keep {1,3}", s, p);
  }
  {
    const Matrix k = rng.ginibre(8, 8);
    const Matrix m = rng.ginibre(512, 512);
    volatile double sink = 0.0;
    const double s = seconds([&] { sink = sink + kernels::apply_left_reference(k, m, 8, 8)(0, 0).real(); }, repeats);
    const double p = seconds([&] { sink = sink + kernels::apply_left(k, m, 8, 8)(0, 0).real(); }, repeats);
    row("apply_left 8x8 on 512 (left 8)", s, p);
  }
  {
    const MonotoneHandle h = resolve_monotone("I");
    SuiteOptions serial;
    serial.parallel = false;
    SuiteOptions parallel;
    const double s = seconds([&] { check_condition2(h, {2, 2, 2}, 200, 7, serial); }, 1);
    const double p = seconds([&] { check_condition2(h, {2, 2, 2}, 200, 7, parallel); }, 1);
    row("condition 2 suite, I, [2,2,2], 200", s, p);
  }
  return 0;
}
