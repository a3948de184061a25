// Compares the OpenMP law-scan kernels and the parallel hom enumeration
// against their serial reference implementations.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "trusslab/corpus.hpp"
#include "trusslab/serial.hpp"

using namespace trusslab;

namespace {

template <typename F>
double time_ms(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    FiniteHeap h = heap_of_group(cyclic_group(12));
    const int reps = 20;
    double s = time_ms([&] { (void)serial::validate_heap(h); }, reps);
    double p = time_ms([&] { (void)validate_heap(h); }, reps);
    row("validate_heap n=12", s, p);
  }
  {
    FiniteTruss t = truss_of_ring(product_ring(cyclic_ring(3), cyclic_ring(4)));
    const int reps = 50;
    double s = time_ms([&] { (void)serial::validate_truss(t); }, reps);
    double p = time_ms([&] { (void)validate_truss(t); }, reps);
    row("validate_truss n=12", s, p);
  }
  {
    auto r = cyclic_ring(12);
    auto ts = std::make_shared<const FiniteTruss>(truss_of_ring(r));
    FiniteModule m = make_module(ts, ts->heap, ts->mul, true);
    const int reps = 50;
    double s = time_ms([&] { (void)serial::validate_module(m); }, reps);
    double p = time_ms([&] { (void)validate_module(m); }, reps);
    row("validate_module n=12", s, p);
  }
  {
    // Identity-action modules have fat hom sets (all affine maps qualify).
    CorpusConfig cfg;
    TrussContext ctx = truss_context(2, cfg);
    FiniteHeap h6 = heap_of_group(cyclic_group(6));
    std::vector<int> act(2 * 6);
    for (int t = 0; t < 2; ++t)
      for (int x = 0; x < 6; ++x) act[t * 6 + x] = x;
    FiniteModule m = make_module(ctx.truss, h6, act, true);
    const int reps = 5;
    double s = time_ms([&] { (void)serial::enumerate_hom_bruteforce(m, m, 1 << 20); },
                       reps);
    double p = time_ms([&] { (void)enumerate_hom(m, m, 1 << 20); }, reps);
    row("hom 6->6 identity action", s, p);
  }
  return 0;
}
