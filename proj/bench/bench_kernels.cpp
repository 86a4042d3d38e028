#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <vector>

#include <omp.h>

#include "dpweno/flux_splitting.hpp"
#include "dpweno/periodic_operator.hpp"

using namespace dpweno;

namespace {

double seconds_per_call(const std::function<void()>& f, int reps) {
  f();
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

}  // namespace

int main() {
  std::printf("threads: %d\n\n", omp_get_max_threads());
  std::printf("%-28s %7s %12s %12s %8s %s\n", "kernel", "n", "serial [us]", "openmp [us]", "speedup", "identical");
  for (int n : {640, 2560, 10240}) {
    const UniformGrid g(-2.0, 2.0, n);
    const StateField u = sample_field(g, [](double x) { return std::exp(0.5 * x * x) * std::sin(3.14159265358979 * x); });
    for (Scheme s : {Scheme::Weno5Simple, Scheme::MrWeno5, Scheme::MrWeno7}) {
      WenoConfig cfg;
      cfg.scheme = s;
      const int reps = std::max(5, 200000 / n);
      const double ts = seconds_per_call([&] { serial::assemble_weno_flux(u, cfg); }, reps);
      const double tp = seconds_per_call([&] { assemble_weno_flux(u, cfg); }, reps);
      const bool same = serial::assemble_weno_flux(u, cfg).data() == assemble_weno_flux(u, cfg).data();
      std::printf("%-28s %7d %12.1f %12.1f %8.2f %s\n", ("flux " + to_string(s)).c_str(), n, ts * 1e6, tp * 1e6, ts / tp,
                  same ? "yes" : "NO");
    }
    std::vector<double> row(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      row[static_cast<std::size_t>(i)] = 1.0 / (1.0 + i);
      b[static_cast<std::size_t>(i)] = std::sin(0.01 * i);
    }
    const int reps = std::max(3, 20000000 / (n * n) + 1);
    const double ts = seconds_per_call([&] { serial::circulant_multiply(row, b); }, reps);
    const double tp = seconds_per_call([&] { circulant_multiply(row, b); }, reps);
    const bool same = serial::circulant_multiply(row, b) == circulant_multiply(row, b);
    std::printf("%-28s %7d %12.1f %12.1f %8.2f %s\n", "circulant multiply", n, ts * 1e6, tp * 1e6, ts / tp, same ? "yes" : "NO");
  }
  return 0;
}
