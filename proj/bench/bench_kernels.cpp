// Serial reference vs OpenMP kernels: mode sums and a full g2 sweep.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "dce/commands.hpp"
#include "dce/config.hpp"
#include "dce/kernels.hpp"
#include "dce/lattice.hpp"

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    best = std::min(best, dt.count());
  }
  return best;
}

}  // namespace

int main() {
  const int workers = dce::worker_count();
  std::printf("workers: %d\n\n%-28s %12s %12s %8s %s\n", workers, "kernel", "serial [s]", "omp [s]",
              "speedup", "identical");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {64u, 128u, 256u, 512u}) {
    const auto spectrum = dce::spectrum_of(dce::ArrayTopology::ring(n));
    std::vector<double> w(n);
    for (auto& x : w) x = u(rng);
    dce::Matrix a, b;
    const double ts = best_of(3, [&] { a = dce::kernels::serial::mode_sum(spectrum.modes, w); });
    const double tp = best_of(3, [&] { b = dce::kernels::omp::mode_sum(spectrum.modes, w, workers); });
    char label[40];
    std::snprintf(label, sizeof label, "mode_sum ring n=%zu", n);
    std::printf("%-28s %12.6f %12.6f %8.2f %s\n", label, ts, tp, ts / tp, a == b ? "yes" : "NO");
  }

  auto config = dce::parse_config(
      "topology=ring\nn=31\na0_joule=1e-24\ntarget_occupancy=0.1\n"
      "theta_start=0\ntheta_end=3.14159\ntheta_steps=400\ntemperature_mk=0,25,40\nobservables=g2\n");
  dce::CommandOptions serial, parallel;
  serial.exec = dce::Exec::Serial;
  std::string a, b;
  const double ts = best_of(2, [&] { a = dce::run_sweep(config, serial).csv; });
  const double tp = best_of(2, [&] { b = dce::run_sweep(config, parallel).csv; });
  std::printf("%-28s %12.6f %12.6f %8.2f %s\n", "sweep ring n=31 g2", ts, tp, ts / tp,
              a == b ? "yes" : "NO");
  return 0;
}
