// Serial vs OpenMP wavefunction sampling, and serial vs parallel table rows.
#include <chrono>
#include <cstdio>

#include <omp.h>

#include "radsolve/report.hpp"
#include "radsolve/wavefunctions.hpp"

using namespace radsolve;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int points = argc > 1 ? std::atoi(argv[1]) : 200000;
  const UnitSystem nat = UnitSystem::natural();
  std::printf("threads: %d, points: %d\n", omp_get_max_threads(), points);

  struct Case {
    const char* name;
    EffectivePotential U;
  };
  const Case cases[] = {
      {"ho l=2 (closed-form phase)", EffectivePotential(IsotropicHO{1}, 2, nat)},
      {"parabolic l=1 (numeric phase)", EffectivePotential(Parabolic{1, 1, 1}, 1, nat)}};
  for (const auto& c : cases) {
    const auto wf = normalize(RadialWaveFunction::bound_state(c.U, Parity::symmetric, 2));
    const auto& tp = wf.turning_points();
    const auto grid = uniform_grid(tp.r1 + tp.d * 1e-9, tp.r2, points);
    std::vector<WaveSample> a;
    std::vector<WaveSample> b;
    const double ts = best_of(3, [&] { a = sample_wavefunction_serial(wf, grid); });
    const double tp_ = best_of(3, [&] { b = sample_wavefunction(wf, grid); });
    bool same = a.size() == b.size();
    for (std::size_t i = 0; same && i < a.size(); ++i) same = a[i].re == b[i].re;
    std::printf("%-32s serial %.4f s  openmp %.4f s  speedup %.2fx  identical=%s\n", c.name,
                ts, tp_, ts / tp_, same ? "yes" : "no");
  }
  const double tables = best_of(3, [] {
    for (auto id : {TableId::part2_table1, TableId::part2_table2, TableId::part2_table3,
                    TableId::hydrogen}) {
      (void)reproduce_table(id);
    }
  });
  std::printf("all tables (rows in parallel): %.4f s\n", tables);
  return 0;
}
