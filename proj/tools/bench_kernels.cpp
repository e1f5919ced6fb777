// Times the hot kernels on the serial reference path and on the OpenMP path
// and prints the speedups.  Both paths are required to produce bit-identical
// numbers (fixed-block reductions); this also cross-checks that here.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "drop/field.hpp"
#include "drop/flow.hpp"
#include "drop/metrics.hpp"
#include "drop/par.hpp"
#include "drop/reflection.hpp"
#include "drop/shape.hpp"

using namespace drop;

namespace {

struct BenchResult {
  double serial_ms = 0.0;
  double openmp_ms = 0.0;
  double value_serial = 0.0;
  double value_openmp = 0.0;
};

double time_ms(const std::function<double()>& fn, int reps, double* value) {
  // one warmup, then best of reps
  *value = fn();
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    const double v = fn();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    *value = v;
  }
  return best;
}

BenchResult bench(const std::function<double()>& fn, int reps) {
  BenchResult r;
  par::set_enabled(false);
  r.serial_ms = time_ms(fn, reps, &r.value_serial);
  par::set_enabled(true);
  r.openmp_ms = time_ms(fn, reps, &r.value_openmp);
  return r;
}

void report(const std::string& name, const BenchResult& r) {
  std::printf("%-28s serial %9.3f ms   openmp %9.3f ms   speedup %5.2fx   %s\n", name.c_str(),
              r.serial_ms, r.openmp_ms, r.serial_ms / r.openmp_ms,
              r.value_serial == r.value_openmp ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads available: %d\n", par::max_threads());
  const RadialShape flower = RadialShape::perturbed_ball(1.0, 0.1, 3, 256);
  const RadialShape offset = RadialShape::offset_ball(1.0, 0.2, 256);

  report("star_radius", bench([&] { return star_radius(flower); }, 20));

  report("check_star_shaped", bench(
                                  [&] {
                                    return check_star_shaped(flower, 0.8, 8, 32).ok ? 1.0 : 0.0;
                                  },
                                  3));

  report("s_min sweep (64 dirs)", bench(
                                      [&] {
                                        double sup = 0.0;
                                        for (int d = 0; d < 64; ++d) {
                                          const Vec2 nu = unit_dir(kTwoPi * d / 64.0);
                                          sup = std::max(sup, s_min(offset, nu, 0.0, 1e-3));
                                        }
                                        return sup;
                                      },
                                      3));

  report("pseudo_dist_sq", bench([&] { return pseudo_dist_sq(flower, offset); }, 10));

  report("hausdorff", bench([&] { return hausdorff(flower, offset); }, 20));

  {
    FieldSolver solver(64, 256);
    report("field solve (64x256)", bench(
                                       [&] {
                                         std::vector<double> w;
                                         double integral = 0.0;
                                         solver.solve_unit_source(flower, w, integral);
                                         return integral;
                                       },
                                       3));
  }

  {
    SchemeParams params;
    params.h = 0.02;
    params.M = 5.0;
    params.r0 = 0.5;
    params.V = 1.0;
    FieldSolver solver(params.n_s, params.m);
    const RadialShape init = RadialShape::perturbed_ball(1.2, 0.05, 3, 256);
    report("jko_step", bench(
                           [&] {
                             FieldSolver fresh(params.n_s, params.m);
                             return jko_step(init, params, fresh).radius(0);
                           },
                           2));
  }
  return 0;
}
