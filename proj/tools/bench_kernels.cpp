// Timing comparison of the OpenMP kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <vector>

#include "fracmoser/fraclap.hpp"
#include "fracmoser/gridfield.hpp"
#include "fracmoser/moser_family.hpp"
#include "fracmoser/nehari.hpp"
#include "fracmoser/parallel.hpp"

using namespace fm;
using clock_t_ = std::chrono::steady_clock;

namespace {

template <class F>
double time_once(F&& body) {
  const auto t0 = clock_t_::now();
  body();
  return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-28s serial %8.3f s   openmp %8.3f s   speedup %.2fx\n", name,
              serial, parallel, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", max_threads());

  {
    MoserParams params(Dim(2), ExponentPair(2), std::exp(-4));
    RadialProfile u = u_eps(params);
    std::vector<double> radii;
    for (int i = 1; i <= 160; ++i) radii.push_back(2.0 * i / 160.0);
    const OperatorSpec op(0.5);
    std::vector<double> a, b;
    const double ts =
        time_once([&] { a = kernels::frac_lap_map_serial(u, op, radii, 1e-6); });
    const double tp =
        time_once([&] { b = kernels::frac_lap_map(u, op, radii, 1e-6); });
    report("pointwise operator map", ts, tp);
  }

  {
    MoserParams params(Dim(2), ExponentPair(2), std::exp(-3));
    RadialProfile u = u_eps(params);
    GridField a(2, 8.0, 64), b(2, 8.0, 64);
    const double ts =
        time_once([&] { a = GridField::sample_radial_serial(u, 1024, 8.0); });
    const double tp =
        time_once([&] { b = GridField::sample_radial(u, 1024, 8.0); });
    report("grid sampling 1024^2", ts, tp);
  }

  {
    const int N = 2048;
    std::vector<double> a(2 * static_cast<size_t>(N) * N);
    for (size_t i = 0; i < a.size(); ++i) a[i] = std::sin(0.01 * i);
    std::vector<double> b = a;
    const SymbolSpec sym = SymbolSpec::bessel(1.0, 0.5);
    const double ts =
        time_once([&] { kernels::symbol_multiply_serial(a, 2, N, 8.0, sym); });
    const double tp =
        time_once([&] { kernels::symbol_multiply(b, 2, N, 8.0, sym); });
    report("symbol multiply 2048^2", ts, tp);
  }

  {
    std::vector<double> a, b;
    const double ts =
        time_once([&] { a = kernels::stiffness_column_1d_serial(4096); });
    const double tp = time_once([&] { b = kernels::stiffness_column_1d(4096); });
    report("1d stiffness column", ts, tp);
  }

  return 0;
}
