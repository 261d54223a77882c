// Benchmark: OpenMP kernels against their serial reference.
#include <chrono>
#include <cstdio>
#include <functional>

#include "crsb/battery.hpp"
#include "crsb/json_io.hpp"

using namespace crsb;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& f) {
  auto t0 = clock_type::now();
  f();
  auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-34s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", thread_count());
  std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  {
    auto pg32 = flag_building(3, 2);
    double s = time_ms([&] { verify_wd_axioms(*pg32, Exec::serial); });
    double p = time_ms([&] { verify_wd_axioms(*pg32, Exec::parallel); });
    row("verify_wd_axioms pg32", s, p);
  }
  {
    auto a3 = thin_building(build_system(coxeter_matrix_preset("A3")), "a3");
    auto full = full_subcomplex(a3);
    double s = time_ms([&] { is_convex(full, Exec::serial); });
    double p = time_ms([&] { is_convex(full, Exec::parallel); });
    row("is_convex a3 full complex", s, p);
  }
  {
    auto fano = flag_building(2, 2);
    auto full = full_subcomplex(fano);
    double s = time_ms([&] { complete_reducibility(full, CrMode::All, Exec::serial); });
    double p = time_ms([&] { complete_reducibility(full, CrMode::All, Exec::parallel); });
    row("complete_reducibility fano", s, p);
  }
  {
    auto fano = flag_building(2, 2);
    double s = time_ms([&] { run_fuzz(fano, 8, 11, Exec::serial); });
    double p = time_ms([&] { run_fuzz(fano, 8, 11, Exec::parallel); });
    row("fuzz battery fano x8", s, p);
  }
  {
    auto joined = build_preset("fano*s0");
    auto full = full_subcomplex(joined);
    double s = time_ms([&] { decompose(full, Exec::serial); });
    // decompose caches charts on the building; rebuild for a fair run
    auto joined2 = build_preset("fano*s0");
    auto full2 = full_subcomplex(joined2);
    double p = time_ms([&] { decompose(full2, Exec::parallel); });
    row("decompose fano*s0", s, p);
  }
  return 0;
}
