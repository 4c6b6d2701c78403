// Serial vs OpenMP timings for the kernels in qeng/kernels.hpp.
#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include <omp.h>

#include "qeng/floquet_sim.hpp"
#include "qeng/interaction_rep.hpp"
#include "qeng/kernels.hpp"
#include "qeng/pulse_algebra.hpp"

using namespace qeng;

namespace {

double seconds(const std::function<void()>& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-26s %12.3f ms %12.3f ms %8.2fx\n", name, serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-26s %15s %15s %9s\n", "kernel", "serial", "openmp", "speedup");

  const OperatorBasis basis = build_basis(3);
  const auto gens = transition_generators(3);
  const auto elems = elementary_set(gens);
  std::vector<ComplexMatrix> us;
  for (const auto& a : elems)
    for (const auto& b : elems)
      for (const auto& c : elems)
        if (a.angle != 0 && b.angle != 0 && c.angle != 0)
          us.push_back(a.unitary(basis) * b.unitary(basis) * c.unitary(basis));

  row("orthogonal_reps", seconds([&] { kernels::orthogonal_reps_serial(us, basis); }, 1),
      seconds([&] { kernels::orthogonal_reps(us, basis); }, 1));

  const auto os = kernels::orthogonal_reps(us, basis);
  const RealMatrix c = preset("spin1_dipolar_secular").entries();
  row("conjugated_w_columns", seconds([&] { kernels::conjugated_w_columns_serial(os, c); }, 3),
      seconds([&] { kernels::conjugated_w_columns(os, c); }, 3));

  const int n = 6;
  const RealMatrix j = random_couplings(n, 1.0, 7);
  const ComplexMatrix h = spin1_dipolar_interaction().matrix();
  row("pair_hamiltonian N=6", seconds([&] { kernels::pair_hamiltonian_serial(n, 3, j, h); }, 3),
      seconds([&] { kernels::pair_hamiltonian(n, 3, j, h); }, 3));

  const ComplexMatrix hn = kernels::pair_hamiltonian(n, 3, j, h);
  const ComplexMatrix p = us.front();
  ComplexMatrix m1 = hn, m2 = hn;
  row("apply_product_left N=6", seconds([&] { kernels::apply_product_left_serial(p, n, m1); }, 3),
      seconds([&] { kernels::apply_product_left(p, n, m2); }, 3));

  RealVector phases = RealVector::LinSpaced(729, -3.0, 3.0);
  row("fidelity_from_phases", seconds([&] { kernels::fidelity_from_phases_serial(phases, 20000); }, 1),
      seconds([&] { kernels::fidelity_from_phases(phases, 20000); }, 1));
  return 0;
}
