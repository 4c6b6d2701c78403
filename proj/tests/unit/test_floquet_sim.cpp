#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include "qeng/errors.hpp"
#include "qeng/floquet_sim.hpp"
#include "qeng/sequence_synthesis.hpp"
#include "support.hpp"

using namespace qeng;
using namespace testing;

namespace {

EnsembleSpec ensemble(int n, const TwoQuditInteraction& h, double j = 1.0, std::uint64_t seed = 3) {
  return EnsembleSpec{.n = n, .d = h.dimension(), .couplings = random_couplings(n, j, seed), .interaction = h};
}

ComplexMatrix pair_h(const TwoQuditInteraction& h, double j) { return j * h.matrix(); }

PulseSequence random_sequence(int d, int k, double period) {
  PulseSequence s;
  s.d = d;
  s.period_T = period;
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    s.frames.push_back({random_unitary(d), uniform(0.1, 1.0), {}, false});
    total += s.frames.back().weight;
  }
  for (auto& f : s.frames) f.weight /= total;
  return s;
}

// Toggling-frame Hamiltonian on two sites by explicit Kronecker products.
ComplexMatrix toggled_oracle(const ComplexMatrix& h, const ComplexMatrix& u) {
  const ComplexMatrix uu = kron(u, u);
  return uu.adjoint() * h * uu;
}

ComplexMatrix effective_from_log(const ComplexMatrix& u, double period) {
  const ComplexMatrix l = u.log();
  return cplx(0.0, 1.0 / period) * l;
}

}  // namespace

TEST_CASE("ensemble Hamiltonian") {
  const TwoQuditInteraction ising = ising_z_interaction();
  RealMatrix j = RealMatrix::Zero(2, 2);
  j(0, 1) = j(1, 0) = 0.7;
  const ComplexMatrix h = build_hamiltonian({.n = 2, .d = 3, .couplings = j, .interaction = ising});
  const double m[3] = {1, 0, -1};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(std::abs(h(3 * a + b, 3 * a + b) - 0.7 * m[a] * m[b]) < 1e-15);
  CHECK(std::abs(ComplexMatrix(h).diagonal().sum()) < 1e-15);
  CHECK(max_abs(ComplexMatrix(h - ComplexMatrix(h.diagonal().asDiagonal()))) < 1e-15);

  const ComplexMatrix zero =
      build_hamiltonian({.n = 3, .d = 3, .couplings = RealMatrix::Zero(3, 3), .interaction = ising});
  CHECK(max_abs(zero) == 0.0);

  // Sum over bonds against the two-site oracle on each (i, j) embedding.
  const TwoQuditInteraction hr = random_interaction(3);
  const EnsembleSpec spec = ensemble(3, hr);
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  const ComplexMatrix s12 = kron(id, swap_oracle(3));
  const ComplexMatrix h01 = kron(hr.matrix(), id);
  const ComplexMatrix oracle = spec.couplings(0, 1) * h01 + spec.couplings(1, 2) * kron(id, hr.matrix()) +
                               spec.couplings(0, 2) * s12 * h01 * s12;
  CHECK(max_abs(ComplexMatrix(build_hamiltonian(spec) - oracle)) < 1e-12);

  EnsembleSpec big = ensemble(8, ising);
  big.max_dim = 4096;
  try {
    build_hamiltonian(big);
    FAIL("expected a resource error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
  }
  CHECK(hilbert_dimension(7, 3, 4096) == 2187);
  CHECK_THROWS_AS(hilbert_dimension(7, 3, 2000), Error);

  EnsembleSpec asym = ensemble(3, ising);
  asym.couplings(0, 1) += 0.1;
  CHECK_THROWS_AS(build_hamiltonian(asym), Error);
}

TEST_CASE("dimension cap from the environment") {
  ::setenv("QENG_MAX_DIM", "100", 1);
  CHECK(default_max_dim() == 100);
  ::setenv("QENG_MAX_DIM", "junk", 1);
  CHECK(default_max_dim() == 4096);
  ::unsetenv("QENG_MAX_DIM");
  CHECK(default_max_dim() == 4096);
}

TEST_CASE("Floquet unitary") {
  const TwoQuditInteraction hr = random_interaction(3);
  const ComplexMatrix h = pair_h(hr, 0.9);
  const double period = 0.37;

  PulseSequence empty;
  empty.d = 3;
  const ComplexMatrix free_u = (cplx(0.0, -period) * h).exp();
  CHECK(max_abs(ComplexMatrix(floquet_unitary(h, empty, period).u - free_u)) < 1e-12);

  for (int rep = 0; rep < 5; ++rep) {
    const PulseSequence s = random_sequence(3, 4, period);
    const FloquetUnitary fu = floquet_unitary(h, s, period);
    CHECK(fu.period == period);
    CHECK(is_unitary(fu.u, 1e-10));
    // Toggling-frame product e^{-iH̄_k τ_k} ... e^{-iH̄_1 τ_1}, up to a global phase.
    ComplexMatrix oracle = ComplexMatrix::Identity(9, 9);
    for (const auto& f : s.frames)
      oracle = (cplx(0.0, -f.weight * period) * toggled_oracle(h, f.u)).exp() * oracle;
    CHECK(distance_up_to_phase(fu.u, oracle) < 1e-10);
  }

  // A cycle of pulses that closes on the identity frame.
  PulseSequence ident;
  ident.d = 3;
  ident.frames.push_back({ComplexMatrix::Identity(3, 3), 1.0, {}, false});
  CHECK(max_abs(ComplexMatrix(floquet_unitary(h, ident, period).u - free_u)) < 1e-12);

  CHECK_THROWS_AS(floquet_unitary(h, empty, 0.0), Error);
  PulseSequence wrong = random_sequence(2, 2, period);
  CHECK_THROWS_AS(floquet_unitary(h, wrong, period), Error);
}

TEST_CASE("eigenphases and fidelity") {
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix u = random_unitary(27);
    RealVector mine = eigenphases(u);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(u);
    RealVector ref(27);
    for (int k = 0; k < 27; ++k) ref(k) = std::arg(es.eigenvalues()(k));
    std::sort(mine.data(), mine.data() + 27);
    std::sort(ref.data(), ref.data() + 27);
    CHECK((mine - ref).cwiseAbs().maxCoeff() < 1e-10);

    const FidelityTrace tr = fidelity_trace({u, 0.5}, 6);
    REQUIRE(tr.values.size() == 7);
    ComplexMatrix un = ComplexMatrix::Identity(27, 27);
    for (int n = 0; n <= 6; ++n) {
      CHECK(tr.times[n] == doctest::Approx(0.5 * n));
      CHECK(std::abs(tr.values[n] - std::norm(un.trace() / 27.0)) < 1e-10);
      un = u * un;
    }
  }

  const ComplexMatrix h = pair_h(random_interaction(3), 1.0);
  const SpectralHamiltonian sh = diagonalize(h);
  const FidelityTrace ft = free_fidelity_trace(sh.energies, 0.25, 8);
  for (int n = 0; n <= 8; ++n) {
    const ComplexMatrix un = (cplx(0.0, -0.25 * n) * h).exp();
    CHECK(std::abs(ft.values[n] - std::norm(un.trace() / 9.0)) < 1e-10);
    CHECK(std::abs(free_fidelity(sh.energies, 0.25 * n) - ft.values[n]) < 1e-12);
  }
  CHECK(ft.values[0] == doctest::Approx(1.0));
}

TEST_CASE("Magnus terms") {
  const TwoQuditInteraction hr = random_interaction(3);
  const ComplexMatrix h = pair_h(hr, 1.0);
  const PulseSequence s = random_sequence(3, 4, 0.2);

  ComplexMatrix m0 = ComplexMatrix::Zero(9, 9), m1 = ComplexMatrix::Zero(9, 9);
  std::vector<ComplexMatrix> hb;
  for (const auto& f : s.frames) hb.push_back(toggled_oracle(h, f.u));
  for (std::size_t i = 0; i < hb.size(); ++i) {
    CHECK(max_abs(ComplexMatrix(toggled_hamiltonian(h, s.frames[i].u) - hb[i])) < 1e-12);
    m0 += s.frames[i].weight * hb[i];
    for (std::size_t j = 0; j < i; ++j) {
      const ComplexMatrix a = s.frames[i].weight * s.period_T * hb[i];
      const ComplexMatrix b = s.frames[j].weight * s.period_T * hb[j];
      m1 += a * b - b * a;
    }
  }
  m1 *= cplx(0.0, -1.0 / (2.0 * s.period_T));
  CHECK(max_abs(ComplexMatrix(magnus0(h, s) - m0)) < 1e-12);
  CHECK(max_abs(ComplexMatrix(magnus1(h, s) - m1)) < 1e-12);
  CHECK(max_abs(m1) > 1e-3);

  // The zeroth-order term is the operator form of effective_c.
  const OperatorBasis b = build_basis(3);
  const CMatrix c = c_matrix(hr, b);
  CHECK(max_abs(RealMatrix(c_oracle(magnus0(h, s), b) - effective_c(s, c).entries())) < 1e-12);

  const ComplexMatrix hd = pair_h(spin1_dipolar_interaction(), 1.0);
  const PulseSequence sup = supplement_sequence();
  CHECK(max_abs(magnus1(h, symmetrize(s))) < 1e-12);
  CHECK(max_abs(magnus1(hd, symmetrize(sup))) < 1e-12);

  // (i/T) log U(T) = H0 + H1 + O(T²).
  double err[2];
  const double periods[2] = {1e-2, 1e-3};
  for (int k = 0; k < 2; ++k) {
    PulseSequence sk = s;
    sk.period_T = periods[k];
    const ComplexMatrix heff = effective_from_log(floquet_unitary(h, sk, periods[k]).u, periods[k]);
    err[k] = max_abs(ComplexMatrix(heff - magnus0(h, sk) - magnus1(h, sk)));
  }
  CHECK(err[0] / err[1] > 50.0);
  CHECK(err[1] < 1e-5);
}

TEST_CASE("random couplings") {
  const RealMatrix a = random_couplings(6, 1.5, 42);
  CHECK(max_abs(RealMatrix(a - random_couplings(6, 1.5, 42))) == 0.0);
  CHECK(max_abs(RealMatrix(a - random_couplings(6, 1.5, 43))) > 0.0);
  CHECK(max_abs(RealMatrix(a - a.transpose())) == 0.0);
  CHECK(a.diagonal().cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.cwiseAbs().maxCoeff() <= 1.5);

  std::mt19937_64 gen(42);
  const double u01 = double(gen() >> 11) / 9007199254740992.0;
  const double u02 = double(gen() >> 11) / 9007199254740992.0;
  CHECK(a(0, 1) == -1.5 + 3.0 * u01);
  CHECK(a(0, 2) == -1.5 + 3.0 * u02);

  const RealMatrix big = random_couplings(200, 1.0, 9);
  CHECK(std::abs(big.sum() / (200.0 * 199.0)) < 0.02);
  CHECK_THROWS_AS(random_couplings(1, 1.0, 1), Error);
  CHECK_THROWS_AS(random_couplings(3, 0.0, 1), Error);
}

TEST_CASE("decoupling benchmark") {
  const EnsembleSpec spec = ensemble(3, spin1_dipolar_interaction());
  const PulseSequence sup = supplement_sequence();
  const DecouplingBenchmark plain = benchmark_decoupling(spec, sup, {0.1, 0.2}, 2.0, false);
  REQUIRE(plain.traces.size() == 2);
  CHECK(plain.traces[0].values.size() == 21);
  CHECK(plain.traces[1].values.size() == 11);
  CHECK(plain.baseline.values.size() == 21);
  CHECK(plain.traces[1].times.back() == doctest::Approx(2.0));
  const SpectralHamiltonian sh = diagonalize(build_hamiltonian(spec));
  for (std::size_t n = 0; n < plain.baseline.values.size(); ++n) {
    CHECK(std::abs(plain.baseline.values[n] - free_fidelity(sh.energies, 0.1 * n)) < 1e-12);
    CHECK(plain.traces[0].values[n] >= -1e-12);
    CHECK(plain.traces[0].values[n] <= 1.0 + 1e-12);
  }
  CHECK(plain.traces[0].values[0] == doctest::Approx(1.0));

  const DecouplingBenchmark sym = benchmark_decoupling(spec, sup, {0.1}, 2.0, true);
  CHECK(sym.traces[0].values.size() == 11);
  CHECK(sym.traces[0].times[1] == doctest::Approx(0.2));

  CHECK_THROWS_AS(benchmark_decoupling(spec, sup, {}, 1.0, false), Error);
  CHECK_THROWS_AS(benchmark_decoupling(spec, sup, {-0.1}, 1.0, false), Error);
}

TEST_CASE("trace CSV") {
  std::ostringstream os;
  write_trace_csv(os, FidelityTrace{{0.0, 0.5}, {1.0, 0.25}});
  CHECK(os.str() == "t,F\n0,1\n0.5,0.25\n");
}
