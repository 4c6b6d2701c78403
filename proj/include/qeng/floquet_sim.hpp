#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qeng/interaction_rep.hpp"
#include "qeng/linalg.hpp"
#include "qeng/pulse_algebra.hpp"

namespace qeng {

/// Hilbert-space cap: $QENG_MAX_DIM if set to a positive integer, else 4096.
long long default_max_dim();

struct EnsembleSpec {
  int n = 2;
  int d = 3;
  RealMatrix couplings;  // symmetric, zero diagonal, n×n
  TwoQuditInteraction interaction;
  long long max_dim = default_max_dim();
};

/// D = d^N, or Error(Resource) when it exceeds max_dim.
long long hilbert_dimension(int n, int d, long long max_dim);

/// Σ_{i<j} J_ij h_ij with site 0 as the most significant tensor factor.
ComplexMatrix build_hamiltonian(const EnsembleSpec& spec);

struct SpectralHamiltonian {
  RealVector energies;
  ComplexMatrix vectors;
};
SpectralHamiltonian diagonalize(const ComplexMatrix& h);

struct FloquetUnitary {
  ComplexMatrix u;
  double period = 0.0;
};

/// U(T) = [P_close] e^{-iHτ_k} P_k ··· e^{-iHτ_1} P_1 with τ_i = α_i T, P_i = (u_i u_{i-1}†)^{⊗N}.
/// The closing pulse u_k† is applied when the last frame is not the identity, so that
/// U(T) equals the toggling-frame product e^{-iH̄_kτ_k}···e^{-iH̄_1τ_1}. N is inferred from H.
FloquetUnitary floquet_unitary(const ComplexMatrix& h, const PulseSequence& seq, double period);
FloquetUnitary floquet_unitary(const SpectralHamiltonian& h, const PulseSequence& seq, double period);

struct FidelityTrace {
  std::vector<double> times;
  std::vector<double> values;
};

/// Eigenphases of a unitary, via one Hermitian eigendecomposition.
RealVector eigenphases(const ComplexMatrix& u);

/// F(nT) = |tr(U_T^n)/D|² for n = 0..n_max, from the eigenphases of U_T.
FidelityTrace fidelity_trace(const FloquetUnitary& u, int n_max);
/// Pulse-free F(t) = |Σ_k e^{-iE_k t}/D|² at t = n·dt, n = 0..n_max.
FidelityTrace free_fidelity_trace(const RealVector& energies, double dt, int n_max);
double free_fidelity(const RealVector& energies, double t);

/// H̄_i = U_i† H U_i with U_i = u_i^{⊗N}.
ComplexMatrix toggled_hamiltonian(const ComplexMatrix& h, const ComplexMatrix& u_frame);

/// Σ_i α_i H̄_i.
ComplexMatrix magnus0(const ComplexMatrix& h, const PulseSequence& seq);
/// -(i/2T) Σ_{i>j} [τ_i H̄_i, τ_j H̄_j] with T = seq.period_T.
ComplexMatrix magnus1(const ComplexMatrix& h, const PulseSequence& seq);

/// J_ij = -J + 2J·u for i < j in row-major order, u = (x >> 11)·2^-53 with x drawn from
/// std::mt19937_64(seed). Symmetric with zero diagonal.
RealMatrix random_couplings(int n, double j, std::uint64_t seed);

struct DecouplingBenchmark {
  FidelityTrace baseline;             // no pulses, on the finest T grid
  std::vector<FidelityTrace> traces;  // one per T value
};

/// Fidelity up to t_max for each T. With symmetrized = true the sequence is symmetrized
/// first, so each trace has period 2T and the same segment durations.
DecouplingBenchmark benchmark_decoupling(const EnsembleSpec& spec, const PulseSequence& seq,
                                         const std::vector<double>& t_values, double t_max,
                                         bool symmetrized);

/// "t,F" header then one row per point, 12 significant digits.
void write_trace_csv(std::ostream& os, const FidelityTrace& trace);

}  // namespace qeng
