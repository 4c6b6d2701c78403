#include "qeng/floquet_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

#include "qeng/errors.hpp"
#include "qeng/kernels.hpp"
#include "qeng/sequence_synthesis.hpp"

namespace qeng {

long long default_max_dim() {
  if (const char* env = std::getenv("QENG_MAX_DIM")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 4096;
}

long long hilbert_dimension(int n, int d, long long max_dim) {
  if (n < 1 || d < 2) throw Error(ErrorKind::Validation, "need N >= 1 and d >= 2");
  long long dim = 1;
  for (int i = 0; i < n; ++i) {
    dim *= d;
    if (dim > max_dim)
      throw Error(ErrorKind::Resource, "Hilbert dimension " + std::to_string(d) + "^" + std::to_string(n) +
                                           " exceeds the cap " + std::to_string(max_dim) +
                                           " (set QENG_MAX_DIM to override)");
  }
  return dim;
}

ComplexMatrix build_hamiltonian(const EnsembleSpec& spec) {
  if (spec.interaction.dimension() != spec.d)
    throw Error(ErrorKind::Representation, "interaction dimension differs from d");
  hilbert_dimension(spec.n, spec.d, spec.max_dim);
  const RealMatrix& j = spec.couplings;
  if (j.rows() != spec.n || j.cols() != spec.n)
    throw Error(ErrorKind::Validation, "couplings must be N x N");
  if (max_abs(RealMatrix(j - j.transpose())) > kAlgebraTol || j.diagonal().cwiseAbs().maxCoeff() > 0.0)
    throw Error(ErrorKind::Validation, "couplings must be symmetric with zero diagonal");
  return kernels::pair_hamiltonian(spec.n, spec.d, j, spec.interaction.matrix());
}

SpectralHamiltonian diagonalize(const ComplexMatrix& h) {
  if (!is_hermitian(h, 1e-9 * std::max(1.0, max_abs(h))))
    throw Error(ErrorKind::Representation, "Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  return {es.eigenvalues(), es.eigenvectors()};
}

namespace {

int infer_sites(long long dim, int d) {
  int n = 0;
  long long p = 1;
  while (p < dim) {
    p *= d;
    ++n;
  }
  if (p != dim || n == 0)
    throw Error(ErrorKind::Representation, "Hamiltonian dimension " + std::to_string(dim) +
                                               " is not a power of d = " + std::to_string(d));
  return n;
}

bool trivial_pulse(const ComplexMatrix& p) {
  return distance_up_to_phase(p, ComplexMatrix::Identity(p.rows(), p.cols())) < 1e-14;
}

}  // namespace

FloquetUnitary floquet_unitary(const ComplexMatrix& h, const PulseSequence& seq, double period) {
  return floquet_unitary(diagonalize(h), seq, period);
}

FloquetUnitary floquet_unitary(const SpectralHamiltonian& h, const PulseSequence& seq, double period) {
  if (!(period > 0.0)) throw Error(ErrorKind::Validation, "period must be > 0");
  const Eigen::Index dim = h.vectors.rows();
  const int n = infer_sites(dim, seq.d);
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  ComplexMatrix tmp(dim, dim);
  Eigen::VectorXcd phase(dim);

  auto evolve = [&](double tau) {
    if (tau == 0.0) return;
    for (Eigen::Index k = 0; k < dim; ++k) phase(k) = std::polar(1.0, -h.energies(k) * tau);
    tmp.noalias() = h.vectors.adjoint() * u;
    tmp = phase.asDiagonal() * tmp;
    u.noalias() = h.vectors * tmp;
  };

  if (seq.frames.empty()) {
    evolve(period);
    return {u, period};
  }
  require_valid(seq);
  const std::vector<ComplexMatrix> pulses = frames_to_applied(seq);
  for (std::size_t i = 0; i < pulses.size(); ++i) {
    if (!trivial_pulse(pulses[i])) kernels::apply_product_left(pulses[i], n, u);
    evolve(seq.frames[i].weight * period);
  }
  const ComplexMatrix close = closing_pulse(seq);
  if (!trivial_pulse(close)) kernels::apply_product_left(close, n, u);
  return {u, period};
}

RealVector eigenphases(const ComplexMatrix& u) {
  // U is normal, so (U + U†)/2 and (U - U†)/2i commute and share U's eigenvectors. A generic
  // real combination of the two is Hermitian with the same eigenbasis.
  constexpr double kMix = 0.6180339887498949;
  const ComplexMatrix ud = u.adjoint();
  const ComplexMatrix k = 0.5 * (u + ud) + (kMix * 0.5) * cplx(0.0, -1.0) * (u - ud);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(k);
  const ComplexMatrix& v = es.eigenvectors();
  const ComplexMatrix uv = u * v;
  RealVector phases(u.rows());
  for (Eigen::Index c = 0; c < v.cols(); ++c) phases(c) = std::arg(v.col(c).dot(uv.col(c)));
  return phases;
}

FidelityTrace fidelity_trace(const FloquetUnitary& u, int n_max) {
  if (n_max < 0) throw Error(ErrorKind::Validation, "n_max must be >= 0");
  FidelityTrace tr;
  tr.values = kernels::fidelity_from_phases(eigenphases(u.u), n_max);
  for (int i = 0; i <= n_max; ++i) tr.times.push_back(i * u.period);
  return tr;
}

FidelityTrace free_fidelity_trace(const RealVector& energies, double dt, int n_max) {
  FidelityTrace tr;
  tr.values = kernels::fidelity_from_phases(-dt * energies, n_max);
  for (int i = 0; i <= n_max; ++i) tr.times.push_back(i * dt);
  return tr;
}

double free_fidelity(const RealVector& energies, double t) {
  cplx s = 0.0;
  for (Eigen::Index k = 0; k < energies.size(); ++k) s += std::polar(1.0, -energies(k) * t);
  return std::norm(s / double(energies.size()));
}

ComplexMatrix toggled_hamiltonian(const ComplexMatrix& h, const ComplexMatrix& u_frame) {
  const int n = infer_sites(h.rows(), static_cast<int>(u_frame.rows()));
  const ComplexMatrix ud = u_frame.adjoint();
  ComplexMatrix m = h;
  kernels::apply_product_left(ud, n, m);  // A H
  m.adjointInPlace();                     // H A†
  kernels::apply_product_left(ud, n, m);  // A H A†
  return m;
}

ComplexMatrix magnus0(const ComplexMatrix& h, const PulseSequence& seq) {
  require_valid(seq);
  ComplexMatrix acc = ComplexMatrix::Zero(h.rows(), h.cols());
  for (const auto& f : seq.frames)
    if (f.weight != 0.0) acc += f.weight * toggled_hamiltonian(h, f.u);
  return acc;
}

ComplexMatrix magnus1(const ComplexMatrix& h, const PulseSequence& seq) {
  require_valid(seq);
  const double period = seq.period_T;
  ComplexMatrix prefix = ComplexMatrix::Zero(h.rows(), h.cols());
  ComplexMatrix acc = ComplexMatrix::Zero(h.rows(), h.cols());
  for (const auto& f : seq.frames) {
    if (f.weight == 0.0) continue;
    const ComplexMatrix hb = (f.weight * period) * toggled_hamiltonian(h, f.u);
    acc += commutator(hb, prefix);
    prefix += hb;
  }
  return cplx(0.0, -1.0 / (2.0 * period)) * acc;
}

RealMatrix random_couplings(int n, double j, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::Validation, "random_couplings needs N >= 2");
  if (!(j > 0.0)) throw Error(ErrorKind::Validation, "random_couplings needs J > 0");
  std::mt19937_64 gen(seed);
  RealMatrix out = RealMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const double u = double(gen() >> 11) * 0x1.0p-53;
      out(a, b) = out(b, a) = -j + 2.0 * j * u;
    }
  return out;
}

DecouplingBenchmark benchmark_decoupling(const EnsembleSpec& spec, const PulseSequence& seq,
                                         const std::vector<double>& t_values, double t_max,
                                         bool symmetrized) {
  if (t_values.empty()) throw Error(ErrorKind::Validation, "no T values given");
  if (!(t_max >= 0.0)) throw Error(ErrorKind::Validation, "t_max must be >= 0");
  for (double t : t_values)
    if (!(t > 0.0)) throw Error(ErrorKind::Validation, "T values must be > 0");
  const SpectralHamiltonian h = diagonalize(build_hamiltonian(spec));
  const PulseSequence base = symmetrized ? symmetrize(seq) : seq;
  const double scale = symmetrized ? 2.0 : 1.0;

  DecouplingBenchmark out;
  out.traces.resize(t_values.size());
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    const double period = scale * t_values[i];
    const int n_max = static_cast<int>(std::floor(t_max / period + 1e-9));
    out.traces[i] = fidelity_trace(floquet_unitary(h, base, period), n_max);
  }
  const double dt = *std::min_element(t_values.begin(), t_values.end());
  out.baseline = free_fidelity_trace(h.energies, dt, static_cast<int>(std::floor(t_max / dt + 1e-9)));
  return out;
}

void write_trace_csv(std::ostream& os, const FidelityTrace& trace) {
  os << "t,F\n";
  os << std::setprecision(12);
  for (std::size_t i = 0; i < trace.times.size(); ++i) os << trace.times[i] << ',' << trace.values[i] << '\n';
}

}  // namespace qeng
