#pragma once

#include <random>

#include "qeng/interaction_rep.hpp"
#include "qeng/linalg.hpp"
#include "qeng/operator_basis.hpp"

namespace testing {

using namespace qeng;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline ComplexMatrix random_complex(Eigen::Index r, Eigen::Index c) {
  ComplexMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cplx(uniform(), uniform());
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index n) {
  const ComplexMatrix a = random_complex(n, n);
  return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_unitary(Eigen::Index n) { return expm_hermitian(random_hermitian(n), 2.0); }

inline RealMatrix random_symmetric(Eigen::Index n) {
  RealMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = uniform();
  return 0.5 * (a + a.transpose());
}

// Swap built directly from |ij> -> |ji>, independent of build_exchange.
inline ComplexMatrix swap_oracle(int d) {
  ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p(j * d + i, i * d + j) = 1.0;
  return p;
}

// Random valid two-qudit interaction: exchange-symmetrize, then strip single-body parts.
inline TwoQuditInteraction random_interaction(int d) {
  const ComplexMatrix pi = swap_oracle(d);
  const ComplexMatrix h = random_hermitian(d * d);
  return strip_single_body(d, 0.5 * (h + pi * h * pi)).first;
}

// C_μν = Re tr(h λ_μ⊗λ_ν)/4 with explicit Kronecker products.
inline RealMatrix c_oracle(const ComplexMatrix& h, const OperatorBasis& b) {
  RealMatrix c(b.size(), b.size());
  for (int mu = 0; mu < b.size(); ++mu)
    for (int nu = 0; nu < b.size(); ++nu) c(mu, nu) = (h * kron(b[mu], b[nu])).trace().real() / 4.0;
  return c;
}

}  // namespace testing
