#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qeng/linalg.hpp"

namespace qeng {

/// Trace-orthonormal Hermitian basis {λ_μ} of su(d), tr(λ_μ λ_ν) = 2δ_μν.
///
/// Ordering: d(d-1)/2 real symmetric E_ij + E_ji, then the same number of
/// imaginary antisymmetric -iE_ij + iE_ji over the same pairs, then d-1 real
/// diagonal matrices. Off-diagonal pairs (i < j) are ordered by offset j - i
/// and then by i, which gives (1,2), (2,3), (1,3) for qutrits and so matches
/// the standard Gell-Mann list.
class OperatorBasis {
 public:
  int dimension() const { return d_; }
  int size() const { return static_cast<int>(lambdas_.size()); }
  const ComplexMatrix& operator[](int mu) const { return lambdas_.at(mu); }
  const std::vector<ComplexMatrix>& lambdas() const { return lambdas_; }

  /// Number of off-diagonal pairs, d(d-1)/2.
  int transition_count() const { return static_cast<int>(pairs_.size()); }
  /// Zero-based level pair (i, j), i < j, driven by transition a (zero-based).
  std::pair<int, int> transition(int a) const { return pairs_.at(a); }

  /// Coefficients x_μ = tr(λ_μ A)/2 of a matrix in this basis (identity part dropped).
  Eigen::VectorXcd coefficients(const ComplexMatrix& a) const;

 private:
  friend OperatorBasis build_basis(int d);
  int d_ = 0;
  std::vector<ComplexMatrix> lambdas_;
  std::vector<std::pair<int, int>> pairs_;
};

OperatorBasis build_basis(int d);

/// Exchange operator Π_d = Σ|ij><ji| on C^d ⊗ C^d and its eigenprojectors.
struct ExchangeStructure {
  int d = 0;
  ComplexMatrix pi;
  ComplexMatrix antisym;  // (I - Π)/2
  ComplexMatrix sym;      // (I + Π)/2
};

ExchangeStructure build_exchange(int d);

/// Spin-1 operators in the level order (|+1>, |0>, |-1>).
///
/// Keys: X1..X3 = λ_a/2, Y1..Y3 = λ_{a+3}/2 (transitions +1↔0, 0↔-1, +1↔-1),
/// Sx, Sy, Sz, and Z1 = diag(1,-1,0), Z2 = diag(0,1,-1) so that Z1 + Z2 = Sz.
std::map<std::string, ComplexMatrix> spin1_generators();

}  // namespace qeng
