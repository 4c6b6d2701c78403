#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qeng/linalg.hpp"
#include "qeng/operator_basis.hpp"

namespace qeng {

/// One failed invariant, with the measured violation and the tolerance it broke.
struct Violation {
  std::string check;
  double magnitude = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

/// Homogeneous two-qudit interaction h on C^d ⊗ C^d.
///
/// Invariants: Hermitian, exchange symmetric (Π h Π = h), and free of identity
/// and single-body components. Use strip_single_body() to purify a raw operator.
class TwoQuditInteraction {
 public:
  /// Throws Error(Representation) naming the first violated invariant.
  TwoQuditInteraction(int d, ComplexMatrix h);

  int dimension() const { return d_; }
  const ComplexMatrix& matrix() const { return h_; }

 private:
  int d_;
  ComplexMatrix h_;
};

/// All invariant violations of a candidate d²×d² interaction (empty when valid).
std::vector<Violation> interaction_violations(int d, const ComplexMatrix& h);

/// Splits a Hermitian d²×d² operator into (pure two-body part, identity + single-body remainder).
std::pair<TwoQuditInteraction, ComplexMatrix> strip_single_body(int d, const ComplexMatrix& h);

/// Real symmetric m×m coefficient matrix, h = Σ C_μν λ_μ ⊗ λ_ν, m = d² - 1.
class CMatrix {
 public:
  /// Throws Error(Representation) unless square m×m and symmetric within 1e-10.
  CMatrix(int d, RealMatrix entries);

  int dimension() const { return d_; }
  int size() const { return static_cast<int>(c_.rows()); }
  const RealMatrix& entries() const { return c_; }
  double operator()(int mu, int nu) const { return c_(mu, nu); }
  double trace() const { return c_.trace(); }

 private:
  int d_;
  RealMatrix c_;
};

CMatrix c_matrix(const TwoQuditInteraction& h, const OperatorBasis& basis);
TwoQuditInteraction to_interaction(const CMatrix& c, const OperatorBasis& basis);

struct IsoAnisoSplit {
  double s;      // isotropic strength tr C
  CMatrix aniso; // traceless remainder
};

/// C = (s/m) I + aniso.
IsoAnisoSplit split_iso_aniso(const CMatrix& c);
bool is_cancellable(const CMatrix& c, double tol = kAlgebraTol);

struct ExchangeTraces {
  double sym;      // tr(S_d h)
  double antisym;  // tr(A_d h)
  double c_trace;  // tr C
  double pi;       // tr(h Π_d)
};

ExchangeTraces exchange_trace_identity(const TwoQuditInteraction& h);

/// Orthonormal basis {η_a} of real symmetric m×m matrices, tr(η_a η_b) = 2δ_ab.
/// m diagonal √2·E_aa first, then E_ab + E_ba for a < b in lexicographic order.
class SymmetricBasis {
 public:
  explicit SymmetricBasis(int d);

  int dimension() const { return d_; }
  int m() const { return m_; }
  int size() const { return static_cast<int>(etas_.size()); }
  const RealMatrix& operator[](int a) const { return etas_.at(a); }

 private:
  int d_;
  int m_;
  std::vector<RealMatrix> etas_;
};

struct WVector {
  int d;
  RealVector entries;
};

/// (w)_a = tr(C η_a)/2.
WVector w_vector(const CMatrix& c, const SymmetricBasis& sbasis);
/// Same map on a raw symmetric matrix, without CMatrix validation (hot path).
RealVector w_entries(const RealMatrix& c);
CMatrix from_w(const WVector& w, const SymmetricBasis& sbasis);

/// Secular (energy-conserving) part of h under the strong single-particle term h1.
///
/// Keeps <ab|h|cd> in the eigenbasis of h1 whenever E_a + E_b = E_c + E_d within
/// tol. Default tol: 1e-9 times the spectral range of h1⊗I + I⊗h1.
TwoQuditInteraction secular_effective(const TwoQuditInteraction& h, const ComplexMatrix& h1,
                                      std::optional<double> tol = std::nullopt);

/// Preset C matrices: spin1_dipolar_secular, ising_z_spin1, target_A..target_D
/// (all d = 3), and isotropic (any d; also accepted as "isotropic(d)").
CMatrix preset(std::string_view name, int d = 3);
std::vector<std::string> preset_names();

// Operator-level constructions of the spin-1 interactions behind the presets.

/// (3 S^z⊗S^z - S·S)/2: dipolar coupling along ẑ, before the secular projection.
TwoQuditInteraction spin1_dipolar_interaction();
/// S^z ⊗ S^z.
TwoQuditInteraction ising_z_interaction();
/// Two-particle bond term of H(p,q) = H1 + p H2 + q H3 with the identity part removed.
TwoQuditInteraction hpq_interaction(double p, double q);

}  // namespace qeng
