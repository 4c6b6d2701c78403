#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qeng/interaction_rep.hpp"
#include "qeng/pulse_algebra.hpp"
#include "qeng/simplex.hpp"

namespace qeng {

enum class SynthesisStatus { Optimal, Infeasible, UnboundedDegenerate };
const char* to_string(SynthesisStatus s);

struct SynthesisResult {
  SynthesisStatus status = SynthesisStatus::Infeasible;
  std::optional<PulseSequence> sequence;
  double beta_star = 0.0;   // best anisotropic rescaling found by the LP (case i)
  double beta = 0.0;        // final rescaling: C_eff = beta * C_target
  double residual = 0.0;    // ‖C_eff - beta C_target‖_max, or LP infeasibility when infeasible
  int frames_used = 0;
  int composite_set_size = 0;
  std::string reason;       // set when not optimal

  bool ok() const { return status == SynthesisStatus::Optimal; }
};

/// P_⊥ = I - w wᵀ/|w|².
RealMatrix projector_perp(const RealVector& w);

/// Σ α_i O_iᵀ C O_i = 0 over the composite set. Infeasible without an LP when |tr C| >= tol.
SynthesisResult decouple(const CMatrix& c, const std::vector<CompositePulse>& composites,
                         double tol = 1e-9);

/// Case (i): both traceless. Maximizes β* with C_eff = β* C_f. Throws Error(Validation) for C_f = 0.
SynthesisResult map_anisotropic(const CMatrix& c0, const CMatrix& cf,
                                const std::vector<CompositePulse>& composites, double tol = 1e-9);

/// Cases (i) and (ii). With both traces nonzero, β = tr C0 / tr Cf is forced; the result
/// concatenates the anisotropic map (weight β/β₁*) with a decoupler of aniso(C0).
SynthesisResult engineer(const CMatrix& c0, const CMatrix& cf,
                         const std::vector<CompositePulse>& composites, double tol = 1e-9);

/// H(p,q) from Ising couplings by mixing the four corner sequences A(2,0), B(1,-½), C(0,0),
/// D(1,½). The corners are synthesized once at construction.
class HpqEngineer {
 public:
  HpqEngineer(const std::vector<CompositePulse>& composites, double tol = 1e-9);

  SynthesisResult engineer(double p, double q) const;
  const SynthesisResult& corner(int index) const { return corners_.at(index); }
  static bool in_hull(double p, double q, double tol = 1e-12);

 private:
  std::array<SynthesisResult, 4> corners_;
  int composite_set_size_;
  double tol_;
};

SynthesisResult engineer_hpq(double p, double q, const std::vector<CompositePulse>& composites,
                             double tol = 1e-9);

/// Frames u_1..u_k, u_k..u_1 with halved weights over period 2T.
PulseSequence symmetrize(const PulseSequence& seq);

}  // namespace qeng
