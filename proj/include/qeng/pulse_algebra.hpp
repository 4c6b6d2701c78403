#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qeng/interaction_rep.hpp"
#include "qeng/linalg.hpp"
#include "qeng/operator_basis.hpp"

namespace qeng {

/// Pulse generator: X_a = λ_a/2 or Y_a = λ_{a+t}/2 on transition a (t = d(d-1)/2
/// transitions), or Λ_μ = λ_μ/2 for an arbitrary basis element. Indices are 1-based.
struct Generator {
  enum class Kind { X, Y, Lambda };
  Kind kind = Kind::X;
  int index = 1;

  ComplexMatrix matrix(const OperatorBasis& basis) const;
  std::string to_string() const;
  static Generator parse(std::string_view token);

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// exp(-i·angle·G). The default enumeration only uses angles ±π/2 and ±π.
struct ElementaryPulse {
  Generator generator;
  double angle = 0.0;

  ComplexMatrix unitary(const OperatorBasis& basis) const;

  /// Recipe token "<pi/2|pi|radians>:<X1|Y2|L7>:<+|->", e.g. "pi/2:X1:+" = exp(-iπ/2 X1).
  std::string to_string() const;
  static ElementaryPulse parse(std::string_view token);
};

using Recipe = std::vector<ElementaryPulse>;

/// Matrix product of a recipe in listed order: r[0]·r[1]···r[n-1] (r[n-1] acts first).
ComplexMatrix recipe_unitary(const Recipe& recipe, const OperatorBasis& basis);

struct CompositePulse {
  Recipe recipe;     // empty recipe is the identity
  ComplexMatrix u;   // recipe_unitary(recipe)
  RealMatrix o;      // orthogonal_rep(u).o, also the dedup fingerprint
};

struct OrthogonalRep {
  RealMatrix o;          // O_{ν'ν} = ½ tr(λ_ν u† λ_ν' u)
  ComplexMatrix source;
};

/// Throws Error(Representation) if u is not unitary within 1e-10.
OrthogonalRep orthogonal_rep(const ComplexMatrix& u, const OperatorBasis& basis);

/// M_ab = ½ tr(η_a Oᵀ η_b O), so that M w(C) = w(Oᵀ C O).
RealMatrix m_rep(const OrthogonalRep& o, const SymmetricBasis& sbasis);

/// Every X_a and Y_a transition generator for dimension d.
std::vector<Generator> transition_generators(int d);

/// Identity plus exp(-iθG) for each generator and θ ∈ {+π/2, -π/2, +π, -π}.
std::vector<ElementaryPulse> elementary_set(const std::vector<Generator>& generators);

/// All products of up to max_depth elementary pulses, merged when their O matrices
/// agree (O is blind to global phase). Sorted by fingerprint; for each class the
/// shallowest recipe found first is kept.
std::vector<CompositePulse> enumerate_composites(const std::vector<Generator>& generators,
                                                 const OperatorBasis& basis, int max_depth,
                                                 double dedup_tol = 1e-9);
/// Same closure over an explicit pulse list (identity entries, angle 0, are implicit).
std::vector<CompositePulse> enumerate_composites(const std::vector<ElementaryPulse>& elementary,
                                                 const OperatorBasis& basis, int max_depth,
                                                 double dedup_tol = 1e-9);

/// Toggling frame u_i held for a fraction α_i = τ_i / T of the period.
struct Frame {
  ComplexMatrix u;
  double weight = 0.0;
  Recipe recipe;
  bool has_recipe = false;
};

struct PulseSequence {
  int d = 0;
  double period_T = 1.0;
  std::vector<Frame> frames;

  std::vector<double> weights() const;
};

/// Invariant check: unitary frames, α_i >= 0, Σα_i = 1 within 1e-9, T > 0.
std::vector<Violation> sequence_violations(const PulseSequence& seq);
/// Throws Error(Validation) on the first violation.
void require_valid(const PulseSequence& seq);

/// C_eff = Σ_i α_i O_iᵀ C O_i.
CMatrix effective_c(const PulseSequence& seq, const CMatrix& c);

/// Applied pulses p_i = u_i u_{i-1}†, u_0 = I.
std::vector<ComplexMatrix> frames_to_applied(const PulseSequence& seq);
/// u_i = p_i u_{i-1}, u_0 = I.
std::vector<ComplexMatrix> applied_to_frames(const std::vector<ComplexMatrix>& pulses);
/// Pulse returning the last frame to the identity (u_k†); identity for closed sequences.
ComplexMatrix closing_pulse(const PulseSequence& seq);
/// Number of non-trivial pulses per period when the sequence is repeated: the count of
/// cyclic frame changes u_i -> u_{i+1} (u_k -> u_1 wraps), equality up to global phase.
int applied_pulse_count(const PulseSequence& seq, double tol = 1e-9);

/// Weighted union of sequences; frame weights are γ_j α_ij. Period taken from the first.
PulseSequence concatenate(const std::vector<PulseSequence>& parts, const std::vector<double>& gammas);

/// The six equal-weight qutrit frames that cancel the secular spin-1 dipolar interaction.
PulseSequence supplement_sequence();

}  // namespace qeng
