#pragma once

#include "qeng/linalg.hpp"

namespace qeng {

/// maximize c·x  subject to  A x = b,  x >= 0.
struct LinearProgram {
  RealVector objective;
  RealMatrix a_eq;
  RealVector b_eq;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };
const char* to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  RealVector x;               // vertex solution when Optimal, best phase-1 point otherwise
  double objective = 0.0;
  double infeasibility = 0.0; // max |A x - b| over all original rows
  int iterations = 0;
};

/// Dense two-phase simplex, Dantzig pricing with a Bland fallback on stalls. Redundant rows
/// are dropped first (column-pivoted QR of Aᵀ); the final x_B is re-solved from the original data.
/// Throws Error(Validation) on inconsistent shapes or tol <= 0.
LpSolution solve_lp(const LinearProgram& lp, double tol = 1e-9);

}  // namespace qeng
