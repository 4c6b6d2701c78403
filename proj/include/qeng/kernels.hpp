#pragma once

// Data-parallel inner loops. Every OpenMP kernel has a *_serial twin with the same
// contract; tests check them against each other and bench/ times both.

#include <span>
#include <vector>

#include "qeng/linalg.hpp"
#include "qeng/operator_basis.hpp"

namespace qeng::kernels {

/// O_{ν'ν} = ½ Re tr(λ_ν u† λ_ν' u) for one unitary.
RealMatrix orthogonal_rep_matrix(const ComplexMatrix& u, const OperatorBasis& basis);

std::vector<RealMatrix> orthogonal_reps(std::span<const ComplexMatrix> us, const OperatorBasis& basis);
std::vector<RealMatrix> orthogonal_reps_serial(std::span<const ComplexMatrix> us,
                                               const OperatorBasis& basis);

/// Column i is w(O_iᵀ C O_i): the LP column of composite i.
RealMatrix conjugated_w_columns(std::span<const RealMatrix> os, const RealMatrix& c);
RealMatrix conjugated_w_columns_serial(std::span<const RealMatrix> os, const RealMatrix& c);

/// Σ_{i<j} J_ij h_ij on N sites of dimension d (site 0 is the most significant digit).
ComplexMatrix pair_hamiltonian(int n_sites, int d, const RealMatrix& couplings, const ComplexMatrix& h);
ComplexMatrix pair_hamiltonian_serial(int n_sites, int d, const RealMatrix& couplings,
                                      const ComplexMatrix& h);

/// m <- p^{⊗N} m, applied site by site.
void apply_product_left(const ComplexMatrix& p, int n_sites, ComplexMatrix& m);
void apply_product_left_serial(const ComplexMatrix& p, int n_sites, ComplexMatrix& m);

/// F(n) = |Σ_k e^{i n φ_k} / D|² for n = 0..n_max.
std::vector<double> fidelity_from_phases(const RealVector& phases, int n_max);
std::vector<double> fidelity_from_phases_serial(const RealVector& phases, int n_max);

}  // namespace qeng::kernels
