#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qeng {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Absolute tolerance for algebraic identities that hold exactly in exact arithmetic.
inline constexpr double kAlgebraTol = 1e-10;

double max_abs(const ComplexMatrix& m);
double max_abs(const RealMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kAlgebraTol);
bool is_unitary(const ComplexMatrix& m, double tol = kAlgebraTol);
bool is_traceless(const ComplexMatrix& m, double tol = kAlgebraTol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// exp(-i t G) for Hermitian G, via its eigendecomposition.
ComplexMatrix expm_hermitian(const ComplexMatrix& generator, double t = 1.0);

/// Hermitian K with U = exp(-i K), principal branch.
///
/// Uses the eigenbasis of (U - U†)/2i = -sin K, so it is exact only while every
/// eigenphase of U lies in (-π/2, π/2). Callers with short evolution times
/// (the Magnus regime) are always inside that window.
ComplexMatrix unitary_generator(const ComplexMatrix& u);

/// max |a - e^{iφ} b| minimized over the global phase φ (best phase from tr(b† a)).
double distance_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qeng
