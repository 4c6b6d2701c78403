#include "qeng/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "qeng/errors.hpp"

namespace qeng {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid-dimension";
    case ErrorKind::Representation: return "representation";
    case ErrorKind::Validation: return "validation";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
    case ErrorKind::Resource: return "resource";
  }
  return "unknown";
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs(ComplexMatrix(m - m.adjoint())) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(ComplexMatrix(m.adjoint() * m - id)) <= tol;
}

bool is_traceless(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && std::abs(m.trace()) <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix expm_hermitian(const ComplexMatrix& generator, double t) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(generator);
  const Eigen::VectorXcd phases =
      (es.eigenvalues().cast<cplx>() * cplx(0.0, -t)).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix unitary_generator(const ComplexMatrix& u) {
  const ComplexMatrix s = (u - u.adjoint()) / cplx(0.0, 2.0);
  const ComplexMatrix herm = 0.5 * (s + s.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  Eigen::VectorXd k = es.eigenvalues();
  for (Eigen::Index i = 0; i < k.size(); ++i)
    k(i) = -std::asin(std::clamp(k(i), -1.0, 1.0));
  return es.eigenvectors() * k.cast<cplx>().asDiagonal() *
         es.eigenvectors().adjoint();
}

double distance_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1.0);
  return max_abs(ComplexMatrix(a - phase * b));
}

}  // namespace qeng
