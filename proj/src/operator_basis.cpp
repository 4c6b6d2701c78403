#include "qeng/operator_basis.hpp"

#include <cmath>
#include <string>

#include "qeng/errors.hpp"

namespace qeng {

namespace {

void require_dimension(int d) {
  if (d < 2)
    throw Error(ErrorKind::InvalidDimension,
                "qudit dimension must be >= 2, got " + std::to_string(d));
}

}  // namespace

Eigen::VectorXcd OperatorBasis::coefficients(const ComplexMatrix& a) const {
  Eigen::VectorXcd x(size());
  for (int mu = 0; mu < size(); ++mu) x(mu) = (lambdas_[mu] * a).trace() / 2.0;
  return x;
}

OperatorBasis build_basis(int d) {
  require_dimension(d);
  OperatorBasis basis;
  basis.d_ = d;
  for (int offset = 1; offset < d; ++offset)
    for (int i = 0; i + offset < d; ++i) basis.pairs_.emplace_back(i, i + offset);

  for (auto [i, j] : basis.pairs_) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(i, j) = 1.0;
    m(j, i) = 1.0;
    basis.lambdas_.push_back(std::move(m));
  }
  for (auto [i, j] : basis.pairs_) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    m(i, j) = cplx(0.0, -1.0);
    m(j, i) = cplx(0.0, 1.0);
    basis.lambdas_.push_back(std::move(m));
  }
  for (int k = 2; k <= d; ++k) {
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(k * (k - 1) / 2.0);
    for (int i = 0; i < k - 1; ++i) m(i, i) = norm;
    m(k - 1, k - 1) = -(k - 1) * norm;
    basis.lambdas_.push_back(std::move(m));
  }
  return basis;
}

ExchangeStructure build_exchange(int d) {
  require_dimension(d);
  const int dd = d * d;
  ExchangeStructure ex;
  ex.d = d;
  ex.pi = ComplexMatrix::Zero(dd, dd);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) ex.pi(j * d + i, i * d + j) = 1.0;
  const ComplexMatrix id = ComplexMatrix::Identity(dd, dd);
  ex.antisym = 0.5 * (id - ex.pi);
  ex.sym = 0.5 * (id + ex.pi);
  return ex;
}

std::map<std::string, ComplexMatrix> spin1_generators() {
  const OperatorBasis basis = build_basis(3);
  std::map<std::string, ComplexMatrix> ops;
  for (int a = 0; a < 3; ++a) {
    ops["X" + std::to_string(a + 1)] = basis[a] / 2.0;
    ops["Y" + std::to_string(a + 1)] = basis[a + 3] / 2.0;
  }
  const double r = 1.0 / std::sqrt(2.0);
  // S^x = (λ1 + λ2)/√2, S^y = (λ4 + λ5)/√2 for levels (+1, 0, -1)
  ops["Sx"] = r * (basis[0] + basis[1]);
  ops["Sy"] = r * (basis[3] + basis[4]);
  ops["Sz"] = ComplexMatrix::Zero(3, 3);
  ops["Sz"].diagonal() << 1.0, 0.0, -1.0;
  ops["Z1"] = ComplexMatrix::Zero(3, 3);
  ops["Z1"].diagonal() << 1.0, -1.0, 0.0;
  ops["Z2"] = ComplexMatrix::Zero(3, 3);
  ops["Z2"].diagonal() << 0.0, 1.0, -1.0;
  return ops;
}

}  // namespace qeng
