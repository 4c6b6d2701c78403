#include <doctest.h>

#include <cmath>

#include "qeng/errors.hpp"
#include "support.hpp"

using namespace qeng;
using testing::random_hermitian;

TEST_CASE("d=2 basis is the Pauli matrices") {
  const OperatorBasis b = build_basis(2);
  REQUIRE(b.size() == 3);
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  CHECK(max_abs(ComplexMatrix(b[0] - sx)) < 1e-15);
  CHECK(max_abs(ComplexMatrix(b[1] - sy)) < 1e-15);
  CHECK(max_abs(ComplexMatrix(b[2] - sz)) < 1e-15);
}

TEST_CASE("d=3 basis matches the Gell-Mann list") {
  const OperatorBasis b = build_basis(3);
  REQUIRE(b.size() == 8);
  ComplexMatrix l1 = ComplexMatrix::Zero(3, 3);
  l1(0, 1) = l1(1, 0) = 1.0;
  CHECK(max_abs(ComplexMatrix(b[0] - l1)) < 1e-15);
  ComplexMatrix l8 = ComplexMatrix::Zero(3, 3);
  l8.diagonal() << 1, 1, -2;
  l8 /= std::sqrt(3.0);
  CHECK(max_abs(ComplexMatrix(b[7] - l8)) < 1e-15);
  // λ2 = E23 + E32, λ3 = E13 + E31, λ7 = diag(1,-1,0)
  CHECK(b[1](1, 2) == cplx(1.0));
  CHECK(b[2](0, 2) == cplx(1.0));
  CHECK(b[6](0, 0) == cplx(1.0));
  CHECK(b[6](1, 1) == cplx(-1.0));
  CHECK(b[4](2, 1) == cplx(0.0, 1.0));  // λ5 = -iE23 + iE32
}

TEST_CASE("basis invariants for d = 2..6") {
  for (int d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const OperatorBasis b = build_basis(d);
    REQUIRE(b.size() == d * d - 1);
    const int t = d * (d - 1) / 2;
    for (int mu = 0; mu < b.size(); ++mu) {
      CHECK(is_hermitian(b[mu]));
      CHECK(is_traceless(b[mu]));
      if (mu < t) CHECK(b[mu].imag().cwiseAbs().maxCoeff() == 0.0);
      else if (mu < 2 * t) CHECK(b[mu].real().cwiseAbs().maxCoeff() == 0.0);
      else CHECK(max_abs(ComplexMatrix(b[mu] - ComplexMatrix(b[mu].diagonal().asDiagonal()))) == 0.0);
      for (int nu = 0; nu < b.size(); ++nu) {
        const cplx ip = (b[mu] * b[nu]).trace();
        CHECK(std::abs(ip - (mu == nu ? 2.0 : 0.0)) < 1e-10);
      }
    }
  }
  CHECK(build_basis(5).size() == 24);
}

TEST_CASE("basis plus identity spans Hermitian matrices") {
  for (int d = 2; d <= 5; ++d) {
    const OperatorBasis b = build_basis(d);
    for (int rep = 0; rep < 20; ++rep) {
      const ComplexMatrix a = random_hermitian(d);
      const Eigen::VectorXcd x = b.coefficients(a);
      ComplexMatrix rebuilt = a.trace() / double(d) * ComplexMatrix::Identity(d, d);
      for (int mu = 0; mu < b.size(); ++mu) rebuilt += x(mu) * b[mu];
      CHECK(max_abs(ComplexMatrix(rebuilt - a)) < 1e-9);
    }
  }
}

TEST_CASE("invalid dimensions are rejected") {
  CHECK_THROWS_AS(build_basis(1), Error);
  CHECK_THROWS_AS(build_exchange(0), Error);
  try {
    build_basis(1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidDimension);
  }
}

TEST_CASE("exchange structure") {
  for (int d = 2; d <= 4; ++d) {
    const ExchangeStructure ex = build_exchange(d);
    const ComplexMatrix id = ComplexMatrix::Identity(d * d, d * d);
    CHECK(max_abs(ComplexMatrix(ex.pi * ex.pi - id)) < 1e-14);
    CHECK(max_abs(ComplexMatrix(ex.antisym - 0.5 * (id - ex.pi))) < 1e-14);
    CHECK(max_abs(ComplexMatrix(ex.sym + ex.antisym - id)) < 1e-14);
    CHECK(max_abs(ComplexMatrix(ex.sym * ex.antisym)) < 1e-14);
    CHECK(std::abs(ex.sym.trace().real() - d * (d + 1) / 2.0) < 1e-12);
    CHECK(std::abs(ex.antisym.trace().real() - d * (d - 1) / 2.0) < 1e-12);
    // Π|ij> = |ji>
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Eigen::VectorXcd ket = Eigen::VectorXcd::Zero(d * d);
        ket(i * d + j) = 1.0;
        const Eigen::VectorXcd out = ex.pi * ket;
        CHECK(std::abs(out(j * d + i) - 1.0) < 1e-15);
        CHECK(std::abs(out.norm() - 1.0) < 1e-15);
      }
  }
  const ExchangeStructure q = build_exchange(2);
  CHECK(std::abs(q.sym.trace().real() - 3.0) < 1e-14);
  CHECK(std::abs(q.antisym.trace().real() - 1.0) < 1e-14);
}

TEST_CASE("spin-1 generators") {
  const auto g = spin1_generators();
  const OperatorBasis b = build_basis(3);
  const ComplexMatrix& x1 = g.at("X1");
  CHECK(x1(0, 1) == cplx(0.5));
  CHECK(x1(1, 0) == cplx(0.5));
  CHECK(max_abs(ComplexMatrix(x1 - b[0] / 2.0)) < 1e-15);
  for (int a = 1; a <= 3; ++a) {
    CHECK(max_abs(ComplexMatrix(g.at("X" + std::to_string(a)) - b[a - 1] / 2.0)) < 1e-15);
    CHECK(max_abs(ComplexMatrix(g.at("Y" + std::to_string(a)) - b[a + 2] / 2.0)) < 1e-15);
  }
  const ComplexMatrix &sx = g.at("Sx"), &sy = g.at("Sy"), &sz = g.at("Sz");
  CHECK(max_abs(ComplexMatrix(commutator(sx, sy) - cplx(0, 1) * sz)) < 1e-14);
  CHECK(max_abs(ComplexMatrix(commutator(sy, sz) - cplx(0, 1) * sx)) < 1e-14);
  ComplexMatrix sz_expected = ComplexMatrix::Zero(3, 3);
  sz_expected.diagonal() << 1, 0, -1;
  CHECK(max_abs(ComplexMatrix(sz - sz_expected)) < 1e-15);
  CHECK(max_abs(ComplexMatrix(g.at("Z1") + g.at("Z2") - sz)) < 1e-15);
  CHECK(std::abs((sx * sx + sy * sy + sz * sz).trace().real() - 6.0) < 1e-14);  // s(s+1) d
}

TEST_CASE("pi pulse on transition 1") {
  const ComplexMatrix x1 = spin1_generators().at("X1");
  const ComplexMatrix u = expm_hermitian(x1, M_PI);
  CHECK(is_unitary(u));
  // Closed form on the {1,2} block: cos(π/2) - i sin(π/2) σx = -iσx; level 3 untouched.
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 1) = expected(1, 0) = cplx(0, -1);
  expected(2, 2) = 1.0;
  CHECK(max_abs(ComplexMatrix(u - expected)) < 1e-14);
  ComplexMatrix sq = ComplexMatrix::Identity(3, 3);
  sq(0, 0) = sq(1, 1) = -1.0;
  CHECK(max_abs(ComplexMatrix(u * u - sq)) < 1e-14);
}
