#include "qeng/interaction_rep.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

#include "qeng/errors.hpp"

namespace qeng {

namespace {

double scaled_tol(const ComplexMatrix& h) { return kAlgebraTol * std::max(1.0, max_abs(h)); }

// tr(h (A ⊗ B)) without forming the Kronecker product.
cplx trace_against_product(const ComplexMatrix& h, const ComplexMatrix& a, const ComplexMatrix& b) {
  const Eigen::Index d = a.rows();
  cplx acc = 0.0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index k = 0; k < d; ++k) {
      const cplx aki = a(k, i);
      if (aki == cplx(0.0)) continue;
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index l = 0; l < d; ++l) {
          const cplx blj = b(l, j);
          if (blj == cplx(0.0)) continue;
          // (A⊗B)_{(k l),(i j)} = A_ki B_lj ; trace pairs it with h_{(i j),(k l)}
          acc += h(i * d + j, k * d + l) * aki * blj;
        }
    }
  return acc;
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

std::vector<Violation> interaction_violations(int d, const ComplexMatrix& h) {
  std::vector<Violation> out;
  if (d < 2) {
    out.push_back({"dimension", double(d), 2.0, "qudit dimension must be >= 2"});
    return out;
  }
  const Eigen::Index dd = Eigen::Index(d) * d;
  if (h.rows() != dd || h.cols() != dd) {
    out.push_back({"shape", double(h.rows()), double(dd),
                   "expected a " + std::to_string(dd) + "x" + std::to_string(dd) + " matrix"});
    return out;
  }
  const double tol = scaled_tol(h);

  const ComplexMatrix herm_err = h - h.adjoint();
  Eigen::Index r = 0, c = 0;
  const double herm = herm_err.cwiseAbs().maxCoeff(&r, &c);
  if (herm > tol)
    out.push_back({"hermiticity", herm, tol,
                   "max |h - h†| at (" + std::to_string(r) + "," + std::to_string(c) + ")"});

  const ExchangeStructure ex = build_exchange(d);
  const double exch = max_abs(ComplexMatrix(ex.pi * h * ex.pi - h));
  if (exch > tol) out.push_back({"exchange-symmetry", exch, tol, "Π h Π != h"});

  const double id_part = std::abs(h.trace());
  if (id_part > tol) out.push_back({"identity-component", id_part, tol, "tr(h) != 0"});

  const OperatorBasis basis = build_basis(d);
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  double single = 0.0;
  int worst = -1;
  for (int mu = 0; mu < basis.size(); ++mu) {
    const double left = std::abs(trace_against_product(h, basis[mu], eye));
    const double right = std::abs(trace_against_product(h, eye, basis[mu]));
    if (std::max(left, right) > single) {
      single = std::max(left, right);
      worst = mu;
    }
  }
  if (single > tol)
    out.push_back({"single-body-component", single, tol,
                   "tr(h (λ⊗I)) or tr(h (I⊗λ)) nonzero for λ_" + std::to_string(worst + 1)});
  return out;
}

TwoQuditInteraction::TwoQuditInteraction(int d, ComplexMatrix h) : d_(d), h_(std::move(h)) {
  const auto violations = interaction_violations(d_, h_);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw Error(d_ < 2 ? ErrorKind::InvalidDimension : ErrorKind::Representation,
                "invalid two-qudit interaction: " + v.check + " violated (" + v.detail +
                    ", magnitude " + fmt_double(v.magnitude) + " > tol " +
                    fmt_double(v.tolerance) + ")");
  }
}

std::pair<TwoQuditInteraction, ComplexMatrix> strip_single_body(int d, const ComplexMatrix& h) {
  const OperatorBasis basis = build_basis(d);
  const Eigen::Index dd = Eigen::Index(d) * d;
  if (h.rows() != dd || h.cols() != dd || !is_hermitian(h, scaled_tol(h)))
    throw Error(ErrorKind::Representation,
                "strip_single_body needs a Hermitian " + std::to_string(dd) + "x" +
                    std::to_string(dd) + " operator");
  const ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  ComplexMatrix remainder = h.trace() / double(dd) * ComplexMatrix::Identity(dd, dd);
  for (int mu = 0; mu < basis.size(); ++mu) {
    const cplx left = trace_against_product(h, basis[mu], eye) / (2.0 * d);
    const cplx right = trace_against_product(h, eye, basis[mu]) / (2.0 * d);
    remainder += left * kron(basis[mu], eye) + right * kron(eye, basis[mu]);
  }
  ComplexMatrix pure = h - remainder;
  pure = 0.5 * (pure + pure.adjoint()).eval();
  return {TwoQuditInteraction(d, std::move(pure)), remainder};
}

CMatrix::CMatrix(int d, RealMatrix entries) : d_(d), c_(std::move(entries)) {
  if (d_ < 2) throw Error(ErrorKind::InvalidDimension, "qudit dimension must be >= 2");
  const Eigen::Index m = Eigen::Index(d_) * d_ - 1;
  if (c_.rows() != m || c_.cols() != m)
    throw Error(ErrorKind::Representation,
                "C matrix for d=" + std::to_string(d_) + " must be " + std::to_string(m) + "x" +
                    std::to_string(m));
  const double asym = max_abs(RealMatrix(c_ - c_.transpose()));
  if (asym > kAlgebraTol * std::max(1.0, max_abs(c_)))
    throw Error(ErrorKind::Representation,
                "C matrix is not symmetric (max |C - Cᵀ| = " + fmt_double(asym) + ")");
}

CMatrix c_matrix(const TwoQuditInteraction& h, const OperatorBasis& basis) {
  if (basis.dimension() != h.dimension())
    throw Error(ErrorKind::Representation, "basis and interaction dimensions differ");
  const int m = basis.size();
  RealMatrix c(m, m);
  for (int mu = 0; mu < m; ++mu)
    for (int nu = mu; nu < m; ++nu) {
      const double v = trace_against_product(h.matrix(), basis[mu], basis[nu]).real() / 4.0;
      c(mu, nu) = v;
      c(nu, mu) = v;
    }
  return CMatrix(h.dimension(), std::move(c));
}

TwoQuditInteraction to_interaction(const CMatrix& c, const OperatorBasis& basis) {
  if (basis.dimension() != c.dimension())
    throw Error(ErrorKind::Representation, "basis and C matrix dimensions differ");
  const int d = c.dimension();
  const Eigen::Index dd = Eigen::Index(d) * d;
  ComplexMatrix h = ComplexMatrix::Zero(dd, dd);
  for (int mu = 0; mu < c.size(); ++mu)
    for (int nu = 0; nu < c.size(); ++nu)
      if (c(mu, nu) != 0.0) h += c(mu, nu) * kron(basis[mu], basis[nu]);
  return TwoQuditInteraction(d, std::move(h));
}

IsoAnisoSplit split_iso_aniso(const CMatrix& c) {
  const double s = c.trace();
  RealMatrix aniso = c.entries();
  aniso.diagonal().array() -= s / c.size();
  return {s, CMatrix(c.dimension(), std::move(aniso))};
}

bool is_cancellable(const CMatrix& c, double tol) { return std::abs(c.trace()) < tol; }

ExchangeTraces exchange_trace_identity(const TwoQuditInteraction& h) {
  const ExchangeStructure ex = build_exchange(h.dimension());
  const CMatrix c = c_matrix(h, build_basis(h.dimension()));
  return {(ex.sym * h.matrix()).trace().real(), (ex.antisym * h.matrix()).trace().real(),
          c.trace(), (h.matrix() * ex.pi).trace().real()};
}

SymmetricBasis::SymmetricBasis(int d) : d_(d), m_(d * d - 1) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "qudit dimension must be >= 2");
  for (int a = 0; a < m_; ++a) {
    RealMatrix eta = RealMatrix::Zero(m_, m_);
    eta(a, a) = std::sqrt(2.0);
    etas_.push_back(std::move(eta));
  }
  for (int a = 0; a < m_; ++a)
    for (int b = a + 1; b < m_; ++b) {
      RealMatrix eta = RealMatrix::Zero(m_, m_);
      eta(a, b) = 1.0;
      eta(b, a) = 1.0;
      etas_.push_back(std::move(eta));
    }
}

RealVector w_entries(const RealMatrix& c) {
  const Eigen::Index m = c.rows();
  RealVector w(m * (m + 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index a = 0; a < m; ++a) w(k++) = c(a, a) / std::sqrt(2.0);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a + 1; b < m; ++b) w(k++) = 0.5 * (c(a, b) + c(b, a));
  return w;
}

WVector w_vector(const CMatrix& c, const SymmetricBasis& sbasis) {
  if (c.dimension() != sbasis.dimension())
    throw Error(ErrorKind::Representation, "w_vector: dimension mismatch");
  return {c.dimension(), w_entries(c.entries())};
}

CMatrix from_w(const WVector& w, const SymmetricBasis& sbasis) {
  if (w.d != sbasis.dimension() || w.entries.size() != sbasis.size())
    throw Error(ErrorKind::Representation, "from_w: dimension mismatch");
  RealMatrix c = RealMatrix::Zero(sbasis.m(), sbasis.m());
  for (int a = 0; a < sbasis.size(); ++a) c += w.entries(a) * sbasis[a];
  return CMatrix(w.d, std::move(c));
}

TwoQuditInteraction secular_effective(const TwoQuditInteraction& h, const ComplexMatrix& h1,
                                      std::optional<double> tol) {
  const int d = h.dimension();
  if (h1.rows() != d || h1.cols() != d)
    throw Error(ErrorKind::Representation, "single-particle Hamiltonian must be d x d");
  if (!is_hermitian(h1, scaled_tol(h1)))
    throw Error(ErrorKind::Representation, "single-particle Hamiltonian is not Hermitian");

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h1);
  const RealVector& e = es.eigenvalues();
  const double window = tol.value_or(1e-9 * 2.0 * (e.maxCoeff() - e.minCoeff()));
  if (window < 0) throw Error(ErrorKind::Representation, "secular tolerance must be positive");

  const ComplexMatrix w = kron(es.eigenvectors(), es.eigenvectors());
  ComplexMatrix rotated = w.adjoint() * h.matrix() * w;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int f = 0; f < d; ++f)
          if (std::abs(e(a) + e(b) - e(c) - e(f)) > window) rotated(a * d + b, c * d + f) = 0.0;
  ComplexMatrix out = w * rotated * w.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return TwoQuditInteraction(d, std::move(out));
}

namespace {

// Symmetric 8x8 matrix from upper-triangle entries given with 1-based indices.
RealMatrix qutrit_c(double factor, std::initializer_list<std::tuple<int, int, double>> entries) {
  RealMatrix c = RealMatrix::Zero(8, 8);
  for (auto [i, j, v] : entries) {
    c(i - 1, j - 1) = factor * v;
    c(j - 1, i - 1) = factor * v;
  }
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"spin1_dipolar_secular", "ising_z_spin1", "target_A", "target_B",
          "target_C",              "target_D",      "isotropic"};
}

CMatrix preset(std::string_view name, int d) {
  const double r3 = std::sqrt(3.0);
  if (name.starts_with("isotropic(") && name.ends_with(")")) {
    const std::string inner(name.substr(10, name.size() - 11));
    try {
      d = std::stoi(inner);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Validation, "bad isotropic preset dimension '" + inner + "'");
    }
    name = "isotropic";
  }
  if (name == "isotropic") {
    if (d < 2) throw Error(ErrorKind::InvalidDimension, "qudit dimension must be >= 2");
    return CMatrix(d, RealMatrix::Identity(d * d - 1, d * d - 1));
  }
  if (name == "spin1_dipolar_secular")
    return CMatrix(3, qutrit_c(-0.25, {{1, 1, 1}, {2, 2, 1}, {4, 4, 1}, {5, 5, 1},
                                       {7, 7, -1}, {7, 8, -r3}, {8, 8, -3}}));
  if (name == "ising_z_spin1")
    return CMatrix(3, qutrit_c(0.25, {{7, 7, 1}, {7, 8, r3}, {8, 8, 3}}));
  if (name == "target_A")
    return CMatrix(3, qutrit_c(0.5, {{1, 1, 1}, {1, 2, -1}, {2, 2, 1}, {3, 3, 2},
                                     {4, 4, 1}, {4, 5, -1}, {5, 5, 1}, {6, 6, 2},
                                     {7, 7, 1.5}, {7, 8, -r3 / 2}, {8, 8, 0.5}}));
  if (name == "target_B")
    return CMatrix(3, qutrit_c(0.5, {{1, 1, 1}, {1, 4, -1}, {2, 2, 1}, {2, 5, 1},
                                     {3, 3, 1}, {4, 4, 1}, {5, 5, 1}, {6, 6, 1},
                                     {6, 7, -0.5}, {6, 8, -r3 / 2}, {7, 7, 1}, {8, 8, 1}}));
  if (name == "target_C")
    return CMatrix(3, qutrit_c(0.5, {{1, 1, 1}, {1, 2, 1}, {2, 2, 1}, {4, 4, 1},
                                     {4, 5, 1}, {5, 5, 1}, {7, 7, 0.5}, {7, 8, r3 / 2},
                                     {8, 8, 1.5}}));
  if (name == "target_D")
    return CMatrix(3, qutrit_c(0.5, {{1, 1, 1}, {1, 4, 1}, {2, 2, 1}, {2, 5, -1},
                                     {3, 3, 1}, {4, 4, 1}, {5, 5, 1}, {6, 6, 1},
                                     {6, 7, 0.5}, {6, 8, r3 / 2}, {7, 7, 1}, {8, 8, 1}}));
  std::string valid;
  for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw Error(ErrorKind::Validation,
              "unknown preset '" + std::string(name) + "'; valid presets: " + valid +
                  " (isotropic also as isotropic(d))");
}

TwoQuditInteraction spin1_dipolar_interaction() {
  const auto ops = spin1_generators();
  const ComplexMatrix& sx = ops.at("Sx");
  const ComplexMatrix& sy = ops.at("Sy");
  const ComplexMatrix& sz = ops.at("Sz");
  const ComplexMatrix ss = kron(sx, sx) + kron(sy, sy) + kron(sz, sz);
  return TwoQuditInteraction(3, 0.5 * (3.0 * kron(sz, sz) - ss));
}

TwoQuditInteraction ising_z_interaction() {
  const auto ops = spin1_generators();
  return TwoQuditInteraction(3, kron(ops.at("Sz"), ops.at("Sz")));
}

TwoQuditInteraction hpq_interaction(double p, double q) {
  const auto ops = spin1_generators();
  const ComplexMatrix s[3] = {ops.at("Sx"), ops.at("Sy"), ops.at("Sz")};
  ComplexMatrix h1 = ComplexMatrix::Zero(9, 9);
  for (const auto& a : s) h1 += kron(a, a);
  const ComplexMatrix h2 = h1 * h1;
  ComplexMatrix h3 = ComplexMatrix::Zero(9, 9);
  int perm[3] = {0, 1, 2};
  do {
    const auto& a = s[perm[0]];
    const auto& b = s[perm[1]];
    const auto& c = s[perm[2]];
    h3 += kron(a * b, c) + kron(a, b * c);
  } while (std::next_permutation(perm, perm + 3));
  return strip_single_body(3, h1 + p * h2 + q * h3).first;
}

}  // namespace qeng
