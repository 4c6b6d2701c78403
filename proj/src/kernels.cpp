#include "qeng/kernels.hpp"

#include <cmath>

namespace qeng::kernels {

RealMatrix orthogonal_rep_matrix(const ComplexMatrix& u, const OperatorBasis& basis) {
  const int m = basis.size();
  const ComplexMatrix ud = u.adjoint();
  RealMatrix o(m, m);
  for (int row = 0; row < m; ++row) {
    const ComplexMatrix rotated = ud * basis[row] * u;
    for (int col = 0; col < m; ++col)
      o(row, col) = 0.5 * (basis[col].transpose().cwiseProduct(rotated)).sum().real();
  }
  return o;
}

std::vector<RealMatrix> orthogonal_reps(std::span<const ComplexMatrix> us, const OperatorBasis& basis) {
  std::vector<RealMatrix> out(us.size());
  const long n = static_cast<long>(us.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = orthogonal_rep_matrix(us[i], basis);
  return out;
}

std::vector<RealMatrix> orthogonal_reps_serial(std::span<const ComplexMatrix> us,
                                               const OperatorBasis& basis) {
  std::vector<RealMatrix> out;
  out.reserve(us.size());
  for (const auto& u : us) out.push_back(orthogonal_rep_matrix(u, basis));
  return out;
}

namespace {

void fill_w_column(const RealMatrix& rotated, RealMatrix& cols, Eigen::Index col) {
  const Eigen::Index m = rotated.rows();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::Index k = 0;
  for (Eigen::Index a = 0; a < m; ++a) cols(k++, col) = rotated(a, a) * inv_sqrt2;
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a + 1; b < m; ++b) cols(k++, col) = 0.5 * (rotated(a, b) + rotated(b, a));
}

}  // namespace

RealMatrix conjugated_w_columns(std::span<const RealMatrix> os, const RealMatrix& c) {
  const Eigen::Index m = c.rows();
  RealMatrix cols(m * (m + 1) / 2, static_cast<Eigen::Index>(os.size()));
  const long n = static_cast<long>(os.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const RealMatrix rotated = os[i].transpose() * c * os[i];
    fill_w_column(rotated, cols, i);
  }
  return cols;
}

RealMatrix conjugated_w_columns_serial(std::span<const RealMatrix> os, const RealMatrix& c) {
  const Eigen::Index m = c.rows();
  RealMatrix cols(m * (m + 1) / 2, static_cast<Eigen::Index>(os.size()));
  for (std::size_t i = 0; i < os.size(); ++i) {
    const RealMatrix rotated = os[i].transpose() * c * os[i];
    fill_w_column(rotated, cols, static_cast<Eigen::Index>(i));
  }
  return cols;
}

namespace {

// Column `col` of the pair Hamiltonian: H|col> written into out.col(col).
void pair_hamiltonian_column(int n_sites, int d, const RealMatrix& couplings, const ComplexMatrix& h,
                             Eigen::Index col, std::vector<Eigen::Index>& stride,
                             ComplexMatrix& out) {
  for (int i = 0; i < n_sites; ++i)
    for (int j = i + 1; j < n_sites; ++j) {
      const double jij = couplings(i, j);
      if (jij == 0.0) continue;
      const Eigen::Index di = (col / stride[i]) % d;
      const Eigen::Index dj = (col / stride[j]) % d;
      const Eigen::Index base = col - di * stride[i] - dj * stride[j];
      const Eigen::Index hcol = di * d + dj;
      for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) {
          const cplx v = h(a * d + b, hcol);
          if (v == cplx(0.0)) continue;
          out(base + a * stride[i] + b * stride[j], col) += jij * v;
        }
    }
}

std::vector<Eigen::Index> site_strides(int n_sites, int d) {
  std::vector<Eigen::Index> stride(n_sites);
  Eigen::Index s = 1;
  for (int k = n_sites - 1; k >= 0; --k) {
    stride[k] = s;
    s *= d;
  }
  return stride;
}

Eigen::Index ipow(int base, int exp) {
  Eigen::Index r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

ComplexMatrix pair_hamiltonian(int n_sites, int d, const RealMatrix& couplings, const ComplexMatrix& h) {
  const Eigen::Index dim = ipow(d, n_sites);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
#pragma omp parallel
  {
    std::vector<Eigen::Index> stride = site_strides(n_sites, d);
#pragma omp for schedule(static)
    for (Eigen::Index col = 0; col < dim; ++col)
      pair_hamiltonian_column(n_sites, d, couplings, h, col, stride, out);
  }
  return out;
}

ComplexMatrix pair_hamiltonian_serial(int n_sites, int d, const RealMatrix& couplings,
                                      const ComplexMatrix& h) {
  const Eigen::Index dim = ipow(d, n_sites);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  std::vector<Eigen::Index> stride = site_strides(n_sites, d);
  for (Eigen::Index col = 0; col < dim; ++col)
    pair_hamiltonian_column(n_sites, d, couplings, h, col, stride, out);
  return out;
}

namespace {

// Applies p on one site to column `col` of m, using scratch of length d.
void apply_site_to_column(const ComplexMatrix& p, Eigen::Index stride, Eigen::Index dim,
                          ComplexMatrix& m, Eigen::Index col, Eigen::VectorXcd& scratch) {
  const Eigen::Index d = p.rows();
  const Eigen::Index block = stride * d;
  for (Eigen::Index outer = 0; outer < dim; outer += block)
    for (Eigen::Index inner = 0; inner < stride; ++inner) {
      const Eigen::Index base = outer + inner;
      for (Eigen::Index a = 0; a < d; ++a) scratch(a) = m(base + a * stride, col);
      for (Eigen::Index a = 0; a < d; ++a) {
        cplx acc = 0.0;
        for (Eigen::Index b = 0; b < d; ++b) acc += p(a, b) * scratch(b);
        m(base + a * stride, col) = acc;
      }
    }
}

}  // namespace

void apply_product_left(const ComplexMatrix& p, int n_sites, ComplexMatrix& m) {
  const int d = static_cast<int>(p.rows());
  const Eigen::Index dim = m.rows();
  const std::vector<Eigen::Index> stride = site_strides(n_sites, d);
  const Eigen::Index cols = m.cols();
#pragma omp parallel
  {
    Eigen::VectorXcd scratch(d);
#pragma omp for schedule(static)
    for (Eigen::Index col = 0; col < cols; ++col)
      for (int s = 0; s < n_sites; ++s) apply_site_to_column(p, stride[s], dim, m, col, scratch);
  }
}

void apply_product_left_serial(const ComplexMatrix& p, int n_sites, ComplexMatrix& m) {
  const int d = static_cast<int>(p.rows());
  const Eigen::Index dim = m.rows();
  const std::vector<Eigen::Index> stride = site_strides(n_sites, d);
  Eigen::VectorXcd scratch(d);
  for (Eigen::Index col = 0; col < m.cols(); ++col)
    for (int s = 0; s < n_sites; ++s) apply_site_to_column(p, stride[s], dim, m, col, scratch);
}

std::vector<double> fidelity_from_phases(const RealVector& phases, int n_max) {
  std::vector<double> f(static_cast<std::size_t>(n_max) + 1);
  const double dim = static_cast<double>(phases.size());
#pragma omp parallel for schedule(static)
  for (int n = 0; n <= n_max; ++n) {
    double re = 0.0, im = 0.0;
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
      re += std::cos(n * phases(k));
      im += std::sin(n * phases(k));
    }
    f[n] = (re * re + im * im) / (dim * dim);
  }
  return f;
}

std::vector<double> fidelity_from_phases_serial(const RealVector& phases, int n_max) {
  std::vector<double> f;
  f.reserve(static_cast<std::size_t>(n_max) + 1);
  const double dim = static_cast<double>(phases.size());
  for (int n = 0; n <= n_max; ++n) {
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < phases.size(); ++k) acc += std::polar(1.0, n * phases(k));
    f.push_back(std::norm(acc) / (dim * dim));
  }
  return f;
}

}  // namespace qeng::kernels
