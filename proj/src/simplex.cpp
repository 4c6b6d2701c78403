#include "qeng/simplex.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include <Eigen/LU>
#include <Eigen/QR>


#include "qeng/errors.hpp"

namespace qeng {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// Dense tableau for min cost·x, A x = b, x >= 0. Rows 0..m-1 hold B⁻¹[A | b]; row m
// holds the reduced costs c_B B⁻¹A - c (entering when > tol) and c_B x_B. The tableau is
// rebuilt from the original data every kRefactor pivots so degenerate Bland pivoting
// does not accumulate drift.
class Tableau {
 public:
  static constexpr int kRefactor = 50;
  static constexpr int kStallLimit = 50;

  Tableau(RealMatrix a_b, RealVector cost, std::vector<int> basis, double tol)
      : orig_(std::move(a_b)), cost_(std::move(cost)), basis_(std::move(basis)), tol_(tol) {
    t_.resize(orig_.rows() + 1, orig_.cols());
    refactor();
  }

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  const auto& data() const { return t_; }
  const std::vector<int>& basis() const { return basis_; }
  int iterations() const { return iterations_; }

  void refactor() {
    const int m = rows();
    RealMatrix b(m, m);
    RealVector cb(m);
    for (int i = 0; i < m; ++i) {
      b.col(i) = orig_.col(basis_[i]);
      cb(i) = cost_(basis_[i]);
    }
    Eigen::PartialPivLU<RealMatrix> lu(b);
    t_.topRows(m) = lu.solve(orig_);
    for (int i = 0; i < m; ++i) {
      if (t_(i, cols()) < 0.0 && t_(i, cols()) > -tol_) t_(i, cols()) = 0.0;
    }
    t_.row(m) = cb.transpose() * t_.topRows(m);
    t_.row(m).head(cols()) -= cost_.transpose();
    for (int i = 0; i < m; ++i) {
      t_.col(basis_[i]).setZero();
      t_(i, basis_[i]) = 1.0;
    }
  }

  void pivot(int r, int e) {
    const double p = t_(r, e);
    t_.row(r) /= p;
    const RealVector col = t_.col(e);
    const Eigen::RowVectorXd row = t_.row(r);
    for (int i = 0; i <= rows(); ++i)
      if (i != r && col(i) != 0.0) t_.row(i).noalias() -= col(i) * row;
    t_.col(e).setZero();
    t_(r, e) = 1.0;
    basis_[r] = e;
    if (++iterations_ % kRefactor == 0) refactor();
  }

  // Dantzig pricing while the objective moves; after kStallLimit consecutive degenerate
  // pivots switch to Bland's rule (smallest eligible index) until a non-degenerate pivot.
  // Returns false when unbounded.
  bool run(int n_active) {
    const int m = rows();
    const int rhs = cols();
    int stall = 0;
    for (;;) {
      const bool bland = stall >= kStallLimit;
      int e = -1;
      double best_rc = tol_;
      for (int j = 0; j < n_active; ++j) {
        if (t_(m, j) <= best_rc) continue;
        e = j;
        if (bland) break;
        best_rc = t_(m, j);
      }
      if (e < 0) return true;
      int r = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (t_(i, e) <= tol_) continue;
        const double ratio = std::max(0.0, t_(i, rhs)) / t_(i, e);
        if (r < 0 || ratio < best - tol_ || (ratio <= best + tol_ && basis_[i] < basis_[r])) {
          r = i;
          best = std::min(best, ratio);
        }
      }
      if (r < 0) return false;
      stall = best > tol_ ? 0 : stall + 1;
      pivot(r, e);
    }
  }

  void set_cost(RealVector cost) {
    cost_ = std::move(cost);
    refactor();
  }

 private:
  RealMatrix orig_;  // [A | b]
  RealVector cost_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> t_;
  std::vector<int> basis_;
  double tol_;
  int iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, double tol) {
  const int n = static_cast<int>(lp.objective.size());
  if (!(tol > 0.0)) throw Error(ErrorKind::Validation, "solve_lp: tol must be > 0");
  if (lp.a_eq.cols() != n || lp.a_eq.rows() != lp.b_eq.size() || n == 0)
    throw Error(ErrorKind::Validation, "solve_lp: inconsistent problem shapes");

  LpSolution sol;
  sol.x = RealVector::Zero(n);

  RealMatrix a = lp.a_eq;
  RealVector b = lp.b_eq;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    if (b(i) < 0) {
      a.row(i) *= -1.0;
      b(i) = -b(i);
    }

  // Keep a maximal independent subset of rows.
  std::vector<int> keep;
  if (a.rows() > 0) {
    Eigen::ColPivHouseholderQR<RealMatrix> qr(a.transpose());
    qr.setThreshold(tol);
    const int rank = static_cast<int>(qr.rank());
    for (int k = 0; k < rank; ++k) keep.push_back(qr.colsPermutation().indices()(k));
  }
  std::sort(keep.begin(), keep.end());
  const int m = static_cast<int>(keep.size());

  auto finish = [&](LpStatus status) {
    sol.status = status;
    sol.infeasibility = lp.b_eq.size() == 0 ? 0.0 : (lp.a_eq * sol.x - lp.b_eq).cwiseAbs().maxCoeff();
    sol.objective = lp.objective.dot(sol.x);
    return sol;
  };

  if (m == 0) {
    // A = 0: feasible iff b = 0, and any x >= 0 works.
    if (b.size() > 0 && b.cwiseAbs().maxCoeff() > tol) return finish(LpStatus::Infeasible);
    if ((lp.objective.array() > tol).any()) return finish(LpStatus::Unbounded);
    return finish(LpStatus::Optimal);
  }

  // Phase 1: columns [x (n) | artificials (m) | rhs], minimize Σ artificials.
  RealMatrix ab1 = RealMatrix::Zero(m, n + m + 1);
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) {
    ab1.row(i).head(n) = a.row(keep[i]);
    ab1(i, n + i) = 1.0;
    ab1(i, n + m) = b(keep[i]);
    basis[i] = n + i;
  }
  RealVector cost1 = RealVector::Zero(n + m);
  cost1.tail(m).setOnes();
  Tableau tab(std::move(ab1), std::move(cost1), std::move(basis), tol);
  tab.run(n + m);
  sol.iterations = tab.iterations();

  auto extract = [&](const Tableau& tb) {
    sol.x.setZero();
    for (int i = 0; i < tb.rows(); ++i)
      if (tb.basis()[i] < n) sol.x(tb.basis()[i]) = std::max(0.0, tb.data()(i, tb.cols()));
  };

  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (tab.data()(m, n + m) > tol * scale) {
    extract(tab);
    return finish(LpStatus::Infeasible);
  }

  // Drive zero-level artificials out of the basis; rows where that is impossible are redundant.
  std::vector<int> rows2;
  for (int i = 0; i < m; ++i) {
    if (tab.basis()[i] >= n) {
      int e = -1;
      double best = tol;
      for (int j = 0; j < n; ++j)
        if (std::abs(tab.data()(i, j)) > best) {
          best = std::abs(tab.data()(i, j));
          e = j;
        }
      if (e < 0) continue;
      tab.pivot(i, e);
    }
    rows2.push_back(i);
  }

  // Phase 2 on the original columns, minimizing -c.
  const int m2 = static_cast<int>(rows2.size());
  RealMatrix ab2(m2, n + 1);
  std::vector<int> basis2;
  for (int r = 0; r < m2; ++r) {
    ab2.row(r).head(n) = a.row(keep[rows2[r]]);
    ab2(r, n) = b(keep[rows2[r]]);
    basis2.push_back(tab.basis()[rows2[r]]);
  }
  Tableau tab2(std::move(ab2), -lp.objective, std::move(basis2), tol);
  const bool bounded = tab2.run(n);
  sol.iterations = tab.iterations() + tab2.iterations();
  if (!bounded) {
    extract(tab2);
    return finish(LpStatus::Unbounded);
  }
  tab2.refactor();
  extract(tab2);
  finish(LpStatus::Optimal);
  if (sol.infeasibility > 10 * tol * scale) sol.status = LpStatus::Infeasible;
  return sol;
}

}  // namespace qeng
