#include "qeng/sequence_synthesis.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "qeng/errors.hpp"
#include "qeng/kernels.hpp"

namespace qeng {

const char* to_string(SynthesisStatus s) {
  switch (s) {
    case SynthesisStatus::Optimal: return "optimal";
    case SynthesisStatus::Infeasible: return "infeasible";
    case SynthesisStatus::UnboundedDegenerate: return "unbounded-degenerate";
  }
  return "unknown";
}

RealMatrix projector_perp(const RealVector& w) {
  const double n2 = w.squaredNorm();
  RealMatrix p = RealMatrix::Identity(w.size(), w.size());
  if (n2 > 0.0) p -= w * w.transpose() / n2;
  return p;
}

namespace {

// Synthesized C_eff must match its target this tightly to be reported optimal.
constexpr double kResidualTol = 1e-8;
// LP weights below this are dropped from the returned sequence.
constexpr double kWeightCut = 1e-12;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

SynthesisResult infeasible(std::string reason, int set_size, double residual = 0.0) {
  SynthesisResult r;
  r.status = SynthesisStatus::Infeasible;
  r.reason = std::move(reason);
  r.composite_set_size = set_size;
  r.residual = residual;
  return r;
}

void check_dims(const CMatrix& c, const std::vector<CompositePulse>& composites) {
  if (composites.empty()) throw Error(ErrorKind::Validation, "empty composite set");
  if (composites.front().o.rows() != c.size())
    throw Error(ErrorKind::Representation, "composite set and C matrix dimensions differ");
}

// LP columns w(O_iᵀ C O_i). Composites with identical columns are interchangeable for
// the LP, so only the first of each is kept; `source` maps columns back to composites.
struct LpColumns {
  RealMatrix w;
  std::vector<int> source;
};

LpColumns lp_columns(const CMatrix& c, const std::vector<CompositePulse>& composites) {
  std::vector<RealMatrix> os;
  os.reserve(composites.size());
  for (const auto& cp : composites) os.push_back(cp.o);
  const RealMatrix all = kernels::conjugated_w_columns(os, c.entries());
  std::map<std::vector<long long>, int> seen;
  LpColumns out;
  for (Eigen::Index i = 0; i < all.cols(); ++i) {
    std::vector<long long> key(all.rows());
    for (Eigen::Index r = 0; r < all.rows(); ++r) key[r] = std::llround(all(r, i) * 1e9);
    if (seen.emplace(std::move(key), static_cast<int>(i)).second) out.source.push_back(static_cast<int>(i));
  }
  out.w.resize(all.rows(), static_cast<Eigen::Index>(out.source.size()));
  for (std::size_t k = 0; k < out.source.size(); ++k) out.w.col(k) = all.col(out.source[k]);
  return out;
}

PulseSequence sequence_from_weights(const RealVector& alpha, const std::vector<int>& source,
                                    const std::vector<CompositePulse>& composites, int d) {
  PulseSequence seq;
  seq.d = d;
  seq.period_T = 1.0;
  double total = 0.0;
  for (Eigen::Index i = 0; i < alpha.size(); ++i)
    if (alpha(i) > kWeightCut) total += alpha(i);
  for (Eigen::Index i = 0; i < alpha.size(); ++i) {
    if (alpha(i) <= kWeightCut) continue;
    Frame f;
    const CompositePulse& cp = composites[source[i]];
    f.u = cp.u;
    f.weight = alpha(i) / total;
    f.recipe = cp.recipe;
    f.has_recipe = true;
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

double residual_against(const PulseSequence& seq, const CMatrix& c0, const RealMatrix& target) {
  return max_abs(RealMatrix(effective_c(seq, c0).entries() - target));
}

SynthesisResult finalize(PulseSequence seq, const CMatrix& c0, const RealMatrix& target,
                         double beta_star, double beta, int set_size) {
  SynthesisResult r;
  r.composite_set_size = set_size;
  r.beta_star = beta_star;
  r.beta = beta;
  r.residual = residual_against(seq, c0, target);
  r.frames_used = static_cast<int>(seq.frames.size());
  if (r.residual < kResidualTol) {
    r.status = SynthesisStatus::Optimal;
  } else {
    r.status = SynthesisStatus::Infeasible;
    r.reason = "LP vertex failed the direct residual check (" + fmt(r.residual) + ")";
  }
  r.sequence = std::move(seq);
  return r;
}

}  // namespace

SynthesisResult decouple(const CMatrix& c, const std::vector<CompositePulse>& composites, double tol) {
  check_dims(c, composites);
  const int k = static_cast<int>(composites.size());
  if (std::abs(c.trace()) >= tol)
    return infeasible("isotropic component tr(C) = " + fmt(c.trace()) +
                          " is invariant under every global pulse",
                      k, std::abs(c.trace()));

  const LpColumns cols = lp_columns(c, composites);
  const RealMatrix& w = cols.w;
  LinearProgram lp;
  lp.objective = RealVector::Zero(w.cols());
  lp.a_eq = RealMatrix(w.rows() + 1, w.cols());
  lp.a_eq.topRows(w.rows()) = w;
  lp.a_eq.row(w.rows()).setOnes();
  lp.b_eq = RealVector::Zero(w.rows() + 1);
  lp.b_eq(w.rows()) = 1.0;

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status != LpStatus::Optimal)
    return infeasible("no convex combination of the composite set cancels C", k, sol.infeasibility);
  return finalize(sequence_from_weights(sol.x, cols.source, composites, c.dimension()), c,
                  RealMatrix::Zero(c.size(), c.size()), 0.0, 0.0, k);
}

SynthesisResult map_anisotropic(const CMatrix& c0, const CMatrix& cf,
                                const std::vector<CompositePulse>& composites, double tol) {
  check_dims(c0, composites);
  if (c0.dimension() != cf.dimension())
    throw Error(ErrorKind::Representation, "source and target dimensions differ");
  if (max_abs(cf.entries()) < tol) throw Error(ErrorKind::Validation, "target C is zero");
  const int k = static_cast<int>(composites.size());
  if (std::abs(c0.trace()) >= tol || std::abs(cf.trace()) >= tol)
    return infeasible("map_anisotropic needs traceless source and target", k);

  const RealVector wf = w_entries(cf.entries());
  const LpColumns cols = lp_columns(c0, composites);
  const RealMatrix& v = cols.w;
  const RealMatrix perp = projector_perp(wf);

  LinearProgram lp;
  lp.objective = (wf.transpose() * v).transpose();
  lp.a_eq = RealMatrix(v.rows() + 1, v.cols());
  lp.a_eq.topRows(v.rows()) = perp * v;
  lp.a_eq.row(v.rows()).setOnes();
  lp.b_eq = RealVector::Zero(v.rows() + 1);
  lp.b_eq(v.rows()) = 1.0;

  const LpSolution sol = solve_lp(lp, tol);
  if (sol.status == LpStatus::Unbounded) {
    SynthesisResult r = infeasible("LP reported unbounded objective", k);
    r.status = SynthesisStatus::UnboundedDegenerate;
    return r;
  }
  if (sol.status != LpStatus::Optimal)
    return infeasible("no combination keeps C_eff parallel to the target", k, sol.infeasibility);

  const double beta_star = sol.objective / wf.squaredNorm();
  if (beta_star <= tol) {
    SynthesisResult r = infeasible("best parallel rescaling beta* = " + fmt(beta_star) + " is not positive", k);
    r.beta_star = beta_star;
    return r;
  }
  return finalize(sequence_from_weights(sol.x, cols.source, composites, c0.dimension()), c0,
                  beta_star * cf.entries(), beta_star, beta_star, k);
}

SynthesisResult engineer(const CMatrix& c0, const CMatrix& cf,
                         const std::vector<CompositePulse>& composites, double tol) {
  check_dims(c0, composites);
  const int k = static_cast<int>(composites.size());
  const double s0 = c0.trace();
  const double sf = cf.trace();
  const bool zero0 = std::abs(s0) < tol;
  const bool zerof = std::abs(sf) < tol;
  if (zero0 && zerof) return map_anisotropic(c0, cf, composites, tol);
  if (zero0 != zerof)
    return infeasible("isotropic strengths tr(C0) = " + fmt(s0) + ", tr(Cf) = " + fmt(sf) +
                          " cannot be matched: the trace is invariant",
                      k);
  const double beta = s0 / sf;
  if (beta <= 0.0)
    return infeasible("rescaling beta = tr(C0)/tr(Cf) = " + fmt(beta) + " is not positive", k);

  const IsoAnisoSplit a0 = split_iso_aniso(c0);
  const IsoAnisoSplit af = split_iso_aniso(cf);
  const RealMatrix target = beta * cf.entries();
  const bool aniso0_zero = max_abs(a0.aniso.entries()) < tol;
  const bool anisof_zero = max_abs(af.aniso.entries()) < tol;

  if (anisof_zero) {
    // Pure isotropic target: only the anisotropic part of C0 has to go.
    SynthesisResult p2 = decouple(a0.aniso, composites, tol);
    if (!p2.ok()) return infeasible("anisotropic part of C0 cannot be decoupled: " + p2.reason, k, p2.residual);
    return finalize(std::move(*p2.sequence), c0, target, beta, beta, k);
  }
  if (aniso0_zero) return infeasible("isotropic source cannot produce an anisotropic target", k);

  SynthesisResult p1 = map_anisotropic(a0.aniso, af.aniso, composites, tol);
  if (!p1.ok()) return infeasible("anisotropic map failed: " + p1.reason, k, p1.residual);
  const double b1 = p1.beta_star;
  if (b1 < beta - tol)
    return infeasible("anisotropic rescaling beta1* = " + fmt(b1) + " is below the required beta = " +
                          fmt(beta),
                      k);
  if (std::abs(b1 - beta) <= tol) {
    SynthesisResult r = finalize(std::move(*p1.sequence), c0, target, b1, beta, k);
    return r;
  }
  SynthesisResult p2 = decouple(a0.aniso, composites, tol);
  if (!p2.ok()) return infeasible("anisotropic part of C0 cannot be decoupled: " + p2.reason, k, p2.residual);
  PulseSequence p3 = concatenate({*p1.sequence, *p2.sequence}, {beta / b1, 1.0 - beta / b1});
  return finalize(std::move(p3), c0, target, b1, beta, k);
}

bool HpqEngineer::in_hull(double p, double q, double tol) {
  return 2.0 * std::abs(q) <= p + tol && p <= 2.0 - 2.0 * std::abs(q) + tol;
}

HpqEngineer::HpqEngineer(const std::vector<CompositePulse>& composites, double tol)
    : composite_set_size_(static_cast<int>(composites.size())), tol_(tol) {
  const CMatrix ci = preset("ising_z_spin1");
  const char* names[4] = {"target_A", "target_B", "target_C", "target_D"};
  for (int i = 0; i < 4; ++i) corners_[i] = qeng::engineer(ci, preset(names[i]), composites, tol);
}

SynthesisResult HpqEngineer::engineer(double p, double q) const {
  if (!in_hull(p, q))
    return infeasible("(p,q) = (" + fmt(p) + ", " + fmt(q) + ") violates 2|q| <= p <= 2 - 2|q|",
                      composite_set_size_);
  // Barycentric weights over triangle A,C,D (q >= 0) or A,C,B (q < 0).
  std::array<double, 4> gamma{};  // A, B, C, D
  if (q >= 0) {
    gamma[3] = 2.0 * q;
    gamma[0] = (p - 2.0 * q) / 2.0;
  } else {
    gamma[1] = -2.0 * q;
    gamma[0] = (p + 2.0 * q) / 2.0;
  }
  gamma[2] = 1.0 - gamma[0] - gamma[1] - gamma[3];
  for (double& g : gamma) g = std::max(0.0, g);

  const double strengths[4] = {5.0, 4.0, 3.0, 4.0};
  std::vector<PulseSequence> parts;
  std::vector<double> weights;
  for (int i = 0; i < 4; ++i) {
    if (gamma[i] <= 0.0) continue;
    if (!corners_[i].ok())
      return infeasible("corner sequence " + std::string(1, char('A' + i)) + " unavailable: " + corners_[i].reason,
                        composite_set_size_);
    parts.push_back(*corners_[i].sequence);
    weights.push_back(gamma[i] * strengths[i] / (3.0 + p));
  }
  const double beta = 1.0 / (3.0 + p);
  const OperatorBasis basis = build_basis(3);
  const CMatrix target = c_matrix(hpq_interaction(p, q), basis);
  return finalize(concatenate(parts, weights), preset("ising_z_spin1"), beta * target.entries(), beta,
                  beta, composite_set_size_);
}

SynthesisResult engineer_hpq(double p, double q, const std::vector<CompositePulse>& composites, double tol) {
  if (!HpqEngineer::in_hull(p, q))
    return infeasible("(p,q) = (" + fmt(p) + ", " + fmt(q) + ") violates 2|q| <= p <= 2 - 2|q|",
                      static_cast<int>(composites.size()));
  return HpqEngineer(composites, tol).engineer(p, q);
}

PulseSequence symmetrize(const PulseSequence& seq) {
  require_valid(seq);
  PulseSequence out;
  out.d = seq.d;
  out.period_T = 2.0 * seq.period_T;
  for (const auto& f : seq.frames) {
    Frame g = f;
    g.weight /= 2.0;
    out.frames.push_back(std::move(g));
  }
  for (auto it = seq.frames.rbegin(); it != seq.frames.rend(); ++it) {
    Frame g = *it;
    g.weight /= 2.0;
    out.frames.push_back(std::move(g));
  }
  return out;
}

}  // namespace qeng
