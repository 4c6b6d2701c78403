#include "qeng/pulse_algebra.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "qeng/errors.hpp"
#include "qeng/kernels.hpp"

namespace qeng {

namespace {

constexpr double kPi = std::numbers::pi;

bool near(double a, double b) { return std::abs(a - b) < 1e-12; }

int parse_int(std::string_view s, std::string_view context) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorKind::Parse, "bad integer '" + std::string(s) + "' in " + std::string(context));
  return v;
}

double parse_angle_magnitude(std::string_view s, std::string_view context) {
  if (s == "pi") return kPi;
  if (s.starts_with("pi/")) return kPi / parse_int(s.substr(3), context);
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::Parse, "bad angle '" + std::string(s) + "' in " + std::string(context));
}

}  // namespace

ComplexMatrix Generator::matrix(const OperatorBasis& basis) const {
  const int t = basis.transition_count();
  switch (kind) {
    case Kind::X:
      if (index < 1 || index > t) break;
      return basis[index - 1] / 2.0;
    case Kind::Y:
      if (index < 1 || index > t) break;
      return basis[t + index - 1] / 2.0;
    case Kind::Lambda:
      if (index < 1 || index > basis.size()) break;
      return basis[index - 1] / 2.0;
  }
  throw Error(ErrorKind::Validation,
              "generator " + to_string() + " out of range for d=" + std::to_string(basis.dimension()));
}

std::string Generator::to_string() const {
  const char* prefix = kind == Kind::X ? "X" : kind == Kind::Y ? "Y" : "L";
  return prefix + std::to_string(index);
}

Generator Generator::parse(std::string_view token) {
  if (token.size() < 2)
    throw Error(ErrorKind::Parse, "bad generator '" + std::string(token) + "'");
  Generator g;
  switch (token.front()) {
    case 'X': g.kind = Kind::X; break;
    case 'Y': g.kind = Kind::Y; break;
    case 'L': g.kind = Kind::Lambda; break;
    default: throw Error(ErrorKind::Parse, "bad generator '" + std::string(token) + "'");
  }
  g.index = parse_int(token.substr(1), "generator");
  return g;
}

ComplexMatrix ElementaryPulse::unitary(const OperatorBasis& basis) const {
  return expm_hermitian(generator.matrix(basis), angle);
}

std::string ElementaryPulse::to_string() const {
  const double mag = std::abs(angle);
  std::string m;
  if (near(mag, kPi)) {
    m = "pi";
  } else if (near(mag, kPi / 2)) {
    m = "pi/2";
  } else {
    std::ostringstream os;
    os.precision(17);
    os << mag;
    m = os.str();
  }
  return m + ":" + generator.to_string() + ":" + (angle < 0 ? "-" : "+");
}

ElementaryPulse ElementaryPulse::parse(std::string_view token) {
  const auto c1 = token.find(':');
  const auto c2 = token.find(':', c1 == std::string_view::npos ? c1 : c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos)
    throw Error(ErrorKind::Parse, "pulse token '" + std::string(token) +
                                      "' must look like <angle>:<generator>:<sign>");
  const std::string_view sign = token.substr(c2 + 1);
  if (sign != "+" && sign != "-")
    throw Error(ErrorKind::Parse, "pulse sign must be + or - in '" + std::string(token) + "'");
  ElementaryPulse p;
  p.generator = Generator::parse(token.substr(c1 + 1, c2 - c1 - 1));
  p.angle = parse_angle_magnitude(token.substr(0, c1), token) * (sign == "-" ? -1.0 : 1.0);
  return p;
}

ComplexMatrix recipe_unitary(const Recipe& recipe, const OperatorBasis& basis) {
  const int d = basis.dimension();
  ComplexMatrix u = ComplexMatrix::Identity(d, d);
  for (const auto& p : recipe) u = u * p.unitary(basis);
  return u;
}

OrthogonalRep orthogonal_rep(const ComplexMatrix& u, const OperatorBasis& basis) {
  if (u.rows() != basis.dimension() || !is_unitary(u))
    throw Error(ErrorKind::Representation, "orthogonal_rep needs a d x d unitary");
  return {kernels::orthogonal_rep_matrix(u, basis), u};
}

RealMatrix m_rep(const OrthogonalRep& o, const SymmetricBasis& sbasis) {
  const int n = sbasis.size();
  RealMatrix m(n, n);
  for (int b = 0; b < n; ++b)
    m.col(b) = w_entries(o.o.transpose() * sbasis[b] * o.o);
  return m;
}

std::vector<Generator> transition_generators(int d) {
  if (d < 2) throw Error(ErrorKind::InvalidDimension, "qudit dimension must be >= 2");
  std::vector<Generator> gens;
  const int t = d * (d - 1) / 2;
  for (int a = 1; a <= t; ++a) gens.push_back({Generator::Kind::X, a});
  for (int a = 1; a <= t; ++a) gens.push_back({Generator::Kind::Y, a});
  return gens;
}

std::vector<ElementaryPulse> elementary_set(const std::vector<Generator>& generators) {
  std::vector<ElementaryPulse> set;
  set.push_back({Generator{}, 0.0});  // identity marker, angle 0
  for (const auto& g : generators)
    for (double angle : {kPi / 2, -kPi / 2, kPi, -kPi}) set.push_back({g, angle});
  return set;
}

namespace {

using Fingerprint = std::vector<long long>;

Fingerprint fingerprint(const RealMatrix& o) {
  Fingerprint key(static_cast<std::size_t>(o.size()));
  for (Eigen::Index i = 0; i < o.size(); ++i) key[i] = std::llround(o.data()[i] * 1e9);
  return key;
}

}  // namespace

std::vector<CompositePulse> enumerate_composites(const std::vector<Generator>& generators,
                                                 const OperatorBasis& basis, int max_depth,
                                                 double dedup_tol) {
  if (generators.empty()) throw Error(ErrorKind::Validation, "empty elementary pulse set");
  return enumerate_composites(elementary_set(generators), basis, max_depth, dedup_tol);
}

std::vector<CompositePulse> enumerate_composites(const std::vector<ElementaryPulse>& elementary,
                                                 const OperatorBasis& basis, int max_depth,
                                                 double dedup_tol) {
  if (max_depth < 1) throw Error(ErrorKind::Validation, "max_depth must be >= 1");
  const int d = basis.dimension();

  // Slot 0 is the identity; angle-0 entries of the input are identities too and are skipped.
  std::vector<ElementaryPulse> elems = {ElementaryPulse{}};
  for (const auto& e : elementary)
    if (e.angle != 0.0) elems.push_back(e);
  if (elems.size() == 1) throw Error(ErrorKind::Validation, "empty elementary pulse set");
  std::vector<ComplexMatrix> elem_u = {ComplexMatrix::Identity(d, d)};
  for (std::size_t i = 1; i < elems.size(); ++i) elem_u.push_back(elems[i].unitary(basis));

  std::vector<CompositePulse> found;
  std::map<Fingerprint, std::vector<std::size_t>> index;

  auto try_insert = [&](CompositePulse&& cand) -> bool {
    auto key = fingerprint(cand.o);
    auto& bucket = index[key];
    for (std::size_t k : bucket)
      if (max_abs(RealMatrix(found[k].o - cand.o)) < dedup_tol) return false;
    bucket.push_back(found.size());
    found.push_back(std::move(cand));
    return true;
  };

  {
    CompositePulse id;
    id.u = ComplexMatrix::Identity(d, d);
    id.o = RealMatrix::Identity(basis.size(), basis.size());
    try_insert(std::move(id));
  }
  std::vector<std::size_t> frontier = {0};
  for (int depth = 1; depth <= max_depth && !frontier.empty(); ++depth) {
    std::vector<ComplexMatrix> cand_u;
    std::vector<std::pair<std::size_t, std::size_t>> origin;
    cand_u.reserve(frontier.size() * elems.size());
    for (std::size_t f : frontier)
      for (std::size_t e = 1; e < elems.size(); ++e) {
        cand_u.push_back(elem_u[e] * found[f].u);
        origin.emplace_back(f, e);
      }
    std::vector<RealMatrix> cand_o = kernels::orthogonal_reps(cand_u, basis);

    std::vector<std::size_t> next;
    for (std::size_t c = 0; c < cand_u.size(); ++c) {
      CompositePulse cp;
      cp.recipe.reserve(found[origin[c].first].recipe.size() + 1);
      cp.recipe.push_back(elems[origin[c].second]);
      cp.recipe.insert(cp.recipe.end(), found[origin[c].first].recipe.begin(),
                       found[origin[c].first].recipe.end());
      cp.u = std::move(cand_u[c]);
      cp.o = std::move(cand_o[c]);
      if (try_insert(std::move(cp))) next.push_back(found.size() - 1);
    }
    frontier = std::move(next);
  }

  std::vector<std::pair<Fingerprint, std::size_t>> order;
  order.reserve(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) order.emplace_back(fingerprint(found[i].o), i);
  std::sort(order.begin(), order.end());
  std::vector<CompositePulse> sorted;
  sorted.reserve(found.size());
  for (const auto& [key, i] : order) sorted.push_back(std::move(found[i]));
  return sorted;
}

std::vector<double> PulseSequence::weights() const {
  std::vector<double> w;
  for (const auto& f : frames) w.push_back(f.weight);
  return w;
}

std::vector<Violation> sequence_violations(const PulseSequence& seq) {
  std::vector<Violation> out;
  if (seq.d < 2) {
    out.push_back({"dimension", double(seq.d), 2.0, "qudit dimension must be >= 2"});
    return out;
  }
  if (!(seq.period_T > 0.0)) out.push_back({"period", seq.period_T, 0.0, "period_T must be > 0"});
  if (seq.frames.empty()) out.push_back({"frames", 0.0, 1.0, "sequence has no frames"});
  double total = 0.0;
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    const Frame& f = seq.frames[i];
    total += f.weight;
    if (f.weight < 0.0)
      out.push_back({"weight-nonnegative", -f.weight, 0.0, "frame " + std::to_string(i + 1)});
    if (f.u.rows() != seq.d || f.u.cols() != seq.d) {
      out.push_back({"frame-shape", double(f.u.rows()), double(seq.d), "frame " + std::to_string(i + 1)});
      continue;
    }
    const double unit = max_abs(ComplexMatrix(f.u.adjoint() * f.u - ComplexMatrix::Identity(seq.d, seq.d)));
    if (unit > kAlgebraTol)
      out.push_back({"unitarity", unit, kAlgebraTol, "frame " + std::to_string(i + 1)});
  }
  if (!seq.frames.empty() && std::abs(total - 1.0) > 1e-9)
    out.push_back({"weight-normalization", std::abs(total - 1.0), 1e-9,
                   "sum of weights is " + std::to_string(total)});
  return out;
}

void require_valid(const PulseSequence& seq) {
  const auto v = sequence_violations(seq);
  if (!v.empty())
    throw Error(ErrorKind::Validation, "invalid pulse sequence: " + v.front().check + " (" +
                                           v.front().detail + ")");
}

CMatrix effective_c(const PulseSequence& seq, const CMatrix& c) {
  require_valid(seq);
  if (seq.d != c.dimension())
    throw Error(ErrorKind::Representation, "effective_c: sequence and C dimensions differ");
  const OperatorBasis basis = build_basis(seq.d);
  RealMatrix acc = RealMatrix::Zero(c.size(), c.size());
  for (const auto& f : seq.frames) {
    if (f.weight == 0.0) continue;
    const RealMatrix o = kernels::orthogonal_rep_matrix(f.u, basis);
    acc += f.weight * (o.transpose() * c.entries() * o);
  }
  acc = 0.5 * (acc + acc.transpose()).eval();
  return CMatrix(seq.d, std::move(acc));
}

std::vector<ComplexMatrix> frames_to_applied(const PulseSequence& seq) {
  std::vector<ComplexMatrix> pulses;
  ComplexMatrix prev = ComplexMatrix::Identity(seq.d, seq.d);
  for (const auto& f : seq.frames) {
    pulses.push_back(f.u * prev.adjoint());
    prev = f.u;
  }
  return pulses;
}

std::vector<ComplexMatrix> applied_to_frames(const std::vector<ComplexMatrix>& pulses) {
  std::vector<ComplexMatrix> frames;
  if (pulses.empty()) return frames;
  ComplexMatrix u = ComplexMatrix::Identity(pulses.front().rows(), pulses.front().cols());
  for (const auto& p : pulses) {
    u = p * u;
    frames.push_back(u);
  }
  return frames;
}

ComplexMatrix closing_pulse(const PulseSequence& seq) {
  if (seq.frames.empty()) return ComplexMatrix::Identity(seq.d, seq.d);
  return seq.frames.back().u.adjoint();
}

int applied_pulse_count(const PulseSequence& seq, double tol) {
  const std::size_t k = seq.frames.size();
  if (k == 0) return 0;
  int count = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const ComplexMatrix& a = seq.frames[i].u;
    const ComplexMatrix& b = seq.frames[(i + 1) % k].u;
    if (distance_up_to_phase(b, a) > tol) ++count;
  }
  return count;
}

PulseSequence concatenate(const std::vector<PulseSequence>& parts, const std::vector<double>& gammas) {
  if (parts.empty() || parts.size() != gammas.size())
    throw Error(ErrorKind::Validation, "concatenate: need one weight per sequence");
  PulseSequence out;
  out.d = parts.front().d;
  out.period_T = parts.front().period_T;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].d != out.d) throw Error(ErrorKind::Representation, "concatenate: dimension mismatch");
    if (gammas[j] == 0.0) continue;
    for (Frame f : parts[j].frames) {
      f.weight *= gammas[j];
      out.frames.push_back(std::move(f));
    }
  }
  return out;
}

PulseSequence supplement_sequence() {
  const OperatorBasis basis = build_basis(3);
  const std::vector<std::vector<std::string>> recipes = {
      {"pi/2:X3:+", "pi/2:Y3:+", "pi:X1:+", "pi/2:Y3:-", "pi/2:X3:-"},
      {"pi/2:X3:+", "pi/2:Y3:+", "pi:Y2:+", "pi/2:Y3:-", "pi/2:X3:-"},
      {"pi/2:Y3:+", "pi/2:X3:-", "pi/2:Y3:-", "pi/2:X3:-"},
      {"pi/2:Y3:+", "pi/2:X3:-", "pi:X1:+", "pi/2:Y3:-", "pi/2:X3:-"},
      {"pi/2:Y3:+", "pi/2:X3:-", "pi:Y2:+", "pi/2:Y3:-", "pi/2:X3:-"},
      {},
  };
  PulseSequence seq;
  seq.d = 3;
  seq.period_T = 1.0;
  for (const auto& tokens : recipes) {
    Frame f;
    for (const auto& t : tokens) f.recipe.push_back(ElementaryPulse::parse(t));
    f.has_recipe = true;
    f.u = recipe_unitary(f.recipe, basis);
    f.weight = 1.0 / 6.0;
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

}  // namespace qeng
