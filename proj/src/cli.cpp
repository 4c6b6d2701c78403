#include "qeng/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "qeng/documents.hpp"
#include "qeng/errors.hpp"
#include "qeng/floquet_sim.hpp"
#include "qeng/sequence_synthesis.hpp"

namespace qeng {

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Io: return kExitIo;
    case ErrorKind::Resource: return kExitResource;
    default: return kExitValidation;
  }
}

[[noreturn]] void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

void validate(const JobConfig& c) {
  if (c.d < 2) fail(ErrorKind::InvalidDimension, "--d must be >= 2");
  if (c.max_depth < 1) fail(ErrorKind::Validation, "--max-depth must be >= 1");
  if (!(c.tol > 0.0)) fail(ErrorKind::Validation, "--tol must be > 0");
  if (c.command == "simulate") {
    if (c.n < 2) fail(ErrorKind::Validation, "--n must be >= 2");
    if (c.cycles < 0) fail(ErrorKind::Validation, "--cycles must be >= 0");
    if (!(c.coupling_j > 0.0)) fail(ErrorKind::Validation, "--J must be > 0");
    if (c.jt.empty()) fail(ErrorKind::Validation, "--jt needs at least one value");
    for (double v : c.jt)
      if (!(v > 0.0)) fail(ErrorKind::Validation, "--jt values must be > 0");
  }
}

CMatrix load_c(const std::string& preset_name, const std::string& path, int d) {
  if (!preset_name.empty()) return preset(preset_name, d);
  if (!path.empty()) return c_matrix_from_document(read_json_file(path));
  fail(ErrorKind::Validation, "give --preset or --hamiltonian");
}

// Engineer endpoints: an existing file is a document, anything else a preset name.
CMatrix load_endpoint(const std::string& spec, int d) {
  if (spec.empty()) fail(ErrorKind::Validation, "engineer needs --from and --to");
  if (std::filesystem::is_regular_file(spec)) return c_matrix_from_document(read_json_file(spec));
  return preset(spec, d);
}

std::vector<CompositePulse> composites_for(int d, int depth) {
  return enumerate_composites(transition_generators(d), build_basis(d), depth);
}

void emit(const JobConfig& c, const Json& doc) {
  if (!c.output_path.empty()) write_text_file(c.output_path, doc.dump(2) + "\n");
}

int report_synthesis(const JobConfig& c, const SynthesisResult& r, std::ostream& out) {
  emit(c, report_to_json(r));
  if (r.sequence && !c.sequence_out.empty())
    write_text_file(c.sequence_out, sequence_to_json(*r.sequence).dump(2) + "\n");
  out << "status: " << to_string(r.status) << "\n";
  out << std::setprecision(12);
  if (r.ok()) {
    out << "beta_star: " << r.beta_star << "\n"
        << "beta: " << r.beta << "\n"
        << "residual: " << r.residual << "\n"
        << "frames: " << r.frames_used << " (" << applied_pulse_count(*r.sequence) << " pulses)\n";
  } else {
    out << "reason: " << r.reason << "\n";
  }
  out << "composite set: " << r.composite_set_size << "\n";
  return r.ok() ? kExitOk : kExitInfeasible;
}

std::string csv_path_for(const std::string& base, double jt, bool many) {
  if (!many) return base;
  std::filesystem::path p(base);
  std::ostringstream tag;
  tag << "_jt" << jt;
  return (p.parent_path() / (p.stem().string() + tag.str() + p.extension().string())).string();
}

int run_simulate(const JobConfig& c, std::ostream& out) {
  const CMatrix cm = load_c(c.preset, c.hamiltonian_path, c.d);
  const OperatorBasis basis = build_basis(cm.dimension());
  EnsembleSpec spec{.n = c.n,
                    .d = cm.dimension(),
                    .couplings = random_couplings(c.n, c.coupling_j, c.seed),
                    .interaction = to_interaction(cm, basis)};
  const SpectralHamiltonian h = diagonalize(build_hamiltonian(spec));

  std::optional<PulseSequence> seq;
  if (!c.sequence_path.empty()) {
    seq = sequence_from_json(read_json_file(c.sequence_path));
    require_valid(*seq);
    if (seq->d != cm.dimension()) fail(ErrorKind::Representation, "sequence and Hamiltonian dimensions differ");
    if (c.symmetrized) seq = symmetrize(*seq);
  }
  const bool many = c.jt.size() > 1;
  for (double jt : c.jt) {
    const double t_unit = jt / c.coupling_j;
    FidelityTrace trace;
    if (seq) {
      const double period = (c.symmetrized ? 2.0 : 1.0) * t_unit;
      trace = fidelity_trace(floquet_unitary(h, *seq, period), c.cycles);
    } else {
      trace = free_fidelity_trace(h.energies, t_unit, c.cycles);
    }
    for (double& t : trace.times) t *= c.coupling_j;  // report t in units of 1/J
    std::ostringstream csv;
    write_trace_csv(csv, trace);
    if (c.output_path.empty()) {
      out << csv.str();
    } else {
      const std::string path = csv_path_for(c.output_path, jt, many);
      write_text_file(path, csv.str());
      out << "JT=" << jt << ": " << trace.times.size() << " points, F(end)=" << std::setprecision(6)
          << trace.values.back() << " -> " << path << "\n";
    }
  }
  return kExitOk;
}

int run_verify(const JobConfig& c, std::ostream& out) {
  if (c.input_path.empty()) fail(ErrorKind::Validation, "verify needs an input document");
  const auto diags = validate_document(c.input_path);
  Json j = Json::array();
  for (const auto& v : diags) {
    j.push_back({{"check", v.check}, {"magnitude", v.magnitude}, {"tolerance", v.tolerance}, {"detail", v.detail}});
    out << v.check << ": " << v.detail << " (magnitude " << v.magnitude << ", tolerance " << v.tolerance << ")\n";
  }
  if (diags.empty()) out << c.input_path << ": ok\n";
  emit(c, Json{{"path", c.input_path}, {"diagnostics", j}});
  return diags.empty() ? kExitOk : kExitValidation;
}

int dispatch(const JobConfig& c, std::ostream& out) {
  validate(c);
  if (c.command == "basis") {
    const OperatorBasis b = build_basis(c.d);
    Json lambdas = Json::array();
    for (const auto& l : b.lambdas()) lambdas.push_back(complex_matrix_to_json(l));
    emit(c, Json{{"d", c.d}, {"lambdas", lambdas}});
    out << "d=" << c.d << ": " << b.size() << " basis matrices\n";
    return kExitOk;
  }
  if (c.command == "repr") {
    const CMatrix cm = load_c(c.preset, c.hamiltonian_path, c.d);
    Json j = c_matrix_to_json(cm);
    j["trace"] = cm.trace();
    j["cancellable"] = is_cancellable(cm, c.tol);
    emit(c, j);
    out << "tr(C) = " << std::setprecision(12) << cm.trace()
        << (is_cancellable(cm, c.tol) ? " (decouplable)\n" : " (isotropic part cannot be removed)\n");
    if (c.output_path.empty()) out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (c.command == "decouple") {
    const CMatrix cm = load_c(c.preset, c.hamiltonian_path, c.d);
    return report_synthesis(c, decouple(cm, composites_for(cm.dimension(), c.max_depth), c.tol), out);
  }
  if (c.command == "engineer") {
    const CMatrix c0 = load_endpoint(c.from, c.d);
    const CMatrix cf = load_endpoint(c.to, c.d);
    if (c0.dimension() != cf.dimension()) fail(ErrorKind::Representation, "--from and --to dimensions differ");
    return report_synthesis(c, engineer(c0, cf, composites_for(c0.dimension(), c.max_depth), c.tol), out);
  }
  if (c.command == "engineer-hpq") {
    if (!HpqEngineer::in_hull(c.p, c.q))
      return report_synthesis(c, engineer_hpq(c.p, c.q, {}, c.tol), out);
    return report_synthesis(c, engineer_hpq(c.p, c.q, composites_for(3, c.max_depth), c.tol), out);
  }
  if (c.command == "symmetrize") {
    if (c.sequence_path.empty()) fail(ErrorKind::Validation, "symmetrize needs --sequence");
    const PulseSequence sym = symmetrize(sequence_from_json(read_json_file(c.sequence_path)));
    const Json j = sequence_to_json(sym);
    emit(c, j);
    out << "frames: " << sym.frames.size() << ", applied pulses: " << applied_pulse_count(sym)
        << ", period: " << sym.period_T << "\n";
    if (c.output_path.empty()) out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (c.command == "simulate") return run_simulate(c, out);
  if (c.command == "verify") return run_verify(c, out);
  fail(ErrorKind::Validation, "unknown command '" + c.command + "'");
}

}  // namespace

int run(const JobConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out);
  } catch (const Error& e) {
    err << Json{{"error", to_string(e.kind())}, {"message", e.what()}}.dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << Json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return kExitValidation;
  }
}

}  // namespace qeng
