#include "qeng/documents.hpp"

#include <fstream>
#include <sstream>

#include "qeng/errors.hpp"

namespace qeng {

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    if (const auto pos = msg.find("syntax error"); pos != std::string::npos) msg = msg.substr(pos);
    throw Error(ErrorKind::Parse, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write to '" + path + "' failed");
}

Json complex_matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

[[noreturn]] void bad(const std::string& what, const std::string& why) {
  throw Error(ErrorKind::Parse, what + ": " + why);
}

double number(const Json& j, const std::string& what) {
  if (!j.is_number()) bad(what, "expected a number");
  return j.get<double>();
}

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) bad(what, std::string("missing \"") + key + "\"");
  return j.at(key);
}

int dimension_field(const Json& j, const std::string& what) {
  const Json& d = field(j, "d", what);
  if (!d.is_number_integer()) bad(what, "\"d\" must be an integer");
  return d.get<int>();
}

}  // namespace

ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) bad(what, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) bad(what, "ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& e = j[r][c];
      if (e.is_number()) {
        m(r, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(r, c) = cplx(number(e[0], what), number(e[1], what));
      } else {
        bad(what, "entry (" + std::to_string(r) + "," + std::to_string(c) + ") must be [re, im]");
      }
    }
  }
  return m;
}

Json real_matrix_to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

RealMatrix real_matrix_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) bad(what, "expected a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0);
  RealMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) bad(what, "ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number(j[r][c], what);
  }
  return m;
}

Json hamiltonian_to_json(const TwoQuditInteraction& h) {
  return {{"d", h.dimension()}, {"matrix", complex_matrix_to_json(h.matrix())}};
}

Json c_matrix_to_json(const CMatrix& c) {
  return {{"d", c.dimension()}, {"c_matrix", real_matrix_to_json(c.entries())}};
}

CMatrix c_matrix_from_document(const Json& j) {
  const std::string what = "hamiltonian document";
  if (!j.is_object()) bad(what, "expected an object");
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) bad(what, "\"preset\" must be a string");
    return preset(j["preset"].get<std::string>(), j.contains("d") ? dimension_field(j, what) : 3);
  }
  const int d = dimension_field(j, what);
  if (j.contains("c_matrix")) return CMatrix(d, real_matrix_from_json(j["c_matrix"], what + " c_matrix"));
  if (j.contains("matrix")) {
    const TwoQuditInteraction h(d, complex_matrix_from_json(j["matrix"], what + " matrix"));
    return c_matrix(h, build_basis(d));
  }
  bad(what, "needs one of \"preset\", \"matrix\", \"c_matrix\"");
}

Json sequence_to_json(const PulseSequence& seq) {
  Json frames = Json::array();
  for (const auto& f : seq.frames) {
    Json fj = {{"weight", f.weight}};
    if (f.has_recipe) {
      Json recipe = Json::array();
      for (const auto& p : f.recipe) recipe.push_back(p.to_string());
      fj["recipe"] = std::move(recipe);
    } else {
      fj["matrix"] = complex_matrix_to_json(f.u);
    }
    frames.push_back(std::move(fj));
  }
  return {{"d", seq.d}, {"period_T", seq.period_T}, {"frames", std::move(frames)}};
}

PulseSequence sequence_from_json(const Json& j) {
  const std::string what = "sequence document";
  PulseSequence seq;
  seq.d = dimension_field(j, what);
  if (seq.d < 2) throw Error(ErrorKind::InvalidDimension, "sequence d must be >= 2");
  seq.period_T = j.contains("period_T") ? number(j["period_T"], what + " period_T") : 1.0;
  const Json& frames = field(j, "frames", what);
  if (!frames.is_array()) bad(what, "\"frames\" must be an array");
  const OperatorBasis basis = build_basis(seq.d);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::string fw = what + " frame " + std::to_string(i + 1);
    const Json& fj = frames[i];
    Frame f;
    f.weight = number(field(fj, "weight", fw), fw);
    if (fj.contains("recipe")) {
      if (!fj["recipe"].is_array()) bad(fw, "\"recipe\" must be an array of pulse tokens");
      for (const auto& t : fj["recipe"]) {
        if (!t.is_string()) bad(fw, "pulse tokens must be strings");
        f.recipe.push_back(ElementaryPulse::parse(t.get<std::string>()));
      }
      f.has_recipe = true;
      f.u = recipe_unitary(f.recipe, basis);
    } else if (fj.contains("matrix")) {
      f.u = complex_matrix_from_json(fj["matrix"], fw);
    } else {
      bad(fw, "needs \"recipe\" or \"matrix\"");
    }
    seq.frames.push_back(std::move(f));
  }
  return seq;
}

Json report_to_json(const SynthesisResult& r) {
  Json j = {{"status", to_string(r.status)},
            {"beta_star", r.beta_star},
            {"beta", r.beta},
            {"residual", r.residual},
            {"frames_used", r.frames_used},
            {"composite_set_size", r.composite_set_size}};
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (r.sequence) {
    j["applied_pulses"] = applied_pulse_count(*r.sequence);
    j["sequence"] = sequence_to_json(*r.sequence);
  }
  return j;
}

std::vector<Violation> validate_document(const std::string& path) {
  const Json j = read_json_file(path);
  if (j.is_object() && j.contains("frames")) return sequence_violations(sequence_from_json(j));
  if (!j.is_object()) return {{"document", 0.0, 0.0, "top level must be a JSON object"}};

  if (j.contains("matrix")) {
    const int d = dimension_field(j, "hamiltonian document");
    return interaction_violations(d, complex_matrix_from_json(j["matrix"], "hamiltonian document matrix"));
  }
  if (j.contains("c_matrix")) {
    const int d = dimension_field(j, "hamiltonian document");
    const RealMatrix c = real_matrix_from_json(j["c_matrix"], "hamiltonian document c_matrix");
    const int m = d * d - 1;
    if (c.rows() != m || c.cols() != m)
      return {{"shape", double(c.rows()), double(m), "C must be (d²-1)x(d²-1)"}};
    const double asym = max_abs(RealMatrix(c - c.transpose()));
    if (asym > kAlgebraTol) return {{"symmetry", asym, kAlgebraTol, "C != Cᵀ"}};
    return {};
  }
  if (j.contains("preset")) {
    try {
      c_matrix_from_document(j);
    } catch (const Error& e) {
      return {{"preset", 0.0, 0.0, e.what()}};
    }
    return {};
  }
  return {{"document", 0.0, 0.0, "not a Hamiltonian or sequence document"}};
}

}  // namespace qeng
