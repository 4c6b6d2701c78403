#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qeng/cli.hpp"
#include "qeng/documents.hpp"
#include "qeng/errors.hpp"
#include "support.hpp"

using namespace qeng;
using namespace testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const char* base = std::getenv("QENG_TEST_TMP");
  fs::path p = (base ? fs::path(base) : fs::temp_directory_path()) / "cli_io_tmp";
  fs::create_directories(p);
  return p;
}

std::string path_of(const std::string& name) { return (scratch() / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_job(const JobConfig& c) {
  std::ostringstream out, err;
  const int code = run(c, out, err);
  return {code, out.str(), err.str()};
}

JobConfig job(const std::string& command) {
  JobConfig c;
  c.command = command;
  return c;
}

}  // namespace

TEST_CASE("decouple report") {
  JobConfig c = job("decouple");
  c.preset = "spin1_dipolar_secular";
  c.output_path = path_of("decouple.json");
  c.sequence_out = path_of("decouple_seq.json");
  const Outcome o = run_job(c);
  REQUIRE(o.code == kExitOk);
  CHECK(o.err.empty());
  const Json report = read_json_file(c.output_path);
  CHECK(report["status"] == "optimal");
  CHECK(report["residual"].get<double>() < 1e-8);
  CHECK(report["composite_set_size"] == 22944);
  for (const char* key : {"beta_star", "frames_used", "sequence", "applied_pulses"}) CHECK(report.contains(key));
  const PulseSequence s = sequence_from_json(read_json_file(c.sequence_out));
  CHECK(sequence_violations(s).empty());
  CHECK(max_abs(effective_c(s, preset("spin1_dipolar_secular")).entries()) < 1e-8);

  // Determinism: same job, byte-identical artifacts.
  const std::string first = slurp(c.output_path);
  REQUIRE(run_job(c).code == kExitOk);
  CHECK(slurp(c.output_path) == first);
}

TEST_CASE("engineer report") {
  JobConfig c = job("engineer");
  c.from = "ising_z_spin1";
  c.to = "target_C";
  c.output_path = path_of("engineer.json");
  REQUIRE(run_job(c).code == kExitOk);
  const Json report = read_json_file(c.output_path);
  CHECK(std::abs(report["beta_star"].get<double>() - 1.0 / 3) < 1e-6);

  // Endpoints may be documents.
  write_text_file(path_of("target_c.json"), c_matrix_to_json(preset("target_C")).dump());
  c.to = path_of("target_c.json");
  c.output_path.clear();
  const Outcome o = run_job(c);
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("beta_star: 0.333333333333") != std::string::npos);
}

TEST_CASE("infeasible synthesis exits 2") {
  JobConfig c = job("decouple");
  c.preset = "ising_z_spin1";
  c.max_depth = 1;
  c.output_path = path_of("infeasible.json");
  const Outcome o = run_job(c);
  CHECK(o.code == kExitInfeasible);
  CHECK(read_json_file(c.output_path)["status"] == "infeasible");

  JobConfig h = job("engineer-hpq");
  h.p = 0.0;
  h.q = 0.3;
  CHECK(run_job(h).code == kExitInfeasible);
}

TEST_CASE("simulate") {
  write_text_file(path_of("supplement.json"), sequence_to_json(supplement_sequence()).dump(2));
  JobConfig c = job("simulate");
  c.n = 3;
  c.preset = "spin1_dipolar_secular";
  c.sequence_path = path_of("supplement.json");
  c.cycles = 10;
  c.output_path = path_of("trace.csv");
  REQUIRE(run_job(c).code == kExitOk);
  const std::string csv = slurp(c.output_path);
  CHECK(csv.rfind("t,F\n0,1\n", 0) == 0);
  std::istringstream lines(csv);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 12);
  REQUIRE(run_job(c).code == kExitOk);
  CHECK(slurp(c.output_path) == csv);

  c.jt = {0.1, 0.2};
  REQUIRE(run_job(c).code == kExitOk);
  CHECK(fs::exists(path_of("trace_jt0.1.csv")));
  CHECK(fs::exists(path_of("trace_jt0.2.csv")));

  c.output_path.clear();
  c.jt = {0.1};
  c.sequence_path.clear();
  const Outcome free_run = run_job(c);
  CHECK(free_run.code == kExitOk);
  CHECK(free_run.out.rfind("t,F\n0,1\n", 0) == 0);

  c.jt = {-0.1};
  CHECK(run_job(c).code == kExitValidation);
}

TEST_CASE("resource cap exits 5") {
  ::setenv("QENG_MAX_DIM", "100", 1);
  JobConfig c = job("simulate");
  c.n = 5;
  c.preset = "spin1_dipolar_secular";
  const Outcome o = run_job(c);
  ::unsetenv("QENG_MAX_DIM");
  CHECK(o.code == kExitResource);
  const Json err = parse_json(o.err);
  CHECK(err["error"] == to_string(ErrorKind::Resource));
}

TEST_CASE("verify diagnostics") {
  write_text_file(path_of("preset.json"), c_matrix_to_json(preset("spin1_dipolar_secular")).dump());
  JobConfig c = job("verify");
  c.input_path = path_of("preset.json");
  Outcome o = run_job(c);
  CHECK(o.code == kExitOk);
  CHECK(validate_document(c.input_path).empty());

  PulseSequence s = supplement_sequence();
  for (auto& f : s.frames) f.weight = 0.15;
  write_text_file(path_of("short.json"), sequence_to_json(s).dump());
  auto diags = validate_document(path_of("short.json"));
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].check == "weight-normalization");
  CHECK(diags[0].magnitude == doctest::Approx(0.1));
  c.input_path = path_of("short.json");
  CHECK(run_job(c).code == kExitValidation);

  // Hand-edited matrix: one off-diagonal entry loses its conjugate partner.
  Json h = hamiltonian_to_json(ising_z_interaction());
  h["matrix"][0][4] = Json::array({0.0, 0.25});
  write_text_file(path_of("nonherm.json"), h.dump());
  diags = validate_document(path_of("nonherm.json"));
  REQUIRE(!diags.empty());
  CHECK(diags[0].check == "hermiticity");
  CHECK(diags[0].magnitude == doctest::Approx(0.25));
  const std::string& where = diags[0].detail;
  CHECK((where.find("(0,4)") != std::string::npos || where.find("(4,0)") != std::string::npos));
}

TEST_CASE("input errors") {
  write_text_file(path_of("broken.json"), "{\n  \"d\": 3,\n  \"preset\": oops\n}\n");
  try {
    read_json_file(path_of("broken.json"));
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find(":3:") != std::string::npos);
  }
  JobConfig c = job("repr");
  c.hamiltonian_path = path_of("broken.json");
  CHECK(run_job(c).code == kExitValidation);

  c.hamiltonian_path = path_of("does_not_exist.json");
  const Outcome o = run_job(c);
  CHECK(o.code == kExitIo);
  CHECK(parse_json(o.err)["error"] == to_string(ErrorKind::Io));

  CHECK(run_job(job("launch")).code == kExitValidation);
  JobConfig bad = job("basis");
  bad.d = 1;
  CHECK(run_job(bad).code == kExitValidation);
  JobConfig unknown = job("repr");
  unknown.preset = "no_such_preset";
  CHECK(run_job(unknown).code == kExitValidation);
}

TEST_CASE("document round trips are bit-exact") {
  for (int rep = 0; rep < 5; ++rep) {
    PulseSequence s;
    s.d = 3;
    s.period_T = uniform(0.1, 2.0);
    for (int i = 0; i < 3; ++i) s.frames.push_back({random_unitary(3), uniform(0.0, 1.0), {}, false});
    const PulseSequence back = sequence_from_json(parse_json(sequence_to_json(s).dump(2)));
    REQUIRE(back.frames.size() == 3);
    CHECK(back.period_T == s.period_T);
    for (int i = 0; i < 3; ++i) {
      CHECK(back.frames[i].weight == s.frames[i].weight);
      CHECK((back.frames[i].u.array() == s.frames[i].u.array()).all());
    }
    const CMatrix c(3, random_symmetric(8));
    const CMatrix cb = c_matrix_from_document(parse_json(c_matrix_to_json(c).dump()));
    CHECK((cb.entries().array() == c.entries().array()).all());
  }
  const PulseSequence sup = supplement_sequence();
  const PulseSequence back = sequence_from_json(parse_json(sequence_to_json(sup).dump()));
  for (std::size_t i = 0; i < sup.frames.size(); ++i) {
    CHECK(back.frames[i].has_recipe);
    CHECK((back.frames[i].u.array() == sup.frames[i].u.array()).all());
  }
}
