#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qeng {

enum ExitCode : int { kExitOk = 0, kExitInfeasible = 2, kExitValidation = 3, kExitIo = 4, kExitResource = 5 };

struct JobConfig {
  std::string command;  // basis, repr, decouple, engineer, engineer-hpq, symmetrize, simulate, verify

  std::string hamiltonian_path;  // Hamiltonian document
  std::string preset;            // preset name instead of a document
  std::string from, to;          // engineer: preset names or document paths
  std::string sequence_path;     // sequence document (symmetrize, simulate)
  std::string input_path;        // verify
  std::string output_path;       // report / sequence / CSV destination; stdout summary only if empty
  std::string sequence_out;      // synthesis: also write the sequence document here

  int d = 3;
  int max_depth = 4;
  double tol = 1e-9;
  int n = 6;
  std::uint64_t seed = 7;
  double coupling_j = 1.0;
  std::vector<double> jt = {0.1};
  int cycles = 1000;
  double p = 0.0, q = 0.0;
  bool symmetrized = false;
};

/// Runs one job. Human-readable summary on `out`; on failure a one-line error JSON on
/// `err` and a nonzero ExitCode.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qeng
