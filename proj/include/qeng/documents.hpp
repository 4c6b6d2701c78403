#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qeng/interaction_rep.hpp"
#include "qeng/pulse_algebra.hpp"
#include "qeng/sequence_synthesis.hpp"

namespace qeng {

using Json = nlohmann::json;

/// Error(Io) when unreadable, Error(Parse) with line and column when malformed.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& source = "<input>");
void write_text_file(const std::string& path, const std::string& text);

/// Complex matrices are arrays of rows of [re, im] pairs.
Json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& what);
Json real_matrix_to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const Json& j, const std::string& what);

/// Hamiltonian document: {"d", "matrix"} (full h), {"preset"}, or {"d", "c_matrix"}.
Json hamiltonian_to_json(const TwoQuditInteraction& h);
Json c_matrix_to_json(const CMatrix& c);
CMatrix c_matrix_from_document(const Json& j);

/// Sequence document: {"d", "period_T", "frames": [{"weight", "recipe": [...]} | {"weight", "matrix"}]}.
Json sequence_to_json(const PulseSequence& seq);
/// Parses without checking the sequence invariants (see sequence_violations).
PulseSequence sequence_from_json(const Json& j);

Json report_to_json(const SynthesisResult& r);

/// Every invariant violation of a Hamiltonian or sequence document (empty when valid).
std::vector<Violation> validate_document(const std::string& path);

}  // namespace qeng
