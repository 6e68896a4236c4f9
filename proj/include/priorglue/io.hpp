#pragma once

#include "priorglue/errors.hpp"
#include "priorglue/probability.hpp"
#include "priorglue/rational.hpp"
#include "priorglue/sheaf_laws.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace priorglue {

using Json = nlohmann::ordered_json;

class MalformedMassError : public Error {
 public:
  MalformedMassError(std::string_view text, std::size_t position, const std::string& why);
  /// Offset of the offending character within the mass string.
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Parses "p/q", a finite decimal ("0.12", "1", ".5"), or either decimal
/// form followed by '%'. Exact; leading/trailing spaces are ignored.
Rational parse_mass(std::string_view text);

/// Mirrors the on-disk credence document. Masses stay as strings until
/// `load_family` so that no binary floating point is involved.
struct CredenceFile {
  struct Agent {
    std::string id;
    std::vector<std::string> evidence;
    std::vector<std::pair<std::string, std::string>> credence;  // label -> mass string
  };

  std::vector<std::string> atoms;
  std::vector<Agent> agents;
};

/// Structural parse of a JSON document:
///   {"atoms": [...], "agents": [{"id": "1", "evidence": [...], "credence": {"a": "75%"}}]}
/// Throws MalformedInput.
CredenceFile parse_credence_file(std::string_view text);

/// Checks the document invariants and builds the family. Credence keys must
/// equal the evidence set; every mass must parse and each agent's masses must
/// sum to exactly 1.
CredenceFamily load_family(const CredenceFile& file);

/// Inverse of load_family, writing lowest-terms fractions.
CredenceFile to_credence_file(const CredenceFamily& family);
std::string serialize_credence_file(const CredenceFile& file);

std::string sha256_hex(std::string_view bytes);

// Report fragments. Rationals are written as an exact fraction plus an
// approximate percentage for reading.
Json to_json(const Rational& q);
Json to_json(const EventSet& e);
Json to_json(const ProbabilityMeasure& p);
Json to_json(const GcReport& report);
Json to_json(const GlueResult& result);
Json to_json(const SurvivorReport& report);
Json to_json(const LawReport& report);

}  // namespace priorglue
