#include "priorglue/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cctype>
#include <cmath>
#include <set>

namespace priorglue {

MalformedMassError::MalformedMassError(std::string_view text, std::size_t position, const std::string& why)
    : Error(ErrorKind::MalformedMass,
            "malformed mass '" + std::string(text) + "' at position " + std::to_string(position) + ": " + why),
      position_(position) {}

namespace {

bool is_digit(char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; }

}  // namespace

Rational parse_mass(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && text[begin] == ' ') ++begin;
  while (end > begin && text[end - 1] == ' ') --end;
  if (begin == end) throw MalformedMassError(text, begin, "empty");

  std::size_t pos = begin;
  const std::size_t int_start = pos;
  while (pos < end && is_digit(text[pos])) ++pos;
  const std::string int_digits(text.substr(int_start, pos - int_start));

  if (pos < end && text[pos] == '/') {
    if (int_digits.empty()) throw MalformedMassError(text, pos, "missing numerator");
    const std::size_t den_start = ++pos;
    while (pos < end && is_digit(text[pos])) ++pos;
    if (pos != end) throw MalformedMassError(text, pos, "unexpected character");
    if (pos == den_start) throw MalformedMassError(text, pos, "missing denominator");
    mpz_class den(std::string(text.substr(den_start, pos - den_start)), 10);
    if (den == 0) throw MalformedMassError(text, den_start, "zero denominator");
    Rational q(mpz_class(int_digits, 10), den);
    q.canonicalize();
    return q;
  }

  std::string frac_digits;
  if (pos < end && text[pos] == '.') {
    const std::size_t frac_start = ++pos;
    while (pos < end && is_digit(text[pos])) ++pos;
    frac_digits = std::string(text.substr(frac_start, pos - frac_start));
  }
  if (int_digits.empty() && frac_digits.empty()) {
    throw MalformedMassError(text, int_start, "expected digits");
  }
  bool percent = false;
  if (pos < end && text[pos] == '%') {
    percent = true;
    ++pos;
  }
  if (pos != end) throw MalformedMassError(text, pos, "unexpected character");

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_digits.size());
  const std::string digits = (int_digits.empty() ? "0" : int_digits) + frac_digits;
  Rational q(mpz_class(digits, 10), scale);
  if (percent) q /= 100;
  q.canonicalize();
  return q;
}

namespace {

[[noreturn]] void malformed(const std::string& message) { throw Error(ErrorKind::MalformedInput, message); }

std::vector<std::string> string_list(const nlohmann::json& node, const std::string& what) {
  if (!node.is_array()) malformed(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : node) {
    if (!item.is_string()) malformed(what + " must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

CredenceFile parse_credence_file(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) malformed("document must be an object");
  if (!doc.contains("atoms")) malformed("missing 'atoms'");
  if (!doc.contains("agents") || !doc["agents"].is_array()) malformed("missing 'agents' array");

  CredenceFile file;
  file.atoms = string_list(doc["atoms"], "'atoms'");
  for (const auto& node : doc["agents"]) {
    if (!node.is_object()) malformed("each agent must be an object");
    CredenceFile::Agent agent;
    if (!node.contains("id") || !node["id"].is_string()) malformed("agent 'id' must be a string");
    agent.id = node["id"].get<std::string>();
    const std::string where = "agent '" + agent.id + "'";
    if (!node.contains("evidence")) malformed(where + " is missing 'evidence'");
    agent.evidence = string_list(node["evidence"], where + " 'evidence'");
    if (!node.contains("credence") || !node["credence"].is_object()) {
      malformed(where + " 'credence' must be an object");
    }
    for (const auto& [label, mass] : node["credence"].items()) {
      if (!mass.is_string()) malformed(where + " mass for '" + label + "' must be a string");
      agent.credence.emplace_back(label, mass.get<std::string>());
    }
    file.agents.push_back(std::move(agent));
  }
  return file;
}

CredenceFamily load_family(const CredenceFile& file) {
  CredenceFamily family{make_space(file.atoms), {}};
  for (const auto& entry : file.agents) {
    const std::string where = "agent '" + entry.id + "'";
    const EventSet evidence = event(family.space, entry.evidence);
    if (evidence.size() != entry.evidence.size()) malformed(where + " lists an evidence atom twice");

    std::vector<std::string> keys;
    for (const auto& [label, mass] : entry.credence) keys.push_back(label);
    const EventSet keyed = event(family.space, keys);
    if (!(keyed == evidence) || keys.size() != evidence.size()) {
      malformed(where + " credence keys " + to_string(keyed) + " must equal its evidence " + to_string(evidence));
    }

    std::vector<Rational> by_atom(family.space.size());
    for (const auto& [label, mass] : entry.credence) by_atom[*family.space.index_of(label)] = parse_mass(mass);
    std::vector<Rational> masses;
    for (std::size_t atom : evidence.atoms()) masses.push_back(by_atom[atom]);
    try {
      family.agents.emplace_back(entry.id, ProbabilityMeasure(evidence, std::move(masses)));
    } catch (const Error& e) {
      malformed(where + ": " + e.what());
    }
  }
  validate_family(family.agents);
  return family;
}

CredenceFile to_credence_file(const CredenceFamily& family) {
  CredenceFile file;
  const auto labels = family.space.labels();
  file.atoms.assign(labels.begin(), labels.end());
  for (const auto& agent : family.agents) {
    CredenceFile::Agent entry{agent.id(), agent.evidence().labels(), {}};
    for (std::size_t atom : agent.evidence().atoms()) {
      entry.credence.emplace_back(family.space.label(atom), to_fraction_string(agent.credence().mass(atom)));
    }
    file.agents.push_back(std::move(entry));
  }
  return file;
}

std::string serialize_credence_file(const CredenceFile& file) {
  Json doc;
  doc["atoms"] = file.atoms;
  doc["agents"] = Json::array();
  for (const auto& agent : file.agents) {
    Json node;
    node["id"] = agent.id;
    node["evidence"] = agent.evidence;
    node["credence"] = Json::object();
    for (const auto& [label, mass] : agent.credence) node["credence"][label] = mass;
    doc["agents"].push_back(std::move(node));
  }
  return doc.dump(2) + "\n";
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

Json to_json(const Rational& q) {
  Json out;
  out["fraction"] = to_fraction_string(q);
  out["approx_percent"] = std::round(approx_percent(q) * 1e4) / 1e4;
  return out;
}

Json to_json(const EventSet& e) { return Json(e.labels()); }

Json to_json(const ProbabilityMeasure& p) {
  Json out = Json::array();
  for (std::size_t atom : p.domain().atoms()) {
    Json entry;
    entry["atom"] = p.space().label(atom);
    const Json value = to_json(p.mass(atom));
    for (const auto& [key, field] : value.items()) entry[key] = field;
    out.push_back(std::move(entry));
  }
  return out;
}

Json to_json(const GcReport& report) {
  Json out;
  out["holds"] = report.holds();
  out["compatible_pairs"] = Json::array();
  for (const auto& pair : report.compatible_pairs) out["compatible_pairs"].push_back({pair.first, pair.second});
  out["conflicting_pairs"] = Json::array();
  for (const auto& c : report.conflicting_pairs) {
    Json entry;
    entry["agents"] = {c.agents.first, c.agents.second};
    entry["overlap"] = to_json(c.overlap);
    entry["kind"] = to_string(c.kind);
    entry["witness"] = c.overlap.space().label(c.witness);
    entry["values"] = {to_json(c.first_value), to_json(c.second_value)};
    out["conflicting_pairs"].push_back(std::move(entry));
  }
  return out;
}

Json to_json(const GlueResult& result) {
  Json out;
  out["evidence"] = to_json(result.evidence_used);
  out["prior"] = to_json(result.prior);
  out["verification"] = Json::array();
  for (const auto& [id, ok] : result.verification) out["verification"].push_back({{"agent", id}, {"verified", ok}});
  return out;
}

Json to_json(const SurvivorReport& report) {
  Json out;
  out["consistent"] = report.consistent();
  out["survivors"] = to_json(report.survivors);
  out["eliminated"] = Json::array();
  for (const auto& e : report.eliminated) {
    out["eliminated"].push_back({{"atom", report.survivors.space().label(e.atom)}, {"ruled_out_by", e.agent_id}});
  }
  out["supported"] = to_json(report.supported);
  return out;
}

Json to_json(const LawReport& report) {
  Json out;
  out["law"] = report.law;
  out["trials"] = report.trials;
  out["skipped"] = report.skipped;
  out["holds"] = report.holds();
  out["failures"] = report.failures;
  return out;
}

}  // namespace priorglue
