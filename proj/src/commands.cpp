#include "priorglue/commands.hpp"

#include "priorglue/fixtures.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace priorglue {

namespace {

constexpr std::string_view kExample13 = R"({
  "atoms": ["a", "b", "c", "d", "e"],
  "agents": [
    {"id": "1", "evidence": ["a", "b", "c"], "credence": {"a": "75%", "b": "10%", "c": "15%"}},
    {"id": "2", "evidence": ["b", "c", "d"], "credence": {"b": "20%", "c": "30%", "d": "50%"}},
    {"id": "3", "evidence": ["c", "d", "e"], "credence": {"c": "10%", "d": "40%", "e": "50%"}}
  ]
}
)";

constexpr std::string_view kExample14 = R"({
  "atoms": ["a", "b", "c", "d", "e"],
  "agents": [
    {"id": "1", "evidence": ["a", "b", "c"], "credence": {"a": "75%", "b": "10%", "c": "15%"}},
    {"id": "2", "evidence": ["b", "c", "d"], "credence": {"b": "20%", "c": "30%", "d": "50%"}}
  ]
}
)";

constexpr std::string_view kTriangle = R"({
  "atoms": ["a", "b", "c"],
  "agents": [
    {"id": "1", "evidence": ["a", "b"], "credence": {"a": "40%", "b": "60%"}},
    {"id": "2", "evidence": ["b", "c"], "credence": {"b": "40%", "c": "60%"}},
    {"id": "3", "evidence": ["a", "c"], "credence": {"a": "60%", "c": "40%"}}
  ]
}
)";

Json make_report(const std::string& command, std::string_view input_bytes) {
  Json report;
  report["command"] = command;
  report["input_digest"] = "sha256:" + sha256_hex(input_bytes);
  report["status"] = "";
  report["result"] = Json::object();
  return report;
}

CommandResult finish(Json report, const char* status, int exit_code, Json result, std::string diagnostic = {}) {
  report["status"] = status;
  report["result"] = std::move(result);
  return {exit_code, std::move(report), std::move(diagnostic)};
}

CommandResult input_error(Json report, const std::exception& e) {
  Json result;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    result["error"] = to_string(err->kind());
    if (const auto* mass = dynamic_cast<const MalformedMassError*>(err)) result["position"] = mass->position();
  } else {
    result["error"] = "InputError";
  }
  result["message"] = e.what();
  return finish(std::move(report), "input-error", kExitInputError, std::move(result), e.what());
}

CredenceFamily load(const InputDocument& input) { return load_family(parse_credence_file(input.text)); }

// Reads the file, or yields an input-error result naming the path.
template <typename Fn>
CommandResult with_file(const std::string& command, const std::filesystem::path& path, Fn fn) {
  InputDocument doc;
  try {
    doc = read_input(path);
  } catch (const std::exception& e) {
    return input_error(make_report(command + " " + path.string(), ""), e);
  }
  return fn(doc);
}

}  // namespace

InputDocument read_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return {path.string(), buf.str()};
}

CommandResult run_check_gc(const InputDocument& input) {
  Json report = make_report("check-gc " + input.name, input.text);
  try {
    const CredenceFamily family = load(input);
    const GcReport gc = check_gc(family.agents);
    if (gc.holds()) return finish(std::move(report), "consistent", kExitOk, to_json(gc));
    return finish(std::move(report), "gc-violation", kExitViolation, to_json(gc),
                  std::to_string(gc.conflicting_pairs.size()) + " agent pair(s) violate GC");
  } catch (const std::exception& e) {
    return input_error(std::move(report), e);
  }
}

CommandResult run_check_gc(const std::filesystem::path& path) {
  return with_file("check-gc", path, [](const InputDocument& doc) { return run_check_gc(doc); });
}

CommandResult run_glue(const InputDocument& input, const std::optional<std::vector<std::string>>& evidence) {
  std::string command = "glue " + input.name;
  if (evidence) {
    command += " --evidence ";
    for (std::size_t i = 0; i < evidence->size(); ++i) command += (i ? "," : "") + (*evidence)[i];
  }
  Json report = make_report(command, input.text);
  try {
    const CredenceFamily family = load(input);
    const GcReport gc = check_gc(family.agents);
    if (!gc.holds()) {
      return finish(std::move(report), "gc-violation", kExitViolation, to_json(gc),
                    "GC violated; no common prior exists");
    }

    std::optional<EventSet> chosen;
    if (evidence) {
      chosen = event(family.space, *evidence);
    } else {
      const EvidenceDiagnosis diagnosis = diagnose_evidence(family.agents);
      if (!diagnosis.evidence) {
        Json result;
        result["intersection"] = to_json(diagnosis.intersection);
        if (diagnosis.empty_intersection()) {
          result["reason"] = "empty intersection";
        } else {
          result["reason"] = "zero probability";
          result["zero_agents"] = diagnosis.zero_agents;
        }
        std::string why = result["reason"].get<std::string>();
        return finish(std::move(report), "no-evidence", kExitNoEvidence, std::move(result),
                      "no valid evidence set: " + why);
      }
      chosen = diagnosis.evidence;
    }

    try {
      const GlueResult glued = glue_probabilities(family.agents, *chosen);
      return finish(std::move(report), "consistent", kExitOk, to_json(glued));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidEvidence) throw;
      Json result;
      result["reason"] = "invalid evidence";
      result["evidence"] = to_json(*chosen);
      result["message"] = e.what();
      return finish(std::move(report), "no-evidence", kExitNoEvidence, std::move(result), e.what());
    }
  } catch (const std::exception& e) {
    return input_error(std::move(report), e);
  }
}

CommandResult run_glue(const std::filesystem::path& path, const std::optional<std::vector<std::string>>& evidence) {
  return with_file("glue", path, [&](const InputDocument& doc) { return run_glue(doc, evidence); });
}

CommandResult run_survivors(const InputDocument& input) {
  Json report = make_report("survivors " + input.name, input.text);
  try {
    const CredenceFamily family = load(input);
    const SurvivorReport survivors = check_logical_consistency(family.agents);
    return finish(std::move(report), "ok", kExitOk, to_json(survivors));
  } catch (const std::exception& e) {
    return input_error(std::move(report), e);
  }
}

CommandResult run_survivors(const std::filesystem::path& path) {
  return with_file("survivors", path, [](const InputDocument& doc) { return run_survivors(doc); });
}

CommandResult run_oracle(const InputDocument& input, std::uint64_t grid) {
  Json report = make_report("oracle " + input.name + " --grid " + std::to_string(grid), input.text);
  try {
    const CredenceFamily family = load(input);
    const auto priors = brute_force_priors(family.agents, grid);
    Json result;
    result["grid"] = grid;
    result["domain"] = to_json(evidence_union(family.agents));
    result["count"] = priors.size();
    result["priors"] = Json::array();
    for (const auto& p : priors) result["priors"].push_back(to_json(p));
    return finish(std::move(report), "ok", kExitOk, std::move(result));
  } catch (const std::exception& e) {
    return input_error(std::move(report), e);
  }
}

CommandResult run_oracle(const std::filesystem::path& path, std::uint64_t grid) {
  return with_file("oracle", path, [&](const InputDocument& doc) { return run_oracle(doc, grid); });
}

std::string fixture_document(std::string_view demo_name) {
  if (demo_name == "example-1-3") return std::string(kExample13);
  if (demo_name == "example-1-4") return std::string(kExample14);
  if (demo_name == "triangle") return std::string(kTriangle);
  throw Error(ErrorKind::UnknownDemo, "no fixture document for '" + std::string(demo_name) + "'");
}

namespace {

std::string percent_text(const Rational& q) {
  std::ostringstream out;
  out << std::setprecision(6) << approx_percent(q) << "%";
  return out.str();
}

// One row per agent, one column per atom; blank where the atom is outside the domain.
void append_table(std::vector<std::string>& lines, const StateSpace& space,
                  const std::vector<std::pair<std::string, const ProbabilityMeasure*>>& rows) {
  std::size_t label_width = 0;
  for (const auto& [name, p] : rows) label_width = std::max(label_width, name.size());
  std::ostringstream header;
  header << std::setw(static_cast<int>(label_width)) << "" << " |";
  for (const auto& atom : space.labels()) header << std::setw(8) << atom;
  lines.push_back(header.str());
  for (const auto& [name, p] : rows) {
    std::ostringstream row;
    row << std::setw(static_cast<int>(label_width)) << name << " |";
    for (std::size_t atom = 0; atom < space.size(); ++atom) {
      row << std::setw(8) << (p->domain().contains(atom) ? percent_text(p->mass(atom)) : "");
    }
    lines.push_back(row.str());
  }
}

class DemoChecks {
 public:
  void expect(const std::string& name, bool passed, const std::string& detail = {}) {
    Json entry;
    entry["name"] = name;
    entry["passed"] = passed;
    if (!detail.empty()) entry["detail"] = detail;
    checks_.push_back(std::move(entry));
    all_passed_ = all_passed_ && passed;
  }

  // Runs `fn`; an exception counts as a failed check.
  void expect_ok(const std::string& name, const std::function<bool()>& fn) {
    try {
      expect(name, fn());
    } catch (const std::exception& e) {
      expect(name, false, std::string("threw: ") + e.what());
    }
  }

  bool all_passed() const noexcept { return all_passed_; }
  Json take() { return std::move(checks_); }

 private:
  Json checks_ = Json::array();
  bool all_passed_ = true;
};

Rational pct(long p) { return make_rational(p, 100); }

void demo_example_1_3(std::vector<std::string>& table, DemoChecks& checks, Json& data) {
  const CredenceFamily family = load({"example-1-3", std::string(kExample13)});
  const auto& ag = family.agents;
  append_table(table, family.space,
               {{"P1", &ag[0].credence()}, {"P2", &ag[1].credence()}, {"P3", &ag[2].credence()}});

  const GcReport gc = check_gc(ag);
  data["gc"] = to_json(gc);
  checks.expect("agents 1,2 and 1,3 are compatible",
                gc.compatible_pairs == std::vector<AgentPair>{{"1", "2"}, {"1", "3"}});
  checks.expect_ok("agents 2,3 conflict at c: 37.5% vs 20%", [&] {
    if (gc.conflicting_pairs.size() != 1) return false;
    const GcConflict& c = gc.conflicting_pairs.front();
    return c.agents == AgentPair{"2", "3"} && c.overlap.space().label(c.witness) == "c" &&
           c.first_value == make_rational(3, 8) && c.second_value == make_rational(1, 5);
  });

  const EventSet bc = event(family.space, {"b", "c"});
  const ProbabilityMeasure p1_bc = condition(ag[0].credence(), bc);
  const ProbabilityMeasure p2_bc = condition(ag[1].credence(), bc);
  table.emplace_back("");
  append_table(table, family.space, {{"P1|{b,c}", &p1_bc}, {"P2|{b,c}", &p2_bc}});
  checks.expect("P1|{b,c} = P2|{b,c} = (40%, 60%)",
                p1_bc == p2_bc && p1_bc.mass("b") == pct(40) && p1_bc.mass("c") == pct(60));

  const EventSet c = event(family.space, {"c"});
  checks.expect("P1|{c} = P3|{c} = 100%",
                condition(ag[0].credence(), c) == condition(ag[2].credence(), c) &&
                    condition(ag[0].credence(), c).mass("c") == 1);

  checks.expect_ok("all three agents together violate GC", [&] {
    try {
      glue_probabilities(ag, c);
    } catch (const GcViolationError&) {
      return true;
    }
    return false;
  });
}

void demo_example_1_4(std::vector<std::string>& table, DemoChecks& checks, Json& data) {
  const CredenceFamily family = load({"example-1-4", std::string(kExample14)});
  const auto& ag = family.agents;
  const std::optional<EventSet> e = find_evidence(ag);
  checks.expect("evidence found is {b,c}", e && *e == event(family.space, {"b", "c"}));
  if (!e) return;

  const GlueResult glued = glue_probabilities(ag, *e);
  data["glue"] = to_json(glued);
  const ProbabilityMeasure on_a1 = condition(glued.prior, ag[0].evidence());
  const ProbabilityMeasure on_a2 = condition(glued.prior, ag[1].evidence());
  append_table(table, family.space,
               {{"P1", &ag[0].credence()},
                {"P2", &ag[1].credence()},
                {"P", &glued.prior},
                {"P|{a,b,c}", &on_a1},
                {"P|{b,c,d}", &on_a2}});

  const ProbabilityMeasure expected = ProbabilityMeasure::from_labels(
      family.space, {{"a", pct(60)}, {"b", pct(8)}, {"c", pct(12)}, {"d", pct(20)}});
  checks.expect("glued prior is (60%, 8%, 12%, 20%)", glued.prior == expected, to_string(glued.prior));
  checks.expect("prior conditions back to P1 and P2",
                std::all_of(glued.verification.begin(), glued.verification.end(),
                            [](const auto& v) { return v.second; }));
  checks.expect_ok("grid oracle (K=25) finds exactly this prior", [&] {
    const auto found = brute_force_priors(ag, 25);
    return found.size() == 1 && found.front() == glued.prior;
  });
}

void demo_triangle(std::vector<std::string>& table, DemoChecks& checks, Json& data) {
  const CredenceFamily family = load({"triangle", std::string(kTriangle)});
  const auto& ag = family.agents;
  append_table(table, family.space,
               {{"P1", &ag[0].credence()}, {"P2", &ag[1].credence()}, {"P3", &ag[2].credence()}});

  const GcReport gc = check_gc(ag);
  data["gc"] = to_json(gc);
  checks.expect("GC holds for all three pairs", gc.holds() && gc.compatible_pairs.size() == 3);

  const EvidenceDiagnosis diagnosis = diagnose_evidence(ag);
  checks.expect("no evidence set: the triple intersection is empty",
                !diagnosis.evidence && diagnosis.empty_intersection());

  const SurvivorReport survivors = check_logical_consistency(ag);
  data["survivors"] = to_json(survivors);
  std::vector<std::pair<std::string, std::string>> eliminated;
  for (const auto& el : survivors.eliminated) eliminated.emplace_back(family.space.label(el.atom), el.agent_id);
  checks.expect("a is ruled out by P2, b by P3, and c by P1",
                survivors.survivors.empty() &&
                    eliminated == std::vector<std::pair<std::string, std::string>>{{"a", "2"}, {"b", "3"}, {"c", "1"}});

  checks.expect_ok("no grid prior for K = 1..60", [&] {
    for (std::uint64_t k = 1; k <= 60; ++k) {
      if (!brute_force_priors(ag, k).empty()) return false;
    }
    return true;
  });
}

void demo_countable(std::vector<std::string>& table, DemoChecks& checks, Json& data) {
  constexpr std::size_t kLimit = 20;
  const CountableLimit limit = demo_countable_limit(kLimit);
  Json masses = Json::array();
  for (std::size_t i = 0; i < limit.mass_at_first.size(); ++i) {
    table.push_back("n=" + std::to_string(i + 1) + "  P(1) = " + to_fraction_string(limit.mass_at_first[i]));
    masses.push_back(to_json(limit.mass_at_first[i]));
  }
  data["mass_at_first"] = std::move(masses);
  checks.expect("every prefix family is pairwise compatible",
                limit.prefix_compatible.size() == kLimit &&
                    std::all_of(limit.prefix_compatible.begin(), limit.prefix_compatible.end(),
                                [](bool b) { return b; }));
  bool exact = limit.mass_at_first.size() == kLimit;
  for (std::size_t i = 0; exact && i < kLimit; ++i) {
    exact = limit.mass_at_first[i] == make_rational(1, static_cast<long>(i + 1));
  }
  checks.expect("glued mass at atom 1 is exactly 1/n, shrinking to 0", exact);
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names = {"example-1-3", "example-1-4", "triangle", "countable"};
  return names;
}

CommandResult run_demo(std::string_view name) {
  const std::string fixture =
      (name == "countable" || std::find(demo_names().begin(), demo_names().end(), name) == demo_names().end())
          ? std::string(name)
          : fixture_document(name);
  Json report = make_report("demo " + std::string(name), fixture);
  std::vector<std::string> table;
  DemoChecks checks;
  Json data = Json::object();
  try {
    if (name == "example-1-3") {
      demo_example_1_3(table, checks, data);
    } else if (name == "example-1-4") {
      demo_example_1_4(table, checks, data);
    } else if (name == "triangle") {
      demo_triangle(table, checks, data);
    } else if (name == "countable") {
      demo_countable(table, checks, data);
    } else {
      throw Error(ErrorKind::UnknownDemo, "unknown demo '" + std::string(name) + "'");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::UnknownDemo) return input_error(std::move(report), e);
    checks.expect("demo ran to completion", false, e.what());
  }

  const bool passed = checks.all_passed();
  Json result;
  result["demo"] = std::string(name);
  result["table"] = table;
  result["checks"] = checks.take();
  result["data"] = std::move(data);
  if (passed) return finish(std::move(report), "ok", kExitOk, std::move(result));
  return finish(std::move(report), "law-failure", kExitViolation, std::move(result), "demo assertions failed");
}

CommandResult run_selftest(const TrialConfig& cfg, const std::optional<std::string>& law) {
  Json config;
  config["seed"] = cfg.seed;
  config["trials"] = cfg.trials;
  config["max_atoms"] = cfg.max_atoms;
  config["max_denominator"] = cfg.max_denominator;
  config["law"] = law ? Json(*law) : Json(nullptr);
  std::string command = "selftest --seed " + std::to_string(cfg.seed) + " --trials " + std::to_string(cfg.trials);
  if (law) command += " --law " + *law;
  Json report = make_report(command, config.dump());
  try {
    std::vector<LawReport> reports;
    if (law) {
      reports.push_back(run_law(*law, cfg));
    } else {
      reports = run_all_laws(cfg);
    }
    Json result;
    result["config"] = config;
    result["laws"] = Json::array();
    bool all = true;
    for (const auto& r : reports) {
      result["laws"].push_back(to_json(r));
      all = all && r.holds();
    }
    if (all) return finish(std::move(report), "ok", kExitOk, std::move(result));
    return finish(std::move(report), "law-failure", kExitViolation, std::move(result), "law failures recorded");
  } catch (const std::exception& e) {
    return input_error(std::move(report), e);
  }
}

}  // namespace priorglue
