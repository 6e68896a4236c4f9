// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fail.

#include "oracle.hpp"
#include "priorglue/fixtures.hpp"
#include "priorglue/sheaf_laws.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace priorglue;

namespace {

Rational r(long n, long d = 1) { return make_rational(n, d); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

template <typename Fn>
void criterion(int number, const std::string& title, Fn fn) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    fn(out);
  } catch (const std::exception& e) {
    out.expect(false, std::string("threw: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!out.pass) ++failures;
  std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << number << " " << title << " (" << std::fixed;
  std::cout.precision(2);
  std::cout << secs << " s)" << out.detail.str() << "\n";
}

oracle::Mass raw(const ProbabilityMeasure& p) {
  oracle::Mass out;
  for (std::size_t atom : p.domain().atoms()) out[p.space().label(atom)] = p.mass(atom);
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + PRIORGLUE_CLI + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string data(const std::string& name) { return std::string("\"") + PRIORGLUE_DATA_DIR + "/" + name + "\""; }

// A random prior Q on up to four atoms with masses k/D, a random cover of its
// support region, and the agents' conditionings of Q.
struct Instance {
  StateSpace space;
  ProbabilityMeasure prior;
  std::vector<AgentCredence> agents;
};

std::optional<Instance> random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> atom_count(1, 4);
  const std::size_t n = atom_count(rng);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::string(1, static_cast<char>('a' + i)));
  const StateSpace x = make_space(labels);

  const long d = std::uniform_int_distribution<long>(1, 12)(rng);
  std::vector<long> counts(n, 0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (long k = 0; k < d; ++k) ++counts[pick(rng)];
  std::vector<Rational> masses;
  for (long c : counts) masses.push_back(r(c, d));
  const ProbabilityMeasure prior(EventSet::full(x), masses);

  const std::size_t parts = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
  std::vector<boost::dynamic_bitset<>> cover(parts, boost::dynamic_bitset<>(n));
  for (std::size_t atom = 0; atom < n; ++atom) {
    const unsigned long mask = std::uniform_int_distribution<unsigned long>(1, (1ul << parts) - 1)(rng);
    for (std::size_t p = 0; p < parts; ++p) {
      if (mask & (1ul << p)) cover[p].set(atom);
    }
  }
  std::vector<AgentCredence> agents;
  for (std::size_t p = 0; p < parts; ++p) {
    const EventSet a(x, cover[p]);
    if (a.empty() || prior.probability(a) == 0) return std::nullopt;
    agents.emplace_back(std::to_string(p + 1), condition(prior, a));
  }
  return Instance{x, prior, std::move(agents)};
}

}  // namespace

int main() {
  criterion(1, "GC matrix of the three-agent example", [](Outcome& out) {
    const CredenceFamily f = fixtures::example_1_3();
    const GcReport gc = check_gc(f.agents);
    out.expect(gc.compatible_pairs == std::vector<AgentPair>{{"1", "2"}, {"1", "3"}}, "compatible pairs");
    out.expect(gc.conflicting_pairs.size() == 1, "one conflicting pair");
    if (gc.conflicting_pairs.size() != 1) return;
    const GcConflict& c = gc.conflicting_pairs[0];
    out.expect(c.agents == AgentPair{"2", "3"}, "conflict is (2,3)");
    out.expect(f.space.label(c.witness) == "c", "witness c");
    out.expect(c.first_value == r(3, 8), "agent 2 at c is 3/8");
    out.expect(c.second_value == r(1, 5), "agent 3 at c is 1/5");
  });

  criterion(2, "agents 1 and 2 conditioned on {b,c}", [](Outcome& out) {
    const CredenceFamily f = fixtures::example_1_3();
    const EventSet bc = event(f.space, {"b", "c"});
    for (std::size_t i = 0; i < 2; ++i) {
      const ProbabilityMeasure p = condition(f.agents[i].credence(), bc);
      out.expect(p.mass("b") == r(2, 5) && p.mass("c") == r(3, 5), "agent " + f.agents[i].id());
    }
  });

  criterion(3, "glued common prior of agents 1 and 2", [](Outcome& out) {
    const CredenceFamily f = fixtures::example_1_4();
    const GlueResult g = glue_probabilities(f.agents, event(f.space, {"b", "c"}));
    const ProbabilityMeasure expected = ProbabilityMeasure::from_labels(
        f.space, {{"a", r(3, 5)}, {"b", r(2, 25)}, {"c", r(3, 25)}, {"d", r(1, 5)}});
    out.expect(g.prior == expected, "prior is (3/5, 2/25, 3/25, 1/5), got " + to_string(g.prior));
    out.expect(verify_is_prior(g.prior, f.agents) == std::vector<bool>{true, true}, "verify_is_prior all true");
  });

  criterion(4, "triangle: GC holds, no evidence, no survivors, no prior", [](Outcome& out) {
    const CredenceFamily t = fixtures::triangle();
    const GcReport gc = check_gc(t.agents);
    out.expect(gc.holds() && gc.compatible_pairs.size() == 3, "all three pairs compatible");
    out.expect(!find_evidence(t.agents).has_value(), "no evidence set");
    const SurvivorReport s = check_logical_consistency(t.agents);
    out.expect(s.survivors.empty(), "zero survivors");
    std::vector<std::pair<std::string, std::string>> elim;
    for (const auto& e : s.eliminated) elim.emplace_back(t.space.label(e.atom), e.agent_id);
    out.expect(elim == std::vector<std::pair<std::string, std::string>>{{"a", "2"}, {"b", "3"}, {"c", "1"}},
               "a by 2, b by 3, c by 1");
    for (std::uint64_t k = 1; k <= 60; ++k) {
      if (!brute_force_priors(t.agents, k).empty()) out.expect(false, "prior found at K=" + std::to_string(k));
    }
  });

  criterion(5, "grid oracle agrees with gluing on random instances", [](Outcome& out) {
    std::mt19937_64 rng(0);
    std::size_t checked = 0;
    for (int attempt = 0; attempt < 2000 && checked < 150; ++attempt) {
      const auto inst = random_instance(rng);
      if (!inst) continue;
      const auto e = find_evidence(inst->agents);
      if (!e) continue;
      const GlueResult g = glue_probabilities(inst->agents, *e);
      std::uint64_t k = 1;
      for (std::size_t atom = 0; atom < inst->space.size(); ++atom) {
        k = std::lcm(k, inst->prior.mass(atom).get_den().get_ui());
      }
      const auto found = brute_force_priors(inst->agents, k);
      std::vector<oracle::Mass> raw_agents;
      for (const auto& agent : inst->agents) raw_agents.push_back(raw(agent.credence()));
      const auto labels = inst->space.labels();
      const auto expected =
          oracle::grid_priors(std::vector<std::string>(labels.begin(), labels.end()), raw_agents, static_cast<long>(k));
      const std::string where = "instance " + std::to_string(checked) + " " + to_string(inst->agents);
      out.expect(found.size() == 1, where + ": brute force count " + std::to_string(found.size()));
      out.expect(expected.size() == 1, where + ": reference count " + std::to_string(expected.size()));
      if (found.size() == 1) {
        out.expect(found[0] == g.prior, where + ": differs from glue");
        if (expected.size() == 1) out.expect(raw(found[0]) == expected[0], where + ": differs from reference");
      }
      ++checked;
    }
    out.expect(checked >= 100, "only " + std::to_string(checked) + " instances");
    if (!out.pass) return;

    TrialConfig cfg;
    const LawReport law = check_uniqueness_oracle(cfg);
    out.expect(law.holds(), "uniqueness law failed");
    out.expect(law.trials - law.skipped >= 100, "uniqueness law ran fewer than 100 instances");
  });

  criterion(6, "law suites at seed 0, 2000 trials", [](Outcome& out) {
    const TrialConfig cfg;  // seed 0, 2000 trials
    for (const char* name : {"functoriality", "glue_roundtrip", "order_invariance", "evidence_choice",
                             "finite_mass_bound"}) {
      const LawReport report = run_law(name, cfg);
      out.expect(report.trials == 2000, std::string(name) + " ran " + std::to_string(report.trials));
      out.expect(report.holds(), std::string(name) + ": " + std::to_string(report.failures.size()) + " failures");
    }
  });

  criterion(7, "countable family: prefix priors give atom 1 mass 1/n", [](Outcome& out) {
    const CountableLimit lim = demo_countable_limit(100);
    out.expect(lim.prefix_compatible.size() == 100 && lim.mass_at_first.size() == 100, "100 prefixes");
    for (bool ok : lim.prefix_compatible) out.expect(ok, "prefix incompatible");
    for (std::size_t n = 1; n <= lim.mass_at_first.size(); ++n) {
      if (lim.mass_at_first[n - 1] != r(1, static_cast<long>(n))) out.expect(false, "n=" + std::to_string(n));
    }
    out.expect(!lim.mass_at_first.empty() && lim.mass_at_first.back() == r(1, 100), "final value 1/100");
  });

  criterion(8, "CLI exit codes", [](Outcome& out) {
    for (const char* name : {"example-1-3", "example-1-4", "triangle", "countable"}) {
      const int code = run_cli(std::string("demo ") + name);
      out.expect(code == 0, std::string("demo ") + name + " exited " + std::to_string(code));
    }
    int code = run_cli("check-gc " + data("example-1-3.json"));
    out.expect(code == 1, "check-gc example-1-3 exited " + std::to_string(code));
    code = run_cli("glue " + data("triangle.json"));
    out.expect(code == 3, "glue triangle exited " + std::to_string(code));
    for (const char* cmd : {"check-gc", "glue", "survivors"}) {
      code = run_cli(std::string(cmd) + " " + data("malformed-mass.json"));
      out.expect(code == 2, std::string(cmd) + " malformed-mass exited " + std::to_string(code));
    }
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
