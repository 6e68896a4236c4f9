#include "priorglue/fixtures.hpp"

namespace priorglue::fixtures {

namespace {

Rational pct(long p) { return make_rational(p, 100); }

}  // namespace

CredenceFamily example_1_3() {
  StateSpace x = make_space({"a", "b", "c", "d", "e"});
  std::vector<AgentCredence> agents;
  agents.emplace_back("1", ProbabilityMeasure::from_labels(x, {{"a", pct(75)}, {"b", pct(10)}, {"c", pct(15)}}));
  agents.emplace_back("2", ProbabilityMeasure::from_labels(x, {{"b", pct(20)}, {"c", pct(30)}, {"d", pct(50)}}));
  agents.emplace_back("3", ProbabilityMeasure::from_labels(x, {{"c", pct(10)}, {"d", pct(40)}, {"e", pct(50)}}));
  return {x, std::move(agents)};
}

CredenceFamily example_1_4() {
  CredenceFamily family = example_1_3();
  family.agents.pop_back();
  return family;
}

CredenceFamily triangle() {
  StateSpace x = make_space({"a", "b", "c"});
  std::vector<AgentCredence> agents;
  agents.emplace_back("1", ProbabilityMeasure::from_labels(x, {{"a", pct(40)}, {"b", pct(60)}}));
  agents.emplace_back("2", ProbabilityMeasure::from_labels(x, {{"b", pct(40)}, {"c", pct(60)}}));
  agents.emplace_back("3", ProbabilityMeasure::from_labels(x, {{"a", pct(60)}, {"c", pct(40)}}));
  return {x, std::move(agents)};
}

}  // namespace priorglue::fixtures
