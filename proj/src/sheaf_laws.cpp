#include "priorglue/sheaf_laws.hpp"

#include "priorglue/fixtures.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

namespace priorglue {

void TrialConfig::validate() const {
  if (trials == 0) throw Error(ErrorKind::InvalidConfig, "trials must be at least 1");
  if (max_atoms == 0) throw Error(ErrorKind::InvalidConfig, "max_atoms must be at least 1");
  if (max_denominator == 0) throw Error(ErrorKind::InvalidConfig, "max_denominator must be at least 1");
}

namespace {

using Rng = std::mt19937_64;

// Each trial owns a generator derived from (seed, law, trial), so trials are
// independent of each other and of evaluation order.
Rng trial_rng(const TrialConfig& cfg, std::string_view law, std::size_t trial) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                                   static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  for (char ch : law) words.push_back(static_cast<unsigned char>(ch));
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

StateSpace random_space(Rng& rng, std::size_t max_atoms) {
  const std::size_t n = uniform(rng, 1, max_atoms);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
  return make_space(std::move(labels));
}

// One denominator D in [1, max_den] per measure; each atom gets k/D with k in [0, D].
struct WeightDraw {
  long den;
  Rational next(Rng& rng) const {
    return make_rational(static_cast<long>(uniform(rng, 0, static_cast<std::size_t>(den))), den);
  }
};

WeightDraw weight_draw(Rng& rng, std::size_t max_den) { return {static_cast<long>(uniform(rng, 1, max_den))}; }

Measure random_measure(Rng& rng, const EventSet& domain, std::size_t max_den, bool allow_infinity) {
  const WeightDraw draw = weight_draw(rng, max_den);
  std::vector<MassValue> masses;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (allow_infinity && uniform(rng, 0, 7) == 0) {
      masses.push_back(MassValue::infinity());
    } else {
      masses.emplace_back(draw.next(rng));
    }
  }
  return Measure(domain, std::move(masses));
}

ProbabilityMeasure random_probability(Rng& rng, const EventSet& domain, std::size_t max_den) {
  for (;;) {
    const WeightDraw draw = weight_draw(rng, max_den);
    std::vector<Rational> weights;
    Rational total = 0;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      weights.push_back(draw.next(rng));
      total += weights.back();
    }
    if (sgn(total) == 0) continue;
    for (auto& w : weights) w /= total;
    return ProbabilityMeasure(domain, std::move(weights));
  }
}

EventSet random_subset(Rng& rng, const EventSet& of) {
  boost::dynamic_bitset<> bits(of.space().size());
  for (std::size_t atom : of.atoms()) {
    if (uniform(rng, 0, 1) == 1) bits.set(atom);
  }
  return EventSet(of.space(), std::move(bits));
}

// Up to four parts; each atom joins a random nonempty subset of them.
std::vector<EventSet> random_cover(Rng& rng, const EventSet& whole) {
  const std::size_t parts = uniform(rng, 1, 4);
  std::vector<boost::dynamic_bitset<>> bits(parts, boost::dynamic_bitset<>(whole.space().size()));
  for (std::size_t atom : whole.atoms()) {
    const std::size_t mask = uniform(rng, 1, (std::size_t{1} << parts) - 1);
    for (std::size_t p = 0; p < parts; ++p) {
      if (mask & (std::size_t{1} << p)) bits[p].set(atom);
    }
  }
  std::vector<EventSet> out;
  for (auto& b : bits) out.emplace_back(whole.space(), std::move(b));
  return out;
}

std::vector<Measure> restrictions(const Measure& mu, std::span<const EventSet> cover) {
  std::vector<Measure> out;
  for (const auto& part : cover) out.push_back(restrict_measure(mu, part));
  return out;
}

std::vector<AgentCredence> conditionings(const ProbabilityMeasure& prior, std::span<const EventSet> cover) {
  std::vector<AgentCredence> out;
  for (std::size_t i = 0; i < cover.size(); ++i) {
    out.emplace_back("p" + std::to_string(i), condition(prior, cover[i]));
  }
  return out;
}

std::string describe_cover(std::span<const EventSet> cover) {
  std::string out = "[";
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (i > 0) out += " ";
    out += to_string(cover[i]);
  }
  return out + "]";
}

// A prior, a cover of its domain, and E = ∩ cover with Q(E) > 0.
struct PriorInstance {
  ProbabilityMeasure prior;
  std::vector<EventSet> cover;
  EventSet evidence;
  std::vector<AgentCredence> agents;
};

constexpr int kResampleLimit = 200;

std::optional<PriorInstance> random_prior_instance(Rng& rng, std::size_t max_atoms, std::size_t max_den) {
  for (int attempt = 0; attempt < kResampleLimit; ++attempt) {
    const StateSpace space = random_space(rng, max_atoms);
    const EventSet whole = EventSet::full(space);
    ProbabilityMeasure prior = random_probability(rng, whole, max_den);
    std::vector<EventSet> cover = random_cover(rng, whole);
    EventSet evidence = whole;
    for (const auto& part : cover) evidence = intersect(evidence, part);
    if (evidence.empty() || sgn(prior.probability(evidence)) == 0) continue;
    std::vector<AgentCredence> agents = conditionings(prior, cover);
    return PriorInstance{std::move(prior), std::move(cover), std::move(evidence), std::move(agents)};
  }
  return std::nullopt;
}

std::string describe(const PriorInstance& inst) {
  return "Q=" + to_string(inst.prior) + " cover=" + describe_cover(inst.cover) + " E=" + to_string(inst.evidence);
}

// Runs `body` once per trial. The body returns an empty string on success,
// "skip" to count a skipped trial, or a description of the counterexample.
inline constexpr std::string_view kSkip = "skip";

template <typename Body>
LawReport run_trials(std::string_view law, const TrialConfig& cfg, Body body) {
  cfg.validate();
  LawReport report{std::string(law), cfg.trials, 0, {}};
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    Rng rng = trial_rng(cfg, law, trial);
    std::string outcome;
    try {
      outcome = body(rng, trial);
    } catch (const std::exception& e) {
      outcome = std::string("unexpected error: ") + e.what();
    }
    if (outcome == kSkip) {
      ++report.skipped;
    } else if (!outcome.empty()) {
      report.failures.push_back("trial " + std::to_string(trial) + ": " + outcome);
    }
  }
  return report;
}

}  // namespace

LawReport check_functoriality(const TrialConfig& cfg) {
  return run_trials("functoriality", cfg, [&](Rng& rng, std::size_t) -> std::string {
    const StateSpace space = random_space(rng, cfg.max_atoms);
    const EventSet a = EventSet::full(space);
    const EventSet b = random_subset(rng, a);
    const EventSet c = random_subset(rng, b);

    const Measure mu = random_measure(rng, a, cfg.max_denominator, true);
    if (!(restrict_measure(restrict_measure(mu, b), c) == restrict_measure(mu, c))) {
      return "measure " + to_string(mu) + " B=" + to_string(b) + " C=" + to_string(c);
    }

    const ProbabilityMeasure p = random_probability(rng, a, cfg.max_denominator);
    if (sgn(p.probability(c)) == 0) return std::string(kSkip);
    if (!(condition(condition(p, b), c) == condition(p, c))) {
      return "probability " + to_string(p) + " B=" + to_string(b) + " C=" + to_string(c);
    }
    return {};
  });
}

LawReport check_glue_roundtrip(const TrialConfig& cfg) {
  return run_trials("glue_roundtrip", cfg, [&](Rng& rng, std::size_t trial) -> std::string {
    if (trial == 0) {
      const CredenceFamily family = fixtures::example_1_4();
      const EventSet e = event(family.space, {"b", "c"});
      const ProbabilityMeasure expected = ProbabilityMeasure::from_labels(
          family.space, {{"a", make_rational(3, 5)}, {"b", make_rational(2, 25)}, {"c", make_rational(3, 25)},
                         {"d", make_rational(1, 5)}});
      const GlueResult result = glue_probabilities(family.agents, e);
      if (!(result.prior == expected)) return "fixed instance glued to " + to_string(result.prior);
      return {};
    }

    // Measure level: restrictions of mu to a cover glue back to mu.
    const StateSpace space = random_space(rng, cfg.max_atoms);
    const EventSet whole = EventSet::full(space);
    const Measure mu = random_measure(rng, whole, cfg.max_denominator, true);
    const std::vector<EventSet> cover = random_cover(rng, whole);
    const std::vector<Measure> parts = restrictions(mu, cover);
    const Measure glued = glue_measures(space, parts);
    if (!(glued == mu)) return "measure " + to_string(mu) + " cover=" + describe_cover(cover);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (!(restrict_measure(glued, cover[i]) == parts[i])) {
        return "measure " + to_string(mu) + " part " + std::to_string(i) + " not recovered";
      }
    }

    // Probability level.
    const auto inst = random_prior_instance(rng, cfg.max_atoms, cfg.max_denominator);
    if (!inst) return std::string(kSkip);
    const GlueResult result = glue_probabilities(inst->agents, inst->evidence);
    if (!(result.prior == inst->prior)) return describe(*inst) + " glued to " + to_string(result.prior);
    for (const auto& [id, ok] : result.verification) {
      if (!ok) return describe(*inst) + " failed verification for " + id;
    }
    return {};
  });
}

LawReport check_order_invariance(const TrialConfig& cfg) {
  return run_trials("order_invariance", cfg, [&](Rng& rng, std::size_t) -> std::string {
    const StateSpace space = random_space(rng, cfg.max_atoms);
    const EventSet whole = EventSet::full(space);
    const Measure mu = random_measure(rng, whole, cfg.max_denominator, true);
    const std::vector<EventSet> cover = random_cover(rng, whole);
    std::vector<Measure> parts = restrictions(mu, cover);
    const Measure forward = glue_measures(space, parts);
    std::shuffle(parts.begin(), parts.end(), rng);
    if (!(glue_measures(space, parts) == forward)) {
      return "measure " + to_string(mu) + " cover=" + describe_cover(cover);
    }

    auto inst = random_prior_instance(rng, cfg.max_atoms, cfg.max_denominator);
    if (!inst) return std::string(kSkip);
    const ProbabilityMeasure prior = glue_probabilities(inst->agents, inst->evidence).prior;
    std::shuffle(inst->agents.begin(), inst->agents.end(), rng);
    if (!(glue_probabilities(inst->agents, inst->evidence).prior == prior)) {
      return describe(*inst) + " depends on agent order";
    }
    return {};
  });
}

LawReport check_evidence_choice_invariance(const TrialConfig& cfg) {
  return run_trials("evidence_choice", cfg, [&](Rng& rng, std::size_t) -> std::string {
    const auto inst = random_prior_instance(rng, cfg.max_atoms, cfg.max_denominator);
    if (!inst) return std::string(kSkip);
    std::optional<EventSet> other;
    for (int attempt = 0; attempt < kResampleLimit && !other; ++attempt) {
      EventSet candidate = random_subset(rng, inst->evidence);
      if (sgn(inst->prior.probability(candidate)) > 0) other = std::move(candidate);
    }
    if (!other) return std::string(kSkip);
    const ProbabilityMeasure p = glue_probabilities(inst->agents, inst->evidence).prior;
    const ProbabilityMeasure q = glue_probabilities(inst->agents, *other).prior;
    if (!(p == q)) return describe(*inst) + " E'=" + to_string(*other);
    return {};
  });
}

LawReport check_finite_mass_bound(const TrialConfig& cfg) {
  return run_trials("finite_mass_bound", cfg, [&](Rng& rng, std::size_t) -> std::string {
    const StateSpace space = random_space(rng, cfg.max_atoms);
    const EventSet whole = EventSet::full(space);
    const Measure mu = random_measure(rng, whole, cfg.max_denominator, false);
    const std::vector<EventSet> cover = random_cover(rng, whole);
    const std::vector<Measure> parts = restrictions(mu, cover);
    const Measure glued = glue_measures(space, parts);

    MassValue bound;
    for (const auto& part : parts) bound += total_mass(part);
    bool null_overlaps = true;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      for (std::size_t j = i + 1; j < cover.size(); ++j) {
        if (!measure_of(glued, intersect(cover[i], cover[j])).is_zero()) null_overlaps = false;
      }
    }
    const MassValue total = total_mass(glued);
    const std::string where = "measure " + to_string(mu) + " cover=" + describe_cover(cover);
    if (!is_finite(glued)) return where + " glued to an infinite measure";
    if (total > bound) return where + " exceeds the bound";
    if ((total == bound) != null_overlaps) return where + " equality case mismatch";
    return {};
  });
}

namespace {

std::vector<AgentCredence> random_family(Rng& rng, const TrialConfig& cfg) {
  const StateSpace space = random_space(rng, cfg.max_atoms);
  const EventSet whole = EventSet::full(space);
  const std::size_t n = uniform(rng, 1, 4);
  std::vector<AgentCredence> agents;
  // Half the time conditionings of one prior (GC holds), otherwise unrelated credences.
  const bool coherent = uniform(rng, 0, 1) == 0;
  const ProbabilityMeasure prior = random_probability(rng, whole, cfg.max_denominator);
  for (std::size_t i = 0; i < n; ++i) {
    EventSet evidence = random_subset(rng, whole);
    if (evidence.empty()) evidence = EventSet::singleton(space, uniform(rng, 0, space.size() - 1));
    if (coherent && sgn(prior.probability(evidence)) > 0) {
      agents.emplace_back("g" + std::to_string(i), condition(prior, evidence));
    } else {
      agents.emplace_back("g" + std::to_string(i), random_probability(rng, evidence, cfg.max_denominator));
    }
  }
  return agents;
}

bool same_report(const GcReport& a, const GcReport& b) {
  if (a.compatible_pairs != b.compatible_pairs) return false;
  if (a.conflicting_pairs.size() != b.conflicting_pairs.size()) return false;
  for (std::size_t i = 0; i < a.conflicting_pairs.size(); ++i) {
    const GcConflict& x = a.conflicting_pairs[i];
    const GcConflict& y = b.conflicting_pairs[i];
    if (!(x.agents == y.agents) || !(x.overlap == y.overlap) || x.kind != y.kind || x.witness != y.witness ||
        x.first_value != y.first_value || x.second_value != y.second_value) {
      return false;
    }
  }
  return true;
}

}  // namespace

LawReport check_gc_symmetry(const TrialConfig& cfg) {
  return run_trials("gc_symmetry", cfg, [&](Rng& rng, std::size_t) -> std::string {
    std::vector<AgentCredence> agents = random_family(rng, cfg);
    const GcReport base = check_gc(agents);
    std::shuffle(agents.begin(), agents.end(), rng);
    if (!same_report(base, check_gc(agents))) return "family " + to_string(agents);
    return {};
  });
}

LawReport check_uniqueness_oracle(const TrialConfig& cfg) {
  const std::size_t atoms = std::min<std::size_t>(4, cfg.max_atoms);
  return run_trials("uniqueness_oracle", cfg, [&](Rng& rng, std::size_t) -> std::string {
    const auto inst = random_prior_instance(rng, atoms, cfg.max_denominator);
    if (!inst) return std::string(kSkip);
    // The generator knows Q, so its denominators give a grid containing it.
    mpz_class grid = 1;
    for (std::size_t atom : inst->prior.domain().atoms()) {
      mpz_lcm(grid.get_mpz_t(), grid.get_mpz_t(), inst->prior.mass(atom).get_den_mpz_t());
    }
    const auto found = brute_force_priors(inst->agents, grid.get_ui());
    const ProbabilityMeasure glued = glue_probabilities(inst->agents, inst->evidence).prior;
    if (found.size() != 1) {
      return describe(*inst) + " K=" + grid.get_str() + " found " + std::to_string(found.size()) + " priors";
    }
    if (!(found.front() == glued) || !(glued == inst->prior)) {
      return describe(*inst) + " K=" + grid.get_str() + " oracle " + to_string(found.front()) + " vs glue " +
             to_string(glued);
    }
    return {};
  });
}

LawReport check_evidence_survivor_link(const TrialConfig& cfg) {
  return run_trials("evidence_survivor_link", cfg, [&](Rng& rng, std::size_t) -> std::string {
    const std::vector<AgentCredence> agents = random_family(rng, cfg);
    const std::optional<EventSet> evidence = find_evidence(agents);
    const SurvivorReport survivors = check_logical_consistency(agents);
    // A survivor x makes {x} a valid evidence set, so the maximal one exists too.
    if (survivors.consistent() && !evidence) {
      return "family " + to_string(agents) + " has survivors " + to_string(survivors.survivors) + " but no evidence";
    }
    if (evidence && check_gc(agents).holds() && intersect(*evidence, survivors.survivors).empty()) {
      return "family " + to_string(agents) + " satisfies GC with evidence " + to_string(*evidence) +
             " but no survivor in it";
    }
    return {};
  });
}

const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names = {
      "functoriality", "glue_roundtrip", "order_invariance",      "evidence_choice",
      "finite_mass_bound", "gc_symmetry", "uniqueness_oracle", "evidence_survivor_link",
  };
  return names;
}

LawReport run_law(std::string_view name, const TrialConfig& cfg) {
  if (name == "functoriality") return check_functoriality(cfg);
  if (name == "glue_roundtrip") return check_glue_roundtrip(cfg);
  if (name == "order_invariance") return check_order_invariance(cfg);
  if (name == "evidence_choice") return check_evidence_choice_invariance(cfg);
  if (name == "finite_mass_bound") return check_finite_mass_bound(cfg);
  if (name == "gc_symmetry") return check_gc_symmetry(cfg);
  if (name == "uniqueness_oracle") return check_uniqueness_oracle(cfg);
  if (name == "evidence_survivor_link") return check_evidence_survivor_link(cfg);
  throw Error(ErrorKind::InvalidConfig, "unknown law '" + std::string(name) + "'");
}

std::vector<LawReport> run_all_laws(const TrialConfig& cfg) {
  std::vector<LawReport> out;
  for (const auto& name : law_names()) out.push_back(run_law(name, cfg));
  return out;
}

namespace {

// C(n + k - 1, k - 1), saturating at limit + 1.
std::uint64_t composition_count(std::uint64_t total, std::uint64_t parts, std::uint64_t limit) {
  // C(total + parts - 1, parts - 1) built up as a running product of exact binomials.
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i < parts; ++i) {
    acc = acc * (total + i) / i;
    if (acc > limit) return limit + 1;
  }
  return static_cast<std::uint64_t>(acc);
}

struct FastTerm {
  std::size_t slot;  // index into the enumerated mass vector
  std::int64_t num;
  std::int64_t den;
};

struct FastAgent {
  std::vector<FastTerm> terms;
};

bool fits_int64(const mpz_class& z) { return z.fits_slong_p(); }

}  // namespace

std::vector<ProbabilityMeasure> brute_force_priors(std::span<const AgentCredence> agents, std::uint64_t grid) {
  validate_family(agents);
  if (grid == 0) throw Error(ErrorKind::InvalidConfig, "grid must be at least 1");
  const EventSet domain = evidence_union(agents);
  const std::vector<std::size_t> atoms = domain.atoms();
  const std::size_t n = atoms.size();
  if (composition_count(grid, n, kMaxBruteForceCandidates) > kMaxBruteForceCandidates) {
    throw Error(ErrorKind::TooLarge, "grid " + std::to_string(grid) + " over " + std::to_string(n) +
                                         " atoms exceeds " + std::to_string(kMaxBruteForceCandidates) +
                                         " candidates");
  }

  // Exact integer pre-filter: with masses c/grid, conditioning on A_i gives
  // c_x / S_i where S_i = sum of c over A_i, so P_i(x) = p/q iff c_x q = p S_i.
  std::vector<std::size_t> slot_of(domain.space().size());
  for (std::size_t k = 0; k < n; ++k) slot_of[atoms[k]] = k;
  bool fast = grid <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max());
  std::vector<FastAgent> fast_agents;
  for (const auto& agent : agents) {
    FastAgent fa;
    for (std::size_t atom : agent.evidence().atoms()) {
      const Rational& m = agent.credence().mass(atom);
      if (!fits_int64(m.get_num()) || !fits_int64(m.get_den())) fast = false;
      if (fast) fa.terms.push_back({slot_of[atom], m.get_num().get_si(), m.get_den().get_si()});
    }
    fast_agents.push_back(std::move(fa));
  }

  std::vector<ProbabilityMeasure> found;
  std::vector<std::uint64_t> counts(n, 0);
  counts[0] = grid;
  for (;;) {
    bool candidate = true;
    if (fast) {
      for (const auto& fa : fast_agents) {
        unsigned __int128 sum = 0;
        for (const auto& t : fa.terms) sum += counts[t.slot];
        if (sum == 0) {
          candidate = false;
          break;
        }
        for (const auto& t : fa.terms) {
          const __int128 lhs = static_cast<__int128>(counts[t.slot]) * t.den;
          const __int128 rhs = static_cast<__int128>(t.num) * static_cast<__int128>(sum);
          if (lhs != rhs) {
            candidate = false;
            break;
          }
        }
        if (!candidate) break;
      }
    }
    if (candidate) {
      std::vector<Rational> masses;
      for (std::uint64_t c : counts) {
        Rational q(mpz_class(std::to_string(c), 10), mpz_class(std::to_string(grid), 10));
        q.canonicalize();
        masses.push_back(std::move(q));
      }
      ProbabilityMeasure prior(domain, std::move(masses));
      const std::vector<bool> checks = verify_is_prior(prior, agents);
      if (std::all_of(checks.begin(), checks.end(), [](bool b) { return b; })) found.push_back(std::move(prior));
    }

    // Next weak composition in reverse-lexicographic order.
    if (counts[n - 1] == grid) break;
    std::size_t i = n - 1;
    while (i-- > 0) {
      if (counts[i] > 0) break;
    }
    const std::uint64_t tail = counts[n - 1];
    counts[n - 1] = 0;
    --counts[i];
    counts[i + 1] = tail + 1;
  }
  return found;
}

CountableLimit demo_countable_limit(std::size_t limit) {
  if (limit == 0) throw Error(ErrorKind::InvalidConfig, "limit must be at least 1");
  std::vector<std::string> labels;
  for (std::size_t k = 1; k <= limit; ++k) labels.push_back(std::to_string(k));
  const StateSpace space = make_space(std::move(labels));

  std::vector<AgentCredence> agents;
  for (std::size_t k = 1; k <= limit; ++k) {
    boost::dynamic_bitset<> bits(limit);
    for (std::size_t i = 0; i < k; ++i) bits.set(i);
    std::vector<Rational> masses(k, make_rational(1, static_cast<long>(k)));
    agents.emplace_back("P" + std::to_string(k), ProbabilityMeasure(EventSet(space, std::move(bits)), masses));
  }

  const EventSet first = EventSet::singleton(space, 0);
  CountableLimit out;
  for (std::size_t n = 1; n <= limit; ++n) {
    const std::span<const AgentCredence> prefix(agents.data(), n);
    const bool compatible = check_gc(prefix).holds();
    out.prefix_compatible.push_back(compatible);
    if (!compatible) break;
    out.mass_at_first.push_back(glue_probabilities(prefix, first).prior.mass(0));
  }
  return out;
}

}  // namespace priorglue
