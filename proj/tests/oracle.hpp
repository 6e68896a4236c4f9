#pragma once

// Reference computations for tests. They work on plain label -> value maps and
// share no code with the library's measure, probability, or enumeration paths.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Mass = std::map<std::string, mpq_class>;

inline mpq_class q(long num, long den = 1) {
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

inline mpq_class sum(const Mass& m, const std::set<std::string>& on) {
  mpq_class total = 0;
  for (const auto& label : on) total += m.at(label);
  return total;
}

inline mpq_class total(const Mass& m) {
  mpq_class t = 0;
  for (const auto& [label, value] : m) t += value;
  return t;
}

inline Mass project(const Mass& m, const std::set<std::string>& on) {
  Mass out;
  for (const auto& label : on) out[label] = m.at(label);
  return out;
}

inline Mass condition(const Mass& m, const std::set<std::string>& on) {
  const mpq_class z = sum(m, on);
  Mass out;
  for (const auto& label : on) out[label] = m.at(label) / z;
  return out;
}

/// sum_i mu_i(B ∩ A_i \ ∪_{j<i} A_j) for every singleton B, with set arithmetic on labels.
inline Mass glue(const std::vector<Mass>& family) {
  Mass out;
  std::set<std::string> seen;
  for (const auto& mu : family) {
    for (const auto& [label, value] : mu) {
      if (seen.insert(label).second) out[label] = value;
    }
  }
  return out;
}

/// Every prior on `atoms` with masses c/k that conditions to each agent exactly.
inline std::vector<Mass> grid_priors(const std::vector<std::string>& atoms, const std::vector<Mass>& agents,
                                     long k) {
  std::vector<Mass> found;
  std::vector<long> counts(atoms.size(), 0);
  auto check = [&] {
    Mass prior;
    for (std::size_t i = 0; i < atoms.size(); ++i) prior[atoms[i]] = q(counts[i], k);
    for (const auto& agent : agents) {
      std::set<std::string> domain;
      for (const auto& [label, v] : agent) domain.insert(label);
      if (sum(prior, domain) == 0) return;
      if (condition(prior, domain) != agent) return;
    }
    found.push_back(prior);
  };
  // Recursive composition of k into atoms.size() parts.
  auto rec = [&](auto&& self, std::size_t i, long left) -> void {
    if (i + 1 == atoms.size()) {
      counts[i] = left;
      check();
      return;
    }
    for (long c = 0; c <= left; ++c) {
      counts[i] = c;
      self(self, i + 1, left - c);
    }
  };
  if (!atoms.empty()) rec(rec, 0, k);
  return found;
}

}  // namespace oracle
