#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "priorglue/commands.hpp"
#include "priorglue/fixtures.hpp"
#include "priorglue/io.hpp"

#include <random>

using namespace priorglue;

namespace {

Rational r(long n, long d = 1) { return make_rational(n, d); }

std::size_t bad_position(std::string_view text) {
  try {
    parse_mass(text);
  } catch (const MalformedMassError& e) {
    CHECK(e.kind() == ErrorKind::MalformedMass);
    return e.position();
  }
  FAIL("accepted " << text);
  return 0;
}

ErrorKind load_error(const std::string& text) {
  try {
    load_family(parse_credence_file(text));
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("accepted " << text);
  return ErrorKind::MalformedInput;
}

bool same_family(const CredenceFamily& a, const CredenceFamily& b) {
  const auto la = a.space.labels();
  const auto lb = b.space.labels();
  if (!std::equal(la.begin(), la.end(), lb.begin(), lb.end())) return false;
  if (a.agents.size() != b.agents.size()) return false;
  for (std::size_t i = 0; i < a.agents.size(); ++i) {
    const auto& x = a.agents[i];
    const auto& y = b.agents[i];
    if (x.id() != y.id() || x.evidence().labels() != y.evidence().labels()) return false;
    for (std::size_t atom : x.evidence().atoms()) {
      if (x.credence().mass(atom) != y.credence().mass(atom)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("parse_mass accepts fractions, decimals and percentages") {
  CHECK(parse_mass("75%") == r(3, 4));
  CHECK(parse_mass("0.12") == r(3, 25));
  CHECK(parse_mass("1/3") == r(1, 3));
  CHECK(parse_mass("37.5%") == r(3, 8));
  CHECK(parse_mass("2/4") == r(1, 2));
  CHECK(parse_mass("1") == r(1));
  CHECK(parse_mass("0") == r(0));
  CHECK(parse_mass(".5") == r(1, 2));
  CHECK(parse_mass("1.") == r(1));
  CHECK(parse_mass("  0.25 ") == r(1, 4));
  CHECK(parse_mass("0.49") == r(49, 100));
  CHECK(parse_mass("0.08") == r(2, 25));
  CHECK(parse_mass("08%") == r(2, 25));
  CHECK(parse_mass("09/10") == r(9, 10));
  CHECK(parse_mass("0.333333333333333333333333") ==
        Rational(mpz_class("333333333333333333333333", 10), mpz_class("1000000000000000000000000", 10)));
}

TEST_CASE("parse_mass rejects with the offending position") {
  CHECK(bad_position("fifty%") == 0);
  CHECK(bad_position("") == 0);
  CHECK(bad_position("   ") == 3);
  CHECK(bad_position("1/0") == 2);
  CHECK(bad_position("1/") == 2);
  CHECK(bad_position("/3") == 0);
  CHECK(bad_position("1.2.3") == 3);
  CHECK(bad_position("-0.5") == 0);
  CHECK(bad_position("50%%") == 3);
  CHECK(bad_position("1e-3") == 1);
  CHECK(bad_position("1/3%") == 3);
  CHECK(bad_position(".") == 0);
}

TEST_CASE("credence documents load into families") {
  const CredenceFamily f = load_family(parse_credence_file(fixture_document("example-1-3")));
  CHECK(same_family(f, fixtures::example_1_3()));
  CHECK(same_family(load_family(parse_credence_file(fixture_document("example-1-4"))), fixtures::example_1_4()));
  CHECK(same_family(load_family(parse_credence_file(fixture_document("triangle"))), fixtures::triangle()));
}

TEST_CASE("bundled data files match the fixtures") {
  const std::string dir = PRIORGLUE_DATA_DIR;
  CHECK(same_family(load_family(parse_credence_file(read_input(dir + "/example-1-3.json").text)),
                    fixtures::example_1_3()));
  CHECK(same_family(load_family(parse_credence_file(read_input(dir + "/example-1-4.json").text)),
                    fixtures::example_1_4()));
  CHECK(same_family(load_family(parse_credence_file(read_input(dir + "/triangle.json").text)), fixtures::triangle()));
  CHECK_THROWS_AS(read_input(dir + "/does-not-exist.json"), Error);
}

TEST_CASE("structural errors in credence documents") {
  CHECK(load_error("not json") == ErrorKind::MalformedInput);
  CHECK(load_error("[]") == ErrorKind::MalformedInput);
  CHECK(load_error(R"({"agents": []})") == ErrorKind::MalformedInput);
  CHECK(load_error(R"({"atoms": ["a"]})") == ErrorKind::MalformedInput);
  CHECK(load_error(R"({"atoms": ["a", 1], "agents": []})") == ErrorKind::MalformedInput);
  CHECK(load_error(R"({"atoms": ["a"], "agents": [{"evidence": ["a"], "credence": {"a": "1"}}]})") ==
        ErrorKind::MalformedInput);
  CHECK(load_error(R"({"atoms": ["a"], "agents": [{"id": "1", "evidence": ["a"], "credence": {"a": 1}}]})") ==
        ErrorKind::MalformedInput);
  CHECK(load_error(R"({"atoms": ["a"], "agents": [{"id": "1", "evidence": ["a"]}]})") == ErrorKind::MalformedInput);
}

TEST_CASE("semantic errors in credence documents") {
  CHECK(load_error(R"({"atoms": ["a", "a"], "agents": []})") == ErrorKind::DuplicateLabel);
  CHECK(load_error(R"({"atoms": ["a"], "agents": []})") == ErrorKind::EmptyFamily);
  CHECK(load_error(R"({"atoms": ["a"], "agents": [{"id": "1", "evidence": ["z"], "credence": {"z": "1"}}]})") ==
        ErrorKind::UnknownAtom);
  CHECK(load_error(R"({"atoms": ["a", "b"], "agents": [{"id": "1", "evidence": ["a"], "credence": {"b": "1"}}]})") ==
        ErrorKind::MalformedInput);
  CHECK(load_error(R"({"atoms": ["a", "b"], "agents": [{"id": "1", "evidence": ["a", "b"], "credence": {"a": "1"}}]})") ==
        ErrorKind::MalformedInput);
  CHECK(load_error(R"({"atoms": ["a", "b"], "agents": [{"id": "1", "evidence": ["a", "b"],
                       "credence": {"a": "0.49", "b": "0.5"}}]})") == ErrorKind::MalformedInput);
  CHECK(load_error(R"({"atoms": ["a"], "agents": [{"id": "1", "evidence": ["a"], "credence": {"a": "x"}}]})") ==
        ErrorKind::MalformedMass);
  CHECK(load_error(R"({"atoms": ["a"], "agents": [{"id": "1", "evidence": ["a"], "credence": {"a": "1"}},
                                                 {"id": "1", "evidence": ["a"], "credence": {"a": "1"}}]})") ==
        ErrorKind::DuplicateAgent);
}

TEST_CASE("serialize then parse returns the same family") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> weight(0, 7);
  std::uniform_int_distribution<std::size_t> atoms(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> labels;
    const std::size_t n = atoms(rng);
    for (std::size_t i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
    CredenceFamily family{make_space(labels), {}};
    const std::size_t agents = atoms(rng);
    for (std::size_t k = 0; k < agents; ++k) {
      boost::dynamic_bitset<> bits(n, rng());
      bits.set(k % n);
      const EventSet domain(family.space, bits);
      std::vector<Rational> w;
      Rational total = 0;
      for (std::size_t i = 0; i < domain.size(); ++i) {
        w.emplace_back(weight(rng));
        total += w.back();
      }
      if (total == 0) {
        w.front() = 1;
        total = 1;
      }
      for (auto& v : w) v /= total;
      family.agents.emplace_back(std::to_string(k + 1), ProbabilityMeasure(domain, w));
    }
    const std::string text = serialize_credence_file(to_credence_file(family));
    CHECK(same_family(load_family(parse_credence_file(text)), family));
  }
}

TEST_CASE("sha256 digests") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("json fragments") {
  const Json q = to_json(r(3, 8));
  CHECK(q["fraction"] == "3/8");
  CHECK(q["approx_percent"].get<double>() == doctest::Approx(37.5));
  CHECK(to_json(r(1, 3))["approx_percent"].get<double>() == doctest::Approx(33.3333));

  const CredenceFamily f = fixtures::example_1_4();
  const Json e = to_json(event(f.space, {"b", "c"}));
  CHECK(e == Json::array({"b", "c"}));

  const Json p = to_json(f.agents[0].credence());
  REQUIRE(p.size() == 3);
  CHECK(p[0]["atom"] == "a");
  CHECK(p[0]["fraction"] == "3/4");
}
