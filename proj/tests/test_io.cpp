#include <doctest.h>

#include "subduce/io.hpp"

using namespace subduce;

TEST_CASE("significant-digit rounding") {
  CHECK(round_significant(0.0) == 0.0);
  CHECK(round_significant(-0.0) == 0.0);
  CHECK(!std::signbit(round_significant(-0.0)));
  CHECK(round_significant(1.0 / 3.0) == doctest::Approx(0.333333333333).epsilon(1e-13));
  // idempotent
  double x = 0.8660254037844386;
  CHECK(round_significant(round_significant(x)) == round_significant(x));
  CHECK(format_significant(2.5) == "2.5");
  CHECK(format_significant(1e-30) == "1e-30");
}

TEST_CASE("partition and tableau json round trips") {
  for (const Partition& shape : partitions_of(5)) {
    CHECK(partition_from_json(to_json(shape)) == shape);
    for (const StandardTableau& m : enumerate_syt(shape))
      CHECK(tableau_from_json(to_json(m)) == m);
  }
  for (const SkewFilling& t :
       enumerate_skew_fillings(Partition({3, 2, 1}), Partition({2, 1})))
    CHECK(skew_from_json(to_json(t)) == t);
}

TEST_CASE("tableau json carries the documented field layout") {
  StandardTableau m = StandardTableau::from_rows({{1, 3}, {2}});
  nlohmann::json j = to_json(m);
  CHECK(j["shape"] == nlohmann::json({2, 1}));
  CHECK(j["rows"] == nlohmann::json({{1, 3}, {2}}));
  CHECK_THROWS_AS(tableau_from_json(nlohmann::json{{"shape", {3}}, {"rows", {{1, 3}, {2}}}}),
                  std::invalid_argument);
}

TEST_CASE("solution json round trip re-verifies identically") {
  SubductionProblem p(Partition({3, 2, 1}), Partition({2, 1}), Partition({2, 1}));
  SDCSolution sol = solve_subduction(p, QParam(1.5), 1e-10);
  std::string text = canonical_solution_json(sol);

  SDCSolution parsed = solution_from_json(nlohmann::json::parse(text));
  CHECK(parsed.multiplicity == sol.multiplicity);
  CHECK(parsed.q == sol.q);
  // serializing the parsed solution reproduces the bytes
  CHECK(canonical_solution_json(parsed) == text);

  VerificationReport fresh = verify_solution(sol, QParam(1.5), 1e-8);
  VerificationReport reparsed = verify_solution(parsed, QParam(1.5), 1e-8);
  CHECK(fresh.pass());
  CHECK(reparsed.pass());

  // rounded coefficients sit within 1e-11 of the full-precision ones
  CHECK((parsed.coefficients - sol.coefficients).cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("empty solutions serialize and parse") {
  SubductionProblem p(Partition({4}), Partition({2}), Partition({1, 1}));
  SDCSolution none = solve_subduction(p, QParam(1.0), 1e-10);
  CHECK(none.multiplicity == 0);
  nlohmann::json j = to_json(none);
  CHECK(j["coefficients"].empty());
  SDCSolution parsed = solution_from_json(j);
  CHECK(parsed.multiplicity == 0);
}

TEST_CASE("mode names") {
  CHECK(to_string(SystemMode::Reduced) == "reduced");
  CHECK(mode_from_string("full") == SystemMode::Full);
  CHECK_THROWS_AS(mode_from_string("other"), std::invalid_argument);
}

TEST_CASE("report json shape") {
  SubductionProblem p(Partition({4, 2}), Partition({2, 1}), Partition({2, 1}));
  SDCSolution sol = solve_subduction(p, QParam(1.0), 1e-10);
  nlohmann::json j = to_json(verify_solution(sol, QParam(1.0), 1e-8));
  CHECK(j["pass"].get<bool>());
  CHECK(j.contains("residual_system"));
  CHECK(j.contains("residual_ortho_row"));
  nlohmann::json h = to_json(verify_hecke_relations(Partition({2, 1}), QParam(1.0), 1e-10));
  CHECK(h["pass"].get<bool>());
}
