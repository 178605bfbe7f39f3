#include "subduce/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace subduce {

double round_significant(double x, int digits) {
  if (x == 0.0) return 0.0;  // normalizes -0 as well
  if (!std::isfinite(x)) return x;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string format_significant(double x, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x == 0.0 ? 0.0 : x);
  return buf;
}

std::string to_string(SystemMode mode) {
  return mode == SystemMode::Full ? "full" : "reduced";
}

SystemMode mode_from_string(const std::string& text) {
  if (text == "full") return SystemMode::Full;
  if (text == "reduced") return SystemMode::Reduced;
  throw std::invalid_argument("unknown mode '" + text + "'");
}

nlohmann::json to_json(const Partition& p) {
  return nlohmann::json(p.parts());
}

Partition partition_from_json(const nlohmann::json& j) {
  return Partition(j.get<std::vector<int>>());
}

nlohmann::json to_json(const StandardTableau& m) {
  return nlohmann::json{{"shape", to_json(m.shape())}, {"rows", m.rows()}};
}

StandardTableau tableau_from_json(const nlohmann::json& j) {
  StandardTableau m =
      StandardTableau::from_rows(j.at("rows").get<std::vector<std::vector<int>>>());
  if (j.contains("shape") && partition_from_json(j.at("shape")) != m.shape())
    throw std::invalid_argument("tableau shape field disagrees with its rows");
  return m;
}

nlohmann::json to_json(const SkewFilling& t) {
  return nlohmann::json{{"outer", to_json(t.outer())},
                        {"inner", to_json(t.inner())},
                        {"rows", t.rows()}};
}

SkewFilling skew_from_json(const nlohmann::json& j) {
  return SkewFilling::from_rows(partition_from_json(j.at("outer")),
                                partition_from_json(j.at("inner")),
                                j.at("rows").get<std::vector<std::vector<int>>>());
}

nlohmann::json to_json(const SDCSolution& solution) {
  nlohmann::json coefficients = nlohmann::json::array();
  int nt = static_cast<int>(solution.skew_basis.size());
  int n2 = static_cast<int>(solution.m2_basis.size());
  for (int eta = 0; eta < solution.multiplicity; ++eta)
    for (int t = 0; t < nt; ++t)
      for (int m2 = 0; m2 < n2; ++m2)
        coefficients.push_back(
            {{"eta", eta + 1},
             {"skew", to_json(solution.skew_basis[t])},
             {"m2", to_json(solution.m2_basis[m2])},
             {"value", round_significant(solution.coefficient(t, m2, eta))}});
  return nlohmann::json{
      {"problem",
       {{"lambda", to_json(solution.problem.lambda)},
        {"lambda1", to_json(solution.problem.lambda1)},
        {"lambda2", to_json(solution.problem.lambda2)}}},
      {"q", round_significant(solution.q)},
      {"tol", round_significant(solution.tol)},
      {"multiplicity", solution.multiplicity},
      {"coefficients", coefficients}};
}

SDCSolution solution_from_json(const nlohmann::json& j) {
  const auto& jp = j.at("problem");
  SubductionProblem problem(partition_from_json(jp.at("lambda")),
                            partition_from_json(jp.at("lambda1")),
                            partition_from_json(jp.at("lambda2")));
  SDCSolution solution{problem};
  solution.q = j.at("q").get<double>();
  solution.tol = j.at("tol").get<double>();
  solution.multiplicity = j.at("multiplicity").get<int>();
  if (problem.lambda.contains(problem.lambda1))
    solution.skew_basis = enumerate_skew_fillings(problem.lambda, problem.lambda1);
  solution.m2_basis = enumerate_syt(problem.lambda2);

  int nt = static_cast<int>(solution.skew_basis.size());
  int n2 = static_cast<int>(solution.m2_basis.size());
  solution.coefficients =
      Eigen::MatrixXd::Zero(static_cast<long>(nt) * n2, solution.multiplicity);
  const auto& entries = j.at("coefficients");
  if (static_cast<long>(entries.size()) !=
      static_cast<long>(nt) * n2 * solution.multiplicity)
    throw std::invalid_argument("coefficient list has the wrong length");
  for (const auto& entry : entries) {
    int eta = entry.at("eta").get<int>() - 1;
    int t = canonical_index(solution.skew_basis, skew_from_json(entry.at("skew")));
    int m2 = canonical_index(solution.m2_basis, tableau_from_json(entry.at("m2")));
    if (eta < 0 || eta >= solution.multiplicity)
      throw std::invalid_argument("multiplicity label out of range");
    solution.coefficients(static_cast<long>(t) * n2 + m2, eta) =
        entry.at("value").get<double>();
  }
  return solution;
}

nlohmann::json to_json(const VerificationReport& report) {
  return nlohmann::json{
      {"pass", report.pass()},
      {"tol", round_significant(report.tol)},
      {"residual_system", round_significant(report.residual_system)},
      {"residual_ortho_row", round_significant(report.residual_ortho_row)},
      {"residual_ortho_col", round_significant(report.residual_ortho_col)},
      {"residual_coupling", round_significant(report.residual_coupling)},
      {"ortho_col_checked", report.ortho_col_checked},
      {"coupling_checked", report.coupling_checked}};
}

nlohmann::json to_json(const HeckeRelationReport& report) {
  return nlohmann::json{
      {"pass", report.pass()},
      {"tol", round_significant(report.tol)},
      {"braid_residual", round_significant(report.braid_residual)},
      {"commute_residual", round_significant(report.commute_residual)},
      {"quadratic_residual", round_significant(report.quadratic_residual)}};
}

nlohmann::json to_json(const OracleReport& report) {
  return nlohmann::json{
      {"pass", report.pass()},
      {"multiplicity", report.multiplicity},
      {"residual_selection", round_significant(report.residual_selection)},
      {"residual_identity", round_significant(report.residual_identity)},
      {"residual_projector", round_significant(report.residual_projector)}};
}

std::string canonical_solution_json(const SDCSolution& solution) {
  return to_json(solution).dump() + "\n";
}

}  // namespace subduce
