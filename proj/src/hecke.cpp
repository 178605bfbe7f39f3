#include "subduce/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subduce {

QParam::QParam(double v) : value(v) {
  if (!(v > 0.0)) throw std::invalid_argument("q must be a positive real number");
}

double quantum_number(double x, QParam q) {
  double lnq = std::log(q.value);
  if (lnq == 0.0) return x;
  return std::sinh(x * lnq) / std::sinh(lnq);
}

double beta_coefficient(int d, QParam q) {
  if (d == 0) throw std::invalid_argument("axial distance must be nonzero");
  double qd = quantum_number(d, q);
  double s = 1.0 - 1.0 / (qd * qd);
  return s <= 0.0 ? 0.0 : std::sqrt(s);
}

double diagonal_coefficient(int d, QParam q) {
  if (d == 0) throw std::invalid_argument("axial distance must be nonzero");
  return std::pow(q.value, d) / quantum_number(d, q);
}

GeneratorMatrix::GeneratorMatrix(Partition shape, int index, double q,
                                 Eigen::SparseMatrix<double> matrix)
    : shape_(std::move(shape)), index_(index), q_(q), matrix_(std::move(matrix)) {}

GeneratorMatrix generator_matrix(const Partition& shape, int i, QParam q) {
  return generator_matrix(shape, enumerate_syt(shape), i, q);
}

GeneratorMatrix generator_matrix(const Partition& shape,
                                 const std::vector<StandardTableau>& basis,
                                 int i, QParam q) {
  if (i < 1 || i >= shape.size())
    throw std::out_of_range("generator index out of range");
  int n = static_cast<int>(basis.size());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(2 * basis.size());
  for (int col = 0; col < n; ++col) {
    const StandardTableau& m = basis[col];
    int d = axial_distance(m, i);
    entries.emplace_back(col, col, diagonal_coefficient(d, q));
    if (std::abs(d) != 1) {
      int row = canonical_index(basis, apply_generator(m, i));
      entries.emplace_back(row, col, beta_coefficient(d, q));
    }
  }
  Eigen::SparseMatrix<double> mat(n, n);
  mat.setFromTriplets(entries.begin(), entries.end());
  return GeneratorMatrix(shape, i, q.value, std::move(mat));
}

std::vector<GeneratorMatrix> seminormal_representation(const Partition& shape,
                                                       QParam q) {
  auto basis = enumerate_syt(shape);
  std::vector<GeneratorMatrix> out;
  out.reserve(std::max(shape.size() - 1, 0));
  for (int i = 1; i < shape.size(); ++i)
    out.push_back(generator_matrix(shape, basis, i, q));
  return out;
}

HeckeRelationReport verify_hecke_relations(const Partition& shape, QParam q,
                                           double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  HeckeRelationReport report;
  report.tol = tol;

  auto gens = seminormal_representation(shape, q);
  int count = static_cast<int>(gens.size());
  if (count == 0) return report;

  std::vector<Eigen::MatrixXd> g;
  g.reserve(count);
  for (const auto& gm : gens) g.push_back(gm.dense());
  int n = static_cast<int>(g[0].rows());
  Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  double coefficient = q.value - 1.0 / q.value;

  auto max_abs = [](const Eigen::MatrixXd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
  };

  for (int a = 0; a < count; ++a) {
    report.quadratic_residual =
        std::max(report.quadratic_residual,
                 max_abs(g[a] * g[a] - coefficient * g[a] - identity));
    if (a + 1 < count)
      report.braid_residual =
          std::max(report.braid_residual,
                   max_abs(g[a] * g[a + 1] * g[a] - g[a + 1] * g[a] * g[a + 1]));
    for (int b = a + 2; b < count; ++b)
      report.commute_residual =
          std::max(report.commute_residual, max_abs(g[a] * g[b] - g[b] * g[a]));
  }
  return report;
}

}  // namespace subduce
