#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "subduce/tableaux.hpp"

namespace subduce {

/// Deformation parameter. Real and positive, which keeps the algebra
/// semisimple; q = 1 degenerates to the symmetric group algebra.
struct QParam {
  double value;
  explicit QParam(double v);
};

/// Quantum number [x]_q = (q^x - q^-x) / (q - q^-1), with [x]_1 = x by
/// continuity. Computed as sinh(x ln q) / sinh(ln q), which stays stable
/// arbitrarily close to q = 1.
double quantum_number(double x, QParam q);

/// beta coefficient sqrt(1 - 1/[d]_q^2). Zero exactly when |d| == 1,
/// even in d. Throws on d == 0.
double beta_coefficient(int d, QParam q);

/// Diagonal coefficient q^d / [d]_q of the seminormal generator action.
double diagonal_coefficient(int d, QParam q);

/// Matrix of one generator g_i on the irreducible labelled by `shape`,
/// in the canonical tableau order. Symmetric, at most two nonzero
/// entries per row, eigenvalues q and -1/q only.
class GeneratorMatrix {
public:
  GeneratorMatrix(Partition shape, int index, double q,
                  Eigen::SparseMatrix<double> matrix);

  const Partition& shape() const { return shape_; }
  int index() const { return index_; }
  double q() const { return q_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::SparseMatrix<double>& sparse() const { return matrix_; }
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix_); }

private:
  Partition shape_;
  int index_;
  double q_;
  Eigen::SparseMatrix<double> matrix_;
};

GeneratorMatrix generator_matrix(const Partition& shape, int i, QParam q);

/// Same, over a caller-provided basis which must be enumerate_syt(shape).
GeneratorMatrix generator_matrix(const Partition& shape,
                                 const std::vector<StandardTableau>& basis,
                                 int i, QParam q);

/// All generators g_1 .. g_{f-1} of the representation, sharing one basis
/// enumeration.
std::vector<GeneratorMatrix> seminormal_representation(const Partition& shape,
                                                       QParam q);

/// Max-entry residuals of the defining relations over all applicable
/// generator indices: braid g_i g_{i+1} g_i = g_{i+1} g_i g_{i+1},
/// commutation for |i-j| >= 2, and the quadratic relation
/// g_i^2 = (q - 1/q) g_i + 1.
struct HeckeRelationReport {
  double braid_residual = 0.0;
  double commute_residual = 0.0;
  double quadratic_residual = 0.0;
  double tol = 0.0;
  bool pass() const {
    return braid_residual < tol && commute_residual < tol &&
           quadratic_residual < tol;
  }
};

HeckeRelationReport verify_hecke_relations(const Partition& shape, QParam q,
                                           double tol);

}  // namespace subduce
