#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "subduce/subduction.hpp"

namespace subduce {

/// Orthonormal basis of the numerical kernel: right singular vectors
/// whose singular values fall below tol times the largest one. A system
/// with no rows (or a zero matrix) has the whole space as its kernel.
std::vector<Eigen::VectorXd> null_space(const Eigen::MatrixXd& a, double tol);
std::vector<Eigen::VectorXd> null_space(const SubductionSystem& system, double tol);

/// Kernel dimension only, cheaper than extracting vectors.
int kernel_dimension(const SubductionSystem& system, double tol);

/// Deterministic orthonormal basis of the span of `kernel`: reduced row
/// echelon form of the spanned subspace, Gram-Schmidt in order of the
/// leading support indices, each vector scaled by `scale`, signed so the
/// first nonzero entry is positive, and entries below 1e-12 snapped to
/// exact zero. Depends only on the subspace, not on the incoming basis.
/// Throws when the kernel vectors are numerically dependent.
Eigen::MatrixXd canonical_kernel_basis(const std::vector<Eigen::VectorXd>& kernel,
                                       double scale);

/// Subduction coefficients in reduced storage: value(t, m2, eta) over
/// skew fillings t and tableaux m2 of lambda2, one column per
/// multiplicity label eta.
struct SDCSolution {
  explicit SDCSolution(SubductionProblem p) : problem(std::move(p)) {}

  SubductionProblem problem;
  double q = 1.0;
  double tol = 1e-10;
  int multiplicity = 0;
  std::vector<SkewFilling> skew_basis;
  std::vector<StandardTableau> m2_basis;
  Eigen::MatrixXd coefficients;  // (skew * m2) x multiplicity

  double coefficient(int t, int m2, int eta) const {
    return coefficients(t * static_cast<int>(m2_basis.size()) + m2, eta);
  }
};

/// Canonical solution from a kernel basis of a reduced-mode system. The
/// scaling makes the row unitarity sums come out as plain Kronecker
/// deltas. Throws on an empty kernel or a full-mode system.
SDCSolution canonicalize(const std::vector<Eigen::VectorXd>& kernel,
                         const SubductionSystem& system);

/// Assemble, solve and canonicalize in one step; multiplicity 0 yields
/// an empty solution.
SDCSolution solve_subduction(const SubductionProblem& problem, QParam q,
                             double tol);

/// Coefficient tensor over (m, m1, m2, eta); zero wherever the
/// restriction of m differs from m1, copies of the reduced values
/// elsewhere.
struct FullTensor {
  int n_m = 0, n_m1 = 0, n_m2 = 0, multiplicity = 0;
  std::vector<double> values;
  double at(int m, int m1, int m2, int eta) const {
    return values[static_cast<std::size_t>(((m * n_m1 + m1) * n_m2 + m2)) *
                      multiplicity + eta];
  }
};

FullTensor expand_full(const SDCSolution& solution);

struct VerifyOptions {
  bool check_ortho_col = true;
  bool check_coupling = true;
  std::size_t max_expanded_entries = 4u << 20;
};

/// Residuals of the checks a canonical solution must satisfy: the
/// assembled system applied to each eta-vector, the two unitarity sums,
/// and the generator coupling identities on the expanded tensor. The
/// column unitarity sum needs every lambda2 block of the same
/// (lambda, lambda1), which are solved on demand.
struct VerificationReport {
  double residual_system = 0.0;
  double residual_ortho_row = 0.0;
  double residual_ortho_col = 0.0;
  double residual_coupling = 0.0;
  bool ortho_col_checked = false;
  bool coupling_checked = false;
  double tol = 0.0;
  bool pass() const {
    return residual_system < tol && residual_ortho_row < tol &&
           (!ortho_col_checked || residual_ortho_col < tol) &&
           (!coupling_checked || residual_coupling < tol);
  }
};

VerificationReport verify_solution(const SDCSolution& solution, QParam q,
                                   double tol, const VerifyOptions& options = {});

/// Brute-force cross-check on the full system, for small problems. The
/// full kernel must vanish on the columns the selection rule excludes,
/// be invariant under the simultaneous generator action on (m, m1), and
/// span the same subspace as the embedded reduced kernel.
struct OracleReport {
  int multiplicity = 0;
  double residual_selection = 0.0;
  double residual_identity = 0.0;
  double residual_projector = 0.0;
  bool pass(double tol_rule = 1e-9, double tol_projector = 1e-8) const {
    return residual_selection < tol_rule && residual_identity < tol_rule &&
           residual_projector < tol_projector;
  }
};

OracleReport full_oracle_check(const SubductionProblem& problem, QParam q,
                               double rank_tol);

}  // namespace subduce
