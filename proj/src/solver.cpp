#include "subduce/solver.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subduce {

namespace {

constexpr double kZeroClamp = 1e-12;   // canonical entries below this are 0
constexpr double kSignTol = 1e-9;      // "first nonzero" threshold
constexpr double kPivotRel = 1e-8;     // RREF pivot threshold, relative
constexpr long kMaxDenseEntries = 50'000'000;

std::vector<Eigen::VectorXd> full_space_basis(int n) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) out.push_back(Eigen::VectorXd::Unit(n, j));
  return out;
}

}  // namespace

std::vector<Eigen::VectorXd> null_space(const Eigen::MatrixXd& a, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  int n = static_cast<int>(a.cols());
  if (n == 0) return {};
  if (a.rows() == 0) return full_space_basis(n);

  Eigen::MatrixXd work = a;
  if (work.rows() < n) {
    // pad so the SVD exposes the whole of V
    Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(n, n);
    padded.topRows(work.rows()) = work;
    work = std::move(padded);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(work, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  double sigma_max = sigma.size() ? sigma(0) : 0.0;
  if (sigma_max == 0.0) return full_space_basis(n);

  std::vector<Eigen::VectorXd> out;
  for (int j = 0; j < sigma.size(); ++j)
    if (sigma(j) < tol * sigma_max) out.push_back(svd.matrixV().col(j));
  return out;
}

std::vector<Eigen::VectorXd> null_space(const SubductionSystem& system, double tol) {
  if (system.cols() == 0) return {};
  if (system.rows() == 0) return full_space_basis(static_cast<int>(system.cols()));
  if (system.rows() * system.cols() > kMaxDenseEntries)
    throw std::runtime_error("system too large for dense kernel extraction");
  return null_space(system.dense(), tol);
}

int kernel_dimension(const SubductionSystem& system, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  int n = static_cast<int>(system.cols());
  if (n == 0) return 0;
  if (system.rows() == 0) return n;
  if (n <= 256 && system.rows() * system.cols() <= kMaxDenseEntries) {
    Eigen::MatrixXd a = system.dense();
    if (a.rows() < n) {
      Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(n, n);
      padded.topRows(a.rows()) = a;
      a = std::move(padded);
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
    const auto& sigma = svd.singularValues();
    double sigma_max = sigma(0);
    if (sigma_max == 0.0) return n;
    int dim = 0;
    for (int j = 0; j < sigma.size(); ++j)
      if (sigma(j) < tol * sigma_max) ++dim;
    return dim;
  }
  // Large systems: eigenvalues of the Gram matrix. Forming A^T A floors
  // the kernel eigenvalues at O(n * eps) roundoff rather than tol^2, so
  // the cutoff keeps a floor well above that; the nonzero spectrum of
  // these systems sits many orders higher.
  Eigen::SparseMatrix<double> s = system.sparse();
  Eigen::MatrixXd gram = Eigen::MatrixXd(Eigen::SparseMatrix<double>(
      s.transpose() * s));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram,
                                                    Eigen::EigenvaluesOnly);
  double max_eig = es.eigenvalues().maxCoeff();
  if (max_eig <= 0.0) return n;
  double threshold = std::max(tol * tol, 1e-12) * max_eig;
  int dim = 0;
  for (int j = 0; j < es.eigenvalues().size(); ++j)
    if (es.eigenvalues()(j) < threshold) ++dim;
  return dim;
}

Eigen::MatrixXd canonical_kernel_basis(const std::vector<Eigen::VectorXd>& kernel,
                                       double scale) {
  if (kernel.empty()) throw std::invalid_argument("canonical basis of empty kernel");
  int k = static_cast<int>(kernel.size());
  int n = static_cast<int>(kernel[0].size());
  Eigen::MatrixXd rows(k, n);
  for (int i = 0; i < k; ++i) rows.row(i) = kernel[i].transpose();

  // Reduced row echelon form of the row span; unique for the subspace.
  double pivot_tol = kPivotRel * rows.cwiseAbs().maxCoeff();
  int rank = 0;
  for (int c = 0; c < n && rank < k; ++c) {
    int best = -1;
    double best_val = pivot_tol;
    for (int i = rank; i < k; ++i)
      if (std::abs(rows(i, c)) > best_val) {
        best_val = std::abs(rows(i, c));
        best = i;
      }
    if (best < 0) continue;
    rows.row(rank).swap(rows.row(best));
    rows.row(rank) /= rows(rank, c);
    for (int i = 0; i < k; ++i)
      if (i != rank && rows(i, c) != 0.0) rows.row(i) -= rows(i, c) * rows.row(rank);
    ++rank;
  }
  if (rank < k)
    throw std::runtime_error(
        "kernel vectors are numerically dependent; check the rank tolerance");

  // Gram-Schmidt in leading-support order, then fix scale and sign.
  Eigen::MatrixXd basis(n, k);
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd v = rows.row(i).transpose();
    for (int j = 0; j < i; ++j) v -= basis.col(j).dot(v) * basis.col(j);
    double norm = v.norm();
    if (norm < kZeroClamp)
      throw std::runtime_error(
          "kernel vectors are numerically dependent; check the rank tolerance");
    basis.col(i) = v / norm;
  }
  basis *= scale;
  for (int j = 0; j < k; ++j) {
    for (int r = 0; r < n; ++r) {
      if (std::abs(basis(r, j)) > kSignTol) {
        if (basis(r, j) < 0.0) basis.col(j) = -basis.col(j);
        break;
      }
    }
  }
  for (int j = 0; j < k; ++j)
    for (int r = 0; r < n; ++r)
      if (std::abs(basis(r, j)) < kZeroClamp) basis(r, j) = 0.0;
  return basis;
}

SDCSolution canonicalize(const std::vector<Eigen::VectorXd>& kernel,
                         const SubductionSystem& system) {
  if (system.mode() != SystemMode::Reduced)
    throw std::invalid_argument("canonicalize expects a reduced-mode system");
  if (kernel.empty())
    throw std::invalid_argument("canonicalize expects a nonempty kernel");
  double scale = std::sqrt(static_cast<double>(system.m2_basis().size()));
  SDCSolution sol{system.problem()};
  sol.q = system.q();
  sol.multiplicity = static_cast<int>(kernel.size());
  sol.skew_basis = system.skew_basis();
  sol.m2_basis = system.m2_basis();
  sol.coefficients = canonical_kernel_basis(kernel, scale);
  return sol;
}

SDCSolution solve_subduction(const SubductionProblem& problem, QParam q,
                             double tol) {
  SubductionSystem system = assemble_system(problem, q, SystemMode::Reduced);
  SDCSolution empty{problem};
  empty.q = q.value;
  empty.tol = tol;
  empty.skew_basis = system.skew_basis();
  empty.m2_basis = system.m2_basis();
  empty.coefficients = Eigen::MatrixXd::Zero(system.cols(), 0);
  if (system.cols() == 0) return empty;

  std::vector<Eigen::VectorXd> kernel = null_space(system, tol);
  if (kernel.empty()) return empty;

  SDCSolution sol = canonicalize(kernel, system);
  sol.tol = tol;
  return sol;
}

FullTensor expand_full(const SDCSolution& solution) {
  FullTensor tensor;
  const SubductionProblem& p = solution.problem;
  auto m_basis = enumerate_syt(p.lambda);
  auto m1_basis = enumerate_syt(p.lambda1);
  tensor.n_m = static_cast<int>(m_basis.size());
  tensor.n_m1 = static_cast<int>(m1_basis.size());
  tensor.n_m2 = static_cast<int>(solution.m2_basis.size());
  tensor.multiplicity = solution.multiplicity;
  if (solution.multiplicity == 0) return tensor;

  std::size_t total = static_cast<std::size_t>(tensor.n_m) * tensor.n_m1 *
                      tensor.n_m2 * tensor.multiplicity;
  if (total > 100'000'000)
    throw std::length_error("expanded tensor too large");
  tensor.values.assign(total, 0.0);

  for (int mi = 0; mi < tensor.n_m; ++mi) {
    StandardTableau m1 = restricted(m_basis[mi], p.f1());
    if (m1.shape() != p.lambda1) continue;  // selection rule: all zero
    int m1i = canonical_index(m1_basis, m1);
    int ti = canonical_index(solution.skew_basis, skew_part(m_basis[mi], p.f1()));
    for (int m2i = 0; m2i < tensor.n_m2; ++m2i)
      for (int eta = 0; eta < tensor.multiplicity; ++eta)
        tensor.values[static_cast<std::size_t>(
                          ((mi * tensor.n_m1 + m1i) * tensor.n_m2 + m2i)) *
                          tensor.multiplicity + eta] =
            solution.coefficient(ti, m2i, eta);
  }
  return tensor;
}

namespace {

// Max |A x - 0| over the stored triplets, one column of chi at a time.
double system_residual(const SubductionSystem& system,
                       const Eigen::MatrixXd& coefficients) {
  double residual = 0.0;
  for (int eta = 0; eta < coefficients.cols(); ++eta) {
    Eigen::VectorXd row_sum = Eigen::VectorXd::Zero(system.rows());
    for (const auto& e : system.entries())
      row_sum(e.row()) += e.value() * coefficients(e.col(), eta);
    if (row_sum.size())
      residual = std::max(residual, row_sum.cwiseAbs().maxCoeff());
  }
  return residual;
}

}  // namespace

VerificationReport verify_solution(const SDCSolution& solution, QParam q,
                                   double tol, const VerifyOptions& options) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  VerificationReport report;
  report.tol = tol;
  if (solution.multiplicity == 0) return report;

  const SubductionProblem& p = solution.problem;
  int nt = static_cast<int>(solution.skew_basis.size());
  int n2 = static_cast<int>(solution.m2_basis.size());
  int k = solution.multiplicity;

  SubductionSystem system = assemble_system(p, q, SystemMode::Reduced);
  if (system.cols() != static_cast<long>(nt) * n2)
    throw std::invalid_argument("solution does not match its problem");
  report.residual_system = system_residual(system, solution.coefficients);

  // Row unitarity: sum over skew fillings for fixed (m2, m2', eta, eta').
  for (int a = 0; a < n2; ++a)
    for (int ea = 0; ea < k; ++ea)
      for (int b = 0; b < n2; ++b)
        for (int eb = 0; eb < k; ++eb) {
          double sum = 0.0;
          for (int t = 0; t < nt; ++t)
            sum += solution.coefficient(t, a, ea) * solution.coefficient(t, b, eb);
          double target = (a == b && ea == eb) ? 1.0 : 0.0;
          report.residual_ortho_row =
              std::max(report.residual_ortho_row, std::abs(sum - target));
        }

  // Column unitarity needs every lambda2 block of the same (lambda, lambda1).
  if (options.check_ortho_col && nt > 0 && nt <= 4096) {
    std::vector<Eigen::MatrixXd> blocks;
    long total_cols = 0;
    for (const Partition& l2 : partitions_of(p.f2())) {
      if (l2 == p.lambda2) {
        blocks.push_back(solution.coefficients);
      } else {
        SDCSolution sibling =
            solve_subduction(SubductionProblem(p.lambda, p.lambda1, l2), q,
                             solution.tol);
        if (sibling.multiplicity == 0) continue;
        blocks.push_back(sibling.coefficients);
      }
      total_cols += blocks.back().size() / nt;
    }
    Eigen::MatrixXd joined(nt, total_cols);
    long offset = 0;
    for (const auto& block : blocks) {
      // block is (nt * n2_block) x k_block; regroup by skew filling rows
      long n2k = block.size() / nt;
      long n2_block = block.rows() / nt;
      for (int t = 0; t < nt; ++t)
        for (long c = 0; c < n2_block; ++c)
          for (long eta = 0; eta < block.cols(); ++eta)
            joined(t, offset + c * block.cols() + eta) =
                block(t * n2_block + c, eta);
      offset += n2k;
    }
    if (offset != nt)
      throw std::logic_error("branching count mismatch in column unitarity");
    Eigen::MatrixXd gram = joined * joined.transpose();
    report.residual_ortho_col =
        (gram - Eigen::MatrixXd::Identity(nt, nt)).cwiseAbs().maxCoeff();
    report.ortho_col_checked = true;
  }

  // Coupling identities on the expanded tensor, one generator at a time.
  std::uint64_t expanded = static_cast<std::uint64_t>(hook_dimension(p.lambda)) *
                           hook_dimension(p.lambda1) * n2 * k;
  if (options.check_coupling && expanded <= options.max_expanded_entries) {
    auto m_basis = enumerate_syt(p.lambda);
    auto m1_basis = enumerate_syt(p.lambda1);
    int n = static_cast<int>(m_basis.size());
    int n1 = static_cast<int>(m1_basis.size());
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, static_cast<long>(n1) * n2 * k);
    for (int mi = 0; mi < n; ++mi) {
      StandardTableau m1 = restricted(m_basis[mi], p.f1());
      if (m1.shape() != p.lambda1) continue;
      int m1i = canonical_index(m1_basis, m1);
      int ti = canonical_index(solution.skew_basis, skew_part(m_basis[mi], p.f1()));
      for (int m2i = 0; m2i < n2; ++m2i)
        for (int eta = 0; eta < k; ++eta)
          x(mi, (static_cast<long>(m1i) * n2 + m2i) * k + eta) =
              solution.coefficient(ti, m2i, eta);
    }
    auto g_lambda = seminormal_representation(p.lambda, q);
    auto g1 = seminormal_representation(p.lambda1, q);
    auto g2 = seminormal_representation(p.lambda2, q);
    for (int i = 1; i < p.f(); ++i) {
      if (i == p.f1()) continue;
      Eigen::MatrixXd lhs = g_lambda[i - 1].sparse() * x;
      Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(lhs.rows(), lhs.cols());
      if (i < p.f1()) {
        const auto& g = g1[i - 1].sparse();
        for (int outer = 0; outer < g.outerSize(); ++outer)
          for (Eigen::SparseMatrix<double>::InnerIterator it(g, outer); it; ++it)
            for (int m2i = 0; m2i < n2; ++m2i)
              for (int eta = 0; eta < k; ++eta)
                rhs.col((static_cast<long>(it.col()) * n2 + m2i) * k + eta) +=
                    it.value() *
                    x.col((static_cast<long>(it.row()) * n2 + m2i) * k + eta);
      } else {
        const auto& g = g2[i - p.f1() - 1].sparse();
        for (int outer = 0; outer < g.outerSize(); ++outer)
          for (Eigen::SparseMatrix<double>::InnerIterator it(g, outer); it; ++it)
            for (int m1i = 0; m1i < n1; ++m1i)
              for (int eta = 0; eta < k; ++eta)
                rhs.col((static_cast<long>(m1i) * n2 + it.col()) * k + eta) +=
                    it.value() *
                    x.col((static_cast<long>(m1i) * n2 + it.row()) * k + eta);
      }
      report.residual_coupling = std::max(
          report.residual_coupling, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    report.coupling_checked = true;
  }
  return report;
}

OracleReport full_oracle_check(const SubductionProblem& problem, QParam q,
                               double rank_tol) {
  SubductionSystem full = assemble_system(problem, q, SystemMode::Full);
  if (full.cols() > 2000)
    throw std::runtime_error("full oracle check is limited to small problems");
  std::vector<Eigen::VectorXd> full_kernel = null_space(full, rank_tol);

  SubductionSystem reduced = assemble_system(problem, q, SystemMode::Reduced);
  std::vector<Eigen::VectorXd> reduced_kernel = null_space(reduced, rank_tol);

  OracleReport report;
  report.multiplicity = static_cast<int>(full_kernel.size());
  if (full_kernel.size() != reduced_kernel.size()) {
    report.residual_projector = 1.0;
    return report;
  }
  if (full_kernel.empty()) return report;

  int n = static_cast<int>(full.m_basis().size());
  int n1 = static_cast<int>(full.m1_basis().size());
  int n2 = static_cast<int>(full.m2_basis().size());
  int k = static_cast<int>(full_kernel.size());
  int f1 = problem.f1();

  Eigen::MatrixXd bf = canonical_kernel_basis(full_kernel, 1.0);

  // Selection rule: nothing outside the admissible (m, m1) pairs. A
  // restriction of the wrong shape makes every m1 inadmissible.
  std::vector<int> restriction(n, -1);
  std::vector<int> skew_index(n, -1);
  for (int mi = 0; mi < n; ++mi) {
    StandardTableau m1 = restricted(full.m_basis()[mi], f1);
    if (m1.shape() != problem.lambda1) continue;
    restriction[mi] = canonical_index(full.m1_basis(), m1);
    skew_index[mi] =
        canonical_index(reduced.skew_basis(), skew_part(full.m_basis()[mi], f1));
  }
  for (int mi = 0; mi < n; ++mi)
    for (int m1i = 0; m1i < n1; ++m1i) {
      if (m1i == restriction[mi]) continue;
      for (int m2i = 0; m2i < n2; ++m2i) {
        int col = full.column_of(mi, m1i, m2i);
        for (int eta = 0; eta < k; ++eta)
          report.residual_selection =
              std::max(report.residual_selection, std::abs(bf(col, eta)));
      }
    }

  // Identity rule: simultaneous g_i on (m, m1) for i below f1.
  for (int i = 1; i < f1; ++i) {
    std::vector<int> gm(n), gm1(n1);
    for (int mi = 0; mi < n; ++mi)
      gm[mi] = std::abs(axial_distance(full.m_basis()[mi], i)) == 1
                   ? mi
                   : canonical_index(full.m_basis(),
                                 apply_generator(full.m_basis()[mi], i));
    for (int m1i = 0; m1i < n1; ++m1i)
      gm1[m1i] = std::abs(axial_distance(full.m1_basis()[m1i], i)) == 1
                     ? m1i
                     : canonical_index(full.m1_basis(),
                                   apply_generator(full.m1_basis()[m1i], i));
    for (int mi = 0; mi < n; ++mi) {
      int m1i = restriction[mi];
      if (m1i < 0) continue;
      for (int m2i = 0; m2i < n2; ++m2i) {
        int col = full.column_of(mi, m1i, m2i);
        int image = full.column_of(gm[mi], gm1[m1i], m2i);
        for (int eta = 0; eta < k; ++eta)
          report.residual_identity = std::max(
              report.residual_identity, std::abs(bf(col, eta) - bf(image, eta)));
      }
    }
  }

  // Projectors of the full kernel and of the embedded reduced kernel.
  Eigen::MatrixXd br = canonical_kernel_basis(reduced_kernel, 1.0);
  Eigen::MatrixXd embedded = Eigen::MatrixXd::Zero(full.cols(), k);
  for (int mi = 0; mi < n; ++mi) {
    if (restriction[mi] < 0) continue;
    for (int m2i = 0; m2i < n2; ++m2i)
      for (int eta = 0; eta < k; ++eta)
        embedded(full.column_of(mi, restriction[mi], m2i), eta) =
            br(reduced.column_of(skew_index[mi], m2i), eta);
  }
  for (int eta = 0; eta < k; ++eta) embedded.col(eta) /= embedded.col(eta).norm();

  Eigen::MatrixXd diff =
      bf * bf.transpose() - embedded * embedded.transpose();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(diff);
  report.residual_projector =
      svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return report;
}

}  // namespace subduce
