#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include "subduce/hecke.hpp"
#include "subduce/tableaux.hpp"

namespace subduce {

/// A reduction [lambda] -> [lambda1] x [lambda2] with f1 + f2 = f.
struct SubductionProblem {
  Partition lambda, lambda1, lambda2;
  SubductionProblem(Partition l, Partition l1, Partition l2);
  int f() const { return lambda.size(); }
  int f1() const { return lambda1.size(); }
  int f2() const { return lambda2.size(); }
};

enum class PairKind { Equal, Crossing, Bridge };

/// Classification of a same-shape tableau pair. For a crossing pair,
/// `index` is the separation: the minimum i where the axial distances
/// differ and the two tableaux are either both moved or both fixed by
/// g_i. For a bridge pair it is the cut: the minimum i where the axial
/// distances differ. Zero for an equal pair.
struct PairClassification {
  PairKind kind = PairKind::Equal;
  int index = 0;
};

PairClassification classify_pair(const StandardTableau& a, const StandardTableau& b);

/// Applies g_cut simultaneously to both tableaux while the pair is a
/// bridge pair; returns the first crossing pair reached. The cut
/// strictly decreases, so this ends after at most cut-1 steps. Throws
/// when called on an equal pair.
std::pair<StandardTableau, StandardTableau> bridge_walk(StandardTableau a,
                                                        StandardTableau b);

/// True when the restriction of m to its first f1 entries equals m1;
/// the coefficient at (m, m1, *) vanishes otherwise.
bool selection_admissible(const StandardTableau& m, const StandardTableau& m1,
                          int f1);

enum class SystemMode { Full, Reduced };

/// Row label: the generator index and the unknown the equation was
/// written for. Full mode uses (m, m1, m2) basis indices; reduced mode
/// uses (skew, -1, m2).
struct RowLabel {
  int generator = 0;
  int u0 = 0, u1 = 0, u2 = 0;
};

/// Homogeneous linear system whose kernel vectors carry the subduction
/// coefficients. Full mode has one unknown per (m, m1, m2) and rows for
/// every generator index except f1; reduced mode has one unknown per
/// (skew filling, m2) and rows only for the indices above f1; each row
/// has at most three nonzero entries.
class SubductionSystem {
public:
  const SubductionProblem& problem() const { return problem_; }
  double q() const { return q_; }
  SystemMode mode() const { return mode_; }
  long rows() const { return rows_; }
  long cols() const { return cols_; }

  const std::vector<Eigen::Triplet<double>>& entries() const { return entries_; }
  const std::vector<RowLabel>& row_labels() const { return row_labels_; }

  // Unknown indexing. Full mode: (m, m1, m2); reduced mode: (skew, m2).
  int column_of(int a, int b, int c) const;
  int column_of(int t, int m2) const;
  struct ColumnLabel {
    int m_or_skew = 0;
    int m1 = -1;
    int m2 = 0;
  };
  ColumnLabel column_label(int col) const;
  std::string column_name(int col) const;

  const std::vector<StandardTableau>& m_basis() const { return m_basis_; }
  const std::vector<StandardTableau>& m1_basis() const { return m1_basis_; }
  const std::vector<StandardTableau>& m2_basis() const { return m2_basis_; }
  const std::vector<SkewFilling>& skew_basis() const { return skew_basis_; }

  /// Dense matrix with rows in canonical order (ascending generator,
  /// then unknown), independent of storage order.
  Eigen::MatrixXd dense() const;
  Eigen::SparseMatrix<double> sparse() const;

  /// Same system with rows stored in a shuffled order; the canonical
  /// row order used by dense() is unaffected.
  SubductionSystem with_permuted_rows(const std::vector<int>& permutation) const;

  friend SubductionSystem assemble_system(const SubductionProblem&, QParam,
                                          SystemMode);

private:
  SubductionSystem(SubductionProblem problem, double q, SystemMode mode)
      : problem_(std::move(problem)), q_(q), mode_(mode) {}
  std::vector<int> canonical_row_order() const;

  SubductionProblem problem_;
  double q_;
  SystemMode mode_;
  long rows_ = 0, cols_ = 0;
  std::vector<Eigen::Triplet<double>> entries_;
  std::vector<RowLabel> row_labels_;
  std::vector<StandardTableau> m_basis_, m1_basis_, m2_basis_;
  std::vector<SkewFilling> skew_basis_;
};

SubductionSystem assemble_system(const SubductionProblem& problem, QParam q,
                                 SystemMode mode);

/// Unknowns as nodes; two unknowns are adjacent when some equation of
/// generator index i couples them, and the edge carries that i.
struct SubductionGraph {
  int node_count = 0;
  std::vector<std::array<int, 3>> edges;     // (u, v, generator), u < v
  std::vector<std::vector<int>> components;  // sorted node lists
};

SubductionGraph build_graph(const SubductionSystem& system);

std::string to_dot(const SubductionGraph& graph, const SubductionSystem& system);

/// Sparse triplet export, "row,col,value" with canonical row numbering.
std::string to_triplet_csv(const SubductionSystem& system);

}  // namespace subduce
