#include "subduce/subduction.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace subduce {

SubductionProblem::SubductionProblem(Partition l, Partition l1, Partition l2)
    : lambda(std::move(l)), lambda1(std::move(l1)), lambda2(std::move(l2)) {
  if (lambda1.size() + lambda2.size() != lambda.size())
    throw std::invalid_argument("subduction problem sizes do not add up");
  if (lambda.size() == 0)
    throw std::invalid_argument("subduction problem must have at least one box");
}

PairClassification classify_pair(const StandardTableau& a, const StandardTableau& b) {
  if (a.shape() != b.shape())
    throw std::invalid_argument("classify_pair: shape mismatch");
  if (a == b) return {PairKind::Equal, 0};
  int cut = 0;
  for (int i = 1; i < a.size(); ++i) {
    int da = axial_distance(a, i);
    int db = axial_distance(b, i);
    if (da == db) continue;
    if (cut == 0) cut = i;
    bool a_fixed = std::abs(da) == 1;
    bool b_fixed = std::abs(db) == 1;
    if (a_fixed == b_fixed) return {PairKind::Crossing, i};
  }
  if (cut == 0)
    throw std::logic_error("distinct tableaux with equal axial distances");
  return {PairKind::Bridge, cut};
}

std::pair<StandardTableau, StandardTableau> bridge_walk(StandardTableau a,
                                                        StandardTableau b) {
  if (a == b) throw std::invalid_argument("bridge_walk: tableaux are equal");
  for (int step = 0; step <= a.size(); ++step) {
    PairClassification cls = classify_pair(a, b);
    if (cls.kind == PairKind::Crossing) return {std::move(a), std::move(b)};
    a = apply_generator(a, cls.index);
    b = apply_generator(b, cls.index);
  }
  throw std::logic_error("bridge_walk failed to reach a crossing pair");
}

bool selection_admissible(const StandardTableau& m, const StandardTableau& m1,
                          int f1) {
  if (m1.size() != f1 || f1 < 1 || f1 > m.size())
    throw std::invalid_argument("selection_admissible: size mismatch");
  return restricted(m, f1) == m1;
}

namespace {

// Axial distance and image index of g_i over a whole basis.
struct GeneratorAction {
  std::vector<int> d;
  std::vector<int> image;
};

GeneratorAction action_on(const std::vector<StandardTableau>& basis, int i) {
  GeneratorAction a;
  a.d.resize(basis.size());
  a.image.resize(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    a.d[k] = axial_distance(basis[k], i);
    a.image[k] = std::abs(a.d[k]) == 1
                     ? static_cast<int>(k)
                     : canonical_index(basis, apply_generator(basis[k], i));
  }
  return a;
}

GeneratorAction action_on(const std::vector<SkewFilling>& basis, int i) {
  GeneratorAction a;
  a.d.resize(basis.size());
  a.image.resize(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    a.d[k] = axial_distance(basis[k], i);
    a.image[k] = std::abs(a.d[k]) == 1
                     ? static_cast<int>(k)
                     : canonical_index(basis, apply_generator(basis[k], i));
  }
  return a;
}

}  // namespace

int SubductionSystem::column_of(int a, int b, int c) const {
  if (mode_ != SystemMode::Full)
    throw std::logic_error("triple column index requires a full-mode system");
  int n1 = static_cast<int>(m1_basis_.size());
  int n2 = static_cast<int>(m2_basis_.size());
  return (a * n1 + b) * n2 + c;
}

int SubductionSystem::column_of(int t, int m2) const {
  if (mode_ != SystemMode::Reduced)
    throw std::logic_error("pair column index requires a reduced-mode system");
  return t * static_cast<int>(m2_basis_.size()) + m2;
}

SubductionSystem::ColumnLabel SubductionSystem::column_label(int col) const {
  if (col < 0 || col >= cols_) throw std::out_of_range("column out of range");
  int n2 = static_cast<int>(m2_basis_.size());
  ColumnLabel label;
  label.m2 = col % n2;
  int rest = col / n2;
  if (mode_ == SystemMode::Full) {
    int n1 = static_cast<int>(m1_basis_.size());
    label.m1 = rest % n1;
    label.m_or_skew = rest / n1;
  } else {
    label.m_or_skew = rest;
  }
  return label;
}

std::string SubductionSystem::column_name(int col) const {
  ColumnLabel l = column_label(col);
  if (mode_ == SystemMode::Full)
    return "m" + std::to_string(l.m_or_skew) + ".m1_" + std::to_string(l.m1) +
           ".m2_" + std::to_string(l.m2);
  return "t" + std::to_string(l.m_or_skew) + ".m2_" + std::to_string(l.m2);
}

std::vector<int> SubductionSystem::canonical_row_order() const {
  std::vector<int> order(row_labels_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const RowLabel& a = row_labels_[x];
    const RowLabel& b = row_labels_[y];
    return std::tie(a.generator, a.u0, a.u1, a.u2) <
           std::tie(b.generator, b.u0, b.u1, b.u2);
  });
  return order;
}

Eigen::MatrixXd SubductionSystem::dense() const {
  std::vector<int> order = canonical_row_order();
  std::vector<int> rank(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k);
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(rows_, cols_);
  for (const auto& e : entries_) mat(rank[e.row()], e.col()) += e.value();
  return mat;
}

Eigen::SparseMatrix<double> SubductionSystem::sparse() const {
  std::vector<int> order = canonical_row_order();
  std::vector<int> rank(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = static_cast<int>(k);
  std::vector<Eigen::Triplet<double>> remapped;
  remapped.reserve(entries_.size());
  for (const auto& e : entries_)
    remapped.emplace_back(rank[e.row()], e.col(), e.value());
  Eigen::SparseMatrix<double> mat(rows_, cols_);
  mat.setFromTriplets(remapped.begin(), remapped.end());
  return mat;
}

SubductionSystem SubductionSystem::with_permuted_rows(
    const std::vector<int>& permutation) const {
  if (static_cast<long>(permutation.size()) != rows_)
    throw std::invalid_argument("permutation size mismatch");
  std::vector<int> inverse(rows_);
  for (std::size_t k = 0; k < permutation.size(); ++k)
    inverse[permutation[k]] = static_cast<int>(k);
  SubductionSystem out(*this);
  for (long k = 0; k < rows_; ++k) out.row_labels_[k] = row_labels_[permutation[k]];
  out.entries_.clear();
  for (const auto& e : entries_)
    out.entries_.emplace_back(inverse[e.row()], e.col(), e.value());
  return out;
}

SubductionSystem assemble_system(const SubductionProblem& problem, QParam q,
                                 SystemMode mode) {
  SubductionSystem sys(problem, q.value, mode);
  int f1 = problem.f1();
  int f = problem.f();
  sys.m2_basis_ = enumerate_syt(problem.lambda2);
  int n2 = static_cast<int>(sys.m2_basis_.size());

  auto add_row = [&](int gen, int u0, int u1, int u2) {
    sys.row_labels_.push_back(RowLabel{gen, u0, u1, u2});
    return static_cast<int>(sys.row_labels_.size()) - 1;
  };

  if (mode == SystemMode::Full) {
    sys.m_basis_ = enumerate_syt(problem.lambda);
    sys.m1_basis_ = enumerate_syt(problem.lambda1);
    int n = static_cast<int>(sys.m_basis_.size());
    int n1 = static_cast<int>(sys.m1_basis_.size());
    sys.cols_ = static_cast<long>(n) * n1 * n2;
    for (int i = 1; i < f; ++i) {
      if (i == f1) continue;
      GeneratorAction am = action_on(sys.m_basis_, i);
      GeneratorAction as = i < f1 ? action_on(sys.m1_basis_, i)
                                  : action_on(sys.m2_basis_, i - f1);
      for (int mi = 0; mi < n; ++mi) {
        for (int m1i = 0; m1i < n1; ++m1i) {
          for (int m2i = 0; m2i < n2; ++m2i) {
            int row = add_row(i, mi, m1i, m2i);
            int col = sys.column_of(mi, m1i, m2i);
            int si = i < f1 ? m1i : m2i;
            double alpha = diagonal_coefficient(as.d[si], q) -
                           diagonal_coefficient(am.d[mi], q);
            if (alpha != 0.0) sys.entries_.emplace_back(row, col, alpha);
            if (am.image[mi] != mi)
              sys.entries_.emplace_back(
                  row, sys.column_of(am.image[mi], m1i, m2i),
                  -beta_coefficient(am.d[mi], q));
            if (as.image[si] != si) {
              int other = i < f1 ? sys.column_of(mi, as.image[si], m2i)
                                 : sys.column_of(mi, m1i, as.image[si]);
              sys.entries_.emplace_back(row, other,
                                        beta_coefficient(as.d[si], q));
            }
          }
        }
      }
    }
    sys.rows_ = static_cast<long>(sys.row_labels_.size());
    return sys;
  }

  // Reduced mode. Unknowns are (skew filling, m2); only the generators
  // above f1 act, and they touch the skew entries only.
  if (problem.lambda.contains(problem.lambda1))
    sys.skew_basis_ = enumerate_skew_fillings(problem.lambda, problem.lambda1);
  int nt = static_cast<int>(sys.skew_basis_.size());
  sys.cols_ = static_cast<long>(nt) * n2;
  for (int i = f1 + 1; i < f; ++i) {
    GeneratorAction at = action_on(sys.skew_basis_, i);
    GeneratorAction a2 = action_on(sys.m2_basis_, i - f1);
    for (int ti = 0; ti < nt; ++ti) {
      for (int m2i = 0; m2i < n2; ++m2i) {
        int row = add_row(i, ti, -1, m2i);
        int col = sys.column_of(ti, m2i);
        double alpha = diagonal_coefficient(a2.d[m2i], q) -
                       diagonal_coefficient(at.d[ti], q);
        if (alpha != 0.0) sys.entries_.emplace_back(row, col, alpha);
        if (at.image[ti] != ti)
          sys.entries_.emplace_back(row, sys.column_of(at.image[ti], m2i),
                                    -beta_coefficient(at.d[ti], q));
        if (a2.image[m2i] != m2i)
          sys.entries_.emplace_back(row, sys.column_of(ti, a2.image[m2i]),
                                    beta_coefficient(a2.d[m2i], q));
      }
    }
  }
  sys.rows_ = static_cast<long>(sys.row_labels_.size());
  return sys;
}

SubductionGraph build_graph(const SubductionSystem& system) {
  SubductionGraph graph;
  graph.node_count = static_cast<int>(system.cols());

  std::map<int, std::vector<int>> row_cols;
  for (const auto& e : system.entries())
    if (e.value() != 0.0) row_cols[static_cast<int>(e.row())].push_back(e.col());

  std::set<std::array<int, 3>> edges;
  for (auto& [row, cols] : row_cols) {
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    int gen = system.row_labels()[row].generator;
    for (std::size_t a = 0; a < cols.size(); ++a)
      for (std::size_t b = a + 1; b < cols.size(); ++b)
        edges.insert({cols[a], cols[b], gen});
  }
  graph.edges.assign(edges.begin(), edges.end());

  // Connected components by union-find over the edges.
  std::vector<int> parent(graph.node_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : graph.edges) {
    int a = find(e[0]), b = find(e[1]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < graph.node_count; ++v) groups[find(v)].push_back(v);
  for (auto& [root, members] : groups) graph.components.push_back(members);
  return graph;
}

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::string to_dot(const SubductionGraph& graph, const SubductionSystem& system) {
  std::string out = "graph subduction {\n";
  for (int v = 0; v < graph.node_count; ++v)
    out += "  n" + std::to_string(v) + " [label=\"" + system.column_name(v) + "\"];\n";
  for (const auto& e : graph.edges)
    out += "  n" + std::to_string(e[0]) + " -- n" + std::to_string(e[1]) +
           " [label=\"g" + std::to_string(e[2]) + "\"];\n";
  out += "}\n";
  out += "// components:";
  for (const auto& comp : graph.components) {
    out += " {";
    for (std::size_t k = 0; k < comp.size(); ++k) {
      if (k) out += ",";
      out += std::to_string(comp[k]);
    }
    out += "}";
  }
  out += "\n";
  return out;
}

std::string to_triplet_csv(const SubductionSystem& system) {
  Eigen::SparseMatrix<double, Eigen::RowMajor> mat(system.sparse());
  std::string out = "row,col,value\n";
  for (int k = 0; k < mat.outerSize(); ++k)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(mat, k);
         it; ++it)
      out += std::to_string(it.row()) + "," + std::to_string(it.col()) + "," +
             format_value(it.value()) + "\n";
  return out;
}

}  // namespace subduce
