#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace subduce {

/// Integer partition with weakly decreasing, strictly positive parts.
/// The empty partition is allowed and has size 0.
class Partition {
public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  /// Parses a comma-separated part list, e.g. "4,3,2,1".
  static Partition parse(std::string_view text);

  const std::vector<int>& parts() const { return parts_; }
  int rows() const { return static_cast<int>(parts_.size()); }
  int size() const { return size_; }  // number of boxes

  /// Length of row r (0 when r is past the last row).
  int row_length(int r) const;
  /// Length of column c, i.e. the conjugate partition's part.
  int col_length(int c) const;
  bool contains(const Partition& inner) const;  // cell-wise inclusion
  Partition conjugate() const;

  std::string to_string() const;  // "4,3,2,1"

  bool operator==(const Partition&) const = default;

private:
  std::vector<int> parts_;
  int size_ = 0;
};

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

/// Content of a cell: column minus row.
inline int content(Cell c) { return c.col - c.row; }

/// Standard Young tableau: entries 1..f placed in the cells of a shape,
/// strictly increasing along rows and columns.
class StandardTableau {
public:
  StandardTableau(Partition shape, std::vector<Cell> cell_of_entry);
  static StandardTableau from_rows(const std::vector<std::vector<int>>& rows);

  const Partition& shape() const { return shape_; }
  int size() const { return static_cast<int>(cells_.size()); }
  Cell cell(int entry) const;  // entry in 1..f
  std::vector<std::vector<int>> rows() const;

  bool operator==(const StandardTableau&) const = default;

private:
  Partition shape_;
  std::vector<Cell> cells_;  // cells_[k-1] holds the cell of entry k
};

/// Standard filling of a skew diagram outer\inner on the entries
/// |inner|+1 .. |outer|; adjoining any standard tableau of shape inner
/// yields a standard tableau of shape outer.
class SkewFilling {
public:
  SkewFilling(Partition outer, Partition inner, std::vector<Cell> cell_of_entry);
  static SkewFilling from_rows(Partition outer, Partition inner,
                               const std::vector<std::vector<int>>& rows);

  const Partition& outer() const { return outer_; }
  const Partition& inner() const { return inner_; }
  int first_entry() const { return inner_.size() + 1; }
  int last_entry() const { return outer_.size(); }
  int cell_count() const { return static_cast<int>(cells_.size()); }
  Cell cell(int entry) const;  // entry in first_entry()..last_entry()
  /// Entries per row of the outer shape; inner-only rows give empty lists.
  std::vector<std::vector<int>> rows() const;

  bool operator==(const SkewFilling&) const = default;

private:
  Partition outer_, inner_;
  std::vector<Cell> cells_;  // cells_[k] holds the cell of entry first_entry()+k
};

/// Number of standard tableaux of a shape (hook length formula).
std::uint64_t hook_dimension(const Partition& shape);

/// Number of standard fillings of outer\inner, counted without materializing.
std::uint64_t count_skew_fillings(const Partition& outer, const Partition& inner);

/// Canonical tableau order: compare the cells of entries f, f-1, ...;
/// at the first difference the tableau whose cell is lexicographically
/// larger (by row, then column) comes first.
bool canonical_less(const StandardTableau& a, const StandardTableau& b);
bool canonical_less(const SkewFilling& a, const SkewFilling& b);

/// All standard tableaux of the shape, exactly once, in canonical order.
std::vector<StandardTableau> enumerate_syt(const Partition& shape);

/// Position in a canonically sorted list; throws when absent.
int canonical_index(const std::vector<StandardTableau>& sorted,
                    const StandardTableau& m);
int canonical_index(const std::vector<SkewFilling>& sorted, const SkewFilling& t);

/// All standard skew fillings of outer\inner in canonical order.
/// Throws if inner is not contained in outer.
std::vector<SkewFilling> enumerate_skew_fillings(const Partition& outer,
                                                 const Partition& inner);

/// Axial distance between i+1 and i: content(cell(i+1)) - content(cell(i)).
/// Never zero; +1 exactly for row adjacency, -1 for column adjacency.
int axial_distance(const StandardTableau& m, int i);
int axial_distance(const SkewFilling& t, int i);

/// Interchanges i and i+1 when the result is standard, else returns the
/// input unchanged. Involution; fixed points are exactly |axial| == 1.
StandardTableau apply_generator(const StandardTableau& m, int i);
SkewFilling apply_generator(const SkewFilling& t, int i);

/// Tableau on the entries 1..k obtained by deleting k+1..f.
StandardTableau restricted(const StandardTableau& m, int k);

/// Skew filling carrying the entries f1+1..f of m over the shape of
/// restricted(m, f1).
SkewFilling skew_part(const StandardTableau& m, int f1);

/// Standard tableau assembled from a tableau of the inner shape and a
/// filling of the skew remainder.
StandardTableau join(const StandardTableau& m1, const SkewFilling& t);

/// Littlewood-Richardson coefficient of outer in p1 x p2, computed by the
/// lattice-word criterion (column reading, right to left, top to bottom)
/// over semistandard fillings of outer\p1 with content p2.
long lr_multiplicity(const Partition& outer, const Partition& p1, const Partition& p2);

/// All partitions of n, largest part first within each, in descending
/// lexicographic order. partitions_of(0) is the empty partition alone.
std::vector<Partition> partitions_of(int n);

}  // namespace subduce
