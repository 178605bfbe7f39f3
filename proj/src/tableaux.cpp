#include "subduce/tableaux.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace subduce {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0)
      throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
  size_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::parse(std::string_view text) {
  std::vector<int> parts;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string token(text.substr(pos, comma - pos));
    if (token.empty()) throw std::invalid_argument("empty partition part");
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("invalid partition part '" + token + "'");
    }
    if (used != token.size())
      throw std::invalid_argument("invalid partition part '" + token + "'");
    parts.push_back(value);
    pos = comma + 1;
  }
  return Partition(std::move(parts));
}

int Partition::row_length(int r) const {
  return (r >= 0 && r < rows()) ? parts_[r] : 0;
}

int Partition::col_length(int c) const {
  int n = 0;
  while (n < rows() && parts_[n] > c) ++n;
  return n;
}

bool Partition::contains(const Partition& inner) const {
  if (inner.rows() > rows()) return false;
  for (int r = 0; r < inner.rows(); ++r)
    if (inner.parts_[r] > parts_[r]) return false;
  return true;
}

Partition Partition::conjugate() const {
  std::vector<int> parts;
  for (int c = 0; c < row_length(0); ++c) parts.push_back(col_length(c));
  return Partition(std::move(parts));
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

namespace {

// Grid of entries indexed by cell; 0 marks an absent/empty cell.
std::vector<std::vector<int>> make_grid(const Partition& shape) {
  std::vector<std::vector<int>> grid(shape.rows());
  for (int r = 0; r < shape.rows(); ++r) grid[r].assign(shape.row_length(r), 0);
  return grid;
}

bool in_shape(const Partition& shape, Cell c) {
  return c.row >= 0 && c.col >= 0 && c.row < shape.rows() &&
         c.col < shape.row_length(c.row);
}

// Rows and columns strictly increasing over the placed entries, where
// 0 cells (inner cells of a skew shape) are ignored.
bool grid_increasing(const std::vector<std::vector<int>>& grid) {
  for (std::size_t r = 0; r < grid.size(); ++r) {
    for (std::size_t c = 0; c < grid[r].size(); ++c) {
      int v = grid[r][c];
      if (v == 0) continue;
      if (c + 1 < grid[r].size() && grid[r][c + 1] != 0 && grid[r][c + 1] <= v)
        return false;
      if (r + 1 < grid.size() && c < grid[r + 1].size() && grid[r + 1][c] != 0 &&
          grid[r + 1][c] <= v)
        return false;
    }
  }
  return true;
}

bool cells_standard(const Partition& shape, const std::vector<Cell>& cells) {
  auto grid = make_grid(shape);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    Cell c = cells[k];
    if (!in_shape(shape, c) || grid[c.row][c.col] != 0) return false;
    grid[c.row][c.col] = static_cast<int>(k) + 1;
  }
  for (const auto& row : grid)
    for (int v : row)
      if (v == 0) return false;
  return grid_increasing(grid);
}

bool skew_cells_standard(const Partition& outer, const Partition& inner,
                         const std::vector<Cell>& cells) {
  if (!outer.contains(inner)) return false;
  auto grid = make_grid(outer);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    Cell c = cells[k];
    if (!in_shape(outer, c) || c.col < inner.row_length(c.row)) return false;
    if (grid[c.row][c.col] != 0) return false;
    grid[c.row][c.col] = static_cast<int>(k) + 1;
  }
  for (int r = 0; r < outer.rows(); ++r)
    for (int c = inner.row_length(r); c < outer.row_length(r); ++c)
      if (grid[r][c] == 0) return false;
  return grid_increasing(grid);
}

}  // namespace

StandardTableau::StandardTableau(Partition shape, std::vector<Cell> cell_of_entry)
    : shape_(std::move(shape)), cells_(std::move(cell_of_entry)) {
  if (static_cast<int>(cells_.size()) != shape_.size() ||
      !cells_standard(shape_, cells_))
    throw std::invalid_argument("not a standard tableau");
}

StandardTableau StandardTableau::from_rows(const std::vector<std::vector<int>>& rows) {
  std::vector<int> parts;
  int total = 0;
  for (const auto& row : rows) {
    parts.push_back(static_cast<int>(row.size()));
    total += static_cast<int>(row.size());
  }
  Partition shape(std::move(parts));
  std::vector<Cell> cells(total);
  for (int r = 0; r < static_cast<int>(rows.size()); ++r)
    for (int c = 0; c < static_cast<int>(rows[r].size()); ++c) {
      int v = rows[r][c];
      if (v < 1 || v > total) throw std::invalid_argument("entry out of range");
      cells[v - 1] = Cell{r, c};
    }
  return StandardTableau(std::move(shape), std::move(cells));
}

Cell StandardTableau::cell(int entry) const {
  if (entry < 1 || entry > size())
    throw std::out_of_range("tableau entry out of range");
  return cells_[entry - 1];
}

std::vector<std::vector<int>> StandardTableau::rows() const {
  std::vector<std::vector<int>> out(shape_.rows());
  for (int r = 0; r < shape_.rows(); ++r) out[r].assign(shape_.row_length(r), 0);
  for (int k = 1; k <= size(); ++k) out[cells_[k - 1].row][cells_[k - 1].col] = k;
  return out;
}

SkewFilling::SkewFilling(Partition outer, Partition inner,
                         std::vector<Cell> cell_of_entry)
    : outer_(std::move(outer)), inner_(std::move(inner)),
      cells_(std::move(cell_of_entry)) {
  if (static_cast<int>(cells_.size()) != outer_.size() - inner_.size() ||
      !skew_cells_standard(outer_, inner_, cells_))
    throw std::invalid_argument("not a standard skew filling");
}

SkewFilling SkewFilling::from_rows(Partition outer, Partition inner,
                                   const std::vector<std::vector<int>>& rows) {
  int n = outer.size() - inner.size();
  int first = inner.size() + 1;
  std::vector<Cell> cells(std::max(n, 0));
  for (int r = 0; r < static_cast<int>(rows.size()); ++r)
    for (int j = 0; j < static_cast<int>(rows[r].size()); ++j) {
      int v = rows[r][j];
      if (v < first || v >= first + n)
        throw std::invalid_argument("skew entry out of range");
      cells[v - first] = Cell{r, inner.row_length(r) + j};
    }
  return SkewFilling(std::move(outer), std::move(inner), std::move(cells));
}

Cell SkewFilling::cell(int entry) const {
  if (entry < first_entry() || entry > last_entry())
    throw std::out_of_range("skew entry out of range");
  return cells_[entry - first_entry()];
}

std::vector<std::vector<int>> SkewFilling::rows() const {
  std::vector<std::vector<int>> out(outer_.rows());
  for (int r = 0; r < outer_.rows(); ++r)
    out[r].assign(outer_.row_length(r) - inner_.row_length(r), 0);
  for (int k = 0; k < cell_count(); ++k) {
    Cell c = cells_[k];
    out[c.row][c.col - inner_.row_length(c.row)] = first_entry() + k;
  }
  return out;
}

std::uint64_t hook_dimension(const Partition& shape) {
  int f = shape.size();
  if (f > 33) throw std::overflow_error("hook_dimension: shape too large");
  unsigned __int128 num = 1, den = 1;
  for (int k = 2; k <= f; ++k) num *= k;
  for (int r = 0; r < shape.rows(); ++r)
    for (int c = 0; c < shape.row_length(r); ++c)
      den *= (shape.row_length(r) - c) + (shape.col_length(c) - r) - 1;
  return static_cast<std::uint64_t>(num / den);
}

namespace {

// Walks all growth sequences inner -> outer one addable box at a time.
template <typename Emit>
void walk_skew_fillings(const Partition& outer, const Partition& inner,
                        std::vector<int>& cur, std::vector<Cell>& cells,
                        int remaining, Emit&& emit) {
  if (remaining == 0) {
    emit(cells);
    return;
  }
  for (int r = 0; r < outer.rows(); ++r) {
    if (cur[r] >= outer.row_length(r)) continue;
    if (r > 0 && cur[r - 1] <= cur[r]) continue;
    cells.push_back(Cell{r, cur[r]});
    ++cur[r];
    walk_skew_fillings(outer, inner, cur, cells, remaining - 1, emit);
    --cur[r];
    cells.pop_back();
  }
}

template <typename Emit>
void walk_skew_fillings(const Partition& outer, const Partition& inner, Emit&& emit) {
  std::vector<int> cur(outer.rows());
  for (int r = 0; r < outer.rows(); ++r) cur[r] = inner.row_length(r);
  std::vector<Cell> cells;
  cells.reserve(outer.size() - inner.size());
  walk_skew_fillings(outer, inner, cur, cells, outer.size() - inner.size(), emit);
}

}  // namespace

std::uint64_t count_skew_fillings(const Partition& outer, const Partition& inner) {
  if (!outer.contains(inner))
    throw std::invalid_argument("inner shape not contained in outer shape");
  std::uint64_t n = 0;
  walk_skew_fillings(outer, inner, [&](const std::vector<Cell>&) { ++n; });
  return n;
}

bool canonical_less(const StandardTableau& a, const StandardTableau& b) {
  for (int k = a.size(); k >= 1; --k) {
    Cell ca = a.cell(k), cb = b.cell(k);
    if (ca != cb)
      return std::pair(ca.row, ca.col) > std::pair(cb.row, cb.col);
  }
  return false;
}

bool canonical_less(const SkewFilling& a, const SkewFilling& b) {
  for (int k = a.last_entry(); k >= a.first_entry(); --k) {
    Cell ca = a.cell(k), cb = b.cell(k);
    if (ca != cb)
      return std::pair(ca.row, ca.col) > std::pair(cb.row, cb.col);
  }
  return false;
}

std::vector<StandardTableau> enumerate_syt(const Partition& shape) {
  std::vector<StandardTableau> out;
  walk_skew_fillings(shape, Partition(), [&](const std::vector<Cell>& cells) {
    out.emplace_back(shape, cells);
  });
  std::sort(out.begin(), out.end(),
            [](const StandardTableau& a, const StandardTableau& b) {
              return canonical_less(a, b);
            });
  return out;
}

int canonical_index(const std::vector<StandardTableau>& sorted,
                    const StandardTableau& m) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), m,
                             [](const StandardTableau& a, const StandardTableau& b) {
                               return canonical_less(a, b);
                             });
  if (it == sorted.end() || !(*it == m))
    throw std::invalid_argument("tableau not found in basis");
  return static_cast<int>(it - sorted.begin());
}

int canonical_index(const std::vector<SkewFilling>& sorted, const SkewFilling& t) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), t,
                             [](const SkewFilling& a, const SkewFilling& b) {
                               return canonical_less(a, b);
                             });
  if (it == sorted.end() || !(*it == t))
    throw std::invalid_argument("skew filling not found in basis");
  return static_cast<int>(it - sorted.begin());
}

std::vector<SkewFilling> enumerate_skew_fillings(const Partition& outer,
                                                 const Partition& inner) {
  if (!outer.contains(inner))
    throw std::invalid_argument("inner shape not contained in outer shape");
  std::vector<SkewFilling> out;
  walk_skew_fillings(outer, inner, [&](const std::vector<Cell>& cells) {
    out.emplace_back(outer, inner, cells);
  });
  std::sort(out.begin(), out.end(), [](const SkewFilling& a, const SkewFilling& b) {
    return canonical_less(a, b);
  });
  return out;
}

int axial_distance(const StandardTableau& m, int i) {
  if (i < 1 || i >= m.size())
    throw std::out_of_range("generator index out of range");
  return content(m.cell(i + 1)) - content(m.cell(i));
}

int axial_distance(const SkewFilling& t, int i) {
  if (i < t.first_entry() || i >= t.last_entry())
    throw std::out_of_range("generator index out of range");
  return content(t.cell(i + 1)) - content(t.cell(i));
}

namespace {

std::vector<Cell> swap_entries(std::vector<Cell> cells, int a, int b) {
  std::swap(cells[a - 1], cells[b - 1]);
  return cells;
}

}  // namespace

StandardTableau apply_generator(const StandardTableau& m, int i) {
  if (i < 1 || i >= m.size())
    throw std::out_of_range("generator index out of range");
  std::vector<Cell> cells(m.size());
  for (int k = 1; k <= m.size(); ++k) cells[k - 1] = m.cell(k);
  cells = swap_entries(std::move(cells), i, i + 1);
  if (!cells_standard(m.shape(), cells)) return m;
  return StandardTableau(m.shape(), std::move(cells));
}

SkewFilling apply_generator(const SkewFilling& t, int i) {
  if (i < t.first_entry() || i >= t.last_entry())
    throw std::out_of_range("generator index out of range");
  std::vector<Cell> cells(t.cell_count());
  for (int k = t.first_entry(); k <= t.last_entry(); ++k)
    cells[k - t.first_entry()] = t.cell(k);
  std::swap(cells[i - t.first_entry()], cells[i + 1 - t.first_entry()]);
  if (!skew_cells_standard(t.outer(), t.inner(), cells)) return t;
  return SkewFilling(t.outer(), t.inner(), std::move(cells));
}

StandardTableau restricted(const StandardTableau& m, int k) {
  if (k < 1 || k > m.size()) throw std::out_of_range("restriction size out of range");
  std::vector<int> row_counts(m.shape().rows(), 0);
  std::vector<Cell> cells(k);
  for (int e = 1; e <= k; ++e) {
    cells[e - 1] = m.cell(e);
    ++row_counts[cells[e - 1].row];
  }
  while (!row_counts.empty() && row_counts.back() == 0) row_counts.pop_back();
  return StandardTableau(Partition(std::move(row_counts)), std::move(cells));
}

SkewFilling skew_part(const StandardTableau& m, int f1) {
  if (f1 < 1 || f1 > m.size()) throw std::out_of_range("restriction size out of range");
  Partition inner = restricted(m, f1).shape();
  std::vector<Cell> cells;
  for (int e = f1 + 1; e <= m.size(); ++e) cells.push_back(m.cell(e));
  return SkewFilling(m.shape(), std::move(inner), std::move(cells));
}

StandardTableau join(const StandardTableau& m1, const SkewFilling& t) {
  if (m1.shape() != t.inner())
    throw std::invalid_argument("inner shape mismatch in join");
  std::vector<Cell> cells;
  cells.reserve(t.outer().size());
  for (int e = 1; e <= m1.size(); ++e) cells.push_back(m1.cell(e));
  for (int e = t.first_entry(); e <= t.last_entry(); ++e) cells.push_back(t.cell(e));
  return StandardTableau(t.outer(), std::move(cells));
}

namespace {

// Lattice-word check in column reading order: columns right to left,
// top to bottom within each column.
bool lattice_word_ok(const std::vector<std::vector<int>>& grid,
                     const Partition& inner, int values) {
  std::vector<int> count(values + 1, 0);
  int width = grid.empty() ? 0 : static_cast<int>(grid[0].size());
  for (int c = width - 1; c >= 0; --c) {
    for (int r = 0; r < static_cast<int>(grid.size()); ++r) {
      if (c >= static_cast<int>(grid[r].size())) continue;
      if (c < inner.row_length(r)) continue;
      int v = grid[r][c];
      ++count[v];
      if (v > 1 && count[v] > count[v - 1]) return false;
    }
  }
  return true;
}

long count_lattice_fillings(const Partition& outer, const Partition& inner,
                            const Partition& content) {
  std::vector<Cell> cells;
  for (int r = 0; r < outer.rows(); ++r)
    for (int c = inner.row_length(r); c < outer.row_length(r); ++c)
      cells.push_back(Cell{r, c});
  if (cells.empty()) return content.size() == 0 ? 1 : 0;

  auto grid = make_grid(outer);
  std::vector<int> remaining = content.parts();
  int values = content.rows();
  long total = 0;

  auto dfs = [&](auto&& self, std::size_t idx) -> void {
    if (idx == cells.size()) {
      if (lattice_word_ok(grid, inner, values)) ++total;
      return;
    }
    Cell c = cells[idx];
    int left = (c.col > inner.row_length(c.row)) ? grid[c.row][c.col - 1] : 0;
    int above = (c.row > 0 && c.col < outer.row_length(c.row - 1) &&
                 c.col >= inner.row_length(c.row - 1))
                    ? grid[c.row - 1][c.col]
                    : 0;
    // rows weakly increase, columns strictly increase
    for (int v = std::max(left, above + 1); v <= values; ++v) {
      if (remaining[v - 1] == 0) continue;
      grid[c.row][c.col] = v;
      --remaining[v - 1];
      self(self, idx + 1);
      ++remaining[v - 1];
      grid[c.row][c.col] = 0;
    }
  };
  dfs(dfs, 0);
  return total;
}

}  // namespace

long lr_multiplicity(const Partition& outer, const Partition& p1, const Partition& p2) {
  if (p1.size() + p2.size() != outer.size())
    throw std::invalid_argument("lr_multiplicity: sizes do not add up");
  if (!outer.contains(p1)) return 0;
  return count_lattice_fillings(outer, p1, p2);
}

std::vector<Partition> partitions_of(int n) {
  if (n < 0) throw std::invalid_argument("partitions_of: negative size");
  std::vector<Partition> out;
  std::vector<int> parts;
  auto dfs = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(parts);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  dfs(dfs, n, n == 0 ? 1 : n);
  return out;
}

}  // namespace subduce
