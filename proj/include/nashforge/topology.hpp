#pragma once

// CW counts, Euler characteristic and genus of D_s(P_n), the genus table, and
// a combinatorial oracle that glues 2^s copies of the polygon's CW complex.

#include <nashforge/region.hpp>

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nashforge {

struct CWCounts {
  long long V = 0;
  long long E = 0;
  long long F = 0;
  long long chi() const { return V - E + F; }
  friend bool operator==(const CWCounts&, const CWCounts&) = default;
};

/// (2^{s-2} n, 2^{s-1} n, 2^s).
inline CWCounts cw_counts(std::size_t n, std::size_t s) {
  if (s < 2) throw std::invalid_argument("cw_counts: s must be at least 2");
  if (n < 3) throw std::invalid_argument("cw_counts: n must be at least 3");
  if (s > 60) throw std::invalid_argument("cw_counts: s too large");
  const long long nn = static_cast<long long>(n);
  return {(1LL << (s - 2)) * nn, (1LL << (s - 1)) * nn, 1LL << s};
}

/// 2^{s-2} (4 - n).
inline long long euler_char(std::size_t n, std::size_t s) {
  if (s < 2) throw std::invalid_argument("euler_char: s must be at least 2");
  if (s > 60) throw std::invalid_argument("euler_char: s too large");
  return (1LL << (s - 2)) * (4 - static_cast<long long>(n));
}

/// Whether the cycle C_n has a proper coloring using exactly s colors.
inline bool partition_exists(std::size_t n, std::size_t s) {
  return !enumerate_cycle_colorings(n, s, 1).empty();
}

/// 2^{s-3}(n-4) + 1 when s is in the feasible range, a compatible partition
/// exists and the value is a non-negative integer; nullopt otherwise.
inline std::optional<long long> genus(std::size_t n, std::size_t s) {
  if (n < 3 || s < 2) return std::nullopt;
  if (!feasible_s_range(n).contains(s)) return std::nullopt;
  if (!partition_exists(n, s)) return std::nullopt;
  // 2 g = 2 - chi = 2 - 2^{s-2}(4 - n)
  const long long twice = 2 - euler_char(n, s);
  if (twice < 0 || twice % 2 != 0) return std::nullopt;
  return twice / 2;
}

struct GenusTable {
  std::size_t n_min = 3;
  std::size_t s_min = 2;
  std::size_t n_max = 0;
  std::size_t s_max = 0;
  std::vector<std::vector<std::optional<long long>>> cells;  // [n - n_min][s - s_min]

  std::optional<long long> at(std::size_t n, std::size_t s) const { return cells.at(n - n_min).at(s - s_min); }
};

inline GenusTable genus_table(std::size_t n_max, std::size_t s_max) {
  if (n_max < 3) throw std::invalid_argument("genus_table: n_max must be at least 3");
  if (s_max < 2) throw std::invalid_argument("genus_table: s_max must be at least 2");
  GenusTable t;
  t.n_max = n_max;
  t.s_max = s_max;
  for (std::size_t n = 3; n <= n_max; ++n) {
    std::vector<std::optional<long long>> row;
    for (std::size_t s = 2; s <= s_max; ++s) row.push_back(genus(n, s));
    t.cells.push_back(std::move(row));
  }
  return t;
}

/// The published table for n = 3..7, s = 2..7; -1 marks "--".
inline constexpr std::array<std::array<int, 6>, 5> kReferenceGenusTable{{
    {-1, 0, -1, -1, -1, -1},
    {1, 1, 1, -1, -1, -1},
    {-1, 2, 3, 5, -1, -1},
    {2, 3, 5, 9, 17, -1},
    {-1, 4, 7, 13, 25, 49},
}};

struct GlueResult {
  CWCounts counts;
  std::size_t components = 0;
  std::size_t raw_cells = 0;
  bool vertices_in_four_faces = true;
  bool edges_in_two_faces = true;
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  std::size_t components() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i)
      if (find(i) == i) ++c;
    return c;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

/// Cells are (cell of P_n, eps) with eps in {-1,1}^s. A cell whose closure
/// meets the zero sets of the class set A identifies (c, eps) ~ (c, eps')
/// whenever eps and eps' agree outside A. Counts the quotient, its face
/// incidences and the components of the face adjacency graph.
inline GlueResult glue_complex(const ConvexPolygon& polygon, const EdgePartition& partition) {
  if (!validate_partition(polygon, partition).valid)
    throw std::invalid_argument("glue_complex: partition violates the compatibility condition");
  const std::size_t n = polygon.n();
  const std::size_t s = partition.s();
  if (s > 20) throw std::invalid_argument("glue_complex: too many classes to enumerate");
  const auto owner = partition.class_of(n);
  const std::uint32_t sheets = std::uint32_t{1} << s;

  // active class masks: vertex i lies on edges i and i+1
  std::vector<std::uint32_t> vertex_mask(n), edge_mask(n);
  for (std::size_t i = 0; i < n; ++i) {
    edge_mask[i] = std::uint32_t{1} << owner[i];
    vertex_mask[i] = edge_mask[i] | (std::uint32_t{1} << owner[(i + 1) % n]);
  }

  GlueResult out;
  out.raw_cells = static_cast<std::size_t>(sheets) * (2 * n + 1);
  std::map<std::pair<std::size_t, std::uint32_t>, std::size_t> vertex_faces, edge_faces;
  for (std::uint32_t eps = 0; eps < sheets; ++eps) {
    for (std::size_t i = 0; i < n; ++i) {
      ++vertex_faces[{i, eps & ~vertex_mask[i]}];
      ++edge_faces[{i, eps & ~edge_mask[i]}];
    }
  }
  out.counts.V = static_cast<long long>(vertex_faces.size());
  out.counts.E = static_cast<long long>(edge_faces.size());
  out.counts.F = sheets;
  for (const auto& [key, faces] : vertex_faces)
    if (faces != 4) out.vertices_in_four_faces = false;
  for (const auto& [key, faces] : edge_faces)
    if (faces != 2) out.edges_in_two_faces = false;

  detail::UnionFind uf(sheets);
  for (std::uint32_t eps = 0; eps < sheets; ++eps)
    for (std::size_t i = 0; i < n; ++i) uf.unite(eps, eps ^ edge_mask[i]);
  out.components = uf.components();
  return out;
}

}  // namespace nashforge
