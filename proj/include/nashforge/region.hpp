#pragma once

// Corner regions, convex polygons and edge partitions.
//
// Indices are 0-based in code. A polygon with n edges has vertex i on edges i
// and i+1 (mod n), so edge i runs from vertex i-1 to vertex i.

#include <nashforge/poly.hpp>
#include <nashforge/rational.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nashforge {

/// h(x) = coefficients . x + constant.
struct LinearForm {
  std::vector<Rational> coefficients;
  Rational constant;

  LinearForm() = default;
  LinearForm(std::vector<Rational> coeffs, Rational c) : coefficients(std::move(coeffs)), constant(std::move(c)) {
    if (std::all_of(coefficients.begin(), coefficients.end(), [](const Rational& q) { return q == 0; }))
      throw std::invalid_argument("LinearForm: all coefficients are zero");
  }

  std::size_t dim() const { return coefficients.size(); }

  Rational eval(std::span<const Rational> x) const {
    Rational v = constant;
    for (std::size_t i = 0; i < coefficients.size(); ++i) v += coefficients[i] * x[i];
    return v;
  }

  double eval(std::span<const double> x) const {
    double v = constant.get_d();
    for (std::size_t i = 0; i < coefficients.size(); ++i) v += coefficients[i].get_d() * x[i];
    return v;
  }

  MultiPoly to_poly() const { return MultiPoly::affine(coefficients, constant); }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
};

using ExactPoint2 = std::array<Rational, 2>;
using Point2 = std::array<double, 2>;

inline Point2 to_double(const ExactPoint2& p) { return {p[0].get_d(), p[1].get_d()}; }

/// Intersection of the lines {f = 0} and {g = 0}; nullopt when parallel.
inline std::optional<ExactPoint2> intersect_lines(const LinearForm& f, const LinearForm& g) {
  const Rational& a = f.coefficients[0];
  const Rational& b = f.coefficients[1];
  const Rational& c = g.coefficients[0];
  const Rational& d = g.coefficients[1];
  const Rational det = a * d - b * c;
  if (det == 0) return std::nullopt;
  // a x + b y = -f0, c x + d y = -g0
  const Rational rx = -f.constant;
  const Rational ry = -g.constant;
  return ExactPoint2{Rational((rx * d - b * ry) / det), Rational((a * ry - rx * c) / det)};
}

class ConvexPolygon {
 public:
  /// Builds from inward-oriented edge forms listed in cyclic order.
  explicit ConvexPolygon(std::vector<LinearForm> edges) : edges_(std::move(edges)) {
    const std::size_t n = edges_.size();
    if (n < 3) throw std::invalid_argument("ConvexPolygon: need at least 3 edges");
    for (const auto& e : edges_)
      if (e.dim() != 2) throw std::invalid_argument("ConvexPolygon: edge forms must be planar");
    vertices_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto p = intersect_lines(edges_[i], edges_[(i + 1) % n]);
      if (!p) throw std::invalid_argument("ConvexPolygon: consecutive edges are parallel");
      vertices_.push_back(*p);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == (i + 1) % n) continue;
        if (edges_[j].eval(vertices_[i]) <= 0)
          throw std::invalid_argument("ConvexPolygon: vertex " + std::to_string(i) +
                                      " is not strictly inside half-plane " + std::to_string(j));
      }
    }
  }

  std::size_t n() const { return edges_.size(); }
  const std::vector<LinearForm>& edges() const { return edges_; }
  const LinearForm& edge(std::size_t i) const { return edges_.at(i); }
  const std::vector<ExactPoint2>& vertices() const { return vertices_; }
  const ExactPoint2& vertex(std::size_t i) const { return vertices_.at(i); }

  /// Exact vertex average; strictly interior.
  ExactPoint2 centroid() const {
    ExactPoint2 c{Rational(0), Rational(0)};
    for (const auto& v : vertices_) {
      c[0] += v[0];
      c[1] += v[1];
    }
    c[0] /= static_cast<unsigned long>(n());
    c[1] /= static_cast<unsigned long>(n());
    return c;
  }

  bool contains(std::span<const Rational> p) const {
    return std::all_of(edges_.begin(), edges_.end(), [&](const LinearForm& e) { return e.eval(p) >= 0; });
  }
  bool contains_strictly(std::span<const Rational> p) const {
    return std::all_of(edges_.begin(), edges_.end(), [&](const LinearForm& e) { return e.eval(p) > 0; });
  }

  /// Edges i and j share a polygon vertex.
  bool adjacent(std::size_t i, std::size_t j) const {
    const std::size_t m = n();
    return i != j && ((i + 1) % m == j || (j + 1) % m == i);
  }

 private:
  std::vector<LinearForm> edges_;
  std::vector<ExactPoint2> vertices_;
};

/// Regular n-gon with vertices near angles 2*pi*i/n. Edge forms are unit
/// normalized in floating point, then snapped to dyadic rationals; vertices
/// are the exact intersections of the snapped lines.
inline ConvexPolygon regular_polygon(std::size_t n, double circumradius = 1.0) {
  if (n < 3) throw std::invalid_argument("regular_polygon: n must be at least 3");
  if (!(circumradius > 0)) throw std::invalid_argument("regular_polygon: circumradius must be positive");
  const double pi = std::numbers::pi;
  const double apothem = circumradius * std::cos(pi / static_cast<double>(n));
  std::vector<LinearForm> edges;
  edges.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // edge i joins vertex i-1 and vertex i; its outward normal bisects them
    const double phi = 2.0 * pi * (static_cast<double>(i) - 0.5) / static_cast<double>(n);
    edges.emplace_back(std::vector<Rational>{snap_to_dyadic(-std::cos(phi)), snap_to_dyadic(-std::sin(phi))},
                       snap_to_dyadic(apothem));
  }
  return ConvexPolygon(std::move(edges));
}

/// Partition of the edge set {0..n-1} into s non-empty classes.
struct EdgePartition {
  std::vector<std::vector<std::size_t>> classes;

  std::size_t s() const { return classes.size(); }

  /// class_of[i] for every edge; throws if the classes do not partition {0..n-1}.
  std::vector<std::size_t> class_of(std::size_t n) const {
    std::vector<std::size_t> owner(n, n);
    for (std::size_t k = 0; k < classes.size(); ++k) {
      if (classes[k].empty()) throw std::invalid_argument("EdgePartition: class " + std::to_string(k) + " is empty");
      for (std::size_t i : classes[k]) {
        if (i >= n) throw std::out_of_range("EdgePartition: edge index " + std::to_string(i) + " out of range");
        if (owner[i] != n) throw std::invalid_argument("EdgePartition: edge " + std::to_string(i) + " listed twice");
        owner[i] = k;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      if (owner[i] == n) throw std::invalid_argument("EdgePartition: edge " + std::to_string(i) + " not covered");
    return owner;
  }

  static EdgePartition from_assignment(std::span<const std::size_t> assignment) {
    EdgePartition p;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (assignment[i] >= p.classes.size()) p.classes.resize(assignment[i] + 1);
      p.classes[assignment[i]].push_back(i);
    }
    return p;
  }

  friend bool operator==(const EdgePartition&, const EdgePartition&) = default;
};

struct PartitionViolation {
  std::size_t class_index;
  std::size_t edge_i;
  std::size_t edge_j;
  friend bool operator==(const PartitionViolation&, const PartitionViolation&) = default;
};

struct PartitionCheck {
  bool valid = true;
  std::vector<PartitionViolation> violations;
};

/// Two edges of one class must not meet inside the polygon. Adjacency decides
/// combinatorially; every other same-class pair is also checked geometrically.
inline PartitionCheck validate_partition(const ConvexPolygon& polygon, const EdgePartition& partition) {
  partition.class_of(polygon.n());
  PartitionCheck out;
  for (std::size_t k = 0; k < partition.classes.size(); ++k) {
    std::vector<std::size_t> members = partition.classes[k];
    std::sort(members.begin(), members.end());
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        const std::size_t i = members[a];
        const std::size_t j = members[b];
        bool meets = polygon.adjacent(i, j);
        if (!meets) {
          auto p = intersect_lines(polygon.edge(i), polygon.edge(j));
          meets = p && polygon.contains(*p);
        }
        if (meets) out.violations.push_back({k, i, j});
      }
    }
  }
  out.valid = out.violations.empty();
  return out;
}

struct SRange {
  std::size_t min;
  std::size_t max;
  bool contains(std::size_t s) const { return s >= min && s <= max; }
};

/// 2 + (1 - (-1)^n)/2 <= s <= n.
inline SRange feasible_s_range(std::size_t n) {
  if (n < 3) throw std::invalid_argument("feasible_s_range: n must be at least 3");
  return {n % 2 == 0 ? std::size_t{2} : std::size_t{3}, n};
}

/// h_{J_k} = product of the edge forms in class k, as polynomials in (x, y).
inline std::vector<MultiPoly> class_polynomials(const ConvexPolygon& polygon, const EdgePartition& partition,
                                                bool require_valid = true) {
  if (require_valid && !validate_partition(polygon, partition).valid)
    throw std::invalid_argument("class_polynomials: partition violates the compatibility condition");
  partition.class_of(polygon.n());
  std::vector<MultiPoly> out;
  out.reserve(partition.s());
  for (const auto& cls : partition.classes) {
    MultiPoly prod = MultiPoly::constant(2, Rational(1));
    for (std::size_t i : cls) prod *= polygon.edge(i).to_poly();
    out.push_back(std::move(prod));
  }
  return out;
}

/// Proper colorings of the cycle C_n with exactly s colors, in canonical
/// labeling (edge 0 gets class 0, new classes open in increasing order),
/// lexicographic on the assignment vector.
inline std::vector<std::vector<std::size_t>> enumerate_cycle_colorings(std::size_t n, std::size_t s,
                                                                       std::size_t limit) {
  std::vector<std::vector<std::size_t>> out;
  if (n < 3 || s == 0 || s > n || limit == 0) return out;
  std::vector<std::size_t> assign(n, 0);
  // depth-first over restricted growth strings
  auto recurse = [&](auto&& self, std::size_t pos, std::size_t used) -> void {
    if (out.size() >= limit) return;
    if (used + (n - pos) < s) return;
    if (pos == n) {
      if (used == s && assign[n - 1] != assign[0]) out.push_back(assign);
      return;
    }
    const std::size_t upper = std::min(used + 1, s);
    for (std::size_t c = 0; c < upper; ++c) {
      if (pos > 0 && assign[pos - 1] == c) continue;
      assign[pos] = c;
      self(self, pos + 1, std::max(used, c + 1));
      if (out.size() >= limit) return;
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

inline std::vector<EdgePartition> enumerate_valid_partitions(const ConvexPolygon& polygon, std::size_t s,
                                                             std::size_t limit) {
  std::vector<EdgePartition> out;
  for (const auto& assign : enumerate_cycle_colorings(polygon.n(), s, limit)) {
    EdgePartition p = EdgePartition::from_assignment(assign);
    if (validate_partition(polygon, p).valid) out.push_back(std::move(p));
  }
  return out;
}

/// Q = {h_1 >= 0, ..., h_l >= 0} in R^d with an interior witness point.
class CornerRegion {
 public:
  CornerRegion(std::size_t d, std::vector<MultiPoly> ineqs, std::vector<Rational> witness)
      : d_(d), ineqs_(std::move(ineqs)), witness_(std::move(witness)) {
    if (ineqs_.empty()) throw std::invalid_argument("CornerRegion: need at least one inequality");
    if (witness_.size() != d_) throw std::invalid_argument("CornerRegion: witness has wrong dimension");
    for (std::size_t k = 0; k < ineqs_.size(); ++k) {
      if (ineqs_[k].nvars() != d_) throw std::invalid_argument("CornerRegion: inequality in wrong ring");
      if (ineqs_[k].eval(std::span<const Rational>(witness_)) <= 0)
        throw std::invalid_argument("CornerRegion: witness is not interior for inequality " + std::to_string(k));
    }
  }

  std::size_t d() const { return d_; }
  std::size_t size() const { return ineqs_.size(); }
  const std::vector<MultiPoly>& ineqs() const { return ineqs_; }
  const std::vector<Rational>& witness() const { return witness_; }

 private:
  std::size_t d_;
  std::vector<MultiPoly> ineqs_;
  std::vector<Rational> witness_;
};

/// Region cut out by the class polynomials of a partitioned polygon. The
/// polygon is a connected component of it when the partition is valid.
inline CornerRegion polygon_class_region(const ConvexPolygon& polygon, const EdgePartition& partition,
                                         bool require_valid = true) {
  auto c = polygon.centroid();
  return CornerRegion(2, class_polynomials(polygon, partition, require_valid), {c[0], c[1]});
}

}  // namespace nashforge
